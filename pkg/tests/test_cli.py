import json

import pytest
from hypothesis import given, settings, strategies as st

from zigzag_hh.cli import CACHE_FORMAT, main, normalize, run


def out(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr()


def test_dims_zeta3(capsys):
    code, cap = out(capsys, ["dims", "--q", "zeta:3", "--max", "12", "--format", "json"])
    assert code == 0
    rows = json.loads(cap.out)["rows"]
    assert rows[6]["HH_m"] == 3 and rows[6]["status"] == "ok"
    # printed formulas differ from the computation at these degrees
    assert "rank_tau" in rows[6]["printed_form_differs"]


def test_dims_generic_column(capsys):
    code, cap = out(capsys, ["dims", "--q", "generic", "--max", "6", "--format", "json"])
    assert code == 0
    assert [r["HH^m"] for r in json.loads(cap.out)["rows"]] == [3, 2, 1, 0, 0, 0, 0]


def test_dims_q1(capsys):
    _, cap = out(capsys, ["dims", "--q", "rational:1/1", "--max", "4", "--format", "json"])
    assert [r["HH_m"] for r in json.loads(cap.out)["rows"]] == [3, 4, 6, 8, 10]


def test_text_and_markdown(capsys):
    _, cap = out(capsys, ["dims", "--q", "zeta:4", "--max", "3"])
    assert cap.out.startswith("q = zeta:4")
    _, cap = out(capsys, ["dims", "--q", "zeta:4", "--max", "3", "--format", "markdown"])
    assert "| m | HH_m |" in cap.out


def test_bv_example(capsys):
    code, cap = out(capsys, ["bv", "--q", "rational:-1/1", "u2"])
    assert code == 0 and cap.out.splitlines()[0] == "1"


def test_bracket_example(capsys):
    code, cap = out(capsys, ["bracket", "--q", "zeta:4", "u1", "w0"])
    assert code == 0 and cap.out.splitlines()[0] == "-4*w0"


def test_cup_example(capsys):
    code, cap = out(capsys, ["cup", "--q", "generic", "u2", "u1", "--format", "json"])
    res = json.loads(cap.out)["result"]
    assert code == 0 and res["names"] == "-u1*u2"
    assert res["pairs"] == "2*(a2b2,f^2_(2,1))"


def test_cyclotomic_output(capsys):
    code, cap = out(capsys, ["bv", "--q", "zeta:3", "u1w0"])
    assert code == 0 and cap.out.splitlines()[0] == "7*w0"
    _, cap = out(capsys, ["basis", "--q", "zeta:3", "0"])
    assert "z" in cap.out or "1" in cap.out


def test_basis(capsys):
    code, cap = out(capsys, ["basis", "--q", "rational:-1/1", "2", "--format", "json"])
    classes = json.loads(cap.out)["degrees"][0]["classes"]
    assert code == 0 and len(classes) == 6


def test_basis_label_argument(capsys):
    _, listed = out(capsys, ["basis", "--q", "rational:-1", "2", "--format", "json"])
    want = json.loads(listed.out)["degrees"][0]["classes"][3]
    code, cap = out(capsys, ["cup", "--q", "rational:-1", "b2.3", "b0.0", "--format", "json"])
    assert code == 0 and json.loads(cap.out)["result"]["pairs"] == want["pairs"]


@pytest.mark.parametrize("argv", [
    ["dims", "--q", "zeta:0"],
    ["dims", "--q", "rational:0/1"],
    ["dims", "--q", "nonsense"],
    ["bv", "--q", "generic", "w0"],
    ["bv", "--q", "generic", "z1"],
    ["bv", "--q", "generic", "b2.9"],
    ["cup", "--q", "generic", "u1", "u2", "--max", "1"],
    ["verify", "--q", "generic", "--suite", "no-such-suite"],
    ["verify", "--q", "generic", "--report", "/no/such/dir/r.json"],
    ["dims", "--format", "yaml"],
    ["frobnicate"],
])
def test_config_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(main(argv))
    assert exc.value.code == 3


def test_verify_pass_and_report(tmp_path, capsys):
    report = tmp_path / "r.json"
    code, cap = out(capsys, ["verify", "--q", "rational:-1/1", "--suite", "bv-tables",
                             "--report", str(report)])
    assert code == 0 and "PASS  bv-tables" in cap.out
    data = json.loads(report.read_text())
    assert data["ok"] and data["suites"]["bv-tables"]["report"]["tables"]["mismatches"] == 0


def test_verify_ring(capsys):
    assert main(["verify", "--q", "generic", "--suite", "ring"]) == 0
    assert "PASS  ring" in capsys.readouterr().out


def test_verify_dims_zeta5_row(capsys):
    main(["verify", "--q", "zeta:5", "--suite", "dims", "--max", "22", "--format", "json"])
    rep = json.loads(capsys.readouterr().out)
    row = rep["suites"]["dims"]["report"]["rows"][9]
    assert row["HH_m"] == 4 and rep["ok"]


def test_mismatch_exit_code(monkeypatch, capsys):
    import zigzag_hh.cli as cli

    monkeypatch.setattr(cli, "closed_hh_dim", lambda qc, m: -1)
    assert main(["dims", "--q", "generic", "--max", "2"]) == 2


def test_cache_bit_identical(tmp_path, capsys):
    cache = tmp_path / "c.jsonl"
    argv = ["dims", "--q", "zeta:6", "--max", "8", "--cache", str(cache), "--format", "json"]
    main(argv)
    cold = capsys.readouterr().out
    lines = cache.read_text().splitlines()
    assert len(lines) == 9
    assert all(json.loads(line)["format"] == CACHE_FORMAT for line in lines)
    main(argv)
    warm = capsys.readouterr().out
    assert warm == cold
    assert len(cache.read_text().splitlines()) == 9
    for cmd in (["bracket", "--q", "zeta:4", "u1", "w0"], ["basis", "--q", "zeta:4", "2"]):
        main(cmd + ["--cache", str(cache)])
        a = capsys.readouterr().out
        main(cmd + ["--cache", str(cache)])
        assert capsys.readouterr().out == a


def test_cache_ignores_other_versions(tmp_path, capsys):
    cache = tmp_path / "c.jsonl"
    bogus = {"format": CACHE_FORMAT + 1, "q": "generic", "kind": "dims", "degree": 0,
             "value": {"m": 0, "status": "bogus"}}
    cache.write_text(json.dumps(bogus) + "\nnot json\n")
    text, code = run(["dims", "--q", "generic", "--max", "0", "--cache", str(cache), "--format", "json"])
    assert json.loads(text)["rows"][0]["status"] == "ok"


json_values = st.recursive(
    st.none() | st.booleans() | st.integers() | st.text(max_size=5),
    lambda kids: st.lists(kids, max_size=3) | st.dictionaries(st.text(max_size=3), kids, max_size=3),
    max_leaves=10,
)


@settings(max_examples=60, deadline=None)
@given(json_values)
def test_json_round_trip(obj):
    emitted = normalize(obj)
    assert json.loads(json.dumps(emitted)) == emitted


def test_report_round_trip(capsys):
    text, _ = run(["verify", "--q", "zeta:4", "--suite", "complex-laws,dims", "--max", "6",
                   "--format", "json"])
    parsed = json.loads(text)
    assert json.loads(json.dumps(parsed, indent=2, sort_keys=True)) == parsed
    assert json.dumps(parsed, indent=2, sort_keys=True) == text
