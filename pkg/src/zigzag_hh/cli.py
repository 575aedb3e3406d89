"""Command-line front door: ``zigzag-hh <command> [options]``.

Exit codes: 0 success, 2 verification mismatch, 3 configuration error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .complexes import (
    closed_hc_dim,
    closed_hh_codim,
    closed_hh_dim,
    closed_rank_tau,
    complex_laws,
    complexes_for,
    listed_basis_check,
)
from .linalg import WorkingSetExceeded
from .products import UnknownClass, cup_coherence, ring_for
from .scalars import Field, QSpecError, make_field, parse_qspec

CACHE_FORMAT = 1

EXIT_OK, EXIT_MISMATCH, EXIT_CONFIG = 0, 2, 3


class ConfigError(Exception):
    """Bad flags, unknown class names, degrees out of range."""


class DegreeOutOfRange(ConfigError):
    pass


# ---------------------------------------------------------------------------
# configuration and cache


@dataclass
class RunConfig:
    qspec: str
    max_degree: int | None = None
    output: str = "text"
    cache_path: Path | None = None
    suites: list[str] = field(default_factory=list)
    report_path: Path | None = None

    @property
    def field(self) -> Field:
        return make_field(self.qspec)


class ResultCache:
    """Versioned JSON-lines store keyed by (q, computation, degree).

    Records written under another format version are ignored on load.
    """

    def __init__(self, path: Path | None):
        self.path = path
        self._data: dict = {}
        if path is not None and path.exists():
            for line in path.read_text().splitlines():
                if not line.strip():
                    continue
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError:
                    continue
                if rec.get("format") == CACHE_FORMAT:
                    self._data[(rec["q"], rec["kind"], rec["degree"])] = rec["value"]

    def get(self, q: str, kind: str, degree):
        return self._data.get((q, kind, degree))

    def put(self, q: str, kind: str, degree, value) -> None:
        key = (q, kind, degree)
        if key in self._data:
            return
        value = normalize(value)
        self._data[key] = value
        if self.path is not None:
            rec = {"format": CACHE_FORMAT, "q": q, "kind": kind, "degree": degree, "value": value}
            with self.path.open("a") as fh:
                fh.write(json.dumps(rec, sort_keys=True) + "\n")

    def fetch(self, q: str, kind: str, degree, compute):
        hit = self.get(q, kind, degree)
        if hit is not None:
            return hit
        value = normalize(compute())
        self.put(q, kind, degree, value)
        return value


def normalize(obj):
    """Reduce to plain JSON types, so that emitted reports round-trip exactly."""
    return json.loads(json.dumps(obj, default=str))


def emit_json(obj) -> str:
    return json.dumps(normalize(obj), indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# dims


def dims_row(F: Field, m: int) -> dict:
    cx = complexes_for(F)
    qc = F.classify()
    row = {
        "m": m,
        "HH_m": cx.hh_dim(m), "HH_m_closed": closed_hh_dim(qc, m),
        "HH^m": cx.hh_codim(m), "HH^m_closed": closed_hh_codim(qc, m),
        "HC_m": cx.hc_dim(m), "HC_m_closed": closed_hc_dim(qc, m, literal=False),
        "rank_tau": cx.rank_tau(m),
        "rank_tau_closed": closed_rank_tau(qc, m, literal=False) if m else 0,
    }
    ok = all(row[k] == row[f"{k}_closed"] for k in ("HH_m", "HH^m", "HC_m", "rank_tau"))
    row["status"] = "ok" if ok else "MISMATCH"
    # the printed formulas disagree with the computation at a few special degrees
    printed = {"HC_m": closed_hc_dim(qc, m, literal=True),
               "rank_tau": closed_rank_tau(qc, m, literal=True) if m else 0}
    row["printed_form_differs"] = sorted(k for k, v in printed.items() if v != row[k])
    return row


def cmd_dims(cfg: RunConfig, cache: ResultCache) -> tuple[object, int]:
    F = cfg.field
    top = 12 if cfg.max_degree is None else cfg.max_degree
    rows = [cache.fetch(str(F.spec), "dims", m, lambda m=m: dims_row(F, m)) for m in range(top + 1)]
    code = EXIT_OK if all(r["status"] == "ok" for r in rows) else EXIT_MISMATCH
    return {"q": str(F.spec), "qclass": str(F.classify()), "rows": rows}, code


_DIM_COLUMNS = ["m", "HH_m", "HH_m_closed", "HH^m", "HH^m_closed", "HC_m", "HC_m_closed", "status"]


def render_dims(result: dict, fmt: str) -> str:
    rows = result["rows"]
    cells = [[str(r[c]) for c in _DIM_COLUMNS] + [",".join(r["printed_form_differs"])] for r in rows]
    header = _DIM_COLUMNS + ["printed form differs"]
    title = f"q = {result['q']} ({result['qclass']})"
    if fmt == "markdown":
        lines = [f"**{title}**", "", "| " + " | ".join(header) + " |",
                 "|" + "---|" * len(header)]
        lines += ["| " + " | ".join(c) + " |" for c in cells]
        return "\n".join(lines)
    widths = [max(len(h), *(len(c[k]) for c in cells)) for k, h in enumerate(header)]
    lines = [title, "  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(cell, widths)) for cell in cells]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# element commands


_BASIS_LABEL = re.compile(r"b(\d+)\.(\d+)")


def _parse_class(R, text: str):
    """A ring expression such as ``-2*u1*w0`` or a basis label ``b<m>.<k>``."""
    label = _BASIS_LABEL.fullmatch(text.strip())
    if label:
        m, k = map(int, label.groups())
        basis = complexes_for(R.F).hh_basis(m)
        if k >= len(basis):
            raise ConfigError(f"HH^{m} has {len(basis)} basis classes, no {text!r}")
        return basis[k]
    try:
        return R.parse(text)
    except UnknownClass as exc:
        raise ConfigError(exc.args[0]) from None
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _element(R, label: str, x) -> dict:
    return {"expr": label, "degree": x.degree, "names": R.render(x), "pairs": R.render_pairs(x)}


def _check_degree(cfg: RunConfig, m: int) -> None:
    if m < 0 or (cfg.max_degree is not None and m > cfg.max_degree):
        raise DegreeOutOfRange(f"result degree {m} is outside 0..{cfg.max_degree}")


def cmd_basis(cfg: RunConfig, cache: ResultCache, degree: int | None) -> tuple[object, int]:
    F = cfg.field
    R = ring_for(F)
    if degree is not None:
        _check_degree(cfg, degree)
        degrees = [degree]
    else:
        degrees = range((4 if cfg.max_degree is None else cfg.max_degree) + 1)

    def compute(m):
        out = []
        for k, x in enumerate(complexes_for(F).hh_basis(m)):
            out.append(_element(R, f"b{m}.{k}", x))
        return out

    blocks = [{"m": m, "classes": cache.fetch(str(F.spec), "basis", m, lambda m=m: compute(m))}
              for m in degrees]
    return {"q": str(F.spec), "degrees": blocks}, EXIT_OK


def _binary(cfg: RunConfig, cache: ResultCache, kind: str, a: str, b: str):
    F = cfg.field
    R = ring_for(F)
    x, y = _parse_class(R, a), _parse_class(R, b)
    if kind == "cup":
        n, op, sym = x.degree + y.degree, R.cup, "u"
    else:
        from .bv import bracket

        n, op, sym = max(x.degree + y.degree - 1, 0), bracket, ","
    _check_degree(cfg, n)
    label = f"{a} {sym} {b}" if kind == "cup" else f"[{a}, {b}]"
    value = cache.fetch(str(F.spec), f"{kind}:{a}|{b}", n, lambda: _element(R, label, op(x, y)))
    return {"q": str(F.spec), "result": value}, EXIT_OK


def cmd_bv(cfg: RunConfig, cache: ResultCache, a: str) -> tuple[object, int]:
    from .bv import bv_for

    F = cfg.field
    R = ring_for(F)
    x = _parse_class(R, a)
    if x.degree == 0:
        raise DegreeOutOfRange("the BV operator is defined on positive degrees")
    _check_degree(cfg, x.degree - 1)
    value = cache.fetch(str(F.spec), f"bv:{a}", x.degree - 1,
                        lambda: _element(R, f"D({a})", bv_for(F).delta(x)))
    return {"q": str(F.spec), "result": value}, EXIT_OK


def render_elements(result: dict, fmt: str) -> str:
    if "result" in result:
        items = [result["result"]]
    else:
        items = [c for block in result["degrees"] for c in block["classes"]]
        if not items:
            return f"q = {result['q']}: all requested degrees are zero"
    if fmt == "markdown":
        lines = ["| class | degree | generators | pairs |", "|---|---|---|---|"]
        lines += [f"| {e['expr']} | {e['degree']} | `{e['names']}` | `{e['pairs']}` |" for e in items]
        return "\n".join(lines)
    if "result" in result:
        e = items[0]
        if e["names"] == e["pairs"]:
            return e["names"]
        return f"{e['names']}\n  = {e['pairs']}"
    return "\n".join(f"{e['expr']:>8}  deg {e['degree']}  {e['names']}   [{e['pairs']}]" for e in items)


# ---------------------------------------------------------------------------
# verify


def _suite_complex_laws(F, top):
    return complex_laws(F, 20 if top is None else top)


def _suite_dims(F, top):
    top = 24 if top is None else top
    rows = [dims_row(F, m) for m in range(top + 1)]
    bases = listed_basis_check(F, min(top, 12))
    printed = listed_basis_check(F, min(top, 12), literal=True)
    differs = [r["m"] for r in printed["rows"] if not (r["cocycles"] and r["spans"])]
    return {"rows": rows, "listed_bases": bases, "printed_list_differs": differs,
            "ok": all(r["status"] == "ok" for r in rows) and bases["ok"]}


def _suite_ring(F, top):
    R = ring_for(F)
    pres = R.verify_presentation(10 if top is None else top)
    nil = R.nilpotent_quotient(8 if top is None else min(top, 8))
    return {"presentation": pres, "nilpotent_quotient": nil, "ok": pres["ok"] and nil["ok"]}


def _suite_cup(F, top):
    return cup_coherence(F, 10 if top is None else top)


def _suite_homotopy(F, top):
    from .bv import homotopy_laws, psi_phi_identity

    h = homotopy_laws(F, 8 if top is None else top)
    p = psi_phi_identity(F, 6 if top is None else min(top, 6))
    return {"homotopy": h, "psi_phi": p, "ok": h["ok"] and p["ok"]}


def _suite_chainmaps(F, top):
    from .bv import chain_map_laws, verify_psi_cases

    c = chain_map_laws(F, 8 if top is None else top)
    p = verify_psi_cases(F, 5 if top is None else min(top, 5))
    return {"chain_maps": c, "psi_cases": p, "ok": c["ok"] and p["ok"]}


def _suite_bv_tables(F, top):
    from .bv import delta_squared, verify_bv_tables

    t = verify_bv_tables(F)
    d = delta_squared(F, 6 if top is None else top)
    return {"tables": t, "delta_squared": d, "ok": t["ok"] and d["ok"]}


def _suite_gerstenhaber(F, top):
    from .bv import gerstenhaber_laws

    return gerstenhaber_laws(F, top)


def _suite_ideal(F, top):
    from .bv import gerstenhaber_ideal_quotient

    return gerstenhaber_ideal_quotient(F, 8 if top is None else top)


def _suite_oracle(F, top):
    from .oracle import crosscheck

    return crosscheck(F, 5 if top is None else top)


SUITES = {
    "complex-laws": _suite_complex_laws,
    "dims": _suite_dims,
    "ring": _suite_ring,
    "cup-coherence": _suite_cup,
    "homotopy": _suite_homotopy,
    "chainmaps": _suite_chainmaps,
    "bv-tables": _suite_bv_tables,
    "gerstenhaber": _suite_gerstenhaber,
    "gerstenhaber-ideal": _suite_ideal,
    "oracle-crosscheck": _suite_oracle,
}
DEFAULT_SUITES = ["complex-laws", "dims", "ring", "homotopy", "chainmaps", "bv-tables",
                  "oracle-crosscheck"]


def cmd_verify(cfg: RunConfig) -> tuple[object, int]:
    F = cfg.field
    names = cfg.suites or DEFAULT_SUITES
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ConfigError(f"unknown suite(s) {', '.join(unknown)}; choose from {', '.join(SUITES)}")
    results = {}
    for name in names:
        start = time.perf_counter()
        rep = SUITES[name](F, cfg.max_degree)
        results[name] = {"ok": bool(rep["ok"]), "seconds": round(time.perf_counter() - start, 2),
                         "report": rep}
    report = normalize({"q": str(F.spec), "qclass": str(F.classify()), "suites": results,
                        "ok": all(r["ok"] for r in results.values())})
    if cfg.report_path is not None:
        cfg.report_path.write_text(emit_json(report) + "\n")
    return report, EXIT_OK if report["ok"] else EXIT_MISMATCH


def _suite_summary(name: str, rep: dict) -> str:
    inner = rep["report"]
    extra = ""
    if name == "bv-tables":
        t = inner["tables"]
        extra = f", {t['nonzero_checked']} nonzero-entry checks of {t['checked']}"
    elif name == "dims":
        extra = f", {len(inner['rows'])} degrees"
    return f"{'PASS' if rep['ok'] else 'FAIL'}  {name} ({rep['seconds']}s{extra})"


def render_verify(report: dict, fmt: str) -> str:
    lines = [_suite_summary(n, r) for n, r in report["suites"].items()]
    if fmt == "markdown":
        return "\n".join(f"- {line}" for line in lines)
    return f"q = {report['q']} ({report['qclass']})\n" + "\n".join(lines)


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--q", default="generic", help="generic | rational:p/r | zeta:s")
    p.add_argument("--max", type=int, dest="max_degree", help="largest degree to compute")
    p.add_argument("--format", choices=["text", "json", "markdown"], default="text")
    p.add_argument("--cache", type=Path, help="JSON-lines result cache")
    p.add_argument("--suite", default="", help="comma-separated suite names (verify)")
    p.add_argument("--report", type=Path, help="write the JSON verification report here")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="zigzag-hh", description="Hochschild theory of the quantum zigzag algebra.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("dims", parents=[common], help="HH_m, HH^m and HC_m with closed forms")
    b = sub.add_parser("basis", parents=[common], help="cohomology basis classes")
    b.add_argument("degree", nargs="?", type=int)
    for name in ("cup", "bracket"):
        c = sub.add_parser(name, parents=[common], help=f"{name} of two classes")
        c.add_argument("x")
        c.add_argument("y")
    d = sub.add_parser("bv", parents=[common], help="BV operator of a class")
    d.add_argument("x")
    sub.add_parser("verify", parents=[common], help="run verification suites")
    return parser


def config_from(args) -> RunConfig:
    try:
        spec = parse_qspec(args.q)
        make_field(spec)
    except QSpecError as exc:
        raise ConfigError(str(exc)) from None
    if args.max_degree is not None and args.max_degree < 0:
        raise ConfigError("--max must be nonnegative")
    for path in (args.report, args.cache):
        if path is not None and not path.parent.is_dir():
            raise ConfigError(f"directory {path.parent} does not exist")
    suites = [s.strip() for s in args.suite.split(",") if s.strip()]
    return RunConfig(str(spec), args.max_degree, args.format, args.cache, suites, args.report)


def run(argv: list[str] | None = None) -> tuple[str, int]:
    """Parse, execute and render; returns (output text, exit code)."""
    args = build_parser().parse_args(argv)
    cfg = config_from(args)
    cache = ResultCache(cfg.cache_path)
    if args.command == "dims":
        result, code = cmd_dims(cfg, cache)
        render = render_dims
    elif args.command == "basis":
        result, code = cmd_basis(cfg, cache, args.degree)
        render = render_elements
    elif args.command in ("cup", "bracket"):
        result, code = _binary(cfg, cache, args.command, args.x, args.y)
        render = render_elements
    elif args.command == "bv":
        result, code = cmd_bv(cfg, cache, args.x)
        render = render_elements
    else:
        result, code = cmd_verify(cfg)
        render = render_verify
    text = emit_json(result) if cfg.output == "json" else render(result, cfg.output)
    return text, code


def main(argv: list[str] | None = None) -> int:
    try:
        text, code = run(argv)
    except (ConfigError, WorkingSetExceeded) as exc:
        print(f"zigzag-hh: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
