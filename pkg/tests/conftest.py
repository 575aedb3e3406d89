import pytest

from zigzag_hh.scalars import make_field

Q_SAMPLES = ["generic", "rational:1/1", "rational:-1/1", "zeta:3", "zeta:4", "zeta:5", "zeta:6"]


@pytest.fixture(params=Q_SAMPLES)
def field(request):
    return make_field(request.param)


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion, after the normal summary."""
    lines = []
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            if getattr(rep, "when", "call") != "call" and status != "error":
                continue
            title = dict(rep.user_properties).get("criterion")
            if title is not None:
                lines.append((title, "PASS" if status == "passed" else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for title, verdict in sorted(lines, key=lambda t: int(t[0].split(".")[0])):
            terminalreporter.write_line(f"{verdict}  {title}")
