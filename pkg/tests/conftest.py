import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

# ambient types small enough for exhaustive sweeps
FINITE_LE4 = ["A1", "A2", "B2", "G2", "A3", "B3", "C3", "A4", "B4", "C4", "D4", "F4"]
AFFINE_LE4 = ["Ahat1", "Ahat2", "Chat2", "Gvhat2", "Ahat3", "Bhat3", "Chat3", "Cphat2"]


# ------------------------------------------------ acceptance summary lines

_CRITERIA: dict = {}


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    if report.when != "call" and report.outcome != "failed" and not hasattr(report, "wasxfail"):
        return
    n = props["criterion"]
    entry = _CRITERIA.setdefault(n, {"title": props.get("title", ""), "outcomes": []})
    if hasattr(report, "wasxfail"):
        outcome = "xfail"
    else:
        outcome = report.outcome
    entry["outcomes"].append((report.nodeid.split("::")[-1], outcome, props.get("note", "")))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        entry = _CRITERIA[n]
        outcomes = [o for _, o, _ in entry["outcomes"]]
        ok = all(o == "passed" for o in outcomes)
        line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {entry['title']}"
        notes = [f"{name}: {o}" + (f" ({note})" if note else "")
                 for name, o, note in entry["outcomes"] if o != "passed"]
        if notes:
            line += "  [" + "; ".join(notes) + "]"
        terminalreporter.write_line(line)
