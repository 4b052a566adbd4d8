import pytest

CRITERIA = {
    1: "claw catalog counts",
    2: "bad-case counts for the three configurations",
    3: "solver agrees with brute force",
    4: "Petersen graph checks",
    5: "sharpness certificate",
    6: "discharging charge identities",
    7: "no predicate-clean plane graph with n <= 12",
    8: "determinism of criteria 1-2",
}

_outcomes: dict[int, list[tuple[str, str]]] = {}
_notes: dict[int, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion checked by the test")


@pytest.fixture
def note():
    """note(n, text) attaches a short detail to criterion n's summary line."""
    def add(n, text):
        _notes.setdefault(n, []).append(text)
    return add


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    rep = (yield).get_result()
    m = item.get_closest_marker("criterion")
    if m is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        outcome = "xfailed" if hasattr(rep, "wasxfail") else rep.outcome
        _outcomes.setdefault(m.args[0], []).append((item.name, outcome))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(CRITERIA):
        outs = _outcomes.get(n)
        if not outs:
            tr.write_line(f"criterion {n} ({CRITERIA[n]}): NOT RUN")
            continue
        ok = all(o == "passed" for _, o in outs)
        detail = [f"{sum(o == 'passed' for _, o in outs)}/{len(outs)} checks passed"]
        detail += [f"{name} {o}" for name, o in outs if o != "passed"]
        detail += _notes.get(n, [])
        tr.write_line(f"criterion {n} ({CRITERIA[n]}): {'PASS' if ok else 'FAIL'} - {'; '.join(detail)}")
