import pytest

# acceptance id -> (description, [(test name, passed, measured)])
_ACCEPTANCE: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(ac_id, description): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        ac_id, desc = marker.args
        measured = "; ".join(str(v) for k, v in item.user_properties if k == "measured")
        entry = _ACCEPTANCE.setdefault(ac_id, (desc, []))
        entry[1].append((item.name, report.passed, measured))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for ac_id in sorted(_ACCEPTANCE, key=lambda s: int(s[2:])):
        desc, runs = _ACCEPTANCE[ac_id]
        ok = all(p for _, p, _ in runs)
        tr.write_line(f"{ac_id:5} {'PASS' if ok else 'FAIL'}  {desc}")
        for name, passed, measured in runs:
            detail = f"  [{measured}]" if measured else ""
            tr.write_line(f"        {'ok  ' if passed else 'FAIL'} {name}{detail}")
