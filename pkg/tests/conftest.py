"""Prints one PASS/FAIL line per acceptance criterion at the end of the run."""

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, statement): acceptance criterion")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            number, statement = mark.args
            item.user_properties += [("criterion", number), ("statement", statement)]


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria[props["criterion"]] = (report.outcome, props.get("statement", ""), report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        outcome, statement, seconds = _criteria[number]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {verdict}  {statement}  ({seconds:.1f}s)")
