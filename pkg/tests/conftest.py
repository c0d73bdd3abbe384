"""Collects the acceptance-criterion outcomes and prints one line per criterion."""

_criteria = []


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria.append((props["criterion"], report.outcome, props.get("elapsed")))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, elapsed in _criteria:
        status = "PASS" if outcome == "passed" else "FAIL"
        timing = f" ({elapsed:.2f} s)" if elapsed is not None else ""
        terminalreporter.write_line(f"{status}  {name}{timing}")
