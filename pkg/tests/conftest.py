_criteria = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    props = dict(report.user_properties)
    if "criterion" in props:
        _criteria[props["criterion"]] = (report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for cid in sorted(_criteria):
        outcome, duration = _criteria[cid]
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {cid}: {status} [{duration:.1f}s] {CRITERIA[cid][0]}")
