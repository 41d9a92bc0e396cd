from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")

_criteria: dict[int, tuple[str, str, str]] = {}


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        state = "PASS" if report.passed else "FAIL"
        _criteria[props["criterion"]] = (state, props.get("title", ""), props.get("detail", ""))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_criteria):
        state, title, detail = _criteria[n]
        tr.write_line(f"criterion {n}: {state}  {title}")
        if detail:
            tr.write_line(f"    {detail}")
