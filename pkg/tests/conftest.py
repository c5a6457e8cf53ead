import pytest

from logfactory import TABLE_1B, table1a_log


@pytest.fixture
def table1a():
    return table1a_log()


@pytest.fixture
def table1b():
    return TABLE_1B


@pytest.fixture
def table1a_csv(tmp_path):
    path = tmp_path / "table1a.csv"
    path.write_text(
        "case,activity,time\n"
        "1,Send request,2017-10-01\n"
        "1,Check application,2017-10-02\n"
        "1,Check document,2017-10-02\n"
        "1,Accept,2017-10-05\n"
        "2,Send request,2017-10-03\n"
        "2,Check application,2017-10-07\n"
        "2,Reject,2017-10-10\n",
        encoding="utf-8",
    )
    return path


_acceptance: list[tuple[str, str, str]] = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        detail = "; ".join(str(v) for k, v in report.user_properties if k == "detail")
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome, detail))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name, outcome, detail in _acceptance:
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{mark}  {name}" + (f"  [{detail}]" if detail else ""))
