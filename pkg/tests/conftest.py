import sys
from collections import defaultdict
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_by_node: dict[str, int] = {}
_titles: dict[int, str] = {}
_outcomes: dict[int, list[bool]] = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _by_node[item.nodeid] = m.args[0]
            _titles[m.args[0]] = m.args[1]


def pytest_runtest_logreport(report):
    num = _by_node.get(report.nodeid)
    if num is None:
        return
    if report.when == "call" or report.outcome != "passed":
        _outcomes[num].append(report.outcome == "passed")


def pytest_terminal_summary(terminalreporter):
    if not _titles:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_titles):
        results = _outcomes.get(num)
        status = "NOT RUN" if not results else ("PASS" if all(results) else "FAIL")
        terminalreporter.write_line(f"criterion {num:2d}: {status:7s} {_titles[num]}")
