import os
import sys
import time

sys.path.insert(0, os.path.dirname(__file__))

import criteria  # noqa: E402


def pytest_sessionstart(session):
    criteria.SESSION_START = time.perf_counter()


def pytest_collection_modifyitems(session, config, items):
    # the wall-clock criterion must observe every other test
    last = [it for it in items if it.name == "test_criterion_10_suite_wall_clock"]
    items[:] = [it for it in items if it not in last] + last


def pytest_terminal_summary(terminalreporter):
    if not criteria.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(criteria.RESULTS):
        terminalreporter.write_line(criteria.RESULTS[n])
