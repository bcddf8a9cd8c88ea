"""Shared pytest wiring for the test suite."""

import time

# Wall-clock origin for the suite runtime criterion; conftest is imported
# once at session start, before any test module.
SESSION_T0 = time.perf_counter()


def pytest_collection_modifyitems(items):
    # The runtime criterion must observe the whole session, so its node runs
    # last regardless of alphabetical collection order. The sort is stable:
    # everything else keeps its position.
    items.sort(key=lambda item: item.name == "test_criterion_9_suite_runtime")
