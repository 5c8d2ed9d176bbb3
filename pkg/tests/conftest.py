import itertools

import pytest

from vpamin.dfa import Dfa
from vpamin.immersion import Immersion, Slot, TransitionGraph, disjoint_union

AB = ("a", "b")


def aplus() -> Dfa:
    return Dfa(2, AB, {(0, "a"): 1, (1, "a"): 1}, 0, {1})


def astarb() -> Dfa:
    return Dfa(2, AB, {(0, "a"): 0, (0, "b"): 1}, 0, {1})


def astar() -> Dfa:
    return Dfa(1, AB, {(0, "a"): 0}, 0, {0})


def shared_pair() -> Immersion:
    g = TransitionGraph(3, AB, {(0, "a"): 1, (1, "a"): 1, (1, "b"): 2})
    return Immersion(g, (Slot(0, {1}), Slot(1, {2})))


def union_pair() -> Immersion:
    return disjoint_union([aplus(), astarb()])


def words(alphabet, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


@pytest.fixture
def targets():
    return [aplus(), astarb()]


_CRITERIA: dict[int, tuple[str, bool, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    n, title = mark.args
    detail = ""
    if rep.failed:
        msg = str(call.excinfo.value).strip().splitlines()
        detail = msg[0] if msg else type(call.excinfo.value).__name__
    _CRITERIA[n] = (title, rep.passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, ok, detail = _CRITERIA[n]
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
