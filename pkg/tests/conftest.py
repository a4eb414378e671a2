import sys

import pytest

from etale.families import (action_groupoid, cyclic_group_groupoid, i2_without_swap,
                            pair_groupoid, unit_groupoid)
from etale.order import chain, powerset_frame
from etale.semigroups import symmetric_inverse_monoid
from etale.topology import FinTopSpace, discrete_space, indiscrete_space, sierpinski


def v_space():
    """Three points, two of them open, the third in the closure of both."""
    return FinTopSpace(["a", "b", "c"], [[], ["a"], ["b"], ["a", "b"], ["a", "b", "c"]])


SPACES = {
    "empty": lambda: discrete_space(0),
    "point": lambda: discrete_space(1),
    "discrete(2)": lambda: discrete_space(2),
    "discrete(3)": lambda: discrete_space(3),
    "indiscrete(2)": lambda: indiscrete_space(2),
    "indiscrete(3)": lambda: indiscrete_space(3),
    "sierpinski": sierpinski,
    "v": v_space,
}

FRAMES = {
    "chain(1)": lambda: chain(1),
    "chain(2)": lambda: chain(2),
    "chain(3)": lambda: chain(3),
    "chain(4)": lambda: chain(4),
    "powerset(2)": lambda: powerset_frame(["1", "2"]),
    "powerset(3)": lambda: powerset_frame(["1", "2", "3"]),
}

GROUPOIDS = {
    "pair(1)": lambda: pair_groupoid(1),
    "pair(2)": lambda: pair_groupoid(2),
    "pair(3)": lambda: pair_groupoid(3),
    "cyclic_group(2)": lambda: cyclic_group_groupoid(2),
    "cyclic_group(3)": lambda: cyclic_group_groupoid(3),
    "cyclic_group(2)/indiscrete": lambda: cyclic_group_groupoid(2, "indiscrete"),
    "unit(sierpinski)": lambda: unit_groupoid(sierpinski(), "unit(sierpinski)"),
    "unit(discrete(3))": lambda: unit_groupoid(discrete_space(3), "unit(discrete(3))"),
    "unit(indiscrete(2))": lambda: unit_groupoid(indiscrete_space(2), "unit(indiscrete(2))"),
    "action(2,2)": lambda: action_groupoid(2, 2),
    "action(4,2)": lambda: action_groupoid(4, 2),
}

SEMIGROUPS = {
    "I1": lambda: symmetric_inverse_monoid(1),
    "I2": lambda: symmetric_inverse_monoid(2),
    "S6": i2_without_swap,
}


@pytest.fixture
def I2():
    return symmetric_inverse_monoid(2)


@pytest.fixture
def S6():
    return i2_without_swap()


@pytest.fixture
def PAIR2():
    return pair_groupoid(2)


@pytest.fixture
def Z2G():
    return cyclic_group_groupoid(2)


@pytest.fixture
def SIERP():
    return sierpinski()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
