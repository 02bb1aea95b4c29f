import pytest

from dealab.panel import Panel


@pytest.fixture
def single():
    return Panel.from_activities({"solo": (1.0, 1.0)})


@pytest.fixture
def d1():
    # one input, one output; A has the best ratio, C is the largest
    return Panel.from_activities({"A": (2, 2), "B": (4, 2), "C": (8, 6)})


@pytest.fixture
def d2():
    # two inputs, unit output; C sits on A's vertical dashed segment
    return Panel.from_activities({"A": ([1, 2], 1), "B": ([2, 1], 1), "C": ([1, 3], 1)})


@pytest.fixture
def d3():
    # A on the increasing arm, B at the max ratio, C on the decreasing arm
    return Panel.from_activities({"A": (1, 1), "B": (2, 3), "C": (4, 4)})
