import pathlib

import numpy as np
import pytest

from idealforge.qo import FiniteQO, validate

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def singleton():
    return FiniteQO(["a"], np.eye(1, dtype=bool))


@pytest.fixture
def a2():
    return FiniteQO(["a", "b"], np.eye(2, dtype=bool))


@pytest.fixture
def chain2():
    return validate(["a", "b"], [("a", "b")], close=True)


@pytest.fixture
def chain3():
    return validate(["a", "b", "c"], [("a", "b"), ("b", "c")], close=True)


@pytest.fixture
def antichain3():
    return FiniteQO(["a", "b", "c"], np.eye(3, dtype=bool))


@pytest.fixture
def n_shape():
    return validate(["a", "b", "c", "d"], [("a", "c"), ("b", "c"), ("b", "d")], close=True)


@pytest.fixture
def two_cycle():
    # a and b compare both ways; c sits above the pair
    return validate(["a", "b", "c"], [("a", "b"), ("b", "a"), ("a", "c")], close=True)
