import pytest

from singlet.weights import Params


@pytest.fixture
def p2():
    return Params(2)


@pytest.fixture
def p3():
    return Params(3)


@pytest.fixture
def p5():
    return Params(5)
