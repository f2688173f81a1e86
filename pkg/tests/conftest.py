from __future__ import annotations

import pytest

from algzeta.specio import load_spec


def builtin(name):
    return load_spec(name).spec


@pytest.fixture(scope="session")
def ledrappier():
    return builtin("ledrappier")


@pytest.fixture(scope="session")
def ledrappier3():
    return builtin("ledrappier3")


@pytest.fixture(scope="session")
def pshift():
    return builtin("pshift")


@pytest.fixture(scope="session")
def mixed():
    return builtin("mixed")


@pytest.fixture(scope="session")
def principal2():
    return builtin("principal2")


@pytest.fixture(scope="session")
def point():
    return builtin("point")
