import random

import pytest

from holored.files import load_operator

CATALOG_OPERATORS = ["franel", "franel_unsigned", "delannoy", "domb", "domb_m-32", "domb_m64",
                     "franel4", "franel4_m5776", "central_franel"]


@pytest.fixture
def rng():
    return random.Random(20261016)


@pytest.fixture(scope="session")
def ops():
    return {name: load_operator(name) for name in CATALOG_OPERATORS}
