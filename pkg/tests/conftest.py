import contextlib
import random

import pytest

from normbase import gf


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


@pytest.fixture(scope="session")
def f2():
    return gf.prime_field(2)


@pytest.fixture(scope="session")
def f3():
    return gf.prime_field(3)


@pytest.fixture(scope="session")
def f4():
    return gf.base_field(2, 2)


@contextlib.contextmanager
def criterion(name):
    """Print one pass/fail line per acceptance criterion."""
    try:
        yield
    except BaseException:
        print(f"\n[acceptance] {name}: FAIL")
        raise
    print(f"\n[acceptance] {name}: PASS")
