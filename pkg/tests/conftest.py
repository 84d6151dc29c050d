import random
from fractions import Fraction as Q

import pytest

from taut.algebra import Polynomial
from taut.weyl import WeylElement


def random_rational(rng, size=5):
    den = rng.randint(1, 3)
    return Q(rng.randint(-size, size), den)


def random_polynomial(rng, vars, terms=3, maxdeg=2):
    n = len(vars)
    out = {}
    for _ in range(terms):
        e = tuple(rng.randint(0, maxdeg) for _ in range(n))
        out[e] = out.get(e, 0) + random_rational(rng)
    return Polynomial(vars, out)


def random_operator(rng, vars, terms=3, maxdeg=2):
    n = len(vars)
    out = {}
    for _ in range(terms):
        e = tuple(rng.randint(0, maxdeg) for _ in range(2 * n))
        out[e] = out.get(e, 0) + random_rational(rng)
    return WeylElement(vars, out)


@pytest.fixture
def rng():
    return random.Random(20260518)
