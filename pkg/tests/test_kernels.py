import os
import random
import subprocess
import sys
from fractions import Fraction as Q

import pytest

from taut import _kernels_py as py
from taut import kernels
from taut.algebra import RationalFunction

cy = pytest.importorskip("taut._kernels_cy")


def rand_terms(rng, length, count=4, maxdeg=3):
    out = {}
    for _ in range(count):
        e = tuple(rng.randint(0, maxdeg) for _ in range(length))
        out[e] = Q(rng.randint(-9, 9), rng.randint(1, 4))
    return {e: c for e, c in out.items() if c}


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


@pytest.mark.parametrize("n", [1, 2, 3])
def test_weyl_mul_parity(n):
    rng = random.Random(n)
    for _ in range(100):
        a, b = rand_terms(rng, 2 * n), rand_terms(rng, 2 * n)
        assert cy.weyl_mul(a, b, n) == py.weyl_mul(a, b, n)
        q = tuple(rng.randint(0, 2) for _ in range(2 * n))
        assert cy.weyl_mono_mul(Q(3, 2), q, a, n) == py.weyl_mono_mul(Q(3, 2), q, a, n)


def test_poly_mul_and_axpy_parity():
    rng = random.Random(5)
    for _ in range(100):
        a, b = rand_terms(rng, 3), rand_terms(rng, 3)
        assert cy.poly_mul(a, b) == py.poly_mul(a, b)
        assert cy.axpy(dict(a), b, Q(-2, 3)) == py.axpy(dict(a), b, Q(-2, 3))


def test_rational_function_coefficients():
    v = ("x",)
    x = RationalFunction.var(v, "x")
    a = {(0, 1): x, (0, 0): 1 / x}
    b = {(0, 2): x + 1}
    assert cy.weyl_mul(a, b, 1) == py.weyl_mul(a, b, 1)


def test_pure_python_fallback_env():
    env = dict(os.environ, TAUT_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import taut; print(taut.BACKEND)"], capture_output=True, text=True, env=env
    )
    assert out.stdout.strip() == "python"
