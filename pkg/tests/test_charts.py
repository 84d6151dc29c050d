from fractions import Fraction as Q

import pytest

from taut.algebra import Polynomial, RationalFunction
from taut.charts import (
    U0_VARS,
    U1_VARS,
    CoordinateMap,
    RationalVectorField,
    bracket,
    cocycle_table,
    gluing_cocycle_check,
    gluing_map,
    nbeta_chart_reduction,
    pushforward,
    rnc_chart_fields,
    verify_chart_consistency,
)


def rf(text, vars):
    return RationalFunction(Polynomial.parse(text, vars))


@pytest.mark.parametrize("k", range(1, 6))
def test_chart_consistency(k):
    assert verify_chart_consistency(k)


def test_wrong_field_is_detected():
    m = gluing_map(3)
    u0, u1 = rnc_chart_fields(3, "U0"), rnc_chart_fields(3, "U1")
    assert pushforward(u0["H"], m) != u1["E12"]
    # the gluing is not consistent for a mismatched degree
    assert pushforward(rnc_chart_fields(2, "U0")["E12"], m) != u1["E12"]


def test_gluing_map_inverse_and_composition():
    m = gluing_map(2)
    assert m.is_invertible()
    back = CoordinateMap(U1_VARS, U0_VARS, m.inverse, m.forward)
    loop = m.then(back)
    assert list(loop.forward) == [RationalFunction.var(U0_VARS, v) for v in U0_VARS]
    with pytest.raises(ValueError):
        CoordinateMap(U0_VARS, U1_VARS, m.forward, (rf("lam", U1_VARS), rf("t", U1_VARS)))


def test_chart_fields_form_lie_algebra():
    # [H, E12] = 2 E12 and [E12, E21] = H on each chart
    for chart in ("U0", "U1"):
        f = rnc_chart_fields(3, chart)
        assert bracket(f["H"], f["E12"]) == f["E12"].scale(2)
        assert bracket(f["H"], f["E21"]) == f["E21"].scale(-2)
        assert bracket(f["E12"], f["E21"]) == f["H"]


def test_vector_field_apply():
    X = RationalVectorField.parse(["lam", "s^2"], U0_VARS)
    assert X.apply(rf("lam*s", U0_VARS)) == rf("lam*s + lam*s^2", U0_VARS)


def test_cocycle_table():
    for alpha, k, beta in cocycle_table():
        assert gluing_cocycle_check(alpha, k, beta)


def test_cocycle_rejects_bad_input():
    x = rf("x", ("x",))
    with pytest.raises(ValueError):
        gluing_cocycle_check(x, 2, Q(1, 3))
    with pytest.raises(ValueError):
        gluing_cocycle_check(x - x, 2, Q(1, 2))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_nbeta_dichotomy(k):
    for b0 in (Q(0), Q(1), Q(-1), Q(1, 2), Q(2, k), Q(3, k), Q(5, 7)):
        assert nbeta_chart_reduction(k, b0) == (k * b0 != 2)
