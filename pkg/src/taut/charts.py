"""Symbolic checks on the two standard charts of the cone over a rational normal curve.

Chart ``U0`` has coordinates ``(lam, s)`` and chart ``U1`` has ``(mu, t)``;
they are glued by ``(lam, s) -> (lam * s^k, 1/s)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Sequence

from .algebra import Polynomial, RationalFunction, to_rational
from .parsing import parse_operator
from .weyl import left_groebner

U0_VARS = ("lam", "s")
U1_VARS = ("mu", "t")
LABELS = ("E12", "E21", "H", "e")


def _rf(text: str, vars) -> RationalFunction:
    return RationalFunction(Polynomial.parse(text, vars))


@dataclass(frozen=True)
class RationalVectorField:
    """``sum_i coeffs[i] * d/d vars[i]``."""

    vars: tuple
    coeffs: tuple

    def __post_init__(self):
        if len(self.vars) != len(self.coeffs):
            raise ValueError("one coefficient per variable is required")
        for c in self.coeffs:
            if c.vars != tuple(self.vars):
                raise ValueError("coefficient context mismatch")

    @classmethod
    def parse(cls, texts: Sequence[str], vars) -> "RationalVectorField":
        vars = tuple(vars)
        return cls(vars, tuple(_rf(t, vars) for t in texts))

    def apply(self, f: RationalFunction) -> RationalFunction:
        total = RationalFunction.constant(self.vars, 0)
        for i, c in enumerate(self.coeffs):
            if c:
                total = total + c * f.derivative(i)
        return total

    def __add__(self, other):
        return RationalVectorField(self.vars, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c):
        return RationalVectorField(self.vars, tuple(x * to_rational(c) for x in self.coeffs))

    def __str__(self):
        parts = [f"({c})*d{v}" for v, c in zip(self.vars, self.coeffs) if c]
        return " + ".join(parts) or "0"


def bracket(X: RationalVectorField, Y: RationalVectorField) -> RationalVectorField:
    """Lie bracket of vector fields."""
    return RationalVectorField(
        X.vars, tuple(X.apply(b) - Y.apply(a) for a, b in zip(X.coeffs, Y.coeffs))
    )


@dataclass(frozen=True)
class CoordinateMap:
    """Birational map ``source -> target`` with an explicit inverse."""

    source: tuple
    target: tuple
    forward: tuple
    inverse: tuple

    def __post_init__(self):
        if len(self.forward) != len(self.target) or len(self.inverse) != len(self.source):
            raise ValueError("map component counts do not match the charts")
        if not self.is_invertible():
            raise ValueError("forward and inverse are not mutually inverse")

    def is_invertible(self) -> bool:
        ident_t = [RationalFunction.var(self.target, v) for v in self.target]
        ident_s = [RationalFunction.var(self.source, v) for v in self.source]
        there = [f.compose(list(self.inverse)) for f in self.forward]
        back = [g.compose(list(self.forward)) for g in self.inverse]
        return there == ident_t and back == ident_s

    def then(self, other: "CoordinateMap") -> "CoordinateMap":
        """Composite: first ``self``, then ``other``."""
        fwd = tuple(f.compose(list(self.forward)) for f in other.forward)
        inv = tuple(g.compose(list(other.inverse)) for g in self.inverse)
        return CoordinateMap(self.source, other.target, fwd, inv)


def pushforward(vf: RationalVectorField, m: CoordinateMap) -> RationalVectorField:
    """Chain rule: apply the Jacobian of ``forward``, then rewrite in target coordinates."""
    if tuple(vf.vars) != tuple(m.source):
        raise ValueError("vector field is not on the source chart")
    new = []
    for F in m.forward:
        c = RationalFunction.constant(m.source, 0)
        for j, a in enumerate(vf.coeffs):
            if a:
                c = c + F.derivative(j) * a
        new.append(c.compose(list(m.inverse)))
    return RationalVectorField(m.target, tuple(new))


def gluing_map(k: int) -> CoordinateMap:
    """``(lam, s) -> (lam s^k, 1/s)`` with inverse ``(mu, t) -> (mu t^k, 1/t)``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    fwd = (_rf(f"lam*s^{k}", U0_VARS), _rf("1", U0_VARS) / _rf("s", U0_VARS))
    inv = (_rf(f"mu*t^{k}", U1_VARS), _rf("1", U1_VARS) / _rf("t", U1_VARS))
    return CoordinateMap(U0_VARS, U1_VARS, fwd, inv)


def rnc_chart_fields(k: int, chart: str) -> dict:
    """The four infinitesimal-action fields (labels E12, E21, H, e) on one chart."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if chart == "U0":
        texts = {
            "E12": (f"-{k}*s*lam", "s^2"),
            "E21": ("0", "-1"),
            "H": (f"-{k}*lam", "2*s"),
            "e": ("-lam", "0"),
        }
        vars = U0_VARS
    elif chart == "U1":
        texts = {
            "E12": ("0", "-1"),
            "E21": (f"-{k}*t*mu", "t^2"),
            "H": (f"{k}*mu", "-2*t"),
            "e": ("-mu", "0"),
        }
        vars = U1_VARS
    else:
        raise ValueError(f"unknown chart {chart!r}")
    return {lab: RationalVectorField.parse(texts[lab], vars) for lab in LABELS}


def verify_chart_consistency(k: int) -> bool:
    m = gluing_map(k)
    u0, u1 = rnc_chart_fields(k, "U0"), rnc_chart_fields(k, "U1")
    return all(pushforward(u0[lab], m) == u1[lab] for lab in LABELS)


def gluing_cocycle_check(alpha: RationalFunction, k: int, beta) -> bool:
    """``h = alpha^(k(beta+1))`` satisfies ``h'/h = (beta+1) (alpha^k)'/alpha^k``."""
    beta = to_rational(beta)
    if not alpha:
        raise ValueError("alpha must be nonzero")
    m = k * (beta + 1)
    if m.denominator != 1:
        raise ValueError("k(beta+1) must be an integer")
    h = alpha ** int(m)
    ak = alpha ** k
    for i in range(len(alpha.vars)):
        lhs = h.derivative(i) / h
        rhs = ak.derivative(i) / ak * (beta + 1)
        if lhs != rhs:
            return False
    return True


def nbeta_generators(k: int, beta0) -> list:
    """Chart generators of the twisted module, ``lam`` inverted."""
    b = to_rational(beta0)
    texts = [
        f"{k}*s*dlam*lam - ds*s^2",
        "ds",
        f"{k}*dlam*lam - 2*ds*s",
    ]
    gens = [parse_operator(t, U0_VARS, localized=("lam",)) for t in texts]
    last = parse_operator("dlam*lam", U0_VARS, localized=("lam",)) - b
    return gens + [last]


def nbeta_chart_reduction(k: int, beta0) -> bool:
    """True when the cyclic module vanishes on the chart (unit ideal)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return left_groebner(nbeta_generators(k, beta0)).is_unit()


def cocycle_table():
    """``(alpha, k, beta)`` cases with ``k(beta+1)`` integral."""
    x = ("x",)
    xy = ("x", "y")
    return [
        (_rf("x", x), 2, Q(1, 2)),
        (_rf("x", x), 3, Q(-1)),
        (_rf("x^2 + 1", x), 3, Q(2, 3)),
        (_rf("x + 1", x), 2, Q(1, 2)),
        (_rf("x*y - 1", xy), 4, Q(-3, 4)),
        (_rf("x", x) / _rf("x + 2", x), 5, Q(2, 5)),
        (_rf("x^2 - y", xy), 1, Q(3)),
    ]
