"""The Weyl algebra over the rationals.

Elements are normal ordered, ``sum c * x^a * d^b`` with every x-power to the
left of every partial. Exponents are stored as one tuple of length ``2n``:
the x-part followed by the d-part.

An element may declare some variables *localized*. Its coefficients are then
:class:`~taut.algebra.RationalFunction` values in those variables, their
x-exponents are always zero, and partials act on coefficients through the
quotient rule. This models operators on a chart such as ``C* x C`` without
adjoining inverse variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from itertools import product
from math import comb
from typing import Sequence

from . import kernels
from .algebra import (
    ContextError,
    Polynomial,
    RationalFunction,
    TermOrder,
    default_order,
    format_rational,
    to_rational,
)


class LocalizedError(ValueError):
    """Operation needs polynomial coefficients."""


# ---------------------------------------------------------------------------
# multiplication engines


def _loc_derivs(c, loc_b, locs, cache):
    """All ``(k, binom * d^k c)`` for multi-indices ``k <= loc_b`` on ``locs``."""
    ranges = [range(loc_b[j] + 1) for j in range(len(locs))]
    out = []
    for ks in product(*ranges):
        key = (id(c), ks)
        v = cache.get(key)
        if v is None:
            v = c
            for idx, kk in zip(locs, ks):
                for _ in range(kk):
                    v = v.derivative(idx)
                    if not v:
                        break
            cache[key] = v
        if v:
            m = 1
            for bj, kj in zip(loc_b, ks):
                m *= comb(bj, kj)
            out.append((ks, v * m if m != 1 else v))
    return out


def _loc_mul(p, q, n, locs):
    out = {}
    cache = {}
    for ea, ca in p.items():
        loc_b = [ea[n + i] for i in locs]
        for eb, cb in q.items():
            if any(loc_b):
                for ks, dc in _loc_derivs(cb, loc_b, locs, cache):
                    e = list(ea)
                    for i, kk in zip(locs, ks):
                        e[n + i] -= kk
                    kernels.weyl_term_mul(ca * dc, tuple(e), 1, eb, n, out)
            else:
                kernels.weyl_term_mul(ca * cb, ea, 1, eb, n, out)
    return out


class _Ring:
    __slots__ = ("n", "locs", "mul", "mono_mul")

    def __init__(self, n, locs):
        self.n = n
        self.locs = tuple(locs)
        if self.locs:
            self.mul = lambda p, q: _loc_mul(p, q, n, self.locs)
            self.mono_mul = lambda c, e, q: _loc_mul({e: c}, q, n, self.locs)
        else:
            self.mul = lambda p, q: kernels.weyl_mul(p, q, n)
            self.mono_mul = lambda c, e, q: kernels.weyl_mono_mul(c, e, q, n)


# ---------------------------------------------------------------------------
# WeylElement


class WeylElement:
    """Normal-ordered differential operator with exact coefficients."""

    __slots__ = ("vars", "localized", "terms", "_ring")

    def __init__(self, vars: Sequence[str], terms: dict | None = None, localized: Sequence[str] = ()):
        self.vars = tuple(vars)
        self.localized = tuple(v for v in self.vars if v in set(localized))
        unknown = set(localized) - set(self.vars)
        if unknown:
            raise ContextError(f"localized variables not in context: {sorted(unknown)}")
        n = len(self.vars)
        locs = [self.vars.index(v) for v in self.localized]
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != 2 * n:
                raise ContextError(f"exponent {e} does not match {n} variables")
            if any(e[i] for i in locs):
                raise ValueError("localized variables carry no x-exponent")
            if locs:
                if not isinstance(c, RationalFunction):
                    c = RationalFunction.constant(self.vars, to_rational(c))
            else:
                c = to_rational(c)
            if c:
                clean[e] = c
        self.terms = clean
        self._ring = _Ring(n, locs)

    @classmethod
    def _raw(cls, like: "WeylElement", terms: dict) -> "WeylElement":
        w = object.__new__(cls)
        w.vars = like.vars
        w.localized = like.localized
        w.terms = terms
        w._ring = like._ring
        return w

    # constructors
    @classmethod
    def zero(cls, vars, localized=()):
        return cls(vars, {}, localized)

    @classmethod
    def constant(cls, vars, c, localized=()):
        n = len(vars)
        return cls(vars, {(0,) * (2 * n): c}, localized)

    @classmethod
    def x(cls, vars, i, localized=()):
        vars = tuple(vars)
        if isinstance(i, str):
            i = vars.index(i)
        n = len(vars)
        if vars[i] in localized:
            return cls(vars, {(0,) * (2 * n): RationalFunction.var(vars, vars[i])}, localized)
        e = [0] * (2 * n)
        e[i] = 1
        return cls(vars, {tuple(e): 1}, localized)

    @classmethod
    def d(cls, vars, i, localized=()):
        vars = tuple(vars)
        if isinstance(i, str):
            i = vars.index(i)
        n = len(vars)
        e = [0] * (2 * n)
        e[n + i] = 1
        return cls(vars, {tuple(e): 1}, localized)

    @classmethod
    def monomial(cls, vars, xexp, dexp, c=1, localized=()):
        return cls(vars, {tuple(xexp) + tuple(dexp): c}, localized)

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "WeylElement":
        n = len(p.vars)
        return cls(p.vars, {e + (0,) * n: c for e, c in p.terms.items()})

    @classmethod
    def coefficient(cls, vars, f: RationalFunction, localized):
        """The multiplication operator by ``f`` (a function of localized variables)."""
        n = len(vars)
        return cls(vars, {(0,) * (2 * n): f}, localized)

    @classmethod
    def parse(cls, text, vars, localized=()):
        from .parsing import parse_operator

        return parse_operator(text, vars, localized)

    # queries
    @property
    def n(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_localized(self) -> bool:
        return bool(self.localized)

    def sorted_terms(self, order: TermOrder | None = None):
        order = order or default_order()
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_term(self, order: TermOrder | None = None):
        order = order or default_order()
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def leading_monomial(self, order: TermOrder | None = None):
        return self.leading_term(order)[0]

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def x_part(self, e):
        return e[: self.n]

    def d_part(self, e):
        return e[self.n:]

    # arithmetic
    def _check(self, other: "WeylElement"):
        if self.vars != other.vars or self.localized != other.localized:
            raise ContextError("operators live over different contexts")

    def _coerce(self, other):
        if isinstance(other, WeylElement):
            self._check(other)
            return other
        if isinstance(other, (int, Q)):
            return WeylElement.constant(self.vars, other, self.localized)
        if isinstance(other, Polynomial):
            if other.vars != self.vars or self.localized:
                raise ContextError("polynomial context mismatch")
            return WeylElement.from_polynomial(other)
        if isinstance(other, RationalFunction) and self.localized:
            return WeylElement.coefficient(self.vars, other, self.localized)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return WeylElement._raw(self, kernels.axpy(dict(self.terms), other.terms, 1))

    __radd__ = __add__

    def __neg__(self):
        return WeylElement._raw(self, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return WeylElement._raw(self, kernels.axpy(dict(self.terms), other.terms, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Q)):
            if not other:
                return WeylElement._raw(self, {})
            return WeylElement._raw(self, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return WeylElement._raw(self, self._ring.mul(self.terms, other.terms))

    def __rmul__(self, other):
        if isinstance(other, (int, Q)):
            return self * other
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of an operator")
        result = WeylElement.constant(self.vars, 1, self.localized)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Q)):
            other = WeylElement.constant(self.vars, other, self.localized)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.vars == other.vars and self.localized == other.localized and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, self.localized, frozenset(self.terms.items())))

    def __repr__(self):
        return f"WeylElement({str(self)!r}, vars={list(self.vars)})"

    def __str__(self):
        from .parsing import format_operator

        return format_operator(self)

    # serialization
    def to_json(self, order: TermOrder | None = None) -> dict:
        if self.localized:
            raise LocalizedError("JSON export needs polynomial coefficients")
        n = self.n
        return {
            "vars": list(self.vars),
            "terms": [
                {"x": list(e[:n]), "d": list(e[n:]), "c": format_rational(c)}
                for e, c in self.sorted_terms(order)
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "WeylElement":
        vars = data["vars"]
        terms = {}
        for t in data["terms"]:
            e = tuple(t["x"]) + tuple(t["d"])
            terms[e] = terms.get(e, 0) + to_rational(t["c"])
        return cls(vars, terms)


# ---------------------------------------------------------------------------
# operations


def weyl_mul(p: WeylElement, q: WeylElement) -> WeylElement:
    return p * q


def commutator(p: WeylElement, q: WeylElement) -> WeylElement:
    return p * q - q * p


def _require_polynomial(p: WeylElement, what: str):
    if p.localized:
        raise LocalizedError(f"{what} is not supported with localized coefficients")


def transpose(p: WeylElement) -> WeylElement:
    """Anti-automorphism ``x^a d^b -> (-1)^|b| d^b x^a``."""
    _require_polynomial(p, "transpose")
    n = p.n
    zero = (0,) * n
    out = {}
    for e, c in p.terms.items():
        a, b = e[:n], e[n:]
        sign = -1 if sum(b) % 2 else 1
        kernels.weyl_term_mul(c * sign, zero + b, 1, a + zero, n, out)
    return WeylElement._raw(p, out)


def fourier_laplace(p: WeylElement) -> WeylElement:
    """Automorphism ``x_i -> -d_i``, ``d_i -> x_i``."""
    _require_polynomial(p, "Fourier-Laplace")
    n = p.n
    zero = (0,) * n
    out = {}
    for e, c in p.terms.items():
        a, b = e[:n], e[n:]
        sign = -1 if sum(a) % 2 else 1
        kernels.weyl_term_mul(c * sign, zero + a, 1, b + zero, n, out)
    return WeylElement._raw(p, out)


def antipode(p: WeylElement) -> WeylElement:
    """The substitution ``x -> -x``, ``d -> -d``."""
    return WeylElement._raw(p, {e: (-c if sum(e) % 2 else c) for e, c in p.terms.items()})


def apply(p: WeylElement, f: Polynomial) -> Polynomial:
    """Act with the operator on a polynomial."""
    _require_polynomial(p, "apply")
    if f.vars != p.vars:
        raise ContextError("operator and polynomial contexts differ")
    n = p.n
    out = {}
    for e, c in p.terms.items():
        g = f.partial(e[n:])
        if g.terms:
            shifted = {tuple(u + v for u, v in zip(ge, e[:n])): gc for ge, gc in g.terms.items()}
            kernels.axpy(out, shifted, c)
    return Polynomial._raw(p.vars, out)


def is_euler_homogeneous(p: WeylElement):
    """``(True, deg)`` when every term has the same ``|x-exp| - |d-exp|``."""
    n = p.n
    degs = {sum(e[:n]) - sum(e[n:]) for e in p.terms}
    if not degs:
        return True, 0
    if len(degs) == 1:
        return True, degs.pop()
    return False, None


def euler_operator(vars: Sequence[str]) -> WeylElement:
    n = len(vars)
    terms = {}
    for i in range(n):
        e = [0] * (2 * n)
        e[i] = e[n + i] = 1
        terms[tuple(e)] = 1
    return WeylElement(vars, terms)


# ---------------------------------------------------------------------------
# left Gröbner bases


@dataclass
class LeftGB:
    """Reduced left Gröbner basis; generators are monic, sorted descending."""

    vars: tuple
    localized: tuple
    order: TermOrder
    basis: list

    def leading_monomials(self):
        return [g.leading_monomial(self.order) for g in self.basis]

    def is_unit(self) -> bool:
        return any(not any(m) for m in self.leading_monomials())


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _reduce(p, G, ring, key, full=True):
    """Reduce the term dict ``p`` by ``G`` = list of (lm, lc, terms)."""
    p = dict(p)
    rem = {}
    while p:
        e = max(p, key=key)
        c = p[e]
        for lm, lc, g in G:
            if _divides(lm, e):
                m = tuple(a - b for a, b in zip(e, lm))
                kernels.axpy(p, ring.mono_mul(c / lc, m, g), -1)
                break
        else:
            if not full:
                rem.update(p)
                return rem
            rem[e] = c
            del p[e]
    return rem


def _monic(h, key):
    lm = max(h, key=key)
    lc = h[lm]
    if lc == 1:
        return h
    inv = 1 / lc
    return {e: c * inv for e, c in h.items()}


def _validate(gens):
    gens = list(gens)
    if not gens:
        raise ValueError("empty generator list")
    first = gens[0]
    for g in gens:
        if not isinstance(g, WeylElement):
            raise TypeError("generators must be WeylElements")
        first._check(g)
        if not g.terms:
            raise ValueError("the zero operator is not allowed as a generator")
    return gens


def left_groebner(gens: Sequence[WeylElement], order: TermOrder | None = None) -> LeftGB:
    """Reduced Gröbner basis of the left ideal generated by ``gens``.

    Pairs are processed smallest-lcm first; Buchberger's chain criterion
    prunes redundant pairs.
    """
    gens = _validate(gens)
    order = order or default_order()
    key = order.key
    ring = gens[0]._ring
    G = []
    pairs = set()

    def add(h):
        h = _monic(h, key)
        lm = max(h, key=key)
        G.append((lm, h[lm], h))
        j = len(G) - 1
        for i in range(j):
            pairs.add((i, j))
        return not any(lm)

    unit = False
    for g in sorted(gens, key=lambda w: key(w.leading_monomial(order))):
        h = _reduce(g.terms, G, ring, key)
        if h and add(h):
            unit = True
            break

    def lcm_of(ij):
        return tuple(max(a, b) for a, b in zip(G[ij[0]][0], G[ij[1]][0]))

    while pairs and not unit:
        ij = min(pairs, key=lambda t: (key(lcm_of(t)), t))
        pairs.discard(ij)
        i, j = ij
        lcm = lcm_of(ij)
        if any(
            k not in ij
            and _divides(G[k][0], lcm)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(G))
        ):
            continue
        lmi, lci, fi = G[i]
        lmj, lcj, fj = G[j]
        s = ring.mono_mul(1 / lci, tuple(a - b for a, b in zip(lcm, lmi)), fi)
        kernels.axpy(s, ring.mono_mul(1 / lcj, tuple(a - b for a, b in zip(lcm, lmj)), fj), -1)
        h = _reduce(s, G, ring, key)
        if h and add(h):
            unit = True

    like = gens[0]
    if unit:
        one = WeylElement.constant(like.vars, 1, like.localized)
        return LeftGB(like.vars, like.localized, order, [one])
    return LeftGB(like.vars, like.localized, order, _interreduce(like, G, ring, order))


def _interreduce(like, G, ring, order):
    key = order.key
    minimal = []
    for lm, lc, f in sorted(G, key=lambda t: key(t[0])):
        if not any(_divides(m[0], lm) for m in minimal):
            minimal.append((lm, lc, f))
    out = []
    for idx, (lm, lc, f) in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        r = _reduce(f, others, ring, key)
        out.append(WeylElement._raw(like, _monic(r, key)))
    out.sort(key=lambda g: key(g.leading_monomial(order)), reverse=True)
    return out


def weyl_normal_form(p: WeylElement, gb: LeftGB) -> WeylElement:
    """Fully reduced remainder of ``p`` modulo the left ideal."""
    if p.vars != gb.vars or p.localized != gb.localized:
        raise ContextError("operator and basis contexts differ")
    if not gb.basis:
        return p
    key = gb.order.key
    G = [(g.leading_monomial(gb.order), g.terms[g.leading_monomial(gb.order)], g.terms) for g in gb.basis]
    return WeylElement._raw(p, _reduce(p.terms, G, p._ring, key))


def ideal_member(p: WeylElement, gb: LeftGB) -> bool:
    return not weyl_normal_form(p, gb).terms


def ideal_equal(gens_a, gens_b, order: TermOrder | None = None) -> bool:
    """True iff the two generator lists span the same left ideal."""
    order = order or default_order()
    ga = left_groebner(gens_a, order)
    gb = left_groebner(gens_b, order)
    return all(ideal_member(g, gb) for g in gens_a) and all(ideal_member(g, ga) for g in gens_b)


def holonomic_rank(gens: Sequence[WeylElement], method: str = "fraction-free"):
    """Holonomic rank over the rational-function field; an int or ``"infinite"``.

    ``method`` is ``"fraction-free"`` (Buchberger over C(x)<d> with polynomial
    numerators) or ``"block"`` (a Gröbner basis in the polynomial Weyl algebra
    under an order that ranks partials above coordinates).
    """
    from .rank import rank_block, rank_fraction_free

    gens = _validate(gens)
    for g in gens:
        _require_polynomial(g, "holonomic rank")
    if method == "fraction-free":
        return rank_fraction_free(gens)
    if method == "block":
        return rank_block(gens)
    raise ValueError(f"unknown rank method {method!r}")
