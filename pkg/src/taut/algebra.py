"""Exact commutative algebra over the rationals.

Polynomials are sparse dicts from exponent tuples to ``Fraction`` values, tied
to an ordered tuple of variable names. Rational functions are reduced
numerator/denominator pairs. Gröbner bases use Buchberger's algorithm with
the normal selection strategy.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction as Q
from itertools import combinations
from math import factorial
from math import gcd as gcd_int
from typing import Callable, Iterable, Sequence

from . import kernels


class ContextError(ValueError):
    """Raised when operands live over different variable lists."""


def to_rational(value) -> Q:
    """Parse ``int``, ``Fraction`` or a ``"p/q"`` string into a Fraction."""
    if isinstance(value, Q):
        return value
    if isinstance(value, int):
        return Q(value)
    if isinstance(value, str):
        return Q(value.strip())
    raise TypeError(f"not an exact rational: {value!r}")


def format_rational(q: Q) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# term orders


def _lex_key(e):
    return e


def _grlex_key(e):
    return (sum(e), e)


def _grevlex_key(e):
    return (sum(e), tuple([-a for a in reversed(e)]))


@dataclass(frozen=True)
class TermOrder:
    """Monomial order; ``key(e)`` is larger for larger monomials.

    ``kind`` is one of ``lex``, ``grlex``, ``grevlex``, ``weighted`` or
    ``block``. A weighted order compares ``weights . e`` first and breaks ties
    with ``tiebreak``. A block order compares ``e[split:]`` by grevlex and
    then ``e[:split]`` by grevlex.
    """

    kind: str = "grevlex"
    weights: tuple = ()
    tiebreak: "TermOrder | None" = None
    split: int = 0
    key: Callable = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind == "lex":
            key = _lex_key
        elif self.kind == "grlex":
            key = _grlex_key
        elif self.kind == "grevlex":
            key = _grevlex_key
        elif self.kind == "weighted":
            w = tuple(Q(x) for x in self.weights)
            if not w or any(x < 0 for x in w):
                raise ValueError("weighted order needs a non-negative weight vector")
            tb = (self.tiebreak or TermOrder("grevlex")).key

            def key(e, w=w, tb=tb):
                return (sum(a * b for a, b in zip(w, e)), tb(e))

            object.__setattr__(self, "weights", w)
        elif self.kind == "block":
            k = self.split

            def key(e, k=k):
                return (_grevlex_key(e[k:]), _grevlex_key(e[:k]))
        else:
            raise ValueError(f"unknown term order {self.kind!r}")
        object.__setattr__(self, "key", key)

    def leading(self, exps: Iterable[tuple]) -> tuple:
        return max(exps, key=self.key)


def default_order() -> TermOrder:
    """Order named by ``TAUT_ORDER`` (grevlex when unset)."""
    name = os.environ.get("TAUT_ORDER", "grevlex").strip().lower()
    if name not in ("grevlex", "grlex", "lex"):
        raise ValueError(f"TAUT_ORDER must be grevlex, grlex or lex, not {name!r}")
    return TermOrder(name)


GREVLEX = TermOrder("grevlex")
LEX = TermOrder("lex")


# ---------------------------------------------------------------------------
# dict-level helpers (exponent tuple -> Fraction)


def _add(p, q, sign=1):
    out = dict(p)
    return kernels.axpy(out, q, sign)


def _scale(p, c):
    if not c:
        return {}
    return {e: v * c for e, v in p.items()}


def _shift(p, m):
    return {tuple(a + b for a, b in zip(e, m)): v for e, v in p.items()}


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _support(p):
    used = set()
    for e in p:
        used.update(i for i, a in enumerate(e) if a)
    return used


def _deg_in(p, i):
    return max((e[i] for e in p), default=-1)


def _coeffs_in(p, i):
    """Split ``p`` as a polynomial in variable ``i``: degree -> dict."""
    out = {}
    for e, v in p.items():
        d = e[i]
        f = e[:i] + (0,) + e[i + 1:]
        out.setdefault(d, {})[f] = v
    return out


def _monic(p, key=_lex_key):
    if not p:
        return {}
    lc = p[max(p, key=key)]
    if lc == 1:
        return dict(p)
    inv = 1 / lc
    return {e: v * inv for e, v in p.items()}


def _divexact(p, q):
    """Quotient of ``p`` by ``q``; raises if the division leaves a remainder."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    lq = max(q, key=_lex_key)
    cq = q[lq]
    p = dict(p)
    quo = {}
    while p:
        lp = max(p, key=_lex_key)
        m = tuple(a - b for a, b in zip(lp, lq))
        if any(x < 0 for x in m):
            raise ArithmeticError("inexact polynomial division")
        c = p[lp] / cq
        quo[m] = c
        kernels.axpy(p, _shift(q, m), -c)
    return quo


def _is_const(p):
    return all(not any(e) for e in p)


def _gcd(p, q):
    """Monic (lex) gcd over Q, computed on integer primitive parts."""
    if not p and not q:
        return {}
    g = _igcd(_to_int(p), _to_int(q))
    return _monic({e: Q(c) for e, c in g.items()})


def _to_int(p):
    """Primitive integer multiple of ``p`` (empty dict for zero)."""
    if not p:
        return {}
    den = 1
    for c in p.values():
        d = c.denominator
        den = den * d // gcd_int(den, d)
    ints = {e: int(c * den) for e, c in p.items()}
    return _iprim(ints)


def _iprim(p):
    if not p:
        return {}
    g = gcd_int(*p.values())
    if p[max(p)] < 0:
        g = -g
    if g == 1:
        return p
    return {e: c // g for e, c in p.items()}


def _idivexact(p, q):
    """Exact quotient of integer polynomials, or ``None`` if ``q`` does not divide ``p``."""
    lq = max(q)
    cq = q[lq]
    p = dict(p)
    quo = {}
    while p:
        lp = max(p)
        m = tuple(a - b for a, b in zip(lp, lq))
        if any(x < 0 for x in m):
            return None
        c, rem = divmod(p[lp], cq)
        if rem:
            return None
        quo[m] = c
        kernels.axpy(p, _shift(q, m), -c)
    return quo


def _mono_gcd(p, q):
    exps = list(p) + list(q)
    n = len(exps[0])
    return {tuple(min(e[i] for e in exps) for i in range(n)): 1}


def _igcd(p, q):
    """Primitive gcd of integer polynomials by content/primitive-part recursion."""
    if not p:
        return _iprim(q)
    if not q:
        return _iprim(p)
    if len(p) == 1 or len(q) == 1:
        return _mono_gcd(p, q)
    sp, sq = _support(p), _support(q)
    i = max(sp | sq)
    if i not in sp:
        return _igcd(p, _icontent(q, i))
    if i not in sq:
        return _igcd(_icontent(p, i), q)
    cp, cq = _icontent(p, i), _icontent(q, i)
    c = _igcd(cp, cq)
    a, b = _idivexact(p, cp), _idivexact(q, cq)
    if _deg_in(a, i) < _deg_in(b, i):
        a, b = b, a
    while True:
        r = _iprem(a, b, i)
        if not r:
            g = b
            break
        a, b = b, _ipp(r, i)
        if _deg_in(b, i) == 0:
            g = None
            break
    if g is None:
        return c
    return _iprim(kernels.poly_mul(c, g))


def _icontent(p, i):
    g = {}
    parts = sorted(_coeffs_in(p, i).values(), key=len)
    for part in parts:
        g = _igcd(g, part)
        if _is_const(g):
            break
    return g


def _ipp(p, i):
    p = _iprim(p)
    c = _icontent(p, i)
    if _is_const(c):
        return p
    return _idivexact(p, c)


def _iprem(a, b, i):
    db = _deg_in(b, i)
    lb = _coeffs_in(b, i)[db]
    r = a
    while r and _deg_in(r, i) >= db:
        dr = _deg_in(r, i)
        lr = _coeffs_in(r, i)[dr]
        m = [0] * len(next(iter(b)))
        m[i] = dr - db
        r = _add(kernels.poly_mul(lb, r), kernels.poly_mul(lr, _shift(b, tuple(m))), -1)
        r = _iprim(r)
    return r


# ---------------------------------------------------------------------------
# Polynomial


class Polynomial:
    """Multivariate polynomial with rational coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: dict | None = None):
        self.vars = tuple(vars)
        n = len(self.vars)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise ContextError(f"exponent {e} does not match {n} variables")
            c = to_rational(c)
            if c:
                clean[e] = c
        self.terms = clean

    @classmethod
    def _raw(cls, vars, terms):
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        return p

    # constructors
    @classmethod
    def zero(cls, vars):
        return cls(vars)

    @classmethod
    def constant(cls, vars, c):
        c = to_rational(c)
        return cls._raw(tuple(vars), {(0,) * len(vars): c} if c else {})

    @classmethod
    def var(cls, vars, name):
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls._raw(vars, {tuple(e): Q(1)})

    @classmethod
    def monomial(cls, vars, exps, c=1):
        return cls(vars, {tuple(exps): c})

    @classmethod
    def parse(cls, text: str, vars: Sequence[str]) -> "Polynomial":
        from .parsing import parse_polynomial

        return parse_polynomial(text, vars)

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return _is_const(self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def leading_term(self, order: TermOrder = GREVLEX):
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def leading_monomial(self, order: TermOrder = GREVLEX) -> tuple:
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: TermOrder = GREVLEX) -> Q:
        return self.terms[max(self.terms, key=order.key)]

    def sorted_terms(self, order: TermOrder = GREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # arithmetic
    def _check(self, other):
        if self.vars != other.vars:
            raise ContextError(f"variable context mismatch: {self.vars} vs {other.vars}")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Q)):
            return Polynomial.constant(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(self.vars, _add(self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(self.vars, _add(self.terms, other.terms, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Q)):
            return Polynomial._raw(self.vars, _scale(self.terms, Q(other)))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(self.vars, kernels.poly_mul(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Q)):
            other = Polynomial.constant(self.vars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def derivative(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self.vars.index(i)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[f] = c * e[i]
        return Polynomial._raw(self.vars, out)

    def partial(self, exps: Sequence[int]) -> "Polynomial":
        """Apply ``d^exps`` (multi-index derivative)."""
        out = {}
        for e, c in self.terms.items():
            if all(a >= b for a, b in zip(e, exps)):
                m = 1
                for a, b in zip(e, exps):
                    if b:
                        m *= factorial(a) // factorial(a - b)
                out[tuple(a - b for a, b in zip(e, exps))] = c * m
        return Polynomial._raw(self.vars, out)

    def content_monic(self, order: TermOrder = GREVLEX) -> "Polynomial":
        """Scalar multiple with leading coefficient 1."""
        if not self.terms:
            return self
        return self * (1 / self.leading_coefficient(order))

    def divexact(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        return Polynomial._raw(self.vars, _divexact(self.terms, other.terms))

    def evaluate(self, values):
        """Substitute ring elements (rationals, Polynomials, RationalFunctions)."""
        total = None
        for e, c in self.terms.items():
            t = c
            for v, a in zip(values, e):
                if a:
                    t = t * (v ** a)
            total = t if total is None else total + t
        if total is None:
            return Q(0)
        return total

    def __repr__(self):
        return f"Polynomial({str(self)!r}, vars={list(self.vars)})"

    def __str__(self):
        from .parsing import format_polynomial

        return format_polynomial(self)


def gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic (under lex) greatest common divisor; ``gcd(0, 0) = 0``."""
    p._check(q)
    g = _gcd(p.terms, q.terms)
    return Polynomial._raw(p.vars, g)


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


# ---------------------------------------------------------------------------
# RationalFunction


class RationalFunction:
    """Reduced quotient of polynomials with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None, *, _reduced=False):
        if den is None:
            den = Polynomial.constant(num.vars, 1)
        num._check(den)
        if not den.terms:
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if not num.terms:
                den = Polynomial.constant(num.vars, 1)
            else:
                g = _gcd(num.terms, den.terms)
                if not _is_const(g):
                    num = Polynomial._raw(num.vars, _divexact(num.terms, g))
                    den = Polynomial._raw(den.vars, _divexact(den.terms, g))
                lc = den.leading_coefficient(GREVLEX)
                if lc != 1:
                    num = num * (1 / lc)
                    den = den * (1 / lc)
        self.num = num
        self.den = den

    @property
    def vars(self):
        return self.num.vars

    @classmethod
    def constant(cls, vars, c):
        return cls(Polynomial.constant(vars, c), _reduced=True)

    @classmethod
    def var(cls, vars, name):
        return cls(Polynomial.var(vars, name), _reduced=True)

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            self.num._check(other.num)
            return other
        if isinstance(other, Polynomial):
            self.num._check(other)
            return RationalFunction(other, _reduced=True)
        if isinstance(other, (int, Q)):
            return RationalFunction.constant(self.vars, other)
        return NotImplemented

    def is_zero(self):
        return not self.num.terms

    def __bool__(self):
        return bool(self.num.terms)

    def is_constant(self):
        return self.den.is_constant() and self.num.is_constant()

    def is_polynomial(self):
        return self.den.is_constant()

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Q)):
            if not other:
                return RationalFunction.constant(self.vars, 0)
            return RationalFunction(self.num * other, self.den, _reduced=True)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num.terms:
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.num ** k, self.den ** k, _reduced=True)

    def __eq__(self, other):
        if isinstance(other, (int, Q, Polynomial)):
            other = self._coerce(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def derivative(self, i) -> "RationalFunction":
        """Quotient rule, exactly."""
        dn = self.num.derivative(i)
        dd = self.den.derivative(i)
        return RationalFunction(dn * self.den - self.num * dd, self.den * self.den)

    def compose(self, values) -> "RationalFunction":
        """Substitute rational functions for the variables."""
        n = self.num.evaluate(values)
        d = self.den.evaluate(values)
        if not isinstance(n, RationalFunction):
            n = RationalFunction.constant(values[0].vars, n) if not isinstance(n, Polynomial) else RationalFunction(n)
        return n / d

    def __repr__(self):
        return f"RationalFunction({str(self)!r})"

    def __str__(self):
        if self.den.is_constant():
            return str(self.num)
        return f"({self.num})/({self.den})"


# ---------------------------------------------------------------------------
# commutative Gröbner bases


@dataclass
class GroebnerBasis:
    """Reduced Gröbner basis; generators are monic and sorted by leading monomial."""

    vars: tuple
    order: TermOrder
    basis: list

    def leading_monomials(self):
        return [g.leading_monomial(self.order) for g in self.basis]

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.basis)


def _reduce_dict(p, basis, order):
    """Full reduction of ``p`` by ``basis`` (list of (lm, lc, terms))."""
    key = order.key
    p = dict(p)
    rem = {}
    while p:
        e = max(p, key=key)
        c = p[e]
        for lm, lc, g in basis:
            if _divides(lm, e):
                m = tuple(a - b for a, b in zip(e, lm))
                kernels.axpy(p, _shift(g, m), -c / lc)
                break
        else:
            rem[e] = c
            del p[e]
    return rem


def poly_normal_form(p: Polynomial, gb: GroebnerBasis | Sequence[Polynomial], order: TermOrder | None = None) -> Polynomial:
    """Remainder of ``p`` on division by the basis."""
    if isinstance(gb, GroebnerBasis):
        order = gb.order
        gens = gb.basis
    else:
        gens = list(gb)
        order = order or default_order()
    for g in gens:
        p._check(g)
    basis = [(g.leading_monomial(order), g.leading_coefficient(order), g.terms) for g in gens if g.terms]
    return Polynomial._raw(p.vars, _reduce_dict(p.terms, basis, order))


def comm_groebner(gens: Sequence[Polynomial], order: TermOrder | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``gens``."""
    gens = list(gens)
    if not gens:
        raise ValueError("empty generator list")
    vars = gens[0].vars
    if not vars:
        raise ContextError("empty variable context")
    for g in gens:
        if g.vars != vars:
            raise ContextError("generators over different contexts")
    order = order or default_order()
    key = order.key

    G = []  # (lm, lc, terms)
    pairs = set()

    def add(h):
        lm = max(h, key=key)
        G.append((lm, h[lm], h))
        j = len(G) - 1
        for i in range(j):
            pairs.add((i, j))

    for g in gens:
        h = _reduce_dict(g.terms, G, order)
        if h:
            add(_monic(h, key))

    while pairs:
        i, j = min(pairs, key=lambda ij: key(tuple(max(a, b) for a, b in zip(G[ij[0]][0], G[ij[1]][0]))))
        pairs.discard((i, j))
        lmi, lci, fi = G[i]
        lmj, lcj, fj = G[j]
        lcm = tuple(max(a, b) for a, b in zip(lmi, lmj))
        if all(not (a and b) for a, b in zip(lmi, lmj)):
            continue  # coprime leading monomials
        # chain criterion: skip if some other lm divides lcm with both pairs already handled
        skip = False
        for k, (lmk, _, _) in enumerate(G):
            if k in (i, j) or not _divides(lmk, lcm):
                continue
            if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                skip = True
                break
        if skip:
            continue
        s = _add(
            _shift(_scale(fi, 1 / lci), tuple(a - b for a, b in zip(lcm, lmi))),
            _shift(_scale(fj, 1 / lcj), tuple(a - b for a, b in zip(lcm, lmj))),
            -1,
        )
        h = _reduce_dict(s, G, order)
        if h:
            add(_monic(h, key))

    return GroebnerBasis(vars, order, _interreduce(vars, G, order))


def _interreduce(vars, G, order):
    key = order.key
    items = sorted(G, key=lambda t: key(t[0]))
    minimal = []
    for lm, lc, f in items:
        if not any(_divides(m[0], lm) for m in minimal):
            minimal.append((lm, lc, f))
    out = []
    for idx, (lm, lc, f) in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        r = _reduce_dict(f, others, order)
        out.append(Polynomial._raw(vars, _monic(r, key)))
    out.sort(key=lambda g: key(g.leading_monomial(order)), reverse=True)
    return out


def ideal_contains(gb: GroebnerBasis, p: Polynomial) -> bool:
    return not poly_normal_form(p, gb).terms


__all__ = [
    "ContextError",
    "GREVLEX",
    "GroebnerBasis",
    "LEX",
    "Polynomial",
    "RationalFunction",
    "TermOrder",
    "comm_groebner",
    "default_order",
    "format_rational",
    "gcd",
    "ideal_contains",
    "poly_add",
    "poly_mul",
    "poly_normal_form",
    "to_rational",
]
