"""Root systems, weights and the Killing-normalized pairing.

Conventions
-----------
* ``cartan[i][j] = <alpha_i^vee, alpha_j>``.
* Roots are integer vectors in simple-root coordinates, weights are rational
  vectors in fundamental-weight coordinates. A root ``r`` has fundamental
  coordinates ``cartan @ r``.
* Each simple factor carries the invariant form scaled so that the highest
  root has squared length 2. The Killing pairing of the factor is that form
  divided by ``2 h^vee``; distinct factors are orthogonal.

Type strings are simple types (``A3``, ``B2``, ``G2``...) joined by ``x``, for
example ``A1xA1``. Subsets of simple roots are 1-based index lists over the
concatenated Dynkin diagram.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction as Q
from functools import cached_property
from typing import Iterable, Sequence

Weight = tuple


class RootSystemError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Cartan matrices


def _cartan(kind: str, n: int):
    if kind == "A" and n >= 1:
        pass
    elif kind in "BC" and n >= 2:
        pass
    elif kind == "D" and n >= 4:
        pass
    elif kind == "G" and n == 2:
        return [[2, -3], [-1, 2]]
    else:
        raise RootSystemError(f"unsupported simple type {kind}{n}")
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
    if kind == "D":
        for i in range(n - 2):
            a[i][i + 1] = a[i + 1][i] = -1
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
        return a
    for i in range(n - 1):
        a[i][i + 1] = a[i + 1][i] = -1
    if kind == "B":
        a[n - 1][n - 2] = -2
    elif kind == "C":
        a[n - 2][n - 1] = -2
    return a


def _solve(m, v):
    """Exact solution of ``m x = v`` (Gauss-Jordan over Q)."""
    n = len(m)
    rows = [[Q(x) for x in row] + [Q(b)] for row, b in zip(m, v)]
    for c in range(n):
        p = next(r for r in range(c, n) if rows[r][c])
        rows[c], rows[p] = rows[p], rows[c]
        piv = rows[c][c]
        rows[c] = [x / piv for x in rows[c]]
        for r in range(n):
            if r != c and rows[r][c]:
                f = rows[r][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
    return [rows[i][n] for i in range(n)]


@dataclass(frozen=True)
class SimpleFactor:
    kind: str
    rank: int

    @cached_property
    def cartan(self):
        return _cartan(self.kind, self.rank)

    @cached_property
    def form(self):
        """Symmetric form on simple roots, ``(theta, theta) = 2``."""
        a, n = self.cartan, self.rank
        d = [None] * n
        d[0] = Q(1)
        stack = [0]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and a[i][j] and d[j] is None:
                    d[j] = d[i] * Q(a[i][j], a[j][i])
                    stack.append(j)
        s = [[a[i][j] * d[i] / 2 for j in range(n)] for i in range(n)]
        theta = self._roots_unscaled[-1]
        tt = sum(theta[i] * s[i][j] * theta[j] for i in range(n) for j in range(n))
        scale = 2 / tt
        return [[x * scale for x in row] for row in s]

    def coroot_pairing(self, root, i):
        """``<root, alpha_i^vee>`` for a root in simple coordinates."""
        return sum(self.cartan[i][j] * root[j] for j in range(self.rank))

    @cached_property
    def _roots_unscaled(self):
        n = self.rank
        simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        roots = set(simple)
        level = list(simple)
        while level:
            nxt = []
            for beta in level:
                for i in range(n):
                    # alpha_i-string through beta: beta - p a_i, ..., beta + q a_i
                    p = 0
                    while True:
                        cand = tuple(b - (p + 1) * (j == i) for j, b in enumerate(beta))
                        if cand in roots:
                            p += 1
                        else:
                            break
                    q = p - self.coroot_pairing(beta, i)
                    if q > 0:
                        up = tuple(b + (j == i) for j, b in enumerate(beta))
                        if up not in roots:
                            roots.add(up)
                            nxt.append(up)
            level = nxt
        return sorted(roots, key=lambda r: (sum(r), r))

    @property
    def positive_roots(self):
        return self._roots_unscaled

    @property
    def highest_root(self):
        return self._roots_unscaled[-1]

    @cached_property
    def dual_coxeter(self) -> Q:
        """``1 + <delta, theta^vee>``; uses ``(delta, alpha_i) = (alpha_i, alpha_i)/2``."""
        theta = self.highest_root
        return 1 + sum(theta[i] * self.form[i][i] / 2 for i in range(self.rank))


_TOKEN = re.compile(r"([ABCDG])(\d+)$")


@dataclass(frozen=True)
class RootSystem:
    """Product of simple root systems."""

    name: str
    factors: tuple

    @property
    def rank(self) -> int:
        return sum(f.rank for f in self.factors)

    def blocks(self):
        start = 0
        for f in self.factors:
            yield f, start, start + f.rank
            start += f.rank

    @cached_property
    def cartan(self):
        n = self.rank
        m = [[0] * n for _ in range(n)]
        for f, a, b in self.blocks():
            for i in range(f.rank):
                for j in range(f.rank):
                    m[a + i][a + j] = f.cartan[i][j]
        return m

    @cached_property
    def positive_roots(self):
        """Positive roots as global simple-coordinate tuples."""
        n = self.rank
        out = []
        for f, a, b in self.blocks():
            for r in f.positive_roots:
                v = [0] * n
                v[a:b] = r
                out.append(tuple(v))
        return out

    @cached_property
    def _killing(self):
        """Gram matrix of the Killing pairing on fundamental weights."""
        n = self.rank
        g = [[Q(0)] * n for _ in range(n)]
        for f, a, b in self.blocks():
            # omega_i in simple coordinates: columns of the inverse Cartan matrix
            inv_cols = [_solve(f.cartan, [1 if k == i else 0 for k in range(f.rank)]) for i in range(f.rank)]
            scale = 1 / (2 * f.dual_coxeter)
            for i in range(f.rank):
                for j in range(f.rank):
                    wi, wj = inv_cols[i], inv_cols[j]
                    val = sum(wi[p] * f.form[p][q] * wj[q] for p in range(f.rank) for q in range(f.rank))
                    g[a + i][a + j] = val * scale
        return g

    def root_to_weight(self, root) -> Weight:
        return tuple(Q(sum(self.cartan[i][j] * root[j] for j in range(self.rank))) for i in range(self.rank))

    def simple_root(self, i: int) -> Weight:
        """Simple root ``i`` (0-based) in fundamental coordinates."""
        return tuple(Q(self.cartan[k][i]) for k in range(self.rank))

    def pair(self, lam, mu) -> Q:
        lam, mu = _weight(self, lam), _weight(self, mu)
        g = self._killing
        n = self.rank
        return sum((lam[i] * g[i][j] * mu[j] for i in range(n) for j in range(n) if lam[i] and mu[j]), Q(0))


def _weight(rs: RootSystem, w) -> Weight:
    w = tuple(Q(x) for x in w)
    if len(w) != rs.rank:
        raise RootSystemError(f"weight has {len(w)} coordinates, expected {rs.rank}")
    return w


def build_root_system(spec: str) -> RootSystem:
    parts = [p.strip() for p in spec.strip().split("x")]
    if not parts or any(not p for p in parts):
        raise RootSystemError(f"bad type string {spec!r}")
    factors = []
    for p in parts:
        m = _TOKEN.match(p)
        if not m:
            raise RootSystemError(f"unknown type token {p!r}")
        factors.append(SimpleFactor(m.group(1), int(m.group(2))))
        factors[-1].cartan  # validates the type
    return RootSystem(spec.strip(), tuple(factors))


# ---------------------------------------------------------------------------
# operations


def killing_pairing(rs: RootSystem, lam, mu) -> Q:
    return rs.pair(lam, mu)


def weyl_vector(rs: RootSystem) -> Weight:
    return tuple(Q(1) for _ in range(rs.rank))


def half_sum(rs: RootSystem, roots: Iterable) -> Weight:
    total = [Q(0)] * rs.rank
    for r in roots:
        for i, x in enumerate(rs.root_to_weight(r)):
            total[i] += x
    return tuple(x / 2 for x in total)


def _subset(rs: RootSystem, I) -> frozenset:
    s = frozenset(int(i) for i in I)
    bad = [i for i in s if not 1 <= i <= rs.rank]
    if bad:
        raise RootSystemError(f"simple-root indices out of range: {sorted(bad)}")
    return frozenset(i - 1 for i in s)


def delta_I(rs: RootSystem, I: Sequence[int]) -> Weight:
    """Half the sum of the positive roots outside the span of ``I``."""
    s = _subset(rs, I)
    outside = [r for r in rs.positive_roots if any(c and i not in s for i, c in enumerate(r))]
    return half_sum(rs, outside)


def beta_value(rs: RootSystem, mu) -> Q:
    mu = _weight(rs, mu)
    mm = rs.pair(mu, mu)
    if not any(mu) or mm == 0:
        raise RootSystemError("beta is undefined for the zero weight")
    return 2 * rs.pair(weyl_vector(rs), mu) / mm


def scale_weight(c, w) -> Weight:
    return tuple(Q(c) * x for x in w)


def check_scaled_delta_beta(rs: RootSystem, I, k: int, ell: int) -> bool:
    """``beta((2k/ell) delta_I) == ell/k``."""
    if not k or not ell:
        raise RootSystemError("k and ell must be nonzero")
    if len(_subset(rs, I)) == rs.rank:
        raise RootSystemError("delta_I vanishes for I = all simple roots")
    mu = scale_weight(Q(2 * k, ell), delta_I(rs, I))
    return beta_value(rs, mu) == Q(ell, k)


def delta_pairing_identity(rs: RootSystem, I) -> bool:
    """``<delta, delta_I> == <delta_I, delta_I>``."""
    d = delta_I(rs, I)
    return rs.pair(weyl_vector(rs), d) == rs.pair(d, d)


def is_ample(rs: RootSystem, I, lam) -> bool:
    s = _subset(rs, I)
    lam = _weight(rs, lam)
    return all(rs.pair(lam, rs.simple_root(i)) > 0 for i in range(rs.rank) if i not in s)


def fano_check(rs: RootSystem, I) -> bool:
    return is_ample(rs, I, delta_I(rs, I))


def is_dominant(w) -> bool:
    return all(x >= 0 for x in w)


def weyl_dim(rs: RootSystem, mu) -> int:
    mu = _weight(rs, mu)
    if not is_dominant(mu):
        raise RootSystemError("weyl_dim needs a dominant weight")
    delta = weyl_vector(rs)
    shifted = tuple(a + b for a, b in zip(mu, delta))
    num = den = Q(1)
    for r in rs.positive_roots:
        alpha = rs.root_to_weight(r)
        num *= rs.pair(shifted, alpha)
        den *= rs.pair(delta, alpha)
    value = num / den
    assert value.denominator == 1
    return int(value)


def casimir_scalar_lowest(rs: RootSystem, lam) -> Q:
    """Casimir eigenvalue on the irreducible with lowest weight ``lam``."""
    lam = _weight(rs, lam)
    return rs.pair(lam, lam) - 2 * rs.pair(weyl_vector(rs), lam)


def sections_highest_weight(rs: RootSystem, I, lam_bundle) -> Weight:
    """Highest weight of the section space of the line bundle of weight ``lam_bundle``."""
    s = _subset(rs, I)
    lam = _weight(rs, lam_bundle)
    mu = tuple(-x for x in lam)
    if not is_dominant(mu):
        raise RootSystemError("the negated bundle weight is not dominant")
    if any(mu[i] for i in s):
        raise RootSystemError("the bundle weight does not extend to the parabolic subgroup")
    return mu


def highest_roots(rs: RootSystem):
    """Highest root of every simple factor, as a global weight."""
    out = []
    for f, a, b in rs.blocks():
        v = [0] * rs.rank
        v[a:b] = f.highest_root
        out.append(rs.root_to_weight(v))
    return out


def adjoint_casimir(rs: RootSystem):
    """``<theta, theta> + 2 <delta, theta>`` for every simple factor."""
    delta = weyl_vector(rs)
    return [rs.pair(t, t) + 2 * rs.pair(delta, t) for t in highest_roots(rs)]


def subsets(rank: int):
    """All subsets of ``{1..rank}`` as sorted tuples."""
    for mask in range(1 << rank):
        yield tuple(i + 1 for i in range(rank) if mask >> i & 1)


def format_weight(w) -> list:
    return [str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}" for x in w]
