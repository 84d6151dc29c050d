"""Holonomic rank of a left ideal of the Weyl algebra.

The rank is the number of standard monomials in the partials once the ideal
is extended to the algebra of differential operators with rational-function
coefficients. Two independent engines compute it.

``rank_fraction_free`` works directly over C(x)<d>. An element is a map from
d-exponents to polynomial numerators; reductions multiply through by
polynomial leading coefficients and then strip the polynomial content, so no
rational function is ever formed.

``rank_block`` computes an ordinary Gröbner basis in the polynomial Weyl
algebra under a block order that compares partials before coordinates, and
reads the initial ideal over C(x) off the d-parts of the leading monomials.
"""

from __future__ import annotations

from itertools import product
from math import comb

from . import kernels
from .algebra import TermOrder, _divexact, _gcd, _is_const, _grevlex_key
from .weyl import left_groebner

INFINITE = "infinite"


def _to_ff(w):
    n = w.n
    out = {}
    for e, c in w.terms.items():
        out.setdefault(e[n:], {})[e[:n]] = c
    return out


def _poly_partial(p, k):
    out = {}
    for e, c in p.items():
        if all(a >= b for a, b in zip(e, k)):
            m = 1
            for a, b in zip(e, k):
                for t in range(b):
                    m *= a - t
            out[tuple(a - b for a, b in zip(e, k))] = c * m
    return out


def _d_left(s, f):
    """``d^s * f`` for an element ``f`` of C(x)<d> in numerator form."""
    out = {}
    ranges = [range(si + 1) for si in s]
    for gamma, c in f.items():
        for k in product(*ranges):
            dc = _poly_partial(c, k) if any(k) else c
            if not dc:
                continue
            m = 1
            for si, ki in zip(s, k):
                m *= comb(si, ki)
            tgt = tuple(si - ki + gi for si, ki, gi in zip(s, k, gamma))
            slot = out.setdefault(tgt, {})
            kernels.axpy(slot, dc, m)
            if not slot:
                del out[tgt]
    return out


def _scale(f, c):
    out = {}
    for g, p in f.items():
        q = kernels.poly_mul(p, c)
        if q:
            out[g] = q
    return out


def _sub(f, g):
    out = {k: dict(v) for k, v in f.items()}
    for k, v in g.items():
        slot = out.setdefault(k, {})
        kernels.axpy(slot, v, -1)
        if not slot:
            del out[k]
    return out


def _primitive(f):
    g = {}
    for p in sorted(f.values(), key=len):
        g = _gcd(g, p)
        if _is_const(g):
            break
    if _is_const(g):
        return f
    return {k: _divexact(v, g) for k, v in f.items()}


def _normalize_scalar(f, key):
    lm = max(f, key=key)
    lp = f[lm]
    lc = lp[max(lp, key=_grevlex_key)]
    if lc == 1:
        return f
    inv = 1 / lc
    return {k: {e: c * inv for e, c in v.items()} for k, v in f.items()}


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _top_reduce(f, G, key):
    while f:
        lm = max(f, key=key)
        for glm, g in G:
            if _divides(glm, lm):
                s = tuple(a - b for a, b in zip(lm, glm))
                h = _d_left(s, g) if any(s) else g
                lp, lg = f[lm], g[glm]
                d = _gcd(lp, lg)
                if not _is_const(d):
                    lp, lg = _divexact(lp, d), _divexact(lg, d)
                f = _sub(_scale(f, lg), _scale(h, lp))
                if f:
                    f = _primitive(f)
                break
        else:
            return _normalize_scalar(f, key)
    return f


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def ff_groebner_leading(gens, key=_grevlex_key):
    """Leading d-exponents of a Gröbner basis of the extended ideal."""
    G = []
    pairs = set()

    def add(h):
        lm = max(h, key=key)
        G.append((lm, h))
        j = len(G) - 1
        pairs.update((i, j) for i in range(j))
        return not any(lm)

    for f in sorted(gens, key=lambda f: key(max(f, key=key))):
        h = _top_reduce(f, G, key)
        if h and add(h):
            return [G[-1][0]]

    while pairs:
        ij = min(pairs, key=lambda t: (key(_lcm(G[t[0]][0], G[t[1]][0])), t))
        pairs.discard(ij)
        i, j = ij
        L = _lcm(G[i][0], G[j][0])
        if any(
            k not in ij
            and _divides(G[k][0], L)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(G))
        ):
            continue
        (a, f), (b, g) = G[i], G[j]
        fa = _d_left(tuple(x - y for x, y in zip(L, a)), f)
        gb = _d_left(tuple(x - y for x, y in zip(L, b)), g)
        lf, lg = f[a], g[b]
        d = _gcd(lf, lg)
        if not _is_const(d):
            lf, lg = _divexact(lf, d), _divexact(lg, d)
        s = _sub(_scale(fa, lg), _scale(gb, lf))
        if not s:
            continue
        h = _top_reduce(_primitive(s), G, key)
        if h and add(h):
            return [G[-1][0]]
    return [lm for lm, _ in G]


def count_standard(leading, n):
    """Number of monomials outside the monomial ideal, or ``"infinite"``."""
    if any(not any(m) for m in leading):
        return 0
    bounds = []
    for i in range(n):
        pure = [m[i] for m in leading if m[i] and all(not m[j] for j in range(n) if j != i)]
        if not pure:
            return INFINITE
        bounds.append(min(pure))
    count = 0
    for e in product(*[range(b) for b in bounds]):
        if not any(_divides(m, e) for m in leading):
            count += 1
    return count


def rank_fraction_free(gens):
    n = gens[0].n
    return count_standard(ff_groebner_leading([_to_ff(g) for g in gens]), n)


def rank_block(gens):
    n = gens[0].n
    gb = left_groebner(gens, TermOrder("block", split=n))
    return count_standard([m[n:] for m in gb.leading_monomials()], n)
