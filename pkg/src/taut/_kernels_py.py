"""Pure-Python reference kernels.

Every function here has a compiled twin in ``_kernels_cy.pyx`` with the same
signature and results. Terms are dicts from exponent tuples to coefficients;
coefficients only need ``+``, ``*`` and comparison with zero.

Weyl exponent tuples have length ``2n``: the x-part followed by the d-part.
"""

from math import comb, factorial


def poly_mul(p, q):
    out = {}
    get = out.get
    for ea, ca in p.items():
        for eb, cb in q.items():
            e = tuple([a + b for a, b in zip(ea, eb)])
            c = get(e, 0) + ca * cb
            if c:
                out[e] = c
            elif e in out:
                del out[e]
    return out


def _commute_factors(b, c):
    # d^b x^c = sum_j binom(b,j) binom(c,j) j! x^(c-j) d^(b-j), one coordinate
    m = b if b < c else c
    return [(j, comb(b, j) * comb(c, j) * factorial(j)) for j in range(m + 1)]


def weyl_term_mul(ca, ea, cb, eb, n, out):
    """Accumulate ``(ca x^a d^b) * (cb x^c d^d)`` into ``out``."""
    options = []
    for i in range(n):
        b = ea[n + i]
        c = eb[i]
        if b and c:
            options.append((i, _commute_factors(b, c)))
    base = [ea[i] + eb[i] for i in range(n)] + [ea[n + i] + eb[n + i] for i in range(n)]
    coeff = ca * cb
    get = out.get
    if not options:
        e = tuple(base)
        c = get(e, 0) + coeff
        if c:
            out[e] = c
        elif e in out:
            del out[e]
        return
    # cartesian product over coordinates that need commuting
    stack = [(0, base, 1)]
    while stack:
        k, exp, mult = stack.pop()
        if k == len(options):
            e = tuple(exp)
            c = get(e, 0) + coeff * mult
            if c:
                out[e] = c
            elif e in out:
                del out[e]
            continue
        i, facs = options[k]
        for j, f in facs:
            if j:
                nxt = list(exp)
                nxt[i] -= j
                nxt[n + i] -= j
            else:
                nxt = exp
            stack.append((k + 1, nxt, mult * f))


def weyl_mul(p, q, n):
    out = {}
    for ea, ca in p.items():
        for eb, cb in q.items():
            weyl_term_mul(ca, ea, cb, eb, n, out)
    return out


def weyl_mono_mul(c, e, q, n):
    """Return ``(c x^a d^b) * q`` where ``e = a + b``."""
    out = {}
    for eb, cb in q.items():
        weyl_term_mul(c, e, cb, eb, n, out)
    return out


def axpy(target, source, c):
    """In place ``target += c * source``; drops cancelled terms."""
    get = target.get
    for e, v in source.items():
        s = get(e, 0) + c * v
        if s:
            target[e] = s
        elif e in target:
            del target[e]
    return target
