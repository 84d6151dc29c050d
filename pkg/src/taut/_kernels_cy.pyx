# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; same contracts as ``_kernels_py``."""

from libc.stdlib cimport malloc, free


cdef object _binom_table = {}


cdef object _commute_factor(int b, int c, int j):
    # binom(b,j) * binom(c,j) * j!
    key = (b, c, j)
    v = _binom_table.get(key)
    if v is None:
        num = 1
        for t in range(j):
            num = num * (b - t) * (c - t)
        den = 1
        for t in range(2, j + 1):
            den *= t
        v = num // den
        _binom_table[key] = v
    return v


cdef inline void _accumulate(dict out, tuple e, object c):
    cdef object s = out.get(e)
    if s is None:
        if c:
            out[e] = c
        return
    s = s + c
    if s:
        out[e] = s
    else:
        del out[e]


def poly_mul(dict p, dict q):
    cdef dict out = {}
    cdef tuple ea, eb
    cdef Py_ssize_t k, m
    for ea, ca in p.items():
        m = len(ea)
        for eb, cb in q.items():
            e = tuple([ea[k] + eb[k] for k in range(m)])
            _accumulate(out, e, ca * cb)
    return out


cdef void _term_mul(object ca, tuple ea, object cb, tuple eb, int n, dict out):
    cdef int i, k, nopt = 0, j, pos
    cdef int *idx = <int *> malloc(n * sizeof(int))
    cdef int *lim = <int *> malloc(n * sizeof(int))
    cdef int *cur = <int *> malloc(n * sizeof(int))
    cdef int *base = <int *> malloc(2 * n * sizeof(int))
    cdef int *ex = <int *> malloc(2 * n * sizeof(int))
    cdef int b, c
    cdef object coeff = ca * cb
    cdef object mult
    try:
        for i in range(n):
            base[i] = <int> ea[i] + <int> eb[i]
            base[n + i] = <int> ea[n + i] + <int> eb[n + i]
            b = ea[n + i]
            c = eb[i]
            if b and c:
                idx[nopt] = i
                lim[nopt] = b if b < c else c
                cur[nopt] = 0
                nopt += 1
        if nopt == 0:
            _accumulate(out, tuple([base[k] for k in range(2 * n)]), coeff)
            return
        # odometer over the commuting choices
        while True:
            for k in range(2 * n):
                ex[k] = base[k]
            mult = 1
            for k in range(nopt):
                j = cur[k]
                if j:
                    i = idx[k]
                    mult = mult * _commute_factor(ea[n + i], eb[i], j)
                    ex[i] -= j
                    ex[n + i] -= j
            _accumulate(out, tuple([ex[k] for k in range(2 * n)]), coeff * mult)
            pos = 0
            while pos < nopt:
                cur[pos] += 1
                if cur[pos] <= lim[pos]:
                    break
                cur[pos] = 0
                pos += 1
            if pos == nopt:
                break
    finally:
        free(idx)
        free(lim)
        free(cur)
        free(base)
        free(ex)


def weyl_term_mul(ca, tuple ea, cb, tuple eb, int n, dict out):
    _term_mul(ca, ea, cb, eb, n, out)


def weyl_mul(dict p, dict q, int n):
    cdef dict out = {}
    for ea, ca in p.items():
        for eb, cb in q.items():
            _term_mul(ca, ea, cb, eb, n, out)
    return out


def weyl_mono_mul(c, tuple e, dict q, int n):
    cdef dict out = {}
    for eb, cb in q.items():
        _term_mul(c, e, cb, eb, n, out)
    return out


def axpy(dict target, dict source, c):
    for e, v in source.items():
        _accumulate(target, e, c * v)
    return target
