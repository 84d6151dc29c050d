"""Representation data, cone ideals and tautological generator sets.

The infinitesimal action of a matrix ``A`` on ``V = C^n`` is the vector field
``Z(A) = -sum_{i,j} A[j][i] x_i d_j``. A tautological system is generated by
the cone ideal together with ``Z(xi) - trace(A_xi) + beta(xi)`` for every
basis element ``xi`` of the Lie algebra.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction as Q
from itertools import combinations_with_replacement
from math import comb
from typing import Sequence

from .algebra import Polynomial, comm_groebner, format_rational, poly_normal_form, to_rational
from .parsing import parse_polynomial
from .rootsys import RootSystem, build_root_system, weyl_dim, weyl_vector
from .weyl import (
    WeylElement,
    apply,
    commutator,
    euler_operator,
    fourier_laplace,
    is_euler_homogeneous,
    left_groebner,
    weyl_normal_form,
)


class SpecError(ValueError):
    """Inconsistent representation or tautological data."""


def _mat(rows):
    return tuple(tuple(to_rational(x) for x in row) for row in rows)


def _mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _mat_comb(coeffs, mats, n):
    out = [[Q(0)] * n for _ in range(n)]
    for c, m in zip(coeffs, mats):
        for i in range(n):
            for j in range(n):
                out[i][j] += c * m[i][j]
    return tuple(tuple(r) for r in out)


def _identity(n):
    return tuple(tuple(Q(int(i == j)) for j in range(n)) for i in range(n))


def _trace(m):
    return sum((m[i][i] for i in range(len(m))), Q(0))


def _inverse(m):
    n = len(m)
    rows = [list(r) + [Q(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    for c in range(n):
        p = next((r for r in range(c, n) if rows[r][c]), None)
        if p is None:
            raise SpecError("singular matrix")
        rows[c], rows[p] = rows[p], rows[c]
        piv = rows[c][c]
        rows[c] = [x / piv for x in rows[c]]
        for r in range(n):
            if r != c and rows[r][c]:
                f = rows[r][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
    return [r[n:] for r in rows]


# ---------------------------------------------------------------------------
# representation data


@dataclass
class RepSpec:
    """Basis labels, matrices and structure constants of ``g' = g + C e``.

    ``brackets[(a, b)]`` maps labels to rational coefficients of ``[a, b]``;
    missing pairs bracket to zero. ``e`` names the scaling element.
    """

    vars: tuple
    labels: tuple
    matrices: dict
    brackets: dict
    e: str

    def __post_init__(self):
        self.vars = tuple(self.vars)
        self.labels = tuple(self.labels)
        n = len(self.vars)
        self.matrices = {k: _mat(v) for k, v in self.matrices.items()}
        self.brackets = {
            tuple(k): {lab: to_rational(c) for lab, c in v.items() if to_rational(c)}
            for k, v in self.brackets.items()
        }
        if set(self.matrices) != set(self.labels):
            raise SpecError("matrices and labels disagree")
        if self.e not in self.labels:
            raise SpecError("the scaling element is not a basis label")
        for lab, m in self.matrices.items():
            if len(m) != n or any(len(r) != n for r in m):
                raise SpecError(f"matrix of {lab} is not {n}x{n}")
        if self.matrices[self.e] != _identity(n):
            raise SpecError("the scaling element must act as the identity")
        for (a, b), v in self.brackets.items():
            if a not in self.labels or b not in self.labels or not set(v) <= set(self.labels):
                raise SpecError(f"bracket entry {(a, b)} uses unknown labels")
        if not self.brackets_consistent():
            raise SpecError("matrices do not respect the bracket table")

    @property
    def dim(self) -> int:
        return len(self.vars)

    def bracket(self, a, b) -> dict:
        if (a, b) in self.brackets:
            return dict(self.brackets[(a, b)])
        if (b, a) in self.brackets:
            return {k: -c for k, c in self.brackets[(b, a)].items()}
        return {}

    def brackets_consistent(self) -> bool:
        n = self.dim
        for a in self.labels:
            for b in self.labels:
                ma, mb = self.matrices[a], self.matrices[b]
                ab, ba = _mat_mul(ma, mb), _mat_mul(mb, ma)
                lhs = tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(ab, ba))
                br = self.bracket(a, b)
                rhs = _mat_comb(list(br.values()), [self.matrices[k] for k in br], n)
                if lhs != rhs:
                    return False
        return True

    @property
    def g_labels(self):
        return tuple(lab for lab in self.labels if lab != self.e)

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "matrices": [[[format_rational(x) for x in row] for row in self.matrices[lab]] for lab in self.labels],
            "brackets": {
                f"{a},{b}": {k: format_rational(c) for k, c in sorted(v.items())}
                for (a, b), v in sorted(self.brackets.items())
            },
            "e": self.e,
        }

    @classmethod
    def from_json(cls, data: dict, vars):
        labels = data["labels"]
        return cls(
            vars=vars,
            labels=labels,
            matrices=dict(zip(labels, data["matrices"])),
            brackets={tuple(k.split(",")): v for k, v in data.get("brackets", {}).items()},
            e=data["e"],
        )


_SL2_BRACKETS = {("E12", "E21"): {"H": 1}, ("H", "E12"): {"E12": 2}, ("H", "E21"): {"E21": -2}}


def sym_power_rep(k: int) -> RepSpec:
    """``sl2 + C e`` on ``Sym^k(C^2)`` with coordinates ``z0..zk``."""
    if k < 1:
        raise SpecError("k must be at least 1")
    n = k + 1
    e12 = [[0] * n for _ in range(n)]
    e21 = [[0] * n for _ in range(n)]
    h = [[0] * n for _ in range(n)]
    for i in range(1, n):
        e12[i - 1][i] = i
        e21[i][i - 1] = k - i + 1
    for i in range(n):
        h[i][i] = k - 2 * i
    return RepSpec(
        vars=tuple(f"z{i}" for i in range(n)),
        labels=("E12", "E21", "H", "e"),
        matrices={"E12": e12, "E21": e21, "H": h, "e": _identity(n)},
        brackets=_SL2_BRACKETS,
        e="e",
    )


SEGRE_VARS = ("x11", "x12", "x21", "x22")


def segre_rep() -> RepSpec:
    """``sl2 + sl2 + C e`` on ``C^2 (x) C^2``; factor 1 moves the first index."""
    pos = {(a, j): 2 * (a - 1) + (j - 1) for a in (1, 2) for j in (1, 2)}

    def unit(src_dst):
        m = [[0] * 4 for _ in range(4)]
        for src, dst, c in src_dst:
            m[pos[dst]][pos[src]] += c
        return m

    mats = {}
    for f in (1, 2):
        def move(a, b, f=f):
            # E_ab: basis vector with index b in slot f goes to index a
            out = []
            for other in (1, 2):
                src = (b, other) if f == 1 else (other, b)
                dst = (a, other) if f == 1 else (other, a)
                out.append((src, dst, 1))
            return out

        mats[f"E12_{f}"] = unit(move(1, 2))
        mats[f"E21_{f}"] = unit(move(2, 1))
        mats[f"H_{f}"] = unit(move(1, 1) + [(s, d, -c) for s, d, c in move(2, 2)])
    mats["e"] = _identity(4)
    brackets = {}
    for f in (1, 2):
        for (a, b), v in _SL2_BRACKETS.items():
            brackets[(f"{a}_{f}", f"{b}_{f}")] = {f"{k}_{f}": c for k, c in v.items()}
    return RepSpec(
        vars=SEGRE_VARS,
        labels=("E12_1", "E21_1", "H_1", "E12_2", "E21_2", "H_2", "e"),
        matrices=mats,
        brackets=brackets,
        e="e",
    )


def adjoint_rep(rep: RepSpec) -> RepSpec:
    """Adjoint action of ``g`` on itself (plus scaling), from the bracket table."""
    g = rep.g_labels
    n = len(g)
    mats = {}
    for a in g:
        m = [[Q(0)] * n for _ in range(n)]
        for j, b in enumerate(g):
            for lab, c in rep.bracket(a, b).items():
                m[g.index(lab)][j] += c
        mats[a] = m
    mats[rep.e] = _identity(n)
    return RepSpec(
        vars=tuple(f"y{i}" for i in range(n)),
        labels=rep.labels,
        matrices=mats,
        brackets=rep.brackets,
        e=rep.e,
    )


# ---------------------------------------------------------------------------
# cone ideals


def rnc_ideal(k: int) -> list:
    """Binomial quadrics cutting out the cone over the degree-k rational normal curve."""
    if k < 1:
        raise SpecError("k must be at least 1")
    vars = tuple(f"z{i}" for i in range(k + 1))
    pairs = {}
    for i, j in combinations_with_replacement(range(k + 1), 2):
        pairs.setdefault(i + j, []).append((i, j))
    accepted = []
    for s in sorted(pairs):
        for (i1, j1), (i2, j2) in combinations_with_replacement(pairs[s], 2):
            if (i1, j1) == (i2, j2):
                continue
            e1 = [0] * (k + 1)
            e1[i1] += 1
            e1[j1] += 1
            e2 = [0] * (k + 1)
            e2[i2] += 1
            e2[j2] += 1
            q = Polynomial(
                vars,
                {tuple(e1): comb(k, i2) * comb(k, j2), tuple(e2): -comb(k, i1) * comb(k, j1)},
            )
            if accepted and not poly_normal_form(q, comm_groebner(accepted)).terms:
                continue
            accepted.append(q)
    return accepted


def segre_ideal() -> list:
    return [parse_polynomial("x11*x22 - x21*x12", SEGRE_VARS)]


# ---------------------------------------------------------------------------
# tautological systems


def vector_field(A, vars: Sequence[str]) -> WeylElement:
    """``-sum_{i,j} A[j][i] x_i d_j``."""
    vars = tuple(vars)
    n = len(vars)
    A = _mat(A)
    if len(A) != n or any(len(r) != n for r in A):
        raise SpecError(f"matrix size does not match {n} variables")
    terms = {}
    for i in range(n):
        for j in range(n):
            if A[j][i]:
                e = [0] * (2 * n)
                e[i] += 1
                e[n + j] += 1
                terms[tuple(e)] = -A[j][i]
    return WeylElement(vars, terms)


@dataclass
class TautSpec:
    """Input data of a tautological system.

    Construction checks that the cone generators are homogeneous and that the
    ideal is stable under every ``Z(xi)`` up to ``stability_degree``.
    """

    rep: RepSpec
    cone_ideal: list
    beta: dict = field(default_factory=dict)
    stability_degree: int | None = None

    def __post_init__(self):
        self.beta = {k: to_rational(v) for k, v in self.beta.items()}
        unknown = set(self.beta) - set(self.rep.labels)
        if unknown:
            raise SpecError(f"beta given for unknown labels {sorted(unknown)}")
        nonzero_off_e = [k for k, v in self.beta.items() if v and k != self.rep.e]
        if nonzero_off_e:
            raise SpecError("beta must vanish on the semisimple part")
        for g in self.cone_ideal:
            if g.vars != self.rep.vars:
                raise SpecError("cone ideal lives in a different variable context")
            if not g.is_homogeneous():
                raise SpecError(f"cone generator {g} is not homogeneous")
        if not self.ideal_stable(self.stability_degree):
            raise SpecError("cone ideal is not stable under the group action")

    @property
    def vars(self):
        return self.rep.vars

    def beta_of(self, label) -> Q:
        return self.beta.get(label, Q(0))

    def ideal_stable(self, degree=None) -> bool:
        """Every ``Z(xi)(g)`` reduces to zero modulo the cone ideal.

        ``Z(xi)`` is a derivation, so stability of the generators implies
        stability of the ideal; ``degree`` optionally bounds which generators
        are tested.
        """
        if not self.cone_ideal:
            return True
        gb = comm_groebner(self.cone_ideal)
        for lab in self.rep.labels:
            z = vector_field(self.rep.matrices[lab], self.vars)
            for g in self.cone_ideal:
                if degree is not None and g.total_degree() > degree:
                    continue
                if poly_normal_form(apply(z, g), gb).terms:
                    return False
        return True

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "rep": self.rep.to_json(),
            "ideal": [str(g) for g in self.cone_ideal],
            "beta": {k: format_rational(v) for k, v in sorted(self.beta.items())},
        }

    @classmethod
    def from_json(cls, data: dict):
        rep_data = data["rep"]
        vars = data.get("vars")
        if vars is None:
            n = len(rep_data["matrices"][0])
            vars = [f"x{i + 1}" for i in range(n)]
        rep = RepSpec.from_json(rep_data, vars)
        ideal = [parse_polynomial(s, rep.vars) for s in data.get("ideal", [])]
        return cls(rep, ideal, data.get("beta", {}))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def build_tauthat(spec: TautSpec) -> list:
    """Cone generators, then ``Z(xi) - trace + beta(xi)`` for each basis element."""
    out = [WeylElement.from_polynomial(g) for g in spec.cone_ideal]
    for lab in spec.rep.labels:
        A = spec.rep.matrices[lab]
        z = vector_field(A, spec.vars)
        out.append(z - _trace(A) + spec.beta_of(lab))
    for g in out:
        if not is_euler_homogeneous(g)[0]:
            raise SpecError(f"generator {g} is not Euler homogeneous")
    return out


def fl_ideal(gens) -> list:
    return [fourier_laplace(g) for g in gens]


def lie_hom_check(rep: RepSpec) -> bool:
    """``[Z(a), Z(b)] == Z([a, b])`` for every pair of basis elements."""
    z = {lab: vector_field(rep.matrices[lab], rep.vars) for lab in rep.labels}
    zero = WeylElement.zero(rep.vars)
    for a in rep.labels:
        for b in rep.labels:
            rhs = zero
            for lab, c in rep.bracket(a, b).items():
                rhs = rhs + z[lab] * c
            if commutator(z[a], z[b]) != rhs:
                return False
    return True


def killing_form(rep: RepSpec):
    """Gram matrix ``trace(ad a . ad b)`` on the semisimple labels."""
    g = rep.g_labels
    n = len(g)
    ad = {}
    for a in g:
        m = [[Q(0)] * n for _ in range(n)]
        for j, b in enumerate(g):
            for lab, c in rep.bracket(a, b).items():
                if lab != rep.e:
                    m[g.index(lab)][j] += c
        ad[a] = m
    return [[_trace(_mat_mul(ad[a], ad[b])) for b in g] for a in g]


def casimir_weyl(rep: RepSpec, killing=None) -> WeylElement:
    """``Z(C) = sum_ij (K^-1)_ij Z(A_i) Z(A_j)`` over the semisimple basis."""
    g = rep.g_labels
    K = killing if killing is not None else killing_form(rep)
    try:
        Kinv = _inverse([[to_rational(x) for x in row] for row in K])
    except SpecError:
        raise SpecError("degenerate Killing form") from None
    z = [vector_field(rep.matrices[lab], rep.vars) for lab in g]
    total = WeylElement.zero(rep.vars)
    for i in range(len(g)):
        for j in range(len(g)):
            if Kinv[i][j]:
                total = total + (z[i] * z[j]) * Kinv[i][j]
    return total


def _check_dim(spec: TautSpec, rs: RootSystem, mu):
    if weyl_dim(rs, mu) != len(spec.vars):
        raise SpecError("dim V does not match the highest weight")


def monomials_up_to(vars, dmax):
    n = len(vars)
    for d in range(dmax + 1):
        for combo in combinations_with_replacement(range(n), d):
            e = [0] * n
            for i in combo:
                e[i] += 1
            yield Polynomial(vars, {tuple(e): 1})


def casimir_euler_operator(spec: TautSpec, rs: RootSystem, mu) -> WeylElement:
    """``Z(C) - Z(e)^2 |mu|^2 + 2 Z(e) <delta, mu>``."""
    mm = rs.pair(mu, mu)
    dm = rs.pair(weyl_vector(rs), mu)
    zc = casimir_weyl(spec.rep)
    ze = vector_field(spec.rep.matrices[spec.rep.e], spec.vars)
    return zc - (ze * ze) * mm + ze * (2 * dm)


def verify_casimir_identity(spec: TautSpec, rs: RootSystem, mu, dmax: int) -> bool:
    _check_dim(spec, rs, mu)
    op = casimir_euler_operator(spec, rs, mu)
    gb = comm_groebner(spec.cone_ideal) if spec.cone_ideal else None
    for m in monomials_up_to(spec.vars, dmax):
        r = apply(op, m)
        if gb is not None:
            r = poly_normal_form(r, gb)
        if r.terms:
            return False
    return True


def casimir_cone_operator(spec: TautSpec, rs: RootSystem, mu) -> WeylElement:
    """``Z(C) - (E+n)^2 |mu|^2 + 2 (E+n) <delta, mu>``."""
    n = len(spec.vars)
    mm = rs.pair(mu, mu)
    dm = rs.pair(weyl_vector(rs), mu)
    en = euler_operator(spec.vars) + n
    return casimir_weyl(spec.rep) - (en * en) * mm + en * (2 * dm)


def verify_casimir_cone_membership(spec: TautSpec, rs: RootSystem, mu) -> bool:
    _check_dim(spec, rs, mu)
    op = casimir_cone_operator(spec, rs, mu)
    if not spec.cone_ideal:
        return not op.terms
    gb = left_groebner([WeylElement.from_polynomial(g) for g in spec.cone_ideal])
    return not weyl_normal_form(op, gb).terms


# ---------------------------------------------------------------------------
# shipped families


@dataclass(frozen=True)
class Family:
    name: str
    k: int | None
    root_type: str
    mu: tuple

    @property
    def root_system(self) -> RootSystem:
        return build_root_system(self.root_type)

    def spec(self, beta) -> TautSpec:
        beta = {"e": to_rational(beta)}
        if self.name == "rnc":
            return TautSpec(sym_power_rep(self.k), rnc_ideal(self.k), beta)
        return TautSpec(segre_rep(), segre_ideal(), beta)


def parse_family(text: str) -> Family:
    """``rnc:k`` or ``segre``."""
    t = text.strip().lower()
    if t == "segre":
        return Family("segre", None, "A1xA1", (1, 1))
    if t.startswith("rnc:"):
        try:
            k = int(t[4:])
        except ValueError:
            raise SpecError(f"bad family {text!r}") from None
        if k < 1:
            raise SpecError("rnc degree must be at least 1")
        return Family("rnc", k, "A1", (k,))
    raise SpecError(f"unknown family {text!r}; expected rnc:k or segre")


def segre_listed_operators() -> list:
    """The Segre system written out with theta_ij = x_ij d_ij, for comparison."""
    from .parsing import parse_operator

    texts = [
        "x11*x22 - x21*x12",
        "x11*d11 + x12*d12 + x21*d21 + x22*d22 + 2",
        "x21*d11 + x22*d12",
        "x11*d21 + x12*d22",
        "x11*d12 + x21*d22",
        "x12*d11 + x22*d21",
        "x11*d11 + x12*d12 + 1",
        "x21*d21 + x22*d22 + 1",
        "x11*d11 + x21*d21 + 1",
        "x12*d12 + x22*d22 + 1",
    ]
    return [parse_operator(t, SEGRE_VARS) for t in texts]
