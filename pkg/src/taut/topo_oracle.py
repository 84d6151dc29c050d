"""Expected holonomic ranks from Euler characteristics of hyperplane-section complements.

For a generic section ``lam`` with zero locus ``Z`` on ``X`` and complement
``U = X - Z``:

* ``beta`` different from the distinguished value ``2<delta,mu>/|mu|^2``:
  the system vanishes away from the origin and the rank is 0;
* non-integral distinguished ``beta``: the twisted cohomology of the affine
  ``U`` is concentrated in degree ``dim X`` (recorded assumption), so the rank
  is ``(-1)^dim X * chi(U)``;
* positive integral distinguished ``beta``: the rank is ``b_{dim X}(U)``,
  recovered from ``chi(U)`` and the declared lower Betti numbers.

Declared data per family: ``rnc(k)`` has ``X = P^1``, ``Z`` = ``k`` points,
``U`` connected. ``segre`` has ``X = P^1 x P^1``, ``Z`` a smooth conic, and
``U`` an affine quadric surface, homotopic to a 2-sphere (``b0 = 1``,
``b1 = 0``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q

from .algebra import to_rational
from .rootsys import beta_value
from .tautbuild import Family, build_tauthat, fl_ideal, parse_family
from .weyl import holonomic_rank


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class FamilyCase:
    family: str
    beta: Q
    dimX: int
    chiX: int
    chiZ: int
    low_betti: dict = field(default_factory=dict)
    distinguished_beta: Q | None = None

    @property
    def chiU(self) -> int:
        return self.chiX - self.chiZ


def family_case(family, beta) -> FamilyCase:
    fam = parse_family(family) if isinstance(family, str) else family
    beta = to_rational(beta)
    dist = beta_value(fam.root_system, fam.mu)
    integral = beta.denominator == 1
    if fam.name == "rnc":
        data = dict(dimX=1, chiX=2, chiZ=fam.k, low_betti={0: 1} if integral else {})
        label = f"rnc:{fam.k}"
    else:
        data = dict(dimX=2, chiX=4, chiZ=2, low_betti={0: 1, 1: 0} if integral else {})
        label = "segre"
    return FamilyCase(label, beta, distinguished_beta=dist, **data)


def expected_rank(case: FamilyCase) -> int:
    sign = -1 if case.dimX % 2 else 1
    if case.distinguished_beta is not None and case.beta != case.distinguished_beta:
        return 0
    if case.beta.denominator != 1:
        value = sign * case.chiU
    elif case.beta > 0:
        missing = [i for i in range(case.dimX) if i not in case.low_betti]
        if missing:
            raise OracleError(f"lower Betti numbers missing in degrees {missing}")
        lower = sum((-1) ** i * b for i, b in case.low_betti.items() if i < case.dimX)
        value = sign * (case.chiU - lower)
    else:
        raise OracleError("the oracle covers non-integral and positive integral beta only")
    if value < 0:
        raise OracleError("inconsistent case data: negative rank")
    return value


def groebner_rank(family, beta, method="fraction-free"):
    fam = parse_family(family) if isinstance(family, str) else family
    return holonomic_rank(fl_ideal(build_tauthat(fam.spec(beta))), method)


def rank_crosscheck(family, beta, method="fraction-free"):
    """``(agree, groebner_value, oracle_value)``; an infinite rank never agrees."""
    expected = expected_rank(family_case(family, beta))
    got = groebner_rank(family, beta, method)
    return got == expected, got, expected


CROSSCHECK_CASES = [("rnc:2", Q(1)), ("rnc:3", Q(2, 3)), ("rnc:4", Q(1, 2)), ("segre", Q(2))]
