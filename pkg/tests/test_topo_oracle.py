from fractions import Fraction as Q

import pytest

from taut.topo_oracle import (
    CROSSCHECK_CASES,
    FamilyCase,
    OracleError,
    expected_rank,
    family_case,
    groebner_rank,
    rank_crosscheck,
)


def test_case_data():
    c = family_case("rnc:3", Q(2, 3))
    assert (c.dimX, c.chiX, c.chiZ, c.chiU) == (1, 2, 3, -1)
    assert c.low_betti == {}
    s = family_case("segre", 2)
    assert (s.dimX, s.chiX, s.chiZ, s.chiU) == (2, 4, 2, 2)
    assert s.low_betti == {0: 1, 1: 0}
    for fam in ("rnc:2", "rnc:5", "segre"):
        c = family_case(fam, 1)
        assert c.chiU + c.chiZ == c.chiX


@pytest.mark.parametrize(
    "fam,beta,rank", [("rnc:3", Q(2, 3), 1), ("rnc:2", Q(1), 1), ("segre", Q(2), 1), ("rnc:4", Q(1, 2), 2)]
)
def test_expected_rank(fam, beta, rank):
    assert expected_rank(family_case(fam, beta)) == rank


@pytest.mark.parametrize("k", range(3, 10))
def test_closed_form(k):
    assert expected_rank(family_case(f"rnc:{k}", Q(2, k))) == k - 2


def test_off_distinguished_beta_vanishes():
    assert expected_rank(family_case("rnc:3", Q(1, 2))) == 0
    assert expected_rank(family_case("segre", Q(1))) == 0


def test_inconsistent_data():
    with pytest.raises(OracleError, match="negative"):
        expected_rank(FamilyCase("bad", Q(1, 2), dimX=2, chiX=1, chiZ=3, distinguished_beta=Q(1, 2)))
    with pytest.raises(OracleError, match="Betti"):
        expected_rank(FamilyCase("bad", Q(1), dimX=2, chiX=4, chiZ=2, low_betti={0: 1}, distinguished_beta=Q(1)))
    with pytest.raises(OracleError):
        expected_rank(FamilyCase("bad", Q(-1), dimX=1, chiX=2, chiZ=2, distinguished_beta=Q(-1)))


@pytest.mark.parametrize("fam,beta", CROSSCHECK_CASES)
def test_crosscheck(fam, beta):
    agree, got, expected = rank_crosscheck(fam, beta)
    assert agree, (got, expected)


@pytest.mark.parametrize("fam,beta", [("rnc:2", Q(1)), ("segre", Q(2)), ("rnc:3", Q(2, 3))])
def test_engines_agree(fam, beta):
    assert groebner_rank(fam, beta, "fraction-free") == groebner_rank(fam, beta, "block")


@pytest.mark.parametrize("fam,beta", [("rnc:2", Q(2)), ("rnc:2", Q(1, 3)), ("segre", Q(1)), ("segre", Q(1, 2))])
def test_vanishing_crosscheck(fam, beta):
    assert rank_crosscheck(fam, beta) == (True, 0, 0)
