import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from locoloc.coefrings import ExtModule, NotRepresentable
from locoloc.fgab import FgAbGroup, direct_sum
from locoloc.kk import (
    UCT_LABEL,
    UNVERIFIED,
    coefficient_object,
    cq,
    dq,
    dq_examples,
    fixture,
    kko_cq_cq_bound,
    kko_cq_r,
    point,
    theta_coefficient_map,
    uct_kk,
)
from locoloc.toy import FreeComplex, homology_map, theta_map


def Z(n=0):
    return FgAbGroup.cyclic(n)


def test_fixtures():
    assert str(fixture("point-complex").k_groups) == "period=2: [Z, 0]"
    assert str(fixture("point-real").k_groups) == "period=8: [Z, Z/2, Z/2, 0, Z, 0, 0, 0]"
    assert fixture("Cq(5)").k_groups[0] == Z(5)
    assert fixture("DQ").k_groups[0] == ExtModule.rationals()
    with pytest.raises(ValueError):
        fixture("nope")


# UCT ----------------------------------------------------------------------------------------


@pytest.mark.parametrize("q", [2, 3, 12, 50])
def test_uct_cq_cq(q):
    r = uct_kk(cq(q), cq(q))
    assert r[0] == Z(q) and r[0].exponent == q
    assert r.label == UCT_LABEL
    # odd degree: Hom(Z/q, 0) + Ext(Z/q, Z/q)
    assert r[1] == Z(q)


def test_uct_point_and_dq():
    assert uct_kk(point(), point())[0] == Z()
    assert uct_kk(point(), point())[1] == Z(1)
    assert uct_kk(dq(), dq(), degrees=(0,))[0] == ExtModule.rationals()


def test_uct_rejects_real_and_names_degree():
    with pytest.raises(ValueError):
        uct_kk(point("real"), point("real"))
    with pytest.raises(NotRepresentable) as e:
        uct_kk(dq(), point())
    assert "DQ" in str(e.value)


@settings(max_examples=49, deadline=None)
@given(st.integers(2, 50))
def test_uct_cq_exponent_exactly_q(q):
    assert uct_kk(cq(q), cq(q))[0].exponent == q


# coefficient objects ------------------------------------------------------------------------


@pytest.mark.parametrize("q", [2, 3, 7, 12])
def test_coefficient_object_point_complex(q):
    C = coefficient_object(point(), q)
    assert C.k_groups[0] == Z(q) and C.k_groups[1] == Z(1)
    assert C.k_groups == cq(q).k_groups


def test_coefficient_object_point_real_mod_two():
    C = coefficient_object(point("real"), 2)
    assert C.k_groups is None
    probs = dict(C.extensions.problems)
    # degree 2: Z/2 (x) Z/2 extended by ker(2 on KO_1) = Z/2
    assert set(probs[2].candidates) == {direct_sum(Z(2), Z(2)), Z(4)}
    # coker(2 on KO_n) + ker(2 on KO_(n-1)) by hand from (Z, Z/2, Z/2, 0, Z, 0, 0, 0)
    want = {0: Z(2), 1: Z(2), 3: Z(2), 4: Z(2), 5: Z(1), 6: Z(1), 7: Z(1)}
    for n, G in want.items():
        assert probs[n].resolved == G, n
    for p in probs.values():
        for E in p.candidates:
            assert 4 % E.exponent == 0


def test_coefficient_object_coprime_finite():
    C = coefficient_object(cq(4), 3)
    assert C.k_groups.is_zero


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 16))
def test_coefficient_object_square_bound(q):
    C = coefficient_object(point("real"), q)
    for E in C.extensions.all_candidates():
        assert (q * q) % E.exponent == 0


# real computations --------------------------------------------------------------------------


@pytest.mark.parametrize("q,want", [(2, (Z(2), Z(2))), (6, (Z(6), Z(2))), (3, (Z(3), Z(1))), (8, (Z(8), Z(2)))])
def test_kko_cq_r(q, want):
    r = kko_cq_r(q)
    assert (r.kko_minus1, r.kko_0) == want
    assert r.report.all_exact and len(r.report.nodes) == 24


def test_kko_bound_examples():
    r = kko_cq_cq_bound(2)
    assert set(r.candidates) == {direct_sum(Z(2), Z(2)), Z(4)}
    assert r.bound == 4 and r.exponent_bound_holds
    r = kko_cq_cq_bound(6)
    assert set(r.candidates) == {direct_sum(Z(2), Z(6)), Z(12)}
    assert r.bound == 12 and r.exponent_bound_holds
    r = kko_cq_cq_bound(3)
    assert r.candidates == (Z(3),) and r.bound == 3 and r.exponent_bound_holds


def test_four_divides_is_not_decided():
    r = kko_cq_cq_bound(4)
    assert r.four_divides_claim is not None and "not decided" in r.four_divides_claim
    assert Z(8) in r.candidates
    assert kko_cq_cq_bound(6).four_divides_claim is None


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 40))
def test_kko_bound_holds(q):
    r = kko_cq_cq_bound(q)
    assert r.exponent_bound_holds
    assert all(r.bound % E.exponent == 0 for E in r.candidates)


# D_Q ----------------------------------------------------------------------------------------


def test_dq_examples():
    rep = dq_examples()
    assert rep["KK_0(DQ,DQ)"] == "Q"
    assert rep["KK_0(DQ,point)"] == "0"
    assert rep["Q/Z (x) Q"] == "0"
    assert rep["Tor(Q/Z, Q)"] == "0"
    assert rep["KK_0(DQZ,DQZ;Q) != 0"] == UNVERIFIED


# Theta across modules -----------------------------------------------------------------------


@pytest.mark.parametrize("q,p", [(2, 4), (3, 9), (2, 6), (5, 5)])
def test_theta_matches_toy_model(q, p):
    a = theta_coefficient_map(q, p)
    b = homology_map(theta_map(FreeComplex.concentrated(), q, p).theta, 0)
    assert (a.domain, a.codomain) == (Z(q), Z(p)) == (b.domain, b.codomain)
    assert a == b
