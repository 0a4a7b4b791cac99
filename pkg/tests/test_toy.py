from math import lcm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from locoloc.checks import random_chain_map, random_complex, random_map_pair, random_prime_set, trial_rng
from locoloc.coefrings import PrimeSet
from locoloc.fgab import FgAbGroup
from locoloc.linalg import IntMatrix
from locoloc.toy import (
    ChainMap,
    FreeComplex,
    are_homotopic,
    chain_map_group,
    coefficient_cone,
    cone,
    cone_les,
    hom_set,
    homology,
    homology_group,
    homology_map,
    is_nullhomotopic,
    octahedron_check,
    s_equivalence_test,
    s_finite_test,
    theta_chain_map,
    theta_map,
)

seeds = st.integers(0, 2**32 - 1)
ZC = FreeComplex.concentrated()


def Z(n=0):
    return FgAbGroup.cyclic(n)


# complexes and cones ------------------------------------------------------------------------


def test_homology_examples():
    C = FreeComplex.two_term(5)
    assert homology_group(C, 0) == Z(5) and homology_group(C, 1) == Z(1)
    assert homology(FreeComplex.zero()).is_zero
    assert homology(FreeComplex.two_term(1)).is_zero


def test_complex_rejects_bad_differential():
    d = IntMatrix.from_rows([[1]])
    with pytest.raises(ValueError):
        FreeComplex(0, 2, (1, 1, 1), (d, d))


def test_cone_examples():
    assert homology_group(cone(ChainMap.multiplication(ZC, 3)).cone, 0) == Z(3)
    C2 = FreeComplex.two_term(2)
    assert homology(cone(ChainMap.identity(C2)).cone).is_zero
    # cone of A -> 0 is A[1]
    tri = cone(ChainMap.zero(C2, FreeComplex.zero()))
    assert homology_group(tri.cone, 1) == Z(2) and homology_group(tri.cone, 0) == Z(1)


def test_nullhomotopy_examples():
    C2 = FreeComplex.two_term(2)
    cert = is_nullhomotopic(ChainMap.multiplication(C2, 2))
    assert cert is not None and cert.certifies(ChainMap.multiplication(C2, 2))
    assert is_nullhomotopic(ChainMap.identity(C2)) is None
    assert is_nullhomotopic(ChainMap.zero(C2, FreeComplex.zero())) is not None


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_cone_les_exact(seed):
    rng = trial_rng(seed, "cone", 0)
    f = random_map_pair(rng)
    assert cone_les(f).all_exact


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_random_chain_maps_commute(seed):
    rng = trial_rng(seed, "chain", 0)
    A, B = random_complex(rng), random_complex(rng)
    f = random_chain_map(rng, A, B)
    for n in range(min(A.lo, B.lo) + 1, max(A.hi, B.hi) + 1):
        assert B.d(n) @ f.f(n) == f.f(n - 1) @ A.d(n)


# Hom in the homotopy category ---------------------------------------------------------------


@pytest.mark.parametrize("q", [2, 3, 4, 6])
def test_hom_set_cq(q):
    C = FreeComplex.two_term(q)
    assert hom_set(C, C) == Z(q) == chain_map_group(C, C)


def test_hom_set_small():
    C2 = FreeComplex.two_term(2)
    assert hom_set(ZC, ZC) == Z() == chain_map_group(ZC, ZC)
    # Hom(Z/2, Z) = 0 in degree 0; the Ext class lives one degree down
    assert hom_set(C2, ZC) == Z(1) == chain_map_group(C2, ZC)
    assert hom_set(C2, ZC, -1) == Z(2) == chain_map_group(C2, ZC, -1)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(-1, 1))
def test_hom_set_formula_matches_chain_maps(seed, n):
    # split formula against chain maps modulo nullhomotopic ones
    rng = trial_rng(seed, "hom", 0)
    A = random_complex(rng, max_len=3, max_rank=2)
    B = random_complex(rng, max_len=3, max_rank=2)
    assert hom_set(A, B, n) == chain_map_group(A, B, n)


# S-finiteness and S-equivalence -------------------------------------------------------------


def test_s_finite_examples():
    assert s_finite_test(FreeComplex.two_term(4), PrimeSet.of(2)) == 4
    assert s_finite_test(ZC, PrimeSet.all()) is None
    assert s_finite_test(FreeComplex.two_term(1), PrimeSet.of(2)) == 1
    assert s_finite_test(FreeComplex.two_term(6), PrimeSet.of(2)) is None


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_s_finite_is_thick(seed):
    rng = trial_rng(seed, "thick", 0)
    S = random_prime_set(rng)
    C = random_complex(rng, max_len=3, max_rank=2)
    D = random_complex(rng, max_len=3, max_rank=2)
    a, b, ab = s_finite_test(C, S), s_finite_test(D, S), s_finite_test(C + D, S)
    if a is None or b is None:
        assert ab is None
    else:
        # the annihilating integers of a sum form the intersection of two ideals
        assert ab == lcm(a, b)


@pytest.mark.parametrize(
    "k,S,expect",
    [(2, PrimeSet.of(2), (True, 2)), (3, PrimeSet.of(2), (False, None)), (2, PrimeSet.all(), (True, 2))],
)
def test_s_equivalence_examples(k, S, expect):
    r = s_equivalence_test(ChainMap.multiplication(ZC, k), S)
    assert (r.cone_test, r.cone_s) == expect
    assert (r.inverse_search, r.inverse_s) == expect
    if r.inverse is not None:
        assert r.inverse == ChainMap.identity(ZC)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_s_equivalence_routes_agree(seed):
    rng = trial_rng(seed, "sequiv", 0)
    f = random_map_pair(rng)
    r = s_equivalence_test(f, random_prime_set(rng))
    assert r.agree
    if r.inverse is not None:
        s = r.inverse_s
        A, B = f.source, f.target
        assert are_homotopic(r.inverse @ f, ChainMap.multiplication(A, s))
        assert are_homotopic(f @ r.inverse, ChainMap.multiplication(B, s))


# octahedron and Theta -----------------------------------------------------------------------


@pytest.mark.parametrize("s,t,groups", [(2, 3, ["Z/2", "Z/6", "Z/3"]), (2, 2, ["Z/2", "Z/4", "Z/2"])])
def test_octahedron_examples(s, t, groups):
    r = octahedron_check(ZC, s, t)
    assert r.all_exact
    labels = [n.group for n in r.nodes]
    assert any(labels[i : i + 3] == groups for i in range(len(labels)))


def test_octahedron_acyclic():
    r = octahedron_check(FreeComplex.two_term(1), 2, 3)
    assert r.all_exact and all(n.group == "0" for n in r.nodes)


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(2, 5), st.integers(2, 5))
def test_octahedron_random(seed, s, t):
    rng = trial_rng(seed, "oct", 0)
    assert octahedron_check(random_complex(rng, max_len=3, max_rank=2), s, t).all_exact


def test_theta_on_homology():
    h = homology_map(theta_map(ZC, 2, 4).theta, 0)
    assert (h.domain, h.codomain) == (Z(2), Z(4))
    assert h.matrix.to_rows() == [[2]]


def test_theta_composite_and_identity():
    assert theta_map(ZC, 2, 8, 4).composite_check is True
    assert are_homotopic(theta_chain_map(ZC, 3, 3), ChainMap.identity(coefficient_cone(ZC, 3)))
    with pytest.raises(ValueError):
        theta_map(ZC, 2, 6, 4)


def test_json_round_trip():
    f = theta_chain_map(FreeComplex.two_term(3), 2, 4)
    assert ChainMap.from_json(f.to_json()) == f
    C = f.source
    assert FreeComplex.from_json(C.to_json()) == C
