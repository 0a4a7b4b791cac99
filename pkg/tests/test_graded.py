import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from locoloc.checks import random_graded, random_group, random_prime_set, random_theory_map, trial_rng
from locoloc.coefrings import ExtModule, PrimeSet
from locoloc.fgab import FgAbGroup, GroupHom, direct_sum, multiplication_cokernel, multiplication_kernel
from locoloc.graded import (
    GradedGroup,
    TheoryMap,
    assemble_loc_coloc_les,
    coefficient_les,
    finite_coefficients,
    iso_detector,
    localize_theory,
    torsion_theory,
)
from locoloc.literals import format_value

seeds = st.integers(0, 2**32 - 1)


def Z(n=0):
    return FgAbGroup.cyclic(n)


POINT = GradedGroup.parse("period=2: [Z, 0]")


def entries(F, degs=(0, 1)):
    return [format_value(F[n]) for n in degs]


# coefficient constructions ------------------------------------------------------------------


def test_localize_theory_examples():
    assert entries(localize_theory(POINT, PrimeSet.all())) == ["Q", "0"]
    assert entries(localize_theory(GradedGroup.parse("period=2: [Z/2, Z/2]"), PrimeSet.odd())) == ["Z/2", "Z/2"]
    F = GradedGroup.parse("period=2: [Z+Z/4, Z/3]")
    assert entries(localize_theory(F, PrimeSet.of(3))) == ["Z[1/3] + Z/4", "0"]


def test_torsion_theory_examples():
    assert entries(torsion_theory(POINT, PrimeSet.all())) == ["Q/Z", "0"]
    F = GradedGroup.parse("period=2: [Z/12, Z/9]")
    # degree 0 gets the 3-torsion of F_(-1) = Z/9, degree 1 that of F_0 = Z/12
    assert entries(torsion_theory(F, PrimeSet.of(3))) == ["Z/9", "Z/3"]
    assert torsion_theory(GradedGroup.zero(2), PrimeSet.all()).is_zero


def test_finite_coefficients_point():
    for q in (2, 3, 6, 12):
        ext = finite_coefficients(POINT, q)
        assert ext.resolved()[0] == Z(q)
        assert ext.resolved()[1] == Z(1)


@pytest.mark.parametrize("q", [2, 4, 6, 8])
def test_finite_coefficients_ambiguous_even(q):
    F = GradedGroup.periodic([Z(2), Z(q)])
    ext = finite_coefficients(F, q)
    p = dict(ext.problems)[0]
    assert (p.sub, p.quot) == (Z(2), Z(q))
    assert set(p.candidates) == {direct_sum(Z(2), Z(q)), Z(2 * q)}
    assert ext.resolved() is None


def test_finite_coefficients_rejects_small_s():
    with pytest.raises(ValueError):
        finite_coefficients(POINT, 1)


@settings(max_examples=80, deadline=None)
@given(seeds, st.integers(2, 12))
def test_square_annihilates_candidates(seed, s):
    rng = trial_rng(seed, "square", 0)
    F = GradedGroup.periodic([random_group(rng, 1, 1, 12) for _ in range(2)])
    for E in finite_coefficients(F, s, max_order=1 << 20).all_candidates():
        assert (s * s) % E.exponent == 0


@settings(max_examples=80, deadline=None)
@given(seeds, st.sampled_from([2, 3, 4, 6, 9, 12]))
def test_finite_from_torsion_consistency(seed, s):
    # F'_(n+1)(;s) against F_n(;s) with S the primes of s
    rng = trial_rng(seed, "consistency", 0)
    F = GradedGroup.periodic([random_group(rng, 1, 2, 24) for _ in range(2)])
    S = PrimeSet.generated_by(s)
    Fp = torsion_theory(F, S)
    for n in (0, 1):
        sub, quot = multiplication_cokernel(F[n], s), multiplication_kernel(F[n - 1], s)
        shifted = Fp[n + 1]
        sub2 = _coker_on_module(shifted, s)
        quot2 = _mult_on_module(Fp[n], s)
        assert sub.order * quot.order == sub2.order * quot2.order
        assert direct_sum(sub, quot) == direct_sum(sub2, quot2)
        if F[n].rank == 0 and F[n - 1].rank == 0 and all(S.contains_number(G.order) for G in (F[n], F[n - 1])):
            assert (sub, quot) == (sub2, quot2)


def _mult_on_module(M: ExtModule, s: int) -> FgAbGroup:
    """``ker(s)`` on a torsion module; a Pruefer summand at p contributes the p-part of s."""
    M = M if isinstance(M, ExtModule) else ExtModule.from_group(M)
    parts = [multiplication_kernel(M.finite_torsion, s)]
    for S, mult in M.pruefer:
        parts += [Z(S.s_part(s))] * mult
    return direct_sum(*parts)


def _coker_on_module(M, s: int) -> FgAbGroup:
    M = M if isinstance(M, ExtModule) else ExtModule.from_group(M)
    return multiplication_cokernel(M.finite_torsion, s)


# long exact sequences -----------------------------------------------------------------------


def test_loc_coloc_examples():
    r = assemble_loc_coloc_les(POINT, PrimeSet.all())
    assert r.all_exact
    assert [n.group for n in r.nodes][3:] == ["Z", "Q", "Q/Z"]
    r = assemble_loc_coloc_les(GradedGroup.bounded({0: Z(12)}), PrimeSet.of(2))
    assert r.all_exact and "Z/4" in [n.group for n in r.nodes]
    assert assemble_loc_coloc_les(GradedGroup.zero(2), PrimeSet.all()).all_exact


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_loc_coloc_always_exact(seed):
    rng = trial_rng(seed, "les", 0)
    assert assemble_loc_coloc_les(random_graded(rng), random_prime_set(rng)).all_exact


@pytest.mark.parametrize("s,t,groups", [(2, 3, ["Z/2", "Z/6", "Z/3"]), (2, 2, ["Z/2", "Z/4", "Z/2"])])
def test_coefficient_les_point(s, t, groups):
    r = coefficient_les(POINT, s, t)
    assert r.all_exact
    labels = [n.group for n in r.nodes]
    assert any(labels[i : i + 3] == groups for i in range(len(labels)))


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(2, 6), st.integers(2, 6))
def test_coefficient_les_exact_random(seed, s, t):
    rng = trial_rng(seed, "coef", 0)
    F = GradedGroup.periodic([random_group(rng, 1, 1, 12) for _ in range(2)])
    assert coefficient_les(F, s, t).all_exact


def test_coefficient_les_zero():
    assert coefficient_les(GradedGroup.zero(2), 3, 5).all_exact


# iso detection ------------------------------------------------------------------------------


def single(G, f):
    return TheoryMap.from_dict(GradedGroup.bounded({0: G}), GradedGroup.bounded({0: f.codomain}), {0: f})


def test_iso_detector_times_five():
    rep = iso_detector(single(Z(), GroupHom.multiplication(Z(), 5)), PrimeSet.all())
    assert (rep.phi_iso[0], rep.loc_iso[0], rep.tor_iso[0]) == (False, True, False)


def test_iso_detector_identity():
    G = direct_sum(Z(), Z(6))
    rep = iso_detector(single(G, GroupHom.identity(G)), PrimeSet.of(2, 3))
    assert rep.all_phi and rep.all_loc and rep.all_tor and rep.all_per_prime


def test_iso_detector_times_two_on_z4():
    # S^-1 kills Z/4 when 2 is in S, so the localised map is an iso of zero groups
    rep = iso_detector(single(Z(4), GroupHom.multiplication(Z(4), 2)), PrimeSet.of(2))
    assert not rep.all_phi and rep.all_loc and not rep.all_tor
    assert rep.all_per_prime is False
    assert rep.detection_consistent


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_detection_equivalence(seed):
    rng = trial_rng(seed, "detect", 0)
    phi = random_theory_map(rng)
    S = random_prime_set(rng)
    rep = iso_detector(phi, S)
    assert rep.all_phi == (rep.all_loc and rep.all_tor)
    if S.is_finite:
        assert rep.all_tor == rep.all_per_prime


def test_theory_map_rejects_mismatch():
    with pytest.raises(ValueError):
        TheoryMap.from_dict(GradedGroup.bounded({0: Z(2)}), GradedGroup.bounded({0: Z(3)}),
                            {0: GroupHom.zero(Z(3), Z(3))})


def test_graded_literal_round_trip():
    for text in ["period=2: [Z, 0]", "period=8: [Z, Z/2, Z/2, 0, Z, 0, 0, 0]", "bounded: {0: Z/4, 1: Z}"]:
        F = GradedGroup.parse(text)
        assert GradedGroup.parse(str(F)) == F
