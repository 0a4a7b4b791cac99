import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from locoloc.coefrings import (
    ExtModule,
    NotRepresentable,
    PrimeSet,
    colimit_truncation_oracle,
    localize_group,
    module_bifunctor,
    tor_coefficients,
)
from locoloc.extensions import BoundExceeded, ExtensionProblem, enumerate_extensions, resolve_extension
from locoloc.fgab import FgAbGroup, abelian_groups_of_order, direct_sum, is_subgroup_quotient_pair
from locoloc.literals import ParseError, format_prime_set, format_value, parse_prime_set, parse_value


def Z(n=0):
    return FgAbGroup.cyclic(n)


# prime sets -------------------------------------------------------------------------------


def test_prime_set_membership():
    S = PrimeSet.of(2, 3)
    assert 2 in S and 5 not in S
    assert S.contains_number(12) and not S.contains_number(10)
    assert S.s_part(360) == 72 and S.away_part(360) == 5
    assert 2 not in PrimeSet.odd() and 3 in PrimeSet.odd()
    assert PrimeSet.excluding(2) == PrimeSet.odd()
    assert PrimeSet.generated_by(12) == S


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 10**6), st.sets(st.sampled_from([2, 3, 5, 7, 11]), max_size=3))
def test_s_part_times_away_part(n, ps):
    S = PrimeSet.of(*ps)
    assert S.s_part(n) * S.away_part(n) == n
    assert S.contains_number(S.s_part(n))
    assert S.complement().contains_number(S.away_part(n))


# localisation and torsion -----------------------------------------------------------------


def test_localize_examples():
    M = FgAbGroup.from_cyclics(1, [2, 3, 5])
    L = localize_group(M, PrimeSet.of(2, 3))
    assert format_value(L) == "Z[1/6] + Z/5"
    assert localize_group(Z(8), PrimeSet.of(2)).is_zero
    assert format_value(localize_group(Z(), PrimeSet.all())) == "Q"


def test_tor_coefficient_examples():
    tor0, tor1 = tor_coefficients(FgAbGroup.from_cyclics(1, [12]), PrimeSet.of(2))
    assert tor0 == ExtModule.pruefer_group(PrimeSet.of(2))
    assert tor1 == Z(4)
    tor0, tor1 = tor_coefficients(Z(15), PrimeSet.of(2))
    assert tor0.is_zero and tor1.order == 1


@pytest.mark.parametrize(
    "M,s,k,want",
    [(Z(8), 2, 3, (Z(8), Z(8))), (Z(), 2, 4, (Z(1), Z(16))), (Z(5), 2, 10, (Z(1), Z(1)))],
)
def test_colimit_oracle(M, s, k, want):
    assert colimit_truncation_oracle(M, s, k) == want


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2), st.lists(st.integers(2, 40), max_size=3), st.sampled_from([2, 3, 6]))
def test_colimit_stabilises_to_tor(rank, orders, s):
    # for deep enough k the kernel of s^k is Tor_1, and the cokernel has rank copies of Z/s^k
    M = FgAbGroup.from_cyclics(rank, orders)
    S = PrimeSet.generated_by(s)
    tor0, tor1 = tor_coefficients(M, S)
    k = 8
    ker, coker = colimit_truncation_oracle(M, s, k)
    assert ker == tor1
    assert coker.rank == 0
    assert coker.order == tor1.order * (s**k) ** rank
    assert tor0.is_zero == (rank == 0)


def test_atom_table_examples():
    Q, QZ = ExtModule.rationals(), ExtModule.q_mod_z()
    assert module_bifunctor("Hom", Q, Q) == Q
    assert module_bifunctor("Tensor", QZ, Q).is_zero
    with pytest.raises(NotRepresentable):
        module_bifunctor("Hom", QZ, QZ)
    # Ext(Z/n, Q) = 0 since Q is divisible; Tor(Q/Z, Z/n) = Z/n
    assert module_bifunctor("Ext", Z(6), Q).is_zero
    assert module_bifunctor("Tor", QZ, Z(6)) == ExtModule.from_group(Z(6))
    assert module_bifunctor("Tensor", Z(6), QZ).is_zero


# literals ---------------------------------------------------------------------------------


@pytest.mark.parametrize(
    "text,canon",
    [
        ("Z/12+Z", "Z + Z/12"),
        ("Z[1/6]", "Z[1/6]"),
        ("Z[1/{2,3}]", "Z[1/6]"),
        ("Q/Z", "Q/Z"),
        ("Q^2", "Q^2"),
        ("(Z/2)^3", "Z/2 + Z/2 + Z/2"),
        ("Z^2+Z/2+Prufer(2)", "Z^2 + Z/2 + Prufer(2)"),
        ("Prufer({2,3})", "Prufer({2,3})"),
        ("0", "0"),
    ],
)
def test_value_round_trip(text, canon):
    v = parse_value(text)
    assert format_value(v) == canon
    assert parse_value(canon) == v


@pytest.mark.parametrize("text,canon", [("{2,3}", "{2,3}"), ("all", "all"), ("all\\{2}", "odd"), ("{}", "{}")])
def test_prime_set_round_trip(text, canon):
    assert format_prime_set(parse_prime_set(text)) == canon


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as e:
        parse_value("Z/0")
    assert e.value.position == 2
    with pytest.raises(ParseError) as e:
        parse_prime_set("{4}")
    assert e.value.expected == ["a prime number"]


# extensions -------------------------------------------------------------------------------


def brute_extensions(sub, quot):
    return {E for E in abelian_groups_of_order(sub.order * quot.order) if is_subgroup_quotient_pair(E, sub, quot)}


@pytest.mark.parametrize(
    "sub,quot",
    [(Z(2), Z(2)), (Z(2), Z(4)), (Z(4), Z(2)), (Z(3), Z(2)), (Z(2), direct_sum(Z(2), Z(2))), (Z(6), Z(2)), (Z(9), Z(3))],
)
def test_extension_candidates_match_brute_force(sub, quot):
    found = enumerate_extensions(sub, quot)
    groups = [E for E, _ in found]
    assert groups[0] == direct_sum(sub, quot)
    assert set(groups) == brute_extensions(sub, quot)
    p = resolve_extension(ExtensionProblem(sub, quot))
    assert p.verify()


def test_z2_by_z2_is_ambiguous():
    p = resolve_extension(ExtensionProblem(Z(2), Z(2)))
    assert p.is_ambiguous and set(p.candidates) == {direct_sum(Z(2), Z(2)), Z(4)}
    s = resolve_extension(ExtensionProblem(Z(2), Z(2)), "split")
    assert s.resolved == direct_sum(Z(2), Z(2)) and s.verify()


def test_coprime_extension_is_unique():
    p = resolve_extension(ExtensionProblem(Z(4), Z(9)))
    assert p.resolved == Z(36)


def test_extension_bound():
    with pytest.raises(BoundExceeded):
        enumerate_extensions(Z(64), Z(64), max_order=1000)
