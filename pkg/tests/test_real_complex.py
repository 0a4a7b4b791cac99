import json

import pytest

from locoloc.coefrings import ExtModule, PrimeSet, localize_group
from locoloc.fgab import FgAbGroup, GroupHom
from locoloc.real_complex import (
    Coefficients,
    RCPair,
    delta_c_is_two,
    eta_les_check,
    point_rc,
    rc_fixture,
    splitting_check,
)


def Z(n=0):
    return FgAbGroup.cyclic(n)


def test_point_sequence_exact():
    r = eta_les_check(point_rc())
    assert r.all_exact and len(r.nodes) == 24


def test_zero_pair_exact():
    assert eta_les_check(rc_fixture("zero")).all_exact


def test_corrupted_c_is_caught():
    p = point_rc()
    bad = p.with_c(0, p.c[0].scale(2))
    r = eta_les_check(bad)
    assert not r.all_exact
    assert r.failures() == [22]
    assert "K_0" in r.to_json()["witnesses"][0]
    assert not delta_c_is_two(bad)


def test_structure_identities():
    p = point_rc()
    assert all(f.scale(2).is_zero for f in p.chi)
    assert delta_c_is_two(p)


def test_two_chi_enforced():
    p = point_rc()
    chi = list(p.chi)
    # Z -> Z as multiplication by 1 cannot satisfy 2 chi = 0
    chi[4] = GroupHom.identity(Z())
    with pytest.raises(ValueError):
        RCPair(p.real_theory, p.complex_theory, tuple(chi), p.c, p.delta)


def test_localised_chi_vanishes():
    # after inverting 2 every chi has image killed, so the sequence breaks into short pieces
    for f in point_rc().chi:
        assert localize_group(f.image(), PrimeSet.of(2)).is_zero


def test_split_after_inverting_two():
    rep = splitting_check(point_rc(), "Z[1/2]")
    Zh = ExtModule.localised(PrimeSet.of(2))
    # KO (x) Z[1/2] = (Z[1/2], 0, 0, 0, Z[1/2], 0, 0, 0), summed with its shift by 2
    want = [Zh if n % 2 == 0 else Z(1) for n in range(8)]
    assert list(rep.left) == want and list(rep.right) == want
    assert rep.passed and rep.chi_dies


@pytest.mark.parametrize("s", [3, 5, 15])
def test_split_odd_finite(s):
    rep = splitting_check(point_rc(), f"Z/{s}")
    want = [Z(s) if n % 2 == 0 else Z(1) for n in range(8)]
    assert list(rep.left) == want and list(rep.right) == want
    assert rep.passed and rep.exponent_ok


def test_split_odd_torsion():
    rep = splitting_check(point_rc(), "S^-1Z/Z:{3,5}")
    assert rep.passed
    assert str(rep.left[0]) == "Prufer({3,5})" and rep.left[1] == Z(1)


def test_zero_theories_split():
    assert splitting_check(rc_fixture("zero"), "Z/3").passed


@pytest.mark.parametrize("text", ["Z/2", "Z/6", "Z[1/3]", "S^-1Z/Z:{2}", "Z/1", "nonsense"])
def test_two_must_be_inverted(text):
    with pytest.raises(ValueError):
        Coefficients.parse(text)


def test_report_json():
    data = splitting_check(point_rc(), "Z[1/2]").to_json()
    assert data["naturality"] == "not certified"
    assert data["passed"] is True
    json.dumps(data)


def test_pair_json_round_trip():
    p = point_rc()
    q = RCPair.from_json(json.loads(json.dumps(p.to_json())))
    assert (q.chi, q.c, q.delta) == (p.chi, p.c, p.delta)
    assert q.real_theory == p.real_theory and q.complex_theory == p.complex_theory
