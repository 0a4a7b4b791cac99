import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from locoloc.fgab import (
    FgAbGroup,
    GroupHom,
    abelian_groups_of_order,
    all_homs,
    bifunctor,
    direct_sum,
    map_subquotients,
    multiplication_cokernel,
    multiplication_kernel,
    primary_part,
    torsion_data,
)
from locoloc.coefrings import PrimeSet
from locoloc.linalg import IntMatrix, determinant, kernel_basis, smith_normal_form, solve

matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


def Z(n=0):
    return FgAbGroup.cyclic(n)


# Smith normal form --------------------------------------------------------------------------


def test_snf_small_example():
    M = IntMatrix.from_rows([[2, 4], [6, 8]])
    d = smith_normal_form(M)
    assert d.diagonal == [2, 4]
    assert d.U @ M @ d.V == d.D


def test_snf_identity_and_zero():
    assert smith_normal_form(IntMatrix.identity(3)).diagonal == [1, 1, 1]
    assert smith_normal_form(IntMatrix.zeros(2, 3)).diagonal == [0, 0]


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_matches_sympy(rows):
    M = IntMatrix.from_rows(rows)
    d = smith_normal_form(M)
    assert d.U @ M @ d.V == d.D
    assert d.U @ d.U_inv == IntMatrix.identity(M.rows)
    assert d.V @ d.V_inv == IntMatrix.identity(M.cols)
    diag = d.diagonal
    for a, b in zip(diag, diag[1:]):
        assert b == 0 or (a != 0 and b % a == 0)
    ref = sympy_snf(Matrix(rows), domain=ZZ)
    ref_diag = sorted(abs(ref[i, i]) for i in range(min(ref.shape)))
    assert sorted(abs(x) for x in diag) == ref_diag


@settings(max_examples=100, deadline=None)
@given(matrices, st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_solve_and_kernel(rows, x0):
    M = IntMatrix.from_rows(rows)
    x = x0[: M.cols]
    b = M.apply(x)
    y = solve(M, b)
    assert y is not None and M.apply(y) == b
    for v in kernel_basis(M):
        assert not any(M.apply(v))


def test_determinant_against_sympy():
    rows = [[2, -1, 3], [0, 4, 1], [5, 2, -2]]
    assert determinant(IntMatrix.from_rows(rows)) == Matrix(rows).det()


# groups ------------------------------------------------------------------------------------


def test_presentation_examples():
    assert FgAbGroup.from_presentation(IntMatrix.from_rows([[12]])) == Z(12)
    assert FgAbGroup.from_presentation(IntMatrix.zeros(2, 0)) == FgAbGroup.free(2)
    assert FgAbGroup.from_presentation(IntMatrix.from_rows([[2, 0], [0, 0]])) == FgAbGroup.from_cyclics(1, [2])


def test_canonical_form_merges_coprime_factors():
    G = FgAbGroup.from_cyclics(2, [4, 3])
    assert G.rank == 2 and G.invariant_factors == (12,)
    assert direct_sum(Z(2), Z(2), Z(3)).invariant_factors == (2, 6)


def test_map_subquotients_examples():
    assert map_subquotients(GroupHom.multiplication(Z(), 5)) == (Z(1), Z(), Z(5))
    assert map_subquotients(GroupHom.multiplication(Z(4), 2)) == (Z(2), Z(2), Z(2))
    proj = GroupHom.from_rows(FgAbGroup.free(2), FgAbGroup.free(1), [[1, 0]])
    assert map_subquotients(proj) == (Z(), Z(), Z(1))


def brute_kernel_order(G: FgAbGroup, s: int) -> int:
    return sum(1 for v in G.elements() if all((s * x) % f == 0 for x, f in zip(v, G.invariant_factors)))


@pytest.mark.parametrize("A,B", [(Z(6), Z(6)), (Z(4), Z(6)), (direct_sum(Z(2), Z(4)), Z(8)), (Z(9), direct_sum(Z(3), Z(3)))])
def test_hom_counts_by_enumeration(A, B):
    # every homomorphism of finite groups is listed exactly once by all_homs
    count = sum(1 for _ in all_homs(A, B))
    assert bifunctor("Hom", A, B).order == count


@pytest.mark.parametrize("q", [2, 3, 4, 6, 12])
def test_bifunctor_cyclic_values(q):
    assert bifunctor("Tor", Z(q), Z(q)) == Z(q)
    assert bifunctor("Hom", Z(6), Z(6)) == Z(6)
    if q % 2 == 0:
        assert bifunctor("Tensor", Z(2), Z(q)) == Z(2)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2), st.lists(st.integers(2, 12), max_size=2), st.integers(2, 12))
def test_tor_and_tensor_with_cyclic(rank, orders, q):
    G = FgAbGroup.from_cyclics(rank, orders)
    # Tor(G, Z/q) = ker(q on G) and G (x) Z/q = coker(q on G)
    assert bifunctor("Tor", G, Z(q)) == multiplication_kernel(G, q)
    assert bifunctor("Tensor", G, Z(q)) == multiplication_cokernel(G, q)
    if rank == 0:
        assert multiplication_kernel(G, q).order == brute_kernel_order(G, q)
    # Ext(Z/q, G) = G / qG as well
    assert bifunctor("Ext", Z(q), G) == multiplication_cokernel(G, q)


def test_torsion_data_examples():
    assert torsion_data(Z(12), PrimeSet.of(2)) == (Z(4), 12)
    assert torsion_data(FgAbGroup.free(2), PrimeSet.all()) == (Z(1), 1)
    G = direct_sum(Z(6), Z(10))
    tors, e = torsion_data(G, PrimeSet.of(2, 5))
    assert (tors, e) == (direct_sum(Z(2), Z(10)), 30)
    # brute force: elements of G annihilated by some {2,5}-number
    n = sum(1 for v in G.elements() if all((10 * x) % f == 0 for x, f in zip(v, G.invariant_factors)))
    assert tors.order == n


def test_primary_parts_recombine():
    G = FgAbGroup.from_cyclics(0, [12, 18])
    assert direct_sum(primary_part(G, 2), primary_part(G, 3)) == G


@pytest.mark.parametrize("n", [8, 12, 16, 36])
def test_groups_of_order_count(n):
    # number of abelian groups of order n is the product of partition numbers
    from sympy import factorint
    from sympy.functions.combinatorial.numbers import partition

    want = 1
    for _, e in factorint(n).items():
        want *= int(partition(e))
    gs = abelian_groups_of_order(n)
    assert len(gs) == want == len(set(gs))
    assert all(G.order == n for G in gs)


def test_hom_validation_rejects_bad_images():
    with pytest.raises(ValueError):
        GroupHom.from_rows(Z(2), Z(3), [[1]])
    with pytest.raises(ValueError):
        GroupHom.from_rows(Z(2), Z(), [[1]])


def test_composition_and_kernel_inclusion():
    f = GroupHom.multiplication(Z(12), 4)
    inc = f.kernel_inclusion()
    assert (f @ inc).is_zero and inc.is_injective
    proj = f.cokernel_projection()
    assert (proj @ f).is_zero and proj.is_surjective


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(2, 8), min_size=1, max_size=2))
def test_elements_enumeration(orders):
    G = FgAbGroup.from_cyclics(0, orders)
    elems = list(G.elements())
    assert len(elems) == G.order == len(set(elems))
    for v in elems[:5]:
        o = G.element_order(v)
        assert all((o * x) % f == 0 for x, f in zip(v, G.invariant_factors))
        assert all(any((d * x) % f for x, f in zip(v, G.invariant_factors)) for d in range(1, o))
    assert list(itertools.islice(G.elements(), 1))[0] == (0,) * G.ngens
