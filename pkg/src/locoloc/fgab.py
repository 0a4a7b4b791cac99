"""Finitely generated abelian groups in canonical form.

A group is stored as ``Z^rank + Z/n_1 + ... + Z/n_k`` with ``n_1 | n_2 | ...``
and every ``n_i >= 2``.  Because the form is unique, isomorphism testing is
plain equality.  Homomorphisms act on the canonical generators: free
generators first, then torsion generators in factor order.

>>> G = FgAbGroup.parse("Z^2 + Z/4 + Z/3")
>>> G
FgAbGroup('Z^2 + Z/12')
>>> bifunctor("Tor", FgAbGroup.cyclic(6), FgAbGroup.cyclic(4))
FgAbGroup('Z/2')
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache, reduce
from itertools import product
from typing import Iterable, Sequence

from sympy import factorint

from .linalg import (
    IntMatrix,
    block_diag,
    hstack,
    kernel_basis,
    lattice_basis,
    smith_normal_form,
    solve,
)

BIFUNCTORS = ("Hom", "Ext", "Tensor", "Tor")


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorisation of ``|n|`` as sorted ``(p, e)`` pairs."""
    n = abs(n)
    if n <= 1:
        return ()
    return tuple(sorted(factorint(n).items()))


def invariant_factors_from_orders(orders: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors of the direct sum of cyclic groups ``Z/o``."""
    by_prime: dict[int, list[int]] = {}
    for o in orders:
        if o < 1:
            raise ValueError(f"cyclic order must be positive, got {o}")
        for p, e in factorize(o):
            by_prime.setdefault(p, []).append(e)
    if not by_prime:
        return ()
    length = max(len(v) for v in by_prime.values())
    factors = [1] * length
    for p, exps in by_prime.items():
        exps = sorted(exps, reverse=True)
        for k, e in enumerate(exps):
            factors[k] *= p**e
    return tuple(sorted(factors))


@dataclass(frozen=True)
class FgAbGroup:
    rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")
        fs = tuple(int(f) for f in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fs)
        for f in fs:
            if f < 2:
                raise ValueError(f"invariant factor {f} < 2")
        for a, b in zip(fs, fs[1:]):
            if b % a:
                raise ValueError(f"invariant factors {fs} do not form a divisibility chain")

    # construction -----------------------------------------------------------------

    @classmethod
    def zero(cls) -> "FgAbGroup":
        return cls()

    @classmethod
    def free(cls, r: int) -> "FgAbGroup":
        return cls(r, ())

    @classmethod
    def cyclic(cls, n: int) -> "FgAbGroup":
        """``Z/n``; ``n = 0`` gives ``Z`` and ``n = 1`` the zero group."""
        if n == 0:
            return cls(1)
        return cls.from_cyclics(0, [abs(n)])

    @classmethod
    def from_cyclics(cls, rank: int, orders: Iterable[int]) -> "FgAbGroup":
        return cls(rank, invariant_factors_from_orders(o for o in orders if o != 1))

    @classmethod
    def from_presentation(cls, relations: IntMatrix) -> "FgAbGroup":
        return group_from_presentation(relations)

    @classmethod
    def parse(cls, text: str) -> "FgAbGroup":
        from .literals import parse_fg_group

        return parse_fg_group(text)

    # structure ----------------------------------------------------------------------

    @property
    def ngens(self) -> int:
        return self.rank + len(self.invariant_factors)

    @property
    def orders(self) -> tuple[int, ...]:
        """Order of each canonical generator, 0 for free generators."""
        return (0,) * self.rank + self.invariant_factors

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.invariant_factors

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def order(self) -> int:
        """Cardinality; raises for infinite groups."""
        if self.rank:
            raise ValueError(f"{self} is infinite")
        return math.prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        """Exponent of the torsion subgroup (1 when torsion-free)."""
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def torsion(self) -> "FgAbGroup":
        return FgAbGroup(0, self.invariant_factors)

    def elementary_divisors(self) -> list[int]:
        out = []
        for f in self.invariant_factors:
            out.extend(p**e for p, e in factorize(f))
        return sorted(out)

    def relation_matrix(self) -> IntMatrix:
        """Columns are the defining relations on the canonical generators."""
        g = self.ngens
        cols = []
        for k, f in enumerate(self.invariant_factors):
            v = [0] * g
            v[self.rank + k] = f
            cols.append(v)
        return IntMatrix.from_columns(cols, g)

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        """Normal form of a coordinate vector (torsion entries reduced)."""
        return tuple(x if o == 0 else x % o for x, o in zip(v, self.orders))

    def elements(self) -> Iterable[tuple[int, ...]]:
        if self.rank:
            raise ValueError("cannot enumerate an infinite group")
        return product(*(range(f) for f in self.invariant_factors))

    def element_order(self, v: Sequence[int]) -> int:
        if self.rank and any(v[: self.rank]):
            return 0
        o = 1
        for x, f in zip(v[self.rank:], self.invariant_factors):
            o = math.lcm(o, f // math.gcd(x, f))
        return o

    def __add__(self, other: "FgAbGroup") -> "FgAbGroup":
        return direct_sum(self, other)

    def __mul__(self, k: int) -> "FgAbGroup":
        return direct_sum(*([self] * k))

    __rmul__ = __mul__

    def __str__(self) -> str:
        from .literals import format_fg_group

        return format_fg_group(self)

    def __repr__(self) -> str:
        return f"FgAbGroup({str(self)!r})"


def direct_sum(*groups: FgAbGroup) -> FgAbGroup:
    rank = sum(g.rank for g in groups)
    return FgAbGroup.from_cyclics(rank, [f for g in groups for f in g.invariant_factors])


# presentations and subquotients ------------------------------------------------------


class Presentation:
    """The group ``Z^ngens / span(relation columns)`` with its canonical form.

    Besides the canonical :class:`FgAbGroup`, it provides coordinates of any
    vector of ``Z^ngens`` on the canonical generators, and lifts of those
    generators back to ``Z^ngens``.
    """

    def __init__(self, ngens: int, relations: Sequence[Sequence[int]] = ()):
        self.ngens = ngens
        rel = [list(r) for r in relations if any(r)]
        R = IntMatrix.from_columns(rel, ngens) if rel else IntMatrix.zeros(ngens, 0)
        snf = smith_normal_form(R)
        diag = snf.diagonal
        free_idx, tors_idx, tors_ord = [], [], []
        for i in range(ngens):
            d = diag[i] if i < len(diag) else 0
            if d == 0:
                free_idx.append(i)
            elif d > 1:
                tors_idx.append(i)
                tors_ord.append(d)
        self._U = snf.U
        self._Ui = snf.U_inv
        self._idx = free_idx + tors_idx
        self._mods = [0] * len(free_idx) + tors_ord
        self.group = FgAbGroup(len(free_idx), tuple(tors_ord))

    def coords(self, v: Sequence[int]) -> tuple[int, ...]:
        y = self._U.apply(v)
        return tuple(y[i] if m == 0 else y[i] % m for i, m in zip(self._idx, self._mods))

    def lifts(self) -> list[list[int]]:
        """Vectors in ``Z^ngens`` representing the canonical generators."""
        return [self._Ui.column(i) for i in self._idx]


class Subquotient:
    """``L / B`` for lattices ``B <= L <= Z^dim`` given by generators."""

    def __init__(self, dim: int, top: Sequence[Sequence[int]], bottom: Sequence[Sequence[int]]):
        self.dim = dim
        self.basis = lattice_basis(top, dim)
        K = IntMatrix.from_columns(self.basis, dim) if self.basis else IntMatrix.zeros(dim, 0)
        self._K = K
        self._Ksnf = smith_normal_form(K)
        rels = []
        for b in bottom:
            x = solve(K, b, self._Ksnf)
            if x is None:
                raise ValueError("bottom lattice is not contained in the top lattice")
            rels.append(x)
        self._pres = Presentation(len(self.basis), rels)
        self.group = self._pres.group

    def contains(self, v: Sequence[int]) -> bool:
        return solve(self._K, v, self._Ksnf) is not None

    def coords(self, v: Sequence[int]) -> tuple[int, ...]:
        x = solve(self._K, v, self._Ksnf)
        if x is None:
            raise ValueError(f"{list(v)} is not in the top lattice")
        return self._pres.coords(x)

    def lifts(self) -> list[list[int]]:
        return [self._K.apply(x) for x in self._pres.lifts()]


def group_from_presentation(relations: IntMatrix) -> FgAbGroup:
    """Canonical form of the cokernel of ``relations`` (rows = generators)."""
    return Presentation(relations.rows, relations.columns()).group


def preimage_lattice(M: IntMatrix, target_relations: IntMatrix) -> list[list[int]]:
    """Basis of ``{x : M x in span(target_relations)}``."""
    n = M.cols
    A = hstack([M, target_relations], M.rows) if target_relations.cols else M
    gens = [v[:n] for v in kernel_basis(A)]
    return lattice_basis(gens, n)


# homomorphisms ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism given on canonical generators (columns = images)."""

    domain: FgAbGroup
    codomain: FgAbGroup
    matrix: IntMatrix

    def __post_init__(self):
        M = self.matrix
        if (M.rows, M.cols) != (self.codomain.ngens, self.domain.ngens):
            raise ValueError(
                f"matrix is {M.rows}x{M.cols}, expected {self.codomain.ngens}x{self.domain.ngens}"
            )
        cod = self.codomain.orders
        rows = M.to_rows()
        for i, o in enumerate(cod):
            if o:
                rows[i] = [x % o for x in rows[i]]
        for j, n in enumerate(self.domain.orders):
            if n == 0:
                continue
            for i, o in enumerate(cod):
                x = rows[i][j]
                if (o == 0 and x != 0) or (o and (n * x) % o):
                    raise ValueError(
                        f"generator {j} of order {n} cannot map to {x} in a summand of order {o or 'inf'}"
                    )
        object.__setattr__(self, "matrix", IntMatrix.from_rows(rows, M.cols))

    @classmethod
    def from_rows(cls, domain: FgAbGroup, codomain: FgAbGroup, rows) -> "GroupHom":
        return cls(domain, codomain, IntMatrix.from_rows(rows, domain.ngens))

    @classmethod
    def zero(cls, domain: FgAbGroup, codomain: FgAbGroup) -> "GroupHom":
        return cls(domain, codomain, IntMatrix.zeros(codomain.ngens, domain.ngens))

    @classmethod
    def identity(cls, G: FgAbGroup) -> "GroupHom":
        return cls(G, G, IntMatrix.identity(G.ngens))

    @classmethod
    def multiplication(cls, G: FgAbGroup, k: int) -> "GroupHom":
        return cls(G, G, IntMatrix.identity(G.ngens).scale(k))

    def __call__(self, v: Sequence[int]) -> tuple[int, ...]:
        return self.codomain.reduce(self.matrix.apply(v))

    def __matmul__(self, other: "GroupHom") -> "GroupHom":
        """Composition ``self o other``."""
        if other.codomain != self.domain:
            raise ValueError("composition of incompatible homomorphisms")
        return GroupHom(other.domain, self.codomain, self.matrix @ other.matrix)

    def __add__(self, other: "GroupHom") -> "GroupHom":
        return GroupHom(self.domain, self.codomain, self.matrix + other.matrix)

    def __sub__(self, other: "GroupHom") -> "GroupHom":
        return GroupHom(self.domain, self.codomain, self.matrix - other.matrix)

    def scale(self, k: int) -> "GroupHom":
        return GroupHom(self.domain, self.codomain, self.matrix.scale(k))

    @property
    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    @cached_property
    def _kernel_sq(self) -> Subquotient:
        top = preimage_lattice(self.matrix, self.codomain.relation_matrix())
        return Subquotient(self.domain.ngens, top, self.domain.relation_matrix().columns())

    @cached_property
    def _coker_pres(self) -> Presentation:
        gens = self.matrix.columns() + self.codomain.relation_matrix().columns()
        return Presentation(self.codomain.ngens, gens)

    def kernel(self) -> FgAbGroup:
        return self._kernel_sq.group

    def image(self) -> FgAbGroup:
        top = preimage_lattice(self.matrix, self.codomain.relation_matrix())
        return Presentation(self.domain.ngens, top).group

    def cokernel(self) -> FgAbGroup:
        return self._coker_pres.group

    def kernel_coords(self, v: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of a domain element lying in the kernel, on the kernel's generators."""
        return self._kernel_sq.coords(list(v))

    def cokernel_lifts(self) -> list[tuple[int, ...]]:
        """Codomain elements lifting the canonical generators of the cokernel."""
        return [self.codomain.reduce(v) for v in self._coker_pres.lifts()]

    def kernel_inclusion(self) -> "GroupHom":
        K = self.kernel()
        cols = [self.domain.reduce(v) for v in self._kernel_sq.lifts()]
        return GroupHom(K, self.domain, IntMatrix.from_columns(cols, self.domain.ngens))

    def cokernel_projection(self) -> "GroupHom":
        P = self._coker_pres
        cols = [P.coords(e) for e in _unit_vectors(self.codomain.ngens)]
        return GroupHom(self.codomain, P.group, IntMatrix.from_columns(cols, P.group.ngens))

    @property
    def is_injective(self) -> bool:
        return self.kernel().is_zero

    @property
    def is_surjective(self) -> bool:
        return self.cokernel().is_zero

    @property
    def is_iso(self) -> bool:
        return self.is_injective and self.is_surjective

    def __repr__(self) -> str:
        return f"GroupHom({self.domain} -> {self.codomain}, {self.matrix.to_rows()})"


def _unit_vectors(n: int) -> list[list[int]]:
    return [[int(i == j) for i in range(n)] for j in range(n)]


def map_subquotients(f: GroupHom) -> tuple[FgAbGroup, FgAbGroup, FgAbGroup]:
    """``(kernel, image, cokernel)`` of ``f`` in canonical form."""
    return f.kernel(), f.image(), f.cokernel()


def homology_at(f: GroupHom, g: GroupHom) -> FgAbGroup:
    """``ker(g) / im(f)`` for composable ``f: A -> B``, ``g: B -> C`` with ``g f = 0``."""
    if f.codomain != g.domain:
        raise ValueError("maps are not composable")
    if not (g @ f).is_zero:
        raise ValueError("composite is nonzero, so im(f) is not inside ker(g)")
    B = g.domain
    top = preimage_lattice(g.matrix, g.codomain.relation_matrix())
    bottom = f.matrix.columns() + B.relation_matrix().columns()
    return Subquotient(B.ngens, top, bottom).group


def is_exact_at(f: GroupHom, g: GroupHom) -> bool:
    return (g @ f).is_zero and homology_at(f, g).is_zero


def direct_sum_hom(*maps: GroupHom) -> GroupHom:
    """Block sum of maps, re-expressed on canonical generators of both sums."""
    dom = direct_sum(*(f.domain for f in maps))
    cod = direct_sum(*(f.codomain for f in maps))
    blk = block_diag([f.matrix for f in maps])
    return transport(blk, [f.domain for f in maps], [f.codomain for f in maps], dom, cod)


def _sum_presentation(parts: Sequence[FgAbGroup]) -> Presentation:
    rel = block_diag([p.relation_matrix() for p in parts])
    return Presentation(rel.rows, rel.columns())


def transport(
    blk: IntMatrix,
    dom_parts: Sequence[FgAbGroup],
    cod_parts: Sequence[FgAbGroup],
    dom: FgAbGroup,
    cod: FgAbGroup,
) -> GroupHom:
    """A map between concatenated generator systems, moved to canonical ones."""
    dp = _sum_presentation(dom_parts)
    cp = _sum_presentation(cod_parts)
    if dp.group != dom or cp.group != cod:
        raise ValueError("canonical forms do not match the given groups")
    cols = [cp.coords(blk.apply(v)) for v in dp.lifts()]
    return GroupHom(dom, cod, IntMatrix.from_columns(cols, cod.ngens))


def sum_injection(parts: Sequence[FgAbGroup], k: int) -> GroupHom:
    """Inclusion of summand ``k`` into the canonical direct sum."""
    total = direct_sum(*parts)
    sp = _sum_presentation(parts)
    offset = sum(p.ngens for p in parts[:k])
    cols = []
    for j in range(parts[k].ngens):
        v = [0] * sp.ngens
        v[offset + j] = 1
        cols.append(sp.coords(v))
    return GroupHom(parts[k], total, IntMatrix.from_columns(cols, total.ngens))


def sum_projection(parts: Sequence[FgAbGroup], k: int) -> GroupHom:
    total = direct_sum(*parts)
    sp = _sum_presentation(parts)
    offset = sum(p.ngens for p in parts[:k])
    n = parts[k].ngens
    cols = [parts[k].reduce(v[offset:offset + n]) for v in sp.lifts()]
    return GroupHom(total, parts[k], IntMatrix.from_columns(cols, n))


# bifunctors ---------------------------------------------------------------------------------


def _cyclic_atoms(G: FgAbGroup) -> list[int]:
    return [0] * G.rank + list(G.invariant_factors)


def _atom_value(kind: str, a: int, b: int) -> int | None:
    """Atom table on cyclic groups; 0 encodes Z.  Returns an order or None for 0."""
    if kind == "Hom":
        if a == 0:
            return b
        if b == 0:
            return None
        return math.gcd(a, b)
    if kind == "Ext":
        if a == 0:
            return None
        if b == 0:
            return a
        return math.gcd(a, b)
    if kind == "Tensor":
        if a == 0:
            return b
        if b == 0:
            return a
        return math.gcd(a, b)
    if kind == "Tor":
        if a == 0 or b == 0:
            return None
        return math.gcd(a, b)
    raise ValueError(f"unknown bifunctor {kind!r}; expected one of {BIFUNCTORS}")


def bifunctor(kind: str, A: FgAbGroup, B: FgAbGroup) -> FgAbGroup:
    """Hom, Ext, Tensor or Tor of two f.g. groups by bilinearity."""
    kind = _normalise_kind(kind)
    rank = 0
    orders = []
    for a in _cyclic_atoms(A):
        for b in _cyclic_atoms(B):
            v = _atom_value(kind, a, b)
            if v is None or v == 1:
                continue
            if v == 0:
                rank += 1
            else:
                orders.append(v)
    return FgAbGroup.from_cyclics(rank, orders)


def _normalise_kind(kind: str) -> str:
    k = {"hom": "Hom", "ext": "Ext", "tensor": "Tensor", "tor": "Tor"}.get(kind.lower())
    if k is None:
        raise ValueError(f"unknown bifunctor {kind!r}; expected one of {BIFUNCTORS}")
    return k


def torsion_data(M: FgAbGroup, S) -> tuple[FgAbGroup, int]:
    """S-primary torsion subgroup of ``M`` and the exponent of its full torsion."""
    parts = [S.s_part(f) for f in M.invariant_factors]
    return FgAbGroup.from_cyclics(0, parts), M.exponent


def primary_part(G: FgAbGroup, p: int) -> FgAbGroup:
    """The p-primary summand of the torsion of ``G``."""
    out = []
    for f in G.invariant_factors:
        e = 0
        while f % p == 0:
            f //= p
            e += 1
        out.append(p**e)
    return FgAbGroup.from_cyclics(0, out)


def multiplication_kernel(G: FgAbGroup, s: int) -> FgAbGroup:
    """``ker(s: G -> G)``, computed from the structure of ``G``."""
    if s == 0:
        return G
    return FgAbGroup.from_cyclics(0, [math.gcd(f, s) for f in G.invariant_factors])


def multiplication_cokernel(G: FgAbGroup, s: int) -> FgAbGroup:
    """``coker(s: G -> G)``, computed from the structure of ``G``."""
    if s == 0:
        return G
    s = abs(s)
    return FgAbGroup.from_cyclics(0, [s] * G.rank + [math.gcd(f, s) for f in G.invariant_factors])


# enumeration of finite abelian groups ------------------------------------------------------


def _partitions(n: int, largest: int | None = None):
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def p_groups_of_order(p: int, e: int) -> list[FgAbGroup]:
    """All abelian groups of order ``p^e``, one per partition of ``e``."""
    return [FgAbGroup.from_cyclics(0, [p**k for k in lam]) for lam in _partitions(e)]


def abelian_groups_of_order(n: int) -> list[FgAbGroup]:
    """Every isomorphism class of abelian group of order ``n``."""
    if n < 1:
        raise ValueError("order must be positive")
    per_prime = [p_groups_of_order(p, e) for p, e in factorize(n)]
    out = [direct_sum(*combo) for combo in product(*per_prime)] if per_prime else [FgAbGroup()]
    return sorted(out, key=lambda G: (len(G.invariant_factors), G.invariant_factors))


def all_homs(A: FgAbGroup, B: FgAbGroup) -> Iterable[GroupHom]:
    """Every homomorphism between two finite groups (brute force)."""
    if A.rank or B.rank:
        raise ValueError("all_homs needs finite groups")
    choices = []
    for n in A.invariant_factors:
        choices.append([v for v in B.elements() if B.element_order(v) and n % B.element_order(v) == 0])
    for cols in product(*choices):
        yield GroupHom(A, B, IntMatrix.from_columns(list(cols), B.ngens) if cols else IntMatrix.zeros(B.ngens, 0))


def is_subgroup_quotient_pair(E: FgAbGroup, sub: FgAbGroup, quot: FgAbGroup) -> bool:
    """Whether some subgroup of ``E`` is isomorphic to ``sub`` with quotient ``quot``.

    Brute force over all subgroups of ``E``; only meant for small orders.
    """
    if E.rank or sub.rank or quot.rank:
        raise ValueError("finite groups only")
    if E.order != sub.order * quot.order:
        return False
    for gens in _subgroup_generating_sets(E, len(sub.invariant_factors)):
        P = Presentation(E.ngens, [list(g) for g in gens] + E.relation_matrix().columns())
        if P.group != quot:
            continue
        sq = Subquotient(E.ngens, [list(g) for g in gens] + E.relation_matrix().columns(), E.relation_matrix().columns())
        if sq.group == sub:
            return True
    return False


def _subgroup_generating_sets(E: FgAbGroup, k: int):
    elems = list(E.elements())
    seen = set()
    for combo in product(elems, repeat=k):
        key = frozenset(_closure(E, combo))
        if key in seen:
            continue
        seen.add(key)
        yield combo


def _closure(E: FgAbGroup, gens) -> set:
    H = {E.reduce([0] * E.ngens)}
    frontier = list(H)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = E.reduce([a + b for a, b in zip(x, g)])
            if y not in H:
                H.add(y)
                frontier.append(y)
    return H
