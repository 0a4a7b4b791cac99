"""Prime sets, the rings Z[S^-1], and localisation/torsion coefficient groups.

A multiplicative set S of integers is described by the primes it contains.
Only primes that divide some concrete integer ever matter, so finite and
cofinite prime sets are enough and membership never enumerates primes.

Modules over Z[S^-1] are kept by their Z-side data: free rank over the local
ring, finite torsion prime to S, and Pruefer summands Z(p^inf).  No fraction
arithmetic happens anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from sympy import isprime

from .fgab import FgAbGroup, GroupHom, factorize, map_subquotients


class NotRepresentable(Exception):
    """The value exists but lies outside the representable module class.

    Callers must treat this as "unknown"; it never means zero.
    """

    def __init__(self, message: str, atoms: tuple = ()):
        super().__init__(message)
        self.atoms = atoms


@dataclass(frozen=True)
class PrimeSet:
    """A set of primes, either finite or cofinite.

    ``primes`` lists the members of a finite set, or the excluded primes of a
    cofinite one.
    """

    cofinite: bool = False
    primes: tuple[int, ...] = ()

    def __post_init__(self):
        ps = tuple(sorted(set(int(p) for p in self.primes)))
        for p in ps:
            if not isprime(p):
                raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "primes", ps)

    @classmethod
    def empty(cls) -> "PrimeSet":
        return cls(False, ())

    @classmethod
    def all(cls) -> "PrimeSet":
        return cls(True, ())

    @classmethod
    def odd(cls) -> "PrimeSet":
        return cls(True, (2,))

    @classmethod
    def of(cls, *primes: int) -> "PrimeSet":
        return cls(False, primes)

    @classmethod
    def excluding(cls, *primes: int) -> "PrimeSet":
        return cls(True, primes)

    @classmethod
    def generated_by(cls, *numbers: int) -> "PrimeSet":
        """Primes dividing any of ``numbers``: the saturation of the set they generate."""
        return cls(False, tuple(p for n in numbers for p, _ in factorize(n)))

    @classmethod
    def parse(cls, text: str) -> "PrimeSet":
        from .literals import parse_prime_set

        return parse_prime_set(text)

    @property
    def is_empty(self) -> bool:
        return not self.cofinite and not self.primes

    @property
    def is_all(self) -> bool:
        return self.cofinite and not self.primes

    @property
    def is_finite(self) -> bool:
        return not self.cofinite

    def members(self) -> tuple[int, ...]:
        if self.cofinite:
            raise ValueError(f"{self} is infinite")
        return self.primes

    def __contains__(self, p: int) -> bool:
        return (p in self.primes) != self.cofinite

    def contains_number(self, n: int) -> bool:
        """Whether ``n`` is (up to sign) a product of primes of the set."""
        if n == 0:
            return False
        return all(p in self for p, _ in factorize(n))

    def s_part(self, n: int) -> int:
        """Largest divisor of ``|n|`` supported on the set."""
        return math.prod(p**e for p, e in factorize(n) if p in self)

    def away_part(self, n: int) -> int:
        """``|n|`` with every prime of the set removed."""
        return math.prod(p**e for p, e in factorize(n) if p not in self)

    def complement(self) -> "PrimeSet":
        return PrimeSet(not self.cofinite, self.primes)

    def union(self, other: "PrimeSet") -> "PrimeSet":
        a, b = self, other
        if not a.cofinite and not b.cofinite:
            return PrimeSet(False, a.primes + b.primes)
        if a.cofinite and b.cofinite:
            return PrimeSet(True, tuple(set(a.primes) & set(b.primes)))
        fin, cof = (a, b) if not a.cofinite else (b, a)
        return PrimeSet(True, tuple(set(cof.primes) - set(fin.primes)))

    def intersection(self, other: "PrimeSet") -> "PrimeSet":
        return self.complement().union(other.complement()).complement()

    def difference(self, other: "PrimeSet") -> "PrimeSet":
        return self.intersection(other.complement())

    def issubset(self, other: "PrimeSet") -> bool:
        return self.difference(other).is_empty

    def isdisjoint(self, other: "PrimeSet") -> bool:
        return self.intersection(other).is_empty

    __or__ = union
    __and__ = intersection
    __sub__ = difference
    __le__ = issubset

    def __str__(self) -> str:
        from .literals import format_prime_set

        return format_prime_set(self)

    def __repr__(self) -> str:
        return f"PrimeSet({str(self)!r})"


def _normalise_pruefer(terms: Iterable[tuple[PrimeSet, int]]) -> tuple[tuple[PrimeSet, int], ...]:
    """Canonical list of (support, multiplicity): disjoint supports, distinct multiplicities."""
    terms = [(S, m) for S, m in terms if m and not S.is_empty]
    if not terms:
        return ()
    mentioned = sorted({p for S, _ in terms for p in S.primes})
    generic = sum(m for S, m in terms if S.cofinite)
    mult = {p: sum(m for S, m in terms if p in S) for p in mentioned}
    groups: dict[int, list[int]] = {}
    for p, m in mult.items():
        if m:
            groups.setdefault(m, []).append(p)
    out = []
    for m in sorted(set(groups) | ({generic} if generic else set())):
        if m == generic:
            excluded = tuple(p for p in mentioned if mult[p] != m)
            out.append((PrimeSet(True, excluded), m))
        else:
            out.append((PrimeSet(False, tuple(groups[m])), m))
    return tuple(sorted(out, key=lambda t: (t[0].cofinite, t[0].primes, t[1])))


@dataclass(frozen=True)
class ExtModule:
    """``Z[S0^-1]^r + (finite torsion prime to S0) + sum of Pruefer groups``."""

    base_ring: PrimeSet = field(default_factory=PrimeSet.empty)
    free_rank: int = 0
    finite_torsion: FgAbGroup = field(default_factory=FgAbGroup)
    pruefer: tuple[tuple[PrimeSet, int], ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative rank")
        if self.finite_torsion.rank:
            raise ValueError("finite_torsion must have rank 0")
        for f in self.finite_torsion.invariant_factors:
            if self.base_ring.s_part(f) != 1:
                raise ValueError(
                    f"torsion Z/{f} is not prime to the base ring primes {self.base_ring}"
                )
        for S, m in self.pruefer:
            if m < 1:
                raise ValueError("Pruefer multiplicities must be >= 1")
        object.__setattr__(self, "pruefer", _normalise_pruefer(self.pruefer))

    # constructors -----------------------------------------------------------------

    @classmethod
    def from_group(cls, G: FgAbGroup) -> "ExtModule":
        return cls(PrimeSet.empty(), G.rank, G.torsion, ())

    @classmethod
    def localised(cls, S: PrimeSet, rank: int = 1) -> "ExtModule":
        return cls(S, rank)

    @classmethod
    def rationals(cls, rank: int = 1) -> "ExtModule":
        return cls(PrimeSet.all(), rank)

    @classmethod
    def pruefer_group(cls, S: PrimeSet, mult: int = 1) -> "ExtModule":
        return cls(pruefer=((S, mult),))

    @classmethod
    def q_mod_z(cls, mult: int = 1) -> "ExtModule":
        return cls.pruefer_group(PrimeSet.all(), mult)

    @classmethod
    def parse(cls, text: str) -> "ExtModule":
        from .literals import parse_ext_module

        return parse_ext_module(text)

    # structure ----------------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and self.finite_torsion.is_zero and not self.pruefer

    @property
    def is_finitely_generated(self) -> bool:
        return not self.pruefer and (self.free_rank == 0 or self.base_ring.is_empty)

    def to_group(self) -> FgAbGroup:
        if not self.is_finitely_generated:
            raise ValueError(f"{self} is not finitely generated")
        return FgAbGroup(self.free_rank, self.finite_torsion.invariant_factors)

    @property
    def pruefer_support(self) -> PrimeSet:
        out = PrimeSet.empty()
        for S, _ in self.pruefer:
            out = out | S
        return out

    def pruefer_multiplicity(self, p: int) -> int:
        return sum(m for S, m in self.pruefer if p in S)

    def atoms(self) -> list[tuple]:
        out: list[tuple] = []
        free = ("Z",) if self.base_ring.is_empty else ("Loc", self.base_ring)
        out.extend([free] * self.free_rank)
        out.extend(("Zn", f) for f in self.finite_torsion.invariant_factors)
        for S, m in self.pruefer:
            out.extend([("Pru", S)] * m)
        return out

    def __add__(self, other: "ExtModule") -> "ExtModule":
        return ext_sum(self, other)

    def __str__(self) -> str:
        from .literals import format_ext_module

        return format_ext_module(self)

    def __repr__(self) -> str:
        return f"ExtModule({str(self)!r})"


def ext_sum(*mods: ExtModule) -> ExtModule:
    """Direct sum; raises NotRepresentable when the result leaves the class."""
    bases = {m.base_ring for m in mods if m.free_rank}
    if len(bases) > 1:
        raise NotRepresentable(
            "direct sum mixes free parts over different rings: " + ", ".join(map(str, bases))
        )
    if bases:
        base = bases.pop()
    else:
        # torsion-only summands: the largest ring every summand is a module over
        base = PrimeSet.all() if mods else PrimeSet.empty()
        for m in mods:
            base = base & m.base_ring
    orders = [f for m in mods for f in m.finite_torsion.invariant_factors]
    if any(base.s_part(f) != 1 for f in orders):
        raise NotRepresentable(
            f"torsion {orders} is not a module over the ring inverting {base}"
        )
    return ExtModule(
        base,
        sum(m.free_rank for m in mods),
        FgAbGroup.from_cyclics(0, orders),
        tuple(t for m in mods for t in m.pruefer),
    )


def as_ext(M) -> ExtModule:
    return M if isinstance(M, ExtModule) else ExtModule.from_group(M)


# operations ----------------------------------------------------------------------------


def localize_group(M: FgAbGroup, S: PrimeSet) -> ExtModule:
    """``M (x) Z[S^-1]``."""
    return ExtModule(
        S,
        M.rank,
        FgAbGroup.from_cyclics(0, [S.away_part(f) for f in M.invariant_factors]),
        (),
    )


def tor_coefficients(M: FgAbGroup, S: PrimeSet) -> tuple[ExtModule, FgAbGroup]:
    """``(Tor_0, Tor_1)`` of ``M`` against ``Z[S^-1]/Z``.

    ``Tor_1`` is the kernel of ``M -> S^-1 M`` (the S-primary torsion) and
    ``Tor_0`` its cokernel, one copy of the S-Pruefer group per free generator.
    """
    tor1 = FgAbGroup.from_cyclics(0, [S.s_part(f) for f in M.invariant_factors])
    tor0 = ExtModule(pruefer=((S, M.rank),)) if M.rank else ExtModule()
    return tor0, tor1


def colimit_truncation_oracle(M: FgAbGroup, s: int, k: int) -> tuple[FgAbGroup, FgAbGroup]:
    """Kernel and cokernel of multiplication by ``s^k`` on ``M``.

    As ``k`` grows these approximate the Tor_1 and (a finite stage of) the
    Tor_0 groups of ``M`` with coefficients in Z[1/s]/Z.
    """
    if s <= 1:
        raise ValueError(f"s must be >= 2, got {s}")
    if k < 1:
        raise ValueError(f"depth must be >= 1, got {k}")
    ker, _, coker = map_subquotients(GroupHom.multiplication(M, s**k))
    return ker, coker


# atom table ------------------------------------------------------------------------------


def _ring(atom) -> PrimeSet:
    return PrimeSet.empty() if atom[0] == "Z" else atom[1]


def _cyc(n: int) -> ExtModule:
    return ExtModule.from_group(FgAbGroup.cyclic(n)) if n > 1 else ExtModule()


def _loc(S: PrimeSet) -> ExtModule:
    return ExtModule(S, 1)


def _pru(S: PrimeSet) -> ExtModule:
    return ExtModule(pruefer=((S, 1),)) if not S.is_empty else ExtModule()


def atom_bifunctor(kind: str, a: tuple, b: tuple) -> ExtModule:
    """Hom/Ext/Tensor/Tor of two atoms.

    Atoms are ``("Z",)``, ``("Zn", n)``, ``("Loc", S)`` for Z[S^-1] and
    ``("Pru", S)`` for the sum of Z(p^inf) over p in S.  Raises
    :class:`NotRepresentable` when the value is outside the module class.
    """
    from .fgab import _normalise_kind

    kind = _normalise_kind(kind)
    ka = "Loc" if a[0] in ("Z", "Loc") else a[0]
    kb = "Loc" if b[0] in ("Z", "Loc") else b[0]
    outside = NotRepresentable(f"{kind}({_atom_str(a)}, {_atom_str(b)}) is not representable", (a, b))

    if kind == "Hom":
        if ka == "Loc":
            S = _ring(a)
            if kb == "Loc":
                return _loc(_ring(b)) if S <= _ring(b) else ExtModule()
            if kb == "Zn":
                return _cyc(S.away_part(b[1]))
            if S.isdisjoint(b[1]):
                return _pru(b[1])
            raise outside
        if ka == "Zn":
            if kb == "Loc":
                return ExtModule()
            if kb == "Zn":
                return _cyc(math.gcd(a[1], b[1]))
            return _cyc(b[1].s_part(a[1]))
        # Pruefer source
        if kb in ("Loc", "Zn"):
            return ExtModule()
        if a[1].isdisjoint(b[1]):
            return ExtModule()
        raise outside

    if kind == "Ext":
        if ka == "Loc":
            S = _ring(a)
            if kb == "Loc":
                if S <= _ring(b):
                    return ExtModule()
                raise outside
            return ExtModule()
        if ka == "Zn":
            if kb == "Loc":
                return _cyc(_ring(b).away_part(a[1]))
            if kb == "Zn":
                return _cyc(math.gcd(a[1], b[1]))
            return ExtModule()
        if kb == "Loc":
            if a[1] <= _ring(b):
                return ExtModule()
            raise outside
        if kb == "Zn":
            return _cyc(a[1].s_part(b[1]))
        return ExtModule()

    if kind == "Tensor":
        if ka == "Loc" and kb == "Loc":
            return _loc(_ring(a) | _ring(b))
        if ka == "Loc" or kb == "Loc":
            loc, other = (a, b) if ka == "Loc" else (b, a)
            S = _ring(loc)
            if other[0] == "Zn":
                return _cyc(S.away_part(other[1]))
            return _pru(other[1] - S)
        if ka == "Zn" and kb == "Zn":
            return _cyc(math.gcd(a[1], b[1]))
        return ExtModule()

    # Tor
    if ka == "Loc" or kb == "Loc":
        return ExtModule()
    if ka == "Zn" and kb == "Zn":
        return _cyc(math.gcd(a[1], b[1]))
    if ka == "Zn" or kb == "Zn":
        n, S = (a[1], b[1]) if ka == "Zn" else (b[1], a[1])
        return _cyc(S.s_part(n))
    return _pru(a[1] & b[1])


def _atom_str(atom) -> str:
    if atom[0] == "Z":
        return "Z"
    if atom[0] == "Zn":
        return f"Z/{atom[1]}"
    if atom[0] == "Loc":
        return str(ExtModule(atom[1], 1))
    return str(ExtModule(pruefer=((atom[1], 1),)))


def module_bifunctor(kind: str, A, B) -> ExtModule:
    """Bilinear extension of :func:`atom_bifunctor` to whole modules."""
    A, B = as_ext(A), as_ext(B)
    parts = [atom_bifunctor(kind, a, b) for a in A.atoms() for b in B.atoms()]
    return ext_sum(*parts) if parts else ExtModule()
