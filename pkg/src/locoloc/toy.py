"""A computable triangulated category: bounded free Z-complexes up to homotopy.

Objects are :class:`FreeComplex`, morphisms :class:`ChainMap`.  Equality of
morphisms in the homotopy category is decided by solving ``f = dH + Hd``
over the integers.  Cones use the differential ``[[d_B, f], [0, -d_A]]`` on
``B_n + A_(n-1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from .coefrings import PrimeSet
from .fgab import FgAbGroup, GroupHom, Subquotient, bifunctor, direct_sum, factorize
from .graded import ExactSequenceReport, GradedGroup, sequence_report
from .linalg import IntMatrix, block_diag, hstack, kernel_basis, smith_normal_form, solve, vstack


class SearchBoundExceeded(Exception):
    """The inverse search would need more candidates than allowed."""


MAX_INVERSE_CANDIDATES = 256


def _zeros(r: int, c: int) -> IntMatrix:
    return IntMatrix.zeros(r, c)


@dataclass(frozen=True)
class FreeComplex:
    """Free modules ``Z^ranks[i]`` in degrees ``lo..hi``.

    ``differentials[i]`` is ``d_(lo+i+1): C_(lo+i+1) -> C_(lo+i)``.
    """

    lo: int
    hi: int
    ranks: tuple[int, ...]
    differentials: tuple[IntMatrix, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(int(r) for r in self.ranks))
        if self.hi < self.lo:
            raise ValueError("empty window; use FreeComplex.zero()")
        if len(self.ranks) != self.hi - self.lo + 1:
            raise ValueError("one rank per degree of the window is required")
        if any(r < 0 for r in self.ranks):
            raise ValueError("negative rank")
        ds = tuple(self.differentials)
        if len(ds) != self.hi - self.lo:
            raise ValueError(f"expected {self.hi - self.lo} differentials, got {len(ds)}")
        for i, d in enumerate(ds):
            n = self.lo + i + 1
            if (d.rows, d.cols) != (self.rank(n - 1), self.rank(n)):
                raise ValueError(f"d_{n} has shape {d.rows}x{d.cols}, expected {self.rank(n - 1)}x{self.rank(n)}")
        object.__setattr__(self, "differentials", ds)
        for n in range(self.lo + 2, self.hi + 1):
            if not (self.d(n - 1) @ self.d(n)).is_zero():
                raise ValueError(f"d_{n - 1} d_{n} is not zero")

    # construction -------------------------------------------------------------------

    @classmethod
    def zero(cls) -> "FreeComplex":
        return cls(0, 0, (0,), ())

    @classmethod
    def concentrated(cls, rank: int = 1, degree: int = 0) -> "FreeComplex":
        return cls(degree, degree, (rank,), ())

    @classmethod
    def two_term(cls, q: int, degree: int = 0) -> "FreeComplex":
        """``Z --q--> Z`` in degrees ``degree+1, degree``."""
        return cls(degree, degree + 1, (1, 1), (IntMatrix.from_rows([[q]], 1),))

    @classmethod
    def resolution(cls, G: FgAbGroup, degree: int = 0) -> "FreeComplex":
        """A two-term free resolution of ``G`` placed in ``degree``."""
        k = len(G.invariant_factors)
        if k == 0:
            return cls.concentrated(G.rank, degree)
        rows = [[0] * k for _ in range(G.rank)]
        rows += [[G.invariant_factors[i] if i == j else 0 for j in range(k)] for i in range(k)]
        return cls(degree, degree + 1, (G.ngens, k), (IntMatrix.from_rows(rows, k),))

    @classmethod
    def from_json(cls, data: Mapping) -> "FreeComplex":
        lo, hi = int(data["lo"]), int(data["hi"])
        ranks = [int(r) for r in data["ranks"]]
        ds = []
        for i, rows in enumerate(data.get("differentials", [])):
            n = lo + i + 1
            ds.append(IntMatrix.from_rows(rows, ranks[n - lo]) if rows else _zeros(ranks[n - 1 - lo], ranks[n - lo]))
        return cls(lo, hi, tuple(ranks), tuple(ds))

    def to_json(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "ranks": list(self.ranks),
            "differentials": [d.to_rows() for d in self.differentials],
        }

    # access -----------------------------------------------------------------------------

    def rank(self, n: int) -> int:
        return self.ranks[n - self.lo] if self.lo <= n <= self.hi else 0

    def d(self, n: int) -> IntMatrix:
        """``d_n: C_n -> C_(n-1)`` (zero outside the window)."""
        if self.lo < n <= self.hi:
            return self.differentials[n - self.lo - 1]
        return _zeros(self.rank(n - 1), self.rank(n))

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    @property
    def is_zero(self) -> bool:
        return not any(self.ranks)

    def shift(self, k: int = 1) -> "FreeComplex":
        """``C[k]`` with ``C[k]_n = C_(n-k)`` and differential ``(-1)^k d``."""
        sign = -1 if k % 2 else 1
        return FreeComplex(self.lo + k, self.hi + k, self.ranks, tuple(d.scale(sign) for d in self.differentials))

    def __add__(self, other: "FreeComplex") -> "FreeComplex":
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        ranks = tuple(self.rank(n) + other.rank(n) for n in range(lo, hi + 1))
        ds = tuple(block_diag([self.d(n), other.d(n)]) for n in range(lo + 1, hi + 1))
        return FreeComplex(lo, hi, ranks, ds)

    def __str__(self) -> str:
        parts = [f"Z^{self.rank(n)}" for n in range(self.hi, self.lo - 1, -1)]
        return f"[{self.hi}..{self.lo}] " + " -> ".join(parts)


def _window(*cs: FreeComplex) -> range:
    return range(min(c.lo for c in cs), max(c.hi for c in cs) + 1)


@dataclass(frozen=True)
class ChainMap:
    """Degree-preserving ``f_n: A_n -> B_n`` commuting with the differentials."""

    source: FreeComplex
    target: FreeComplex
    components: tuple[tuple[int, IntMatrix], ...] = ()

    def __post_init__(self):
        comp = {}
        for n, m in self.components:
            if (m.rows, m.cols) != (self.target.rank(n), self.source.rank(n)):
                raise ValueError(f"f_{n} has the wrong shape")
            if m.rows and m.cols and not m.is_zero():
                comp[int(n)] = m
        object.__setattr__(self, "components", tuple(sorted(comp.items())))
        A, B = self.source, self.target
        for n in _window(A, B):
            if B.d(n) @ self.f(n) != self.f(n - 1) @ A.d(n):
                raise ValueError(f"f does not commute with the differentials in degree {n}")

    @classmethod
    def from_dict(cls, A: FreeComplex, B: FreeComplex, comps: Mapping[int, IntMatrix]) -> "ChainMap":
        return cls(A, B, tuple(comps.items()))

    @classmethod
    def identity(cls, C: FreeComplex) -> "ChainMap":
        return cls.multiplication(C, 1)

    @classmethod
    def multiplication(cls, C: FreeComplex, s: int) -> "ChainMap":
        return cls(C, C, tuple((n, IntMatrix.identity(C.rank(n)).scale(s)) for n in C.degrees))

    @classmethod
    def zero(cls, A: FreeComplex, B: FreeComplex) -> "ChainMap":
        return cls(A, B, ())

    def f(self, n: int) -> IntMatrix:
        for k, m in self.components:
            if k == n:
                return m
        return _zeros(self.target.rank(n), self.source.rank(n))

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        if other.target != self.source:
            raise ValueError("chain maps are not composable")
        degs = _window(other.source, self.target)
        return ChainMap(other.source, self.target, tuple((n, self.f(n) @ other.f(n)) for n in degs))

    def __add__(self, other: "ChainMap") -> "ChainMap":
        degs = _window(self.source, self.target)
        return ChainMap(self.source, self.target, tuple((n, self.f(n) + other.f(n)) for n in degs))

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        return self + other.scale(-1)

    def scale(self, k: int) -> "ChainMap":
        return ChainMap(self.source, self.target, tuple((n, m.scale(k)) for n, m in self.components))

    @classmethod
    def from_json(cls, data: Mapping) -> "ChainMap":
        """``{source, target, components: {n: rows}}``; missing degrees are zero."""
        A, B = FreeComplex.from_json(data["source"]), FreeComplex.from_json(data["target"])
        comps = []
        for n, rows in data.get("components", {}).items():
            n = int(n)
            comps.append((n, IntMatrix.from_rows(rows, A.rank(n)) if rows else _zeros(B.rank(n), A.rank(n))))
        return cls(A, B, tuple(comps))

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "components": {str(n): m.to_rows() for n, m in self.components},
        }


@dataclass(frozen=True)
class HomotopyCertificate:
    """``H_n: A_n -> B_(n+1)`` with ``f - g = dH + Hd``."""

    components: tuple[tuple[int, IntMatrix], ...]

    def h(self, n: int, rows: int, cols: int) -> IntMatrix:
        for k, m in self.components:
            if k == n:
                return m
        return _zeros(rows, cols)

    def certifies(self, f: ChainMap) -> bool:
        """Whether ``f = dH + Hd`` holds in every degree."""
        A, B = f.source, f.target
        for n in _window(A, B):
            H_n = self.h(n, B.rank(n + 1), A.rank(n))
            H_m = self.h(n - 1, B.rank(n), A.rank(n - 1))
            if B.d(n + 1) @ H_n + H_m @ A.d(n) != f.f(n):
                return False
        return True


# integer linear systems in matrix unknowns -------------------------------------------------------


class _MatrixSystem:
    """Equations ``sum L X R = C`` in integer matrix unknowns ``X``."""

    def __init__(self):
        self.vars: dict = {}
        self.nvars = 0
        self.rows: list[list[int]] = []
        self.eq_shapes: list = []

    def var(self, name, rows: int, cols: int) -> None:
        self.vars[name] = (self.nvars, rows, cols)
        self.nvars += rows * cols

    def equation(self, key, shape: tuple[int, int], terms) -> None:
        """``terms`` is a list of ``(L, name, R)`` with ``L X R`` of the given shape."""
        p, q = shape
        block = [[0] * self.nvars for _ in range(p * q)]
        for L, name, R in terms:
            if name not in self.vars:
                continue
            off, r, c = self.vars[name]
            for a in range(p):
                for i in range(r):
                    la = L[a, i]
                    if not la:
                        continue
                    for j in range(c):
                        for b in range(q):
                            rb = R[j, b]
                            if rb:
                                block[a * q + b][off + i * c + j] += la * rb
        self.rows.extend(block)
        self.eq_shapes.append((key, p, q))

    def matrix(self) -> IntMatrix:
        return IntMatrix.from_rows(self.rows, self.nvars)

    def unpack(self, x: Sequence[int]) -> dict:
        out = {}
        for name, (off, r, c) in self.vars.items():
            out[name] = IntMatrix.from_rows([[x[off + i * c + j] for j in range(c)] for i in range(r)], c)
        return out


@dataclass
class _Solver:
    system: _MatrixSystem
    A: IntMatrix
    snf: object

    def solve(self, rhs: Sequence[int]):
        if self.system.nvars == 0:
            return {} if not any(rhs) else None
        x = solve(self.A, rhs, self.snf)
        return None if x is None else self.system.unpack(x)


def _finish(system: _MatrixSystem) -> _Solver:
    A = system.matrix()
    snf = smith_normal_form(A) if system.nvars and system.rows else None
    return _Solver(system, A, snf)


@lru_cache(maxsize=2048)
def _homotopy_solver(A: FreeComplex, B: FreeComplex, shift: int = 0) -> _Solver:
    """Unknowns ``H_n: A_n -> B_(n+shift+1)``; equations ``dH + Hd`` in each degree."""
    sysm = _MatrixSystem()
    degs = _window(A, B.shift(-shift) if shift else B)
    for n in degs:
        r, c = B.rank(n + shift + 1), A.rank(n)
        if r and c:
            sysm.var(n, r, c)
    for n in degs:
        p, q = B.rank(n + shift), A.rank(n)
        if p and q:
            sysm.equation(n, (p, q), [
                (B.d(n + shift + 1), n, IntMatrix.identity(q)),
                (IntMatrix.identity(p), n - 1, A.d(n)),
            ])
    return _finish(sysm)


def _rhs(solver: _Solver, f: ChainMap | None, scalar: int = 0) -> list[int]:
    out = []
    for key, p, q in solver.system.eq_shapes:
        m = f.f(key) if f is not None else _zeros(p, q)
        if scalar:
            m = m + IntMatrix.identity(p).scale(scalar)
        out.extend(m.entries)
    return out


def is_nullhomotopic(f: ChainMap) -> HomotopyCertificate | None:
    solver = _homotopy_solver(f.source, f.target)
    sol = solver.solve(_rhs(solver, f))
    if sol is None:
        return None
    cert = HomotopyCertificate(tuple(sorted(sol.items())))
    if not cert.certifies(f):
        raise AssertionError("homotopy solver returned an invalid certificate")
    return cert


def are_homotopic(f: ChainMap, g: ChainMap) -> bool:
    return is_nullhomotopic(f - g) is not None


# homology --------------------------------------------------------------------------------


@lru_cache(maxsize=4096)
def _cycles_mod_boundaries(C: FreeComplex, n: int) -> Subquotient:
    r = C.rank(n)
    top = kernel_basis(C.d(n)) if C.rank(n - 1) else [[int(i == j) for i in range(r)] for j in range(r)]
    return Subquotient(r, top, C.d(n + 1).columns())


def homology_group(C: FreeComplex, n: int) -> FgAbGroup:
    return _cycles_mod_boundaries(C, n).group


def homology(C: FreeComplex) -> GradedGroup:
    return GradedGroup.bounded({n: homology_group(C, n) for n in C.degrees})


def total_exponent(C: FreeComplex) -> tuple[int, int]:
    """``(free rank, exponent of torsion)`` of the total homology."""
    rank, e = 0, 1
    for n in C.degrees:
        H = homology_group(C, n)
        rank += H.rank
        e = math.lcm(e, H.exponent)
    return rank, e


def induced_map(A: FreeComplex, B: FreeComplex, M: IntMatrix, n: int, m: int) -> GroupHom:
    """``H_n(A) -> H_m(B)`` induced by ``M: A_n -> B_m`` (which must map cycles and boundaries along)."""
    src, dst = _cycles_mod_boundaries(A, n), _cycles_mod_boundaries(B, m)
    cols = [dst.coords(M.apply(v)) for v in src.lifts()]
    cod = dst.group
    return GroupHom(src.group, cod, IntMatrix.from_columns(cols, cod.ngens) if cols else _zeros(cod.ngens, 0))


def homology_map(f: ChainMap, n: int) -> GroupHom:
    return induced_map(f.source, f.target, f.f(n), n, n)


# cones -----------------------------------------------------------------------------------


@dataclass(frozen=True)
class Triangle:
    cone: FreeComplex
    iota: ChainMap
    pi: ChainMap


def _cone_complex(f: ChainMap) -> FreeComplex:
    A, B = f.source, f.target
    lo, hi = min(B.lo, A.lo + 1), max(B.hi, A.hi + 1)
    ranks = tuple(B.rank(n) + A.rank(n - 1) for n in range(lo, hi + 1))
    ds = []
    for n in range(lo + 1, hi + 1):
        top = hstack([B.d(n), f.f(n - 1)], B.rank(n - 1))
        bot = hstack([_zeros(A.rank(n - 2), B.rank(n)), A.d(n - 1).scale(-1)], A.rank(n - 2))
        ds.append(vstack([top, bot], B.rank(n) + A.rank(n - 1)))
    return FreeComplex(lo, hi, ranks, tuple(ds))


def cone(f: ChainMap) -> Triangle:
    """``C_f`` with ``iota: B -> C_f`` and ``pi: C_f -> A[1]``."""
    A, B = f.source, f.target
    C = _cone_complex(f)
    A1 = A.shift(1)
    iota, pi = [], []
    for n in C.degrees:
        b, a = B.rank(n), A.rank(n - 1)
        iota.append((n, vstack([IntMatrix.identity(b), _zeros(a, b)], b)))
        pi.append((n, hstack([_zeros(a, b), IntMatrix.identity(a)], a)))
    return Triangle(C, ChainMap(B, C, tuple(iota)), ChainMap(C, A1, tuple(pi)))


def cone_les(f: ChainMap) -> ExactSequenceReport:
    """``H_n(A) -> H_n(B) -> H_n(C_f) -> H_(n-1)(A) -> ...`` checked for exactness."""
    A, B = f.source, f.target
    tri = cone(f)
    C = tri.cone
    degs = list(range(max(A.hi, B.hi, C.hi), min(A.lo, B.lo, C.lo) - 1, -1))
    labels, maps = [], []
    for n in degs:
        labels += [f"H_{n}(A)", f"H_{n}(B)", f"H_{n}(C)"]
        maps.append(homology_map(f, n))
        maps.append(induced_map(B, C, tri.iota.f(n), n, n))
        if n != degs[-1]:
            maps.append(induced_map(C, A, tri.pi.f(n), n, n - 1))
    return sequence_report(labels, maps, cyclic=False)


# Hom in the homotopy category ----------------------------------------------------------------


def hom_set(A: FreeComplex, B: FreeComplex, n: int = 0) -> FgAbGroup:
    """Degree-n morphisms by the split formula sum Hom(H_i A, H_(i+n) B) + Ext(H_i A, H_(i+n+1) B)."""
    parts = []
    for i in A.degrees:
        HA = homology_group(A, i)
        parts.append(bifunctor("Hom", HA, homology_group(B, i + n)))
        parts.append(bifunctor("Ext", HA, homology_group(B, i + n + 1)))
    return direct_sum(*parts)


def chain_map_group(A: FreeComplex, B: FreeComplex, n: int = 0) -> FgAbGroup:
    """Degree-n chain maps ``A_i -> B_(i+n)`` modulo homotopy, from the lattices directly."""
    sysm = _MatrixSystem()
    degs = _window(A, B.shift(-n) if n else B)
    for i in degs:
        r, c = B.rank(i + n), A.rank(i)
        if r and c:
            sysm.var(i, r, c)
    for i in degs:
        p, q = B.rank(i + n - 1), A.rank(i)
        if p and q:
            sysm.equation(i, (p, q), [
                (B.d(i + n), i, IntMatrix.identity(q)),
                (IntMatrix.identity(p).scale(-1), i - 1, A.d(i)),
            ])
    if sysm.nvars == 0:
        return FgAbGroup()
    cycles = kernel_basis(sysm.matrix()) if sysm.rows else [
        [int(k == j) for k in range(sysm.nvars)] for j in range(sysm.nvars)]
    hsolver = _homotopy_solver(A, B, n)
    hs = hsolver.system
    boundaries = []
    for name, (off, r, c) in hs.vars.items():
        for k in range(r * c):
            x = [0] * hs.nvars
            x[off + k] = 1
            H = hs.unpack(x)
            vec = []
            for key, (voff, vr, vc) in sysm.vars.items():
                m = _zeros(vr, vc)
                if key in H:
                    m = m + B.d(key + n + 1) @ H[key]
                if key - 1 in H:
                    m = m + H[key - 1] @ A.d(key)
                vec.extend(m.entries)
            boundaries.append(vec)
    return Subquotient(sysm.nvars, cycles, boundaries).group


# S-finiteness and S-equivalences ------------------------------------------------------------------


def _s_divisors(e: int, S: PrimeSet) -> list[int]:
    """Divisors of ``e`` built from primes of S, ascending."""
    divs = [1]
    for p, k in factorize(e):
        if p not in S:
            continue
        divs = [d * p**j for d in divs for j in range(k + 1)]
    return sorted(divs)


def s_finite_test(C: FreeComplex, S: PrimeSet) -> int | None:
    """Least S-number ``s`` with ``s * id_C`` nullhomotopic.

    Returns 1 for an acyclic complex (already the zero object) and None when
    the homology has free rank or torsion outside S.
    """
    rank, e = total_exponent(C)
    if rank or S.away_part(e) != 1:
        return None
    if e == 1 and is_nullhomotopic(ChainMap.identity(C)) is not None:
        return 1
    solver = _homotopy_solver(C, C)
    ident = ChainMap.identity(C)
    for s in _s_divisors(e, S):
        if s == 1:
            continue
        if solver.solve(_rhs(solver, ident.scale(s))) is not None:
            return s
    return None


@dataclass(frozen=True)
class SEquivalenceReport:
    cone_test: bool
    cone_s: int | None
    inverse_search: bool
    inverse_s: int | None
    inverse: ChainMap | None

    @property
    def agree(self) -> bool:
        return self.cone_test == self.inverse_search

    def to_json(self) -> dict:
        return {
            "cone_test": self.cone_test,
            "cone_s": self.cone_s,
            "inverse_search": self.inverse_search,
            "inverse_s": self.inverse_s,
            "agree": self.agree,
        }


@lru_cache(maxsize=1024)
def _inverse_solver(f: ChainMap) -> _Solver:
    """Unknowns g: B -> A, H on A, H' on B with ``d g = g d``, ``g f - s = dH + Hd``, ``f g - s = dH' + H'd``."""
    A, B = f.source, f.target
    sysm = _MatrixSystem()
    degs = _window(A, B)
    for n in degs:
        if A.rank(n) and B.rank(n):
            sysm.var(("g", n), A.rank(n), B.rank(n))
        if A.rank(n + 1) and A.rank(n):
            sysm.var(("H", n), A.rank(n + 1), A.rank(n))
        if B.rank(n + 1) and B.rank(n):
            sysm.var(("K", n), B.rank(n + 1), B.rank(n))
    for n in degs:
        p, q = A.rank(n - 1), B.rank(n)
        if p and q:
            sysm.equation(("chain", n), (p, q), [
                (A.d(n), ("g", n), IntMatrix.identity(q)),
                (IntMatrix.identity(p).scale(-1), ("g", n - 1), B.d(n)),
            ])
    for n in degs:
        a, b = A.rank(n), B.rank(n)
        if a:
            sysm.equation(("A", n), (a, a), [
                (IntMatrix.identity(a), ("g", n), f.f(n)),
                (A.d(n + 1).scale(-1), ("H", n), IntMatrix.identity(a)),
                (IntMatrix.identity(a).scale(-1), ("H", n - 1), A.d(n)),
            ])
        if b:
            sysm.equation(("B", n), (b, b), [
                (f.f(n), ("g", n), IntMatrix.identity(b)),
                (B.d(n + 1).scale(-1), ("K", n), IntMatrix.identity(b)),
                (IntMatrix.identity(b).scale(-1), ("K", n - 1), B.d(n)),
            ])
    return _finish(sysm)


def inverse_search(f: ChainMap, candidates: Sequence[int]) -> tuple[int, ChainMap] | None:
    """First ``s`` in ``candidates`` with a g such that ``g f ~ s`` and ``f g ~ s``."""
    solver = _inverse_solver(f)
    A, B = f.source, f.target
    for s in candidates:
        rhs = []
        for key, p, q in solver.system.eq_shapes:
            if key[0] == "chain":
                rhs.extend([0] * (p * q))
            else:
                rhs.extend(IntMatrix.identity(p).scale(s).entries)
        sol = solver.solve(rhs)
        if sol is None:
            continue
        comps = tuple((n, sol[("g", n)]) for n in _window(A, B) if ("g", n) in sol)
        g = ChainMap(B, A, comps)
        if not (are_homotopic(g @ f, ChainMap.multiplication(A, s))
                and are_homotopic(f @ g, ChainMap.multiplication(B, s))):
            raise AssertionError("inverse search produced an invalid witness")
        return s, g
    return None


def s_equivalence_test(f: ChainMap, S: PrimeSet) -> SEquivalenceReport:
    """Cone criterion and homotopy-inverse search, side by side.

    The inverse search tries ``s = 1`` and then S-divisors of ``e^2``, where
    ``e`` is the S-part of the torsion exponent of the cone's homology: if
    ``s`` kills the cone then ``s^2`` admits an inverse up to homotopy.
    """
    C = cone(f).cone
    s_cone = s_finite_test(C, S)
    _, e = total_exponent(C)
    cands = _s_divisors(S.s_part(e) ** 2, S)
    if len(cands) > MAX_INVERSE_CANDIDATES:
        raise SearchBoundExceeded(f"{len(cands)} candidate values of s")
    found = inverse_search(f, cands)
    return SEquivalenceReport(
        s_cone is not None,
        s_cone,
        found is not None,
        None if found is None else found[0],
        None if found is None else found[1],
    )


# coefficient cones -------------------------------------------------------------------------


def coefficient_cone(C: FreeComplex, s: int) -> FreeComplex:
    """``C_s``: the cone of ``s * id_C``."""
    return _cone_complex(ChainMap.multiplication(C, s))


def _diag_cone_map(C: FreeComplex, src: FreeComplex, dst: FreeComplex, u: int, v: int) -> ChainMap:
    """``(b, a) -> (u b, v a)`` between two cones of multiplication maps on C."""
    comps = []
    for n in _window(src, dst):
        b, a = C.rank(n), C.rank(n - 1)
        comps.append((n, block_diag([IntMatrix.identity(b).scale(u), IntMatrix.identity(a).scale(v)])))
    return ChainMap(src, dst, tuple(comps))


def octahedron_check(C: FreeComplex, s: int, t: int) -> ExactSequenceReport:
    """Homology of ``C_s -> C_st -> C_t -> C_s[1]`` from the octahedral diagram.

    The maps are ``(b, a) -> (t b, a)``, ``(b, a) -> (b, s a)`` and
    ``(b, a) -> (a, 0)``.
    """
    if s < 2 or t < 2:
        raise ValueError("s and t must be >= 2")
    Cs, Cst, Ct = coefficient_cone(C, s), coefficient_cone(C, s * t), coefficient_cone(C, t)
    alpha = _diag_cone_map(C, Cs, Cst, t, 1)
    beta = _diag_cone_map(C, Cst, Ct, 1, s)
    top = max(Cs.hi, Cst.hi, Ct.hi)
    bottom = min(Cs.lo, Cst.lo, Ct.lo)
    degs = list(range(top, bottom - 1, -1))
    labels, maps = [], []
    for n in degs:
        labels += [f"H_{n}(C_{s})", f"H_{n}(C_{s * t})", f"H_{n}(C_{t})"]
        maps.append(homology_map(alpha, n))
        maps.append(homology_map(beta, n))
        if n != degs[-1]:
            b, a = C.rank(n), C.rank(n - 1)
            gamma = vstack([hstack([_zeros(a, b), IntMatrix.identity(a)], a),
                            _zeros(C.rank(n - 2), b + a)], b + a)
            maps.append(induced_map(Ct, Cs, gamma, n, n - 1))
    return sequence_report(labels, maps, cyclic=False)


@dataclass(frozen=True)
class ThetaResult:
    theta: ChainMap
    composite_check: bool | None


def theta_chain_map(C: FreeComplex, q: int, p: int) -> ChainMap:
    """``C_q -> C_p``: ``x (p/q)`` on the target copy, identity on the shifted source copy."""
    if q < 2 or p < 2 or p % q:
        raise ValueError(f"need q | p with q, p >= 2, got q={q}, p={p}")
    return _diag_cone_map(C, coefficient_cone(C, q), coefficient_cone(C, p), p // q, 1)


def theta_map(C: FreeComplex, q: int, p: int, r: int | None = None) -> ThetaResult:
    """Theta_(p,q), and if ``r`` is given whether Theta_(p,r) Theta_(r,q) ~ Theta_(p,q)."""
    th = theta_chain_map(C, q, p)
    check = None
    if r is not None:
        if r % q or p % r:
            raise ValueError(f"need q | r | p, got q={q}, r={r}, p={p}")
        comp = theta_chain_map(C, r, p) @ theta_chain_map(C, q, r)
        check = are_homotopic(comp, th)
    return ThetaResult(th, check)


__all__ = [
    "ChainMap",
    "FreeComplex",
    "HomotopyCertificate",
    "SEquivalenceReport",
    "SearchBoundExceeded",
    "ThetaResult",
    "Triangle",
    "are_homotopic",
    "chain_map_group",
    "coefficient_cone",
    "cone",
    "cone_les",
    "hom_set",
    "homology",
    "homology_group",
    "homology_map",
    "induced_map",
    "inverse_search",
    "is_nullhomotopic",
    "octahedron_check",
    "s_equivalence_test",
    "s_finite_test",
    "theta_chain_map",
    "theta_map",
]
