"""Graded homology-theory values and their coefficient constructions.

A :class:`GradedGroup` is either periodic (period 2 or 8, one entry per
residue) or bounded (finitely many nonzero degrees).  On top of it sit the
localised, torsion-coefficient and finite-coefficient theories, the long
exact sequences tying them together, and the isomorphism detectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Mapping, Sequence, Union

from .coefrings import (
    ExtModule,
    PrimeSet,
    ext_sum,
    localize_group,
    tor_coefficients,
)
from .extensions import (
    DEFAULT_MAX_ORDER,
    ExtensionProblem,
    resolve_extension,
)
from .fgab import (
    FgAbGroup,
    GroupHom,
    all_homs,
    direct_sum,
    homology_at,
    is_exact_at,
    multiplication_cokernel,
    multiplication_kernel,
    sum_injection,
    sum_projection,
    torsion_data,
    transport,
)
from .linalg import IntMatrix, block_diag, determinant

Value = Union[FgAbGroup, ExtModule]
CONNECTING_MAP_BUDGET = 10**5


class Undetermined(Exception):
    """No certified exact assignment was found within the search bound."""


def _norm(v) -> Value:
    if isinstance(v, FgAbGroup):
        return v
    if isinstance(v, ExtModule):
        # without a free part the base ring does not change the abelian group
        if v.is_finitely_generated:
            return v.to_group()
        return v
    raise TypeError(f"graded entries must be groups or modules, got {type(v).__name__}")


@dataclass(frozen=True)
class GradedGroup:
    """``period`` is 2, 8 or None (bounded); ``items`` holds the entries.

    Periodic: ``items`` is the tuple of entries in degrees ``0..period-1``.
    Bounded: ``items`` is a sorted tuple of ``(degree, value)`` pairs, zero
    values dropped.
    """

    period: int | None = None
    items: tuple = ()
    note: str = field(default="", compare=False)

    def __post_init__(self):
        if self.period is None:
            seen = {}
            for n, v in self.items:
                if int(n) in seen:
                    raise ValueError(f"degree {n} given twice")
                seen[int(n)] = _norm(v)
            items = tuple(sorted((n, v) for n, v in seen.items() if not v.is_zero))
        else:
            if self.period not in (2, 8):
                raise ValueError(f"period must be 2 or 8, got {self.period}")
            if len(self.items) != self.period:
                raise ValueError(f"need exactly {self.period} entries, got {len(self.items)}")
            items = tuple(_norm(v) for v in self.items)
        object.__setattr__(self, "items", items)

    @classmethod
    def periodic(cls, values: Sequence, note: str = "") -> "GradedGroup":
        return cls(len(values), tuple(values), note)

    @classmethod
    def bounded(cls, entries: Mapping[int, Value], note: str = "") -> "GradedGroup":
        return cls(None, tuple(entries.items()), note)

    @classmethod
    def zero(cls, period: int | None = None) -> "GradedGroup":
        if period is None:
            return cls()
        return cls(period, (FgAbGroup(),) * period)

    @classmethod
    def parse(cls, text: str) -> "GradedGroup":
        from .literals import parse_graded

        return parse_graded(text)

    @property
    def entries(self) -> dict[int, Value]:
        if self.period is None:
            return dict(self.items)
        return dict(enumerate(self.items))

    def __getitem__(self, n: int) -> Value:
        if self.period is not None:
            return self.items[n % self.period]
        for k, v in self.items:
            if k == n:
                return v
        return FgAbGroup()

    @property
    def support(self) -> tuple[int, int] | None:
        """``(lo, hi)`` of the nonzero entries for a bounded group."""
        if self.period is not None:
            raise ValueError("periodic groups have no bounded support")
        if not self.items:
            return None
        return self.items[0][0], self.items[-1][0]

    def degrees(self, widen: int = 0) -> list[int]:
        """Representative degrees; bounded supports are extended upward by ``widen``."""
        if self.period is not None:
            return list(range(self.period))
        s = self.support
        if s is None:
            return []
        return list(range(s[0], s[1] + widen + 1))

    @property
    def is_fg(self) -> bool:
        return all(isinstance(v, FgAbGroup) for v in self.entries.values())

    @property
    def is_zero(self) -> bool:
        return all(v.is_zero for v in self.entries.values())

    def build(self, fn: Callable[[int], Value], widen: int = 0, note: str = "") -> "GradedGroup":
        """A graded group of the same shape with entries ``fn(n)``."""
        if self.period is not None:
            return GradedGroup.periodic([fn(n) for n in range(self.period)], note)
        return GradedGroup.bounded({n: fn(n) for n in self.degrees(widen)}, note)

    def shifted(self, k: int) -> "GradedGroup":
        """The group with ``G[n] = F[n - k]``."""
        if self.period is not None:
            return GradedGroup.periodic([self[n - k] for n in range(self.period)], self.note)
        return GradedGroup.bounded({n + k: v for n, v in self.items}, self.note)

    def require_fg(self) -> None:
        if not self.is_fg:
            raise ValueError("this operation needs a theory valued in finitely generated groups")

    def to_json(self) -> dict:
        return {
            "period": self.period,
            "groups": {str(n): str(v) for n, v in sorted(self.entries.items())},
        }

    def __str__(self) -> str:
        from .literals import format_graded

        return format_graded(self)

    def __repr__(self) -> str:
        return f"GradedGroup({str(self)!r})"


def _same_shape(F: GradedGroup, G: GradedGroup) -> None:
    if F.period != G.period:
        raise ValueError("graded groups have different periodicity")


@dataclass(frozen=True)
class TheoryMap:
    """A degree-preserving map of f.g.-valued graded groups."""

    source: GradedGroup
    target: GradedGroup
    maps: tuple[tuple[int, GroupHom], ...] = ()

    def __post_init__(self):
        _same_shape(self.source, self.target)
        self.source.require_fg()
        self.target.require_fg()
        given = {}
        for n, f in self.maps:
            n = n % self.source.period if self.source.period else n
            if f.domain != self.source[n] or f.codomain != self.target[n]:
                raise ValueError(f"degree {n}: map {f} does not match the graded groups")
            given[n] = f
        for n in self.degrees():
            if n not in given:
                if not (self.source[n].is_zero or self.target[n].is_zero):
                    raise ValueError(f"no map given in degree {n}")
                given[n] = GroupHom.zero(self.source[n], self.target[n])
        object.__setattr__(self, "maps", tuple(sorted(given.items())))

    @classmethod
    def from_dict(cls, source, target, maps: Mapping[int, GroupHom]) -> "TheoryMap":
        return cls(source, target, tuple(maps.items()))

    @property
    def period(self) -> int | None:
        return self.source.period

    def degrees(self) -> list[int]:
        if self.period is not None:
            return list(range(self.period))
        degs = set(self.source.degrees()) | set(self.target.degrees())
        return list(range(min(degs), max(degs) + 1)) if degs else []

    def __getitem__(self, n: int) -> GroupHom:
        if self.period is not None:
            n %= self.period
        for k, f in self.maps:
            if k == n:
                return f
        return GroupHom.zero(self.source[n], self.target[n])


# coefficient constructions ------------------------------------------------------------------


def localize_theory(F: GradedGroup, S: PrimeSet) -> GradedGroup:
    F.require_fg()
    return F.build(lambda n: localize_group(F[n], S))


def torsion_theory(F: GradedGroup, S: PrimeSet) -> GradedGroup:
    """Degree n: ``Tor_0(F_n) + Tor_1(F_(n-1))``.

    The Tor_0 part is divisible, so the extension splits; the result is the
    isomorphism class only, not a natural splitting.
    """
    F.require_fg()

    def entry(n):
        tor0, _ = tor_coefficients(F[n], S)
        _, tor1 = tor_coefficients(F[n - 1], S)
        return ext_sum(tor0, ExtModule.from_group(tor1))

    return F.build(entry, widen=1, note="iso class, non-natural")


@dataclass(frozen=True)
class GradedExtension:
    """One extension problem per degree."""

    period: int | None
    problems: tuple[tuple[int, ExtensionProblem], ...]

    def __getitem__(self, n: int) -> ExtensionProblem:
        if self.period is not None:
            n %= self.period
        for k, p in self.problems:
            if k == n:
                return p
        z = FgAbGroup()
        return ExtensionProblem(z, z, (z,), ((GroupHom.zero(z, z), GroupHom.zero(z, z)),), z)

    def degrees(self) -> list[int]:
        return [n for n, _ in self.problems]

    def resolved(self) -> GradedGroup | None:
        """The graded group when every degree is resolved, else None."""
        if any(p.resolved is None for _, p in self.problems):
            return None
        if self.period is not None:
            return GradedGroup.periodic([p.resolved for _, p in self.problems])
        return GradedGroup.bounded({n: p.resolved for n, p in self.problems})

    def all_candidates(self) -> list[FgAbGroup]:
        return [E for _, p in self.problems for E in p.candidates]

    def to_json(self) -> dict:
        return {
            "period": self.period,
            "degrees": {str(n): p.to_json() for n, p in self.problems},
        }


def coefficient_problem(F: GradedGroup, s: int, n: int) -> ExtensionProblem:
    return ExtensionProblem(multiplication_cokernel(F[n], s), multiplication_kernel(F[n - 1], s))


def finite_coefficients(
    F: GradedGroup, s: int, policy: str = "enumerate", max_order: int = DEFAULT_MAX_ORDER
) -> GradedExtension:
    """Degree n: ``coker(s on F_n) >-> F_n(;s) ->> ker(s on F_(n-1))``."""
    if s <= 1:
        raise ValueError(f"s must be >= 2, got {s}")
    F.require_fg()
    degs = F.degrees(widen=1)
    probs = tuple(
        (n, resolve_extension(coefficient_problem(F, s, n), policy, max_order)) for n in degs
    )
    return GradedExtension(F.period, probs)


# exact sequence reports ---------------------------------------------------------------------


@dataclass(frozen=True)
class SequenceNode:
    label: str
    group: str
    incoming: str
    outgoing: str

    def to_json(self) -> dict:
        return {"label": self.label, "group": self.group, "incoming": self.incoming, "outgoing": self.outgoing}


@dataclass(frozen=True)
class ExactSequenceReport:
    nodes: tuple[SequenceNode, ...]
    exact_at: tuple[bool, ...]
    witnesses: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def all_exact(self) -> bool:
        return all(self.exact_at)

    def failures(self) -> list[int]:
        return [i for i, ok in enumerate(self.exact_at) if not ok]

    def to_json(self) -> dict:
        return {
            "nodes": [n.to_json() for n in self.nodes],
            "exact_at": list(self.exact_at),
            "witnesses": list(self.witnesses),
        }

    def __str__(self) -> str:
        lines = []
        for node, ok in zip(self.nodes, self.exact_at):
            mark = "exact" if ok else "NOT EXACT"
            lines.append(f"{node.label:>16}  {node.group:<28} {mark}")
        lines.extend(self.witnesses)
        lines.extend(self.notes)
        return "\n".join(lines)


def _describe(f: GroupHom) -> str:
    return f"{f.domain} -> {f.codomain} {f.matrix.to_rows()}"


def sequence_report(
    labels: Sequence[str], maps: Sequence[GroupHom], cyclic: bool, notes: Iterable[str] = ()
) -> ExactSequenceReport:
    """Exactness of ``N_0 -> N_1 -> ...`` where ``maps[i]: N_i -> N_(i+1)``.

    Cyclic sequences wrap around; otherwise the ends are padded with zero
    groups, so exactness at node 0 means injectivity of the first map.
    """
    k = len(maps)
    if cyclic:
        for i in range(k):
            if maps[i].codomain != maps[(i + 1) % k].domain:
                raise ValueError(f"maps {i} and {i + 1} are not composable")
        pairs = [(maps[i - 1], maps[i]) for i in range(k)]
        groups = [f.domain for f in maps]
    else:
        for i in range(k - 1):
            if maps[i].codomain != maps[i + 1].domain:
                raise ValueError(f"maps {i} and {i + 1} are not composable")
        z = FgAbGroup()
        first = GroupHom.zero(z, maps[0].domain)
        last = GroupHom.zero(maps[-1].codomain, z)
        seq = [first, *maps, last]
        pairs = [(seq[i], seq[i + 1]) for i in range(k + 1)]
        groups = [f.domain for f in maps] + [maps[-1].codomain]
    if len(labels) != len(groups):
        raise ValueError("one label per node is required")
    nodes, exact, wit = [], [], []
    for i, (f, g) in enumerate(pairs):
        nodes.append(SequenceNode(labels[i], str(groups[i]), _describe(f), _describe(g)))
        if not (g @ f).is_zero:
            exact.append(False)
            wit.append(f"node {i} ({labels[i]}): composite of incoming and outgoing maps is nonzero")
            continue
        H = homology_at(f, g)
        exact.append(H.is_zero)
        if not H.is_zero:
            wit.append(f"node {i} ({labels[i]}): ker/im = {H}")
    return ExactSequenceReport(tuple(nodes), tuple(exact), tuple(wit), tuple(notes))


def _sequence_degrees(F: GradedGroup) -> tuple[list[int], bool]:
    """Degrees in descending order, and whether the sequence wraps around."""
    if F.period is not None:
        return list(range(F.period - 1, -1, -1)), True
    s = F.support
    if s is None:
        return [0], False
    return list(range(s[1] + 1, s[0] - 1, -1)), False


# localisation / colocalisation sequence ------------------------------------------------------


@dataclass(frozen=True)
class _Split:
    """``G = Z^r + T_S + T'`` with the canonical maps we need."""

    G: FgAbGroup
    S: PrimeSet

    @property
    def parts(self) -> list[FgAbGroup]:
        ts, _ = torsion_data(self.G, self.S)
        away = FgAbGroup.from_cyclics(0, [self.S.away_part(f) for f in self.G.invariant_factors])
        return [FgAbGroup.free(self.G.rank), ts, away]

    @property
    def shadow(self) -> FgAbGroup:
        """Z-side data of ``S^-1 G``: ``Z^r + T'``."""
        free, _, away = self.parts
        return direct_sum(free, away)

    def localisation(self) -> GroupHom:
        free, ts, away = self.parts
        r, a, b = free.ngens, ts.ngens, away.ngens
        rows = []
        for i in range(r):
            rows.append([int(i == j) for j in range(r + a + b)])
        for i in range(b):
            rows.append([0] * (r + a) + [int(i == j) for j in range(b)])
        blk = IntMatrix.from_rows(rows, r + a + b)
        return transport(blk, self.parts, [free, away], self.G, self.shadow)

    def torsion_inclusion(self) -> GroupHom:
        return sum_injection(self.parts, 1)


def assemble_loc_coloc_les(F: GradedGroup, S: PrimeSet) -> ExactSequenceReport:
    """``... -> F_n -> S^-1 F_n -> F'_n -> F_(n-1) -> ...`` checked layer by layer.

    The f.g. layer is checked with homomorphisms.  On ``S^-1 F_n`` the map
    to ``F'_n`` is the quotient by the standard lattice ``Z^r + T'``, so
    exactness there means the localisation map hits that lattice; on
    ``F'_n`` the divisible layer must be exactly the image, of multiplicity
    ``r``, and the boundary must be injective on the S-torsion of ``F_(n-1)``.
    """
    F.require_fg()
    degs, cyclic = _sequence_degrees(F)
    nodes, exact, wit = [], [], []

    def add(label, group, inc, out, ok, why):
        nodes.append(SequenceNode(label, group, inc, out))
        exact.append(ok)
        if not ok:
            wit.append(f"node {len(nodes) - 1} ({label}): {why}")

    for n in degs:
        here, below = _Split(F[n], S), _Split(F[n - 1], S)
        lam = here.localisation()
        iota = here.torsion_inclusion()
        loc = localize_group(F[n], S)
        tor0, _ = tor_coefficients(F[n], S)
        _, tor1 = tor_coefficients(F[n - 1], S)
        r = F[n].rank

        # F_n: incoming is the inclusion of the S-torsion, outgoing the localisation
        ok = is_exact_at(iota, lam)
        why = "image of S-torsion differs from the kernel of localisation"
        add(f"F_{n}", str(F[n]), "S-torsion inclusion", "x -> x (x) 1", ok, why)

        # S^-1 F_n
        ok_data = loc.free_rank == r and loc.finite_torsion == here.shadow.torsion
        ok = ok_data and lam.is_surjective
        why = "localised value disagrees with Z-side data" if not ok_data else (
            f"localisation misses the lattice, cokernel {lam.cokernel()}")
        add(f"S^-1F_{n}", str(_norm(loc)), "x -> x (x) 1", "quotient by lattice", ok, why)

        # F'_n
        expected_tor0 = ExtModule(pruefer=((S, r),)) if r and not S.is_empty else ExtModule()
        ok_div = tor0 == expected_tor0
        ok_tor = tor1 == below.parts[1] and below.torsion_inclusion().is_injective
        node_val = ext_sum(tor0, ExtModule.from_group(tor1))
        why = "divisible layer is not the image of the localised lattice" if not ok_div else (
            "boundary is not injective on S-torsion")
        add(f"F'_{n}", str(_norm(node_val)), "quotient by lattice", "S-torsion inclusion", ok_div and ok_tor, why)

    return ExactSequenceReport(tuple(nodes), tuple(exact), tuple(wit))


# finite coefficient sequence ------------------------------------------------------------------


def induced_on_cokernels(phi: GroupHom, u: int, v: int) -> GroupHom:
    """``coker(u on A) -> coker(v on B)`` induced by ``phi: A -> B`` (needs phi(uA) in vB)."""
    A, B = phi.domain, phi.codomain
    src = GroupHom.multiplication(A, u)
    proj = GroupHom.multiplication(B, v).cokernel_projection()
    cols = [proj(phi(x)) for x in src.cokernel_lifts()]
    C = proj.codomain
    return GroupHom(src.cokernel(), C, IntMatrix.from_columns(cols, C.ngens) if cols else IntMatrix.zeros(C.ngens, 0))


def induced_on_kernels(phi: GroupHom, u: int, v: int) -> GroupHom:
    """``ker(u on A) -> ker(v on B)`` restricted from ``phi`` (needs phi(A[u]) in B[v])."""
    A, B = phi.domain, phi.codomain
    incl = GroupHom.multiplication(A, u).kernel_inclusion()
    target = GroupHom.multiplication(B, v)
    K = target.kernel()
    cols = [target.kernel_coords(phi(incl.matrix.column(j))) for j in range(incl.domain.ngens)]
    return GroupHom(incl.domain, K, IntMatrix.from_columns(cols, K.ngens) if cols else IntMatrix.zeros(K.ngens, 0))


def _coefficient_parts(F: GradedGroup, u: int, n: int) -> list[FgAbGroup]:
    return [multiplication_cokernel(F[n], u), multiplication_kernel(F[n - 1], u)]


def _coefficient_map(F: GradedGroup, n: int, u: int, v: int, c_map: GroupHom, k_map: GroupHom) -> GroupHom:
    src, dst = _coefficient_parts(F, u, n), _coefficient_parts(F, v, n)
    blk = block_diag([c_map.matrix, k_map.matrix])
    return transport(blk, src, dst, direct_sum(*src), direct_sum(*dst))


def _connecting_map(F: GradedGroup, n: int, s: int, t: int) -> GroupHom:
    """``F_n(;t) -> F_(n-1)(;s)``: quotient part, into F_(n-1), reduced mod s."""
    src, dst = _coefficient_parts(F, t, n), _coefficient_parts(F, s, n - 1)
    H = F[n - 1]
    c = GroupHom.multiplication(H, s).cokernel_projection() @ GroupHom.multiplication(H, t).kernel_inclusion()
    a, b = src[0].ngens, src[1].ngens
    rows = [[0] * a + list(row) for row in c.matrix.to_rows()]
    rows += [[0] * (a + b) for _ in range(dst[1].ngens)]
    blk = IntMatrix.from_rows(rows, a + b)
    return transport(blk, src, dst, direct_sum(*src), direct_sum(*dst))


def coefficient_les(F: GradedGroup, s: int, t: int, policy: str = "split") -> ExactSequenceReport:
    """``... -> F_n(;s) -> F_n(;st) -> F_n(;t) -> F_(n-1)(;s) -> ...``.

    Under the split policy each coefficient group is ``coker + ker`` and
    the maps are induced degreewise: ``(x t, inclusion)``, ``(projection, x s)``,
    and the boundary through ``F_(n-1)``.  If that assignment were not exact
    the connecting maps are searched exhaustively within a budget.
    """
    if s < 2 or t < 2:
        raise ValueError("s and t must be >= 2")
    if policy != "split":
        raise ValueError("coefficient sequences are assembled under the split policy only")
    F.require_fg()
    st = s * t
    degs, cyclic = _sequence_degrees(F)
    labels, maps = [], []
    for n in degs:
        G, H = F[n], F[n - 1]
        a = _coefficient_map(
            F, n, s, st,
            induced_on_cokernels(GroupHom.multiplication(G, t), s, st),
            induced_on_kernels(GroupHom.identity(H), s, st),
        )
        b = _coefficient_map(
            F, n, st, t,
            induced_on_cokernels(GroupHom.identity(G), st, t),
            induced_on_kernels(GroupHom.multiplication(H, s), st, t),
        )
        labels += [f"F_{n}(;{s})", f"F_{n}(;{st})", f"F_{n}(;{t})"]
        maps += [a, b]
        if cyclic or n != degs[-1]:
            maps.append(_connecting_map(F, n, s, t))
    rep = sequence_report(labels, maps, cyclic, notes=("assignment: canonical split maps",))
    if rep.all_exact:
        return rep
    return _search_connecting(F, labels, maps, cyclic)


def _search_connecting(F, labels, maps, cyclic) -> ExactSequenceReport:
    """Replace every third map by arbitrary homomorphisms until the sequence is exact."""
    slots = [i for i in range(2, len(maps), 3)]
    choices = []
    total = 1
    for i in slots:
        f = maps[i]
        if f.domain.rank or f.codomain.rank:
            raise Undetermined("connecting maps between infinite groups are not searched")
        homs = list(all_homs(f.domain, f.codomain))
        total *= len(homs)
        if total > CONNECTING_MAP_BUDGET:
            raise Undetermined(f"more than {CONNECTING_MAP_BUDGET} connecting-map assignments")
        choices.append(homs)
    for combo in product(*choices):
        trial = list(maps)
        for i, h in zip(slots, combo):
            trial[i] = h
        rep = sequence_report(labels, trial, cyclic, notes=(
            "assignment: searched connecting maps " + "; ".join(_describe(h) for h in combo),))
        if rep.all_exact:
            return rep
    raise Undetermined("no assignment of connecting maps makes the sequence exact")


# isomorphism detection ---------------------------------------------------------------------


@dataclass(frozen=True)
class IsoReport:
    degrees: tuple[int, ...]
    phi_iso: dict
    loc_iso: dict
    tor_iso: dict
    per_prime: dict | None

    @property
    def all_phi(self) -> bool:
        return all(self.phi_iso.values())

    @property
    def all_loc(self) -> bool:
        return all(self.loc_iso.values())

    @property
    def all_tor(self) -> bool:
        return all(self.tor_iso.values())

    @property
    def all_per_prime(self) -> bool | None:
        if self.per_prime is None:
            return None
        return all(all(d.values()) for d in self.per_prime.values())

    @property
    def detection_consistent(self) -> bool:
        ok = self.all_phi == (self.all_loc and self.all_tor)
        if self.per_prime is not None:
            ok = ok and self.all_tor == self.all_per_prime
        return ok

    def to_json(self) -> dict:
        out = {
            "degrees": list(self.degrees),
            "phi_iso": {str(n): self.phi_iso[n] for n in self.degrees},
            "loc_iso": {str(n): self.loc_iso[n] for n in self.degrees},
            "tor_iso": {str(n): self.tor_iso[n] for n in self.degrees},
        }
        if self.per_prime is not None:
            out["per_prime"] = {
                str(n): {str(q): v for q, v in sorted(self.per_prime[n].items())} for n in self.degrees
            }
        return out


def _s_torsion_free(G: FgAbGroup, S: PrimeSet) -> bool:
    """Finite of order an S-number."""
    return G.rank == 0 and S.contains_number(G.order)


def free_block(phi: GroupHom) -> IntMatrix:
    """The matrix of ``phi`` modulo torsion (free rows, free columns)."""
    r, c = phi.codomain.rank, phi.domain.rank
    rows = phi.matrix.to_rows()[:r]
    return IntMatrix.from_rows([row[:c] for row in rows], c)


def tor0_iso(phi: GroupHom, S: PrimeSet) -> bool:
    """Whether ``phi (x) S^-1Z/Z`` is an isomorphism."""
    if S.is_empty:
        return True
    A = free_block(phi)
    if A.rows != A.cols:
        return False
    if A.rows == 0:
        return True
    d = determinant(A)
    return d != 0 and S.s_part(d) == 1


def s_torsion_restriction(phi: GroupHom, S: PrimeSet) -> GroupHom:
    src, dst = _Split(phi.domain, S), _Split(phi.codomain, S)
    return sum_projection(dst.parts, 1) @ phi @ sum_injection(src.parts, 1)


def iso_detector(phi: TheoryMap, S: PrimeSet) -> IsoReport:
    degs = phi.degrees()
    if phi.period is None and degs:
        degs = list(range(degs[0], degs[-1] + 2))
    p_iso, l_iso, t_iso = {}, {}, {}
    per = {} if S.is_finite else None
    for n in degs:
        f, g = phi[n], phi[n - 1]
        p_iso[n] = f.is_iso
        l_iso[n] = _s_torsion_free(f.kernel(), S) and _s_torsion_free(f.cokernel(), S)
        t_iso[n] = tor0_iso(f, S) and s_torsion_restriction(g, S).is_iso
        if per is not None:
            per[n] = {
                q: induced_on_cokernels(f, q, q).is_iso and induced_on_kernels(g, q, q).is_iso
                for q in S.members()
            }
    return IsoReport(tuple(degs), p_iso, l_iso, t_iso, per)


__all__ = [
    "ExactSequenceReport",
    "GradedExtension",
    "GradedGroup",
    "IsoReport",
    "SequenceNode",
    "TheoryMap",
    "Undetermined",
    "assemble_loc_coloc_les",
    "coefficient_les",
    "finite_coefficients",
    "induced_on_cokernels",
    "induced_on_kernels",
    "iso_detector",
    "localize_theory",
    "sequence_report",
    "torsion_theory",
]
