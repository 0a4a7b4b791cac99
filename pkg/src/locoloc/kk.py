"""Universal coefficient computations for Kasparov groups, at the level of K-groups.

Objects are described only by their K-theory (:class:`KTheoryObject`).  The
UCT formula is the bootstrap-class one; nothing here claims anything for
objects outside that class.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .coefrings import ExtModule, NotRepresentable, as_ext, ext_sum, module_bifunctor
from .extensions import ExtensionProblem, resolve_extension
from .fgab import FgAbGroup, GroupHom, bifunctor, direct_sum, sum_injection, sum_projection
from .graded import (
    ExactSequenceReport,
    GradedExtension,
    GradedGroup,
    _norm,
    coefficient_problem,
    finite_coefficients,
    induced_on_cokernels,
    sequence_report,
)

FLAVORS = {"complex": 2, "real": 8}
KO_POINT = ("Z", "Z/2", "Z/2", "0", "Z", "0", "0", "0")
UCT_LABEL = "bootstrap-class formula"


@dataclass(frozen=True)
class KTheoryObject:
    name: str
    k_groups: GradedGroup | None
    flavor: str = "complex"
    extensions: GradedExtension | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ValueError(f"flavor must be one of {sorted(FLAVORS)}")
        if self.k_groups is not None and self.k_groups.period != FLAVORS[self.flavor]:
            raise ValueError(f"{self.flavor} K-theory needs period {FLAVORS[self.flavor]}")

    @property
    def period(self) -> int:
        return FLAVORS[self.flavor]

    def to_json(self) -> dict:
        out = {"name": self.name, "flavor": self.flavor}
        out["k_groups"] = None if self.k_groups is None else self.k_groups.to_json()["groups"]
        if self.extensions is not None:
            out["extensions"] = self.extensions.to_json()["degrees"]
        return out


def point(flavor: str = "complex") -> KTheoryObject:
    if flavor == "complex":
        return KTheoryObject("point-complex", GradedGroup.parse("period=2: [Z, 0]"), "complex")
    return KTheoryObject("point-real", GradedGroup.parse("period=8: [" + ", ".join(KO_POINT) + "]"), "real")


def cq(q: int) -> KTheoryObject:
    """The complex mapping cone of the degree-q map on the circle."""
    if q < 2:
        raise ValueError("q must be >= 2")
    return KTheoryObject(f"Cq({q})", GradedGroup.periodic([FgAbGroup.cyclic(q), FgAbGroup()]), "complex")


def dq() -> KTheoryObject:
    return KTheoryObject("DQ", GradedGroup.periodic([ExtModule.rationals(), FgAbGroup()]), "complex")


def dqz() -> KTheoryObject:
    return KTheoryObject("DQZ", GradedGroup.periodic([ExtModule.q_mod_z(), FgAbGroup()]), "complex")


def fixture(name: str) -> KTheoryObject:
    """Named fixtures: point-complex, point-real, Cq(q), DQ, DQZ."""
    name = name.strip()
    if name == "point-complex":
        return point("complex")
    if name == "point-real":
        return point("real")
    if name == "DQ":
        return dq()
    if name == "DQZ":
        return dqz()
    m = re.fullmatch(r"Cq\((\d+)\)", name)
    if m:
        return cq(int(m.group(1)))
    raise ValueError(f"unknown fixture {name!r}; expected point-complex, point-real, Cq(q), DQ or DQZ")


# UCT ------------------------------------------------------------------------------------


@dataclass(frozen=True)
class UCTResult:
    """Degree n: ``Ext_n >-> KK_n ->> Hom_n``, resolved by the unnatural splitting.

    ``terms`` holds ``(n, sub, quot)`` for each computed degree mod the period.
    """

    source: str
    target: str
    period: int
    terms: tuple
    label: str = UCT_LABEL

    def _term(self, n: int):
        for d, sub, quot in self.terms:
            if d == n % self.period:
                return sub, quot
        raise KeyError(f"degree {n} was not computed")

    def degrees(self) -> list[int]:
        return [d for d, _, _ in self.terms]

    def __getitem__(self, n: int):
        sub, quot = self._term(n)
        if isinstance(sub, FgAbGroup) and isinstance(quot, FgAbGroup):
            return direct_sum(sub, quot)
        return _norm(ext_sum(as_ext(sub), as_ext(quot)))

    def problem(self, n: int) -> ExtensionProblem:
        sub, quot = (_norm(v) for v in self._term(n))
        if not (isinstance(sub, FgAbGroup) and isinstance(quot, FgAbGroup)):
            raise ValueError("extension problems are only formed for finitely generated terms")
        return resolve_extension(ExtensionProblem(sub, quot), "split")

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "label": self.label,
            "degrees": {
                str(d): {"sub": str(_norm(sub)), "quot": str(_norm(quot)), "group": str(self[d])}
                for d, sub, quot in self.terms
            },
        }


def _bifunctor(kind: str, a, b):
    if isinstance(a, FgAbGroup) and isinstance(b, FgAbGroup):
        return bifunctor(kind, a, b)
    return module_bifunctor(kind, a, b)


def _sum(values):
    if all(isinstance(v, FgAbGroup) for v in values):
        return direct_sum(*values)
    return ext_sum(*(as_ext(v) for v in values))


def uct_kk(A: KTheoryObject, B: KTheoryObject, degrees=None) -> UCTResult:
    """``sum_i Ext(K_i A, K_(i+n+1) B) >-> KK_n(A, B) ->> sum_i Hom(K_i A, K_(i+n) B)``.

    Only the complex formula is implemented; raises NotRepresentable when a
    term leaves the representable module class.  ``degrees`` restricts the
    computation, so a representable degree can be read off even when another
    degree is not.
    """
    if A.flavor != B.flavor:
        raise ValueError("objects of different flavors")
    if A.flavor != "complex":
        raise ValueError("the UCT formula implemented here is the complex one")
    if A.k_groups is None or B.k_groups is None:
        raise ValueError("K-groups are not determined")
    P = A.period
    KA, KB = A.k_groups, B.k_groups
    terms = []
    for n in sorted({d % P for d in (range(P) if degrees is None else degrees)}):
        try:
            quot = _sum([_bifunctor("Hom", KA[i], KB[i + n]) for i in range(P)])
            sub = _sum([_bifunctor("Ext", KA[i], KB[i + n + 1]) for i in range(P)])
        except NotRepresentable as exc:
            raise NotRepresentable(f"KK_{n}({A.name}, {B.name}): {exc}", exc.atoms) from None
        terms.append((n, sub, quot))
    return UCTResult(A.name, B.name, P, tuple(terms))


def coefficient_object(B: KTheoryObject, q: int, max_order: int = 4096) -> KTheoryObject:
    """K-theory with Z/q coefficients: split for complex, candidates kept for real."""
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    if B.k_groups is None:
        raise ValueError("K-groups are not determined")
    policy = "split" if B.flavor == "complex" else "enumerate"
    ext = finite_coefficients(B.k_groups, q, policy, max_order)
    return KTheoryObject(f"{B.name};Z/{q}", ext.resolved(), B.flavor, ext)


# real computations ------------------------------------------------------------------------


@dataclass(frozen=True)
class KKOResult:
    q: int
    kko_minus1: FgAbGroup
    kko_0: FgAbGroup
    report: ExactSequenceReport

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "KKO_-1(Cq,R)": str(self.kko_minus1),
            "KKO_0(Cq,R)": str(self.kko_0),
            "exact": self.report.all_exact,
        }


def kko_cq_r(q: int) -> KKOResult:
    """``KKO_m(C_q, R)`` from the cone sequence ``KO_(m+1) --q--> KO_(m+1) -> KKO_m(C_q,R) -> KO_m --q--> KO_m``.

    The whole 8-periodic sequence is assembled and checked for exactness;
    where sub and quotient are both nonzero the split representative is used.
    """
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    KO = point("real").k_groups
    labels, maps = [], []
    values = {}
    for m in range(7, -1, -1):
        top, bot = KO[m + 1], KO[m]
        prob = coefficient_problem(KO, q, m + 1)
        X = prob.split
        values[m] = prob
        parts = [prob.sub, prob.quot]
        mult_top = GroupHom.multiplication(top, q)
        into = sum_injection(parts, 0) @ mult_top.cokernel_projection()
        out = GroupHom.multiplication(bot, q).kernel_inclusion() @ sum_projection(parts, 1)
        labels += [f"KO_{m + 1}", f"KO_{m + 1}'", f"KKO_{m}(Cq,R)"]
        maps += [mult_top, into, out]
        if X != out.domain:
            raise AssertionError("inconsistent cone-sequence node")
    report = sequence_report(labels, maps, cyclic=True)
    m1, m0 = values[7], values[0]
    if m1.quot.ngens or m0.quot.ngens:
        raise AssertionError("KKO_-1 and KKO_0 of C_q should have no quotient term")
    return KKOResult(q, m1.sub, m0.sub, report)


@dataclass(frozen=True)
class ExponentReport:
    q: int
    problem: ExtensionProblem
    bound: int
    exponent_bound_holds: bool
    conclusion: str = "annihilated by q for odd q and by 2q for even q"
    four_divides_claim: str | None = None

    @property
    def candidates(self) -> tuple[FgAbGroup, ...]:
        return self.problem.candidates

    def to_json(self) -> dict:
        out = {
            "q": self.q,
            "sub": str(self.problem.sub),
            "quot": str(self.problem.quot),
            "candidates": [str(E) for E in self.candidates],
            "exponents": [E.exponent for E in self.candidates],
            "bound": self.bound,
            "exponent_bound_holds": self.exponent_bound_holds,
            "conclusion": self.conclusion,
        }
        if self.four_divides_claim is not None:
            out["four_divides_claim"] = self.four_divides_claim
        return out


def kko_cq_cq_bound(q: int, max_order: int = 4096) -> ExponentReport:
    """``KKO_0(Cq,R) (x) Z/q >-> KKO_0(Cq,Cq) ->> Tor(KKO_-1(Cq,R), Z/q)``.

    Even q: every candidate middle group is enumerated and its exponent is
    compared with 2q.  Odd q: the extension splits, and the bound is q.
    """
    r = kko_cq_r(q)
    Zq = FgAbGroup.cyclic(q)
    base = ExtensionProblem(bifunctor("Tensor", r.kko_0, Zq), bifunctor("Tor", r.kko_minus1, Zq))
    if q % 2:
        prob, bound = resolve_extension(base, "split"), q
    else:
        prob, bound = resolve_extension(base, "enumerate", max_order), 2 * q
    holds = all(E.rank == 0 and bound % E.exponent == 0 for E in prob.candidates)
    claim = None
    if q % 4 == 0:
        exceed = [str(E) for E in prob.candidates if q % E.exponent]
        claim = ("exponent q for 4 | q is not decided here; candidates with larger exponent: "
                 + (", ".join(exceed) if exceed else "none"))
    return ExponentReport(q, prob, bound, holds, four_divides_claim=claim)


# D_Q examples -----------------------------------------------------------------------------


UNVERIFIED = "unverified — NotRepresentable"


@dataclass(frozen=True)
class DQReport:
    entries: tuple[tuple[str, str], ...]

    def __getitem__(self, key: str) -> str:
        return dict(self.entries)[key]

    def to_json(self) -> dict:
        return dict(self.entries)


def dq_examples() -> DQReport:
    out = []
    kk_dq = uct_kk(dq(), dq(), degrees=(0,))
    out.append(("KK_0(DQ,DQ)", str(kk_dq[0])))
    kk_pt = uct_kk(dq(), point("complex"), degrees=(0,))
    kk_pt_q = module_bifunctor("Tensor", kk_pt[0], ExtModule.rationals())
    out.append(("KK_0(DQ,point)", str(kk_pt[0])))
    out.append(("KK_0(DQ,point) (x) Q", str(_norm(kk_pt_q))))
    out.append(("Q/Z (x) Q", str(_norm(module_bifunctor("Tensor", ExtModule.q_mod_z(), ExtModule.rationals())))))
    out.append(("Tor(Q/Z, Q)", str(_norm(module_bifunctor("Tor", ExtModule.q_mod_z(), ExtModule.rationals())))))
    try:
        val = uct_kk(dqz(), dqz(), degrees=(0,))[0]
        out.append(("KK_0(DQZ,DQZ;Q) != 0", f"computed {val}"))
    except NotRepresentable:
        out.append(("KK_0(DQZ,DQZ;Q) != 0", UNVERIFIED))
    return DQReport(tuple(out))


def theta_coefficient_map(q: int, p: int) -> GroupHom:
    """``K_0(point; Z/q) -> K_0(point; Z/p)`` for ``q | p``: ``1 -> p/q``."""
    if p % q:
        raise ValueError("need q | p")
    Z = FgAbGroup.free(1)
    return induced_on_cokernels(GroupHom.multiplication(Z, p // q), q, p)


__all__ = [
    "DQReport",
    "ExponentReport",
    "KKOResult",
    "KTheoryObject",
    "UCTResult",
    "UNVERIFIED",
    "coefficient_object",
    "cq",
    "dq",
    "dq_examples",
    "dqz",
    "fixture",
    "kko_cq_cq_bound",
    "kko_cq_r",
    "point",
    "theta_coefficient_map",
    "uct_kk",
]
