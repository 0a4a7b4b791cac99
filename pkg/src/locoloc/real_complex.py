"""The real/complex long exact sequence and its splitting away from 2.

An :class:`RCPair` carries a real theory (period 8), a complex one (period 2)
and the three structure maps

    chi: KO_(n-1) -> KO_n,   c: KO_n -> K_n,   delta: K_n -> KO_(n-2),

as explicit matrices.  Nothing is derived from operator theory; the checks
are about the exactness pattern and what happens once 2 is invertible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .coefrings import ExtModule, PrimeSet, as_ext, ext_sum, localize_group
from .fgab import FgAbGroup, GroupHom
from .graded import (
    ExactSequenceReport,
    GradedGroup,
    _norm,
    finite_coefficients,
    localize_theory,
    sequence_report,
    torsion_theory,
)
from .kk import point

SEQUENCE_PERIOD = 8


def _check_hom(f: GroupHom, dom, cod, what: str) -> None:
    if f.domain != dom or f.codomain != cod:
        raise ValueError(f"{what}: expected {dom} -> {cod}, got {f.domain} -> {f.codomain}")


@dataclass(frozen=True)
class RCPair:
    """``chi[n]: KO_(n-1) -> KO_n``, ``c[n]: KO_n -> K_n``, ``delta[n]: K_n -> KO_(n-2)``."""

    real_theory: GradedGroup
    complex_theory: GradedGroup
    chi: tuple[GroupHom, ...]
    c: tuple[GroupHom, ...]
    delta: tuple[GroupHom, ...]
    name: str = "custom"

    def __post_init__(self):
        KO, K = self.real_theory, self.complex_theory
        if KO.period != 8 or K.period != 2:
            raise ValueError("need a period-8 real theory and a period-2 complex theory")
        KO.require_fg()
        K.require_fg()
        for maps in (self.chi, self.c, self.delta):
            if len(maps) != SEQUENCE_PERIOD:
                raise ValueError("give one map per degree 0..7")
        for n in range(SEQUENCE_PERIOD):
            _check_hom(self.chi[n], KO[n - 1], KO[n], f"chi_{n}")
            _check_hom(self.c[n], KO[n], K[n], f"c_{n}")
            _check_hom(self.delta[n], K[n], KO[n - 2], f"delta_{n}")
            if not self.chi[n].scale(2).is_zero:
                raise ValueError(f"2 chi_{n} is not zero")

    @classmethod
    def zero(cls) -> "RCPair":
        KO, K = GradedGroup.zero(8), GradedGroup.zero(2)
        z = GroupHom.zero(FgAbGroup(), FgAbGroup())
        return cls(KO, K, (z,) * 8, (z,) * 8, (z,) * 8, "zero")

    @classmethod
    def from_json(cls, data: dict) -> "RCPair":
        """``{"real": "...", "complex": "...", "chi": {n: rows}, "c": ..., "delta": ...}``.

        Missing degrees default to zero maps; rows are matrices on canonical
        generators.
        """
        KO = GradedGroup.parse(data["real"])
        K = GradedGroup.parse(data["complex"])

        def maps(key, dom, cod):
            given = {int(k): v for k, v in data.get(key, {}).items()}
            out = []
            for n in range(SEQUENCE_PERIOD):
                A, B = dom(n), cod(n)
                out.append(GroupHom.from_rows(A, B, given[n]) if n in given else GroupHom.zero(A, B))
            return tuple(out)

        return cls(
            KO,
            K,
            maps("chi", lambda n: KO[n - 1], lambda n: KO[n]),
            maps("c", lambda n: KO[n], lambda n: K[n]),
            maps("delta", lambda n: K[n], lambda n: KO[n - 2]),
            data.get("name", "custom"),
        )

    def to_json(self) -> dict:
        def rows(maps):
            return {str(n): f.matrix.to_rows() for n, f in enumerate(maps) if not f.is_zero}

        return {
            "name": self.name,
            "real": str(self.real_theory),
            "complex": str(self.complex_theory),
            "chi": rows(self.chi),
            "c": rows(self.c),
            "delta": rows(self.delta),
        }

    def with_c(self, n: int, f: GroupHom) -> "RCPair":
        c = list(self.c)
        c[n] = f
        return RCPair(self.real_theory, self.complex_theory, self.chi, tuple(c), self.delta, self.name + "*")


def point_rc() -> RCPair:
    """Real and complex K-theory of a point with the standard maps.

    chi is multiplication by the generator of KO_1 (nonzero only on
    KO_0 -> KO_1 and KO_1 -> KO_2), c is 1 in degree 0 and 2 in degree 4,
    and delta is 2, onto, 1 in degrees 2, 4, 6.
    """
    KO = point("real").k_groups
    K = point("complex").k_groups

    def hom(dom, cod, k):
        return GroupHom.from_rows(dom, cod, [[k]]) if k else GroupHom.zero(dom, cod)

    chi = tuple(hom(KO[n - 1], KO[n], {1: 1, 2: 1}.get(n, 0)) for n in range(8))
    c = tuple(hom(KO[n], K[n], {0: 1, 4: 2}.get(n, 0)) for n in range(8))
    delta = tuple(hom(K[n], KO[n - 2], {2: 2, 4: 1, 6: 1}.get(n, 0)) for n in range(8))
    return RCPair(KO, K, chi, c, delta, "point-rc")


def rc_fixture(name: str) -> RCPair:
    if name == "point-rc":
        return point_rc()
    if name == "zero":
        return RCPair.zero()
    raise ValueError(f"unknown fixture {name!r}; expected point-rc or zero")


def eta_les_check(p: RCPair) -> ExactSequenceReport:
    """``KO_n -c-> K_n -delta-> KO_(n-2) -chi-> KO_(n-1) -c-> K_(n-1) -> ...``, 24 nodes."""
    labels, maps = [], []
    for n in range(SEQUENCE_PERIOD - 1, -1, -1):
        labels += [f"KO_{n}", f"K_{n}", f"KO_{(n - 2) % 8}"]
        maps += [p.c[n], p.delta[n], p.chi[(n - 1) % 8]]
    return sequence_report(labels, maps, cyclic=True)


# splitting --------------------------------------------------------------------------------


@dataclass(frozen=True)
class Coefficients:
    """``kind`` is ``localize`` (S^-1 Z), ``finite`` (Z/s) or ``torsion`` (S^-1 Z/Z)."""

    kind: str
    S: PrimeSet | None = None
    s: int | None = None

    def __post_init__(self):
        if self.kind == "finite":
            if self.s is None or self.s < 2:
                raise ValueError("finite coefficients need s >= 2")
            if self.s % 2 == 0:
                raise ValueError(f"Z/{self.s} coefficients are not allowed: s must be odd")
        elif self.kind == "localize":
            if self.S is None or 2 not in self.S:
                raise ValueError("localised coefficients need 2 in S")
        elif self.kind == "torsion":
            if self.S is None or 2 in self.S:
                raise ValueError("torsion coefficients need a set of odd primes")
        else:
            raise ValueError(f"unknown coefficient kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "Coefficients":
        """``Z[1/2]``, ``Z[1/6]``, ``Z/3`` or ``S^-1Z/Z:{3,5}``."""
        t = text.replace(" ", "")
        m = re.fullmatch(r"Z/(\d+)", t)
        if m:
            return cls("finite", s=int(m.group(1)))
        m = re.fullmatch(r"Z\[1/(\d+)\]", t)
        if m:
            return cls("localize", S=PrimeSet.generated_by(int(m.group(1))))
        m = re.fullmatch(r"S\^-1Z/Z:(.+)", t)
        if m:
            return cls("torsion", S=PrimeSet.parse(m.group(1)))
        raise ValueError(f"cannot read coefficients {text!r}; try Z[1/2], Z/3 or S^-1Z/Z:{{3}}")

    def __str__(self) -> str:
        if self.kind == "finite":
            return f"Z/{self.s}"
        if self.kind == "localize":
            return str(ExtModule.localised(self.S))
        from .literals import format_prime_set

        return "S^-1Z/Z:" + format_prime_set(self.S)

    def apply(self, F: GradedGroup) -> GradedGroup:
        if self.kind == "localize":
            return localize_theory(F, self.S)
        if self.kind == "finite":
            # 2 is invertible on Z/s for odd s, so the Hopf obstruction dies
            return finite_coefficients(F, self.s, "split").resolved()
        return torsion_theory(F, self.S)


@dataclass(frozen=True)
class SplittingReport:
    coefficients: str
    left: tuple
    right: tuple
    iso: tuple[bool, ...]
    two_chi_zero: bool
    delta_c_is_two: bool
    chi_dies: bool | None = None
    exponent_ok: bool | None = None

    @property
    def passed(self) -> bool:
        extra = [v for v in (self.chi_dies, self.exponent_ok) if v is not None]
        return all(self.iso) and self.two_chi_zero and self.delta_c_is_two and all(extra)

    def to_json(self) -> dict:
        out = {
            "coefficients": self.coefficients,
            "degrees": {
                str(n): {"left": str(a), "right": str(b), "iso": ok}
                for n, (a, b, ok) in enumerate(zip(self.left, self.right, self.iso))
            },
            "two_chi_zero": self.two_chi_zero,
            "delta_c_is_two": self.delta_c_is_two,
            "passed": self.passed,
            "naturality": "not certified",
        }
        if self.chi_dies is not None:
            out["chi_dies_after_inverting_2"] = self.chi_dies
        if self.exponent_ok is not None:
            out["exponent_divides_s"] = self.exponent_ok
        return out

    def __str__(self) -> str:
        lines = [f"coefficients {self.coefficients}"]
        for n, (a, b, ok) in enumerate(zip(self.left, self.right, self.iso)):
            lines.append(f"  n={n}  {str(a):<24} {str(b):<24} {'iso' if ok else 'DIFFER'}")
        lines.append(f"  2 chi = 0: {self.two_chi_zero}   delta c = 2: {self.delta_c_is_two}")
        return "\n".join(lines)


def _sum(a, b):
    return _norm(ext_sum(as_ext(a), as_ext(b)))


def delta_c_is_two(p: RCPair) -> bool:
    """``delta_n o c_(n-2)`` is 2 on ``KO_(n-2)``; K is 2-periodic so Bott is the identity on the table."""
    for n in range(SEQUENCE_PERIOD):
        f = p.delta[n] @ p.c[(n - 2) % 8]
        if f != GroupHom.multiplication(p.real_theory[n - 2], 2):
            return False
    return True


def splitting_check(p: RCPair, H: Coefficients | str) -> SplittingReport:
    """Compare ``K_n(;H)`` with ``KO_n(;H) + KO_(n-2)(;H)`` degree by degree.

    Only existence of an isomorphism per degree is tested; naturality is not.
    """
    if isinstance(H, str):
        H = Coefficients.parse(H)
    KO_H = H.apply(p.real_theory)
    K_H = H.apply(p.complex_theory)
    left, right, iso = [], [], []
    for n in range(SEQUENCE_PERIOD):
        a = _norm(as_ext(K_H[n]))
        b = _sum(KO_H[n], KO_H[n - 2])
        left.append(a)
        right.append(b)
        iso.append(a == b)
    two_chi = all(f.scale(2).is_zero for f in p.chi)
    chi_dies = exp_ok = None
    if H.kind == "localize":
        chi_dies = all(localize_group(f.image(), H.S).is_zero for f in p.chi)
    if H.kind == "finite":
        exp_ok = all(isinstance(v, FgAbGroup) and v.rank == 0 and H.s % max(v.exponent, 1) == 0
                     for v in left + right)
    return SplittingReport(str(H), tuple(left), tuple(right), tuple(iso), two_chi, delta_c_is_two(p),
                           chi_dies, exp_ok)


__all__ = [
    "Coefficients",
    "RCPair",
    "SplittingReport",
    "delta_c_is_two",
    "eta_les_check",
    "point_rc",
    "rc_fixture",
    "splitting_check",
]
