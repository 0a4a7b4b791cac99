"""Short exact sequences ``sub >-> E ->> quot`` with an unknown middle term.

``resolve_extension`` either takes the split extension or enumerates every
isomorphism class of finite ``E`` that fits, each with an explicit pair of
homomorphisms certifying the sequence.  Enumeration works one prime at a
time, since a finite abelian extension splits into its primary parts.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .fgab import (
    FgAbGroup,
    GroupHom,
    Presentation,
    _partitions,
    direct_sum,
    factorize,
    is_exact_at,
    primary_part,
    sum_injection,
    sum_projection,
    transport,
)
from .linalg import IntMatrix, block_diag

DEFAULT_MAX_ORDER = 4096
SEARCH_BUDGET = 200_000
POLICIES = ("split", "enumerate")


class BoundExceeded(Exception):
    """An enumeration would exceed its configured size bound."""


@dataclass(frozen=True)
class ExtensionProblem:
    sub: FgAbGroup
    quot: FgAbGroup
    candidates: tuple[FgAbGroup, ...] = ()
    certificates: tuple[tuple[GroupHom, GroupHom], ...] = ()
    resolved: FgAbGroup | None = None
    policy: str | None = None

    def __post_init__(self):
        if len(self.candidates) != len(self.certificates):
            raise ValueError("every candidate needs a certificate")
        if len(set(self.candidates)) != len(self.candidates):
            raise ValueError("duplicate candidates")

    @property
    def split(self) -> FgAbGroup:
        return direct_sum(self.sub, self.quot)

    @property
    def is_ambiguous(self) -> bool:
        return self.resolved is None and len(self.candidates) > 1

    def verify(self) -> bool:
        """Re-check every certificate: ``i`` injective, ``pi`` surjective, im i = ker pi."""
        for E, (i, pi) in zip(self.candidates, self.certificates):
            if i.domain != self.sub or i.codomain != E or pi.domain != E or pi.codomain != self.quot:
                return False
            if not (i.is_injective and pi.is_surjective and is_exact_at(i, pi)):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "sub": str(self.sub),
            "quot": str(self.quot),
            "candidates": [str(E) for E in self.candidates],
            "resolved": None if self.resolved is None else str(self.resolved),
            "policy": self.policy,
        }

    def __str__(self) -> str:
        if self.resolved is not None:
            return str(self.resolved)
        return "{" + ", ".join(map(str, self.candidates)) + "}"


def split_certificate(sub: FgAbGroup, quot: FgAbGroup) -> tuple[GroupHom, GroupHom]:
    return sum_injection([sub, quot], 0), sum_projection([sub, quot], 1)


def resolve_extension(
    p: ExtensionProblem, policy: str = "enumerate", max_order: int = DEFAULT_MAX_ORDER
) -> ExtensionProblem:
    if policy == "split":
        E = p.split
        return ExtensionProblem(p.sub, p.quot, (E,), (split_certificate(p.sub, p.quot),), E, "split")
    if policy != "enumerate":
        raise ValueError(f"unknown policy {policy!r}; expected one of {POLICIES}")
    cands = enumerate_extensions(p.sub, p.quot, max_order)
    groups = tuple(E for E, _ in cands)
    certs = tuple(c for _, c in cands)
    resolved = groups[0] if len(groups) == 1 else None
    return ExtensionProblem(p.sub, p.quot, groups, certs, resolved, "enumerate")


def enumerate_extensions(
    sub: FgAbGroup, quot: FgAbGroup, max_order: int = DEFAULT_MAX_ORDER
) -> list[tuple[FgAbGroup, tuple[GroupHom, GroupHom]]]:
    """All middle groups of extensions of ``quot`` by ``sub``, with certificates.

    The split extension comes first; then groups with fewer invariant factors.
    """
    if sub.rank or quot.rank:
        raise ValueError("enumeration needs finite sub and quotient")
    n = sub.order * quot.order
    if n > max_order:
        raise BoundExceeded(f"middle group order {n} exceeds the bound {max_order}")
    primes = sorted({p for p, _ in factorize(n)})
    per_prime = []
    for p in primes:
        found = _prime_candidates(primary_part(sub, p), primary_part(quot, p))
        per_prime.append([(p, E, cols) for E, cols in found])
    subs = [primary_part(sub, p) for p in primes]
    out = []
    for combo in product(*per_prime):
        parts = [E for _, E, _ in combo]
        E = direct_sum(*parts)
        blocks = [IntMatrix.from_columns(cols, Ep.ngens) if cols else IntMatrix.zeros(Ep.ngens, 0)
                  for _, Ep, cols in combo]
        i = transport(block_diag(blocks), subs, parts, sub, E)
        pi = i.cokernel_projection()
        if pi.codomain != quot:
            raise AssertionError("cokernel of the assembled embedding is not the quotient")
        out.append((E, (i, pi)))
    split = direct_sum(sub, quot)
    out.sort(key=lambda t: (t[0] != split, -len(t[0].invariant_factors), t[0].invariant_factors))
    return out


def _exponents(G: FgAbGroup, p: int) -> tuple[int, ...]:
    """Partition (descending exponents) of a p-group."""
    out = []
    for f in G.invariant_factors:
        e = 0
        while f % p == 0:
            f //= p
            e += 1
        out.append(e)
    return tuple(sorted(out, reverse=True))


def _contains(lam, mu) -> bool:
    return len(mu) <= len(lam) and all(a >= b for a, b in zip(lam, mu))


@lru_cache(maxsize=4096)
def _prime_candidates(sub: FgAbGroup, quot: FgAbGroup) -> tuple:
    """p-primary middle groups with the images of sub's generators."""
    n = sub.order * quot.order
    if n == 1:
        return ((FgAbGroup(), ()),)
    (p, _), = factorize(n)
    mu, nu = _exponents(sub, p), _exponents(quot, p)
    a, b = sum(mu), sum(nu)
    top = (mu[0] if mu else 0) + (nu[0] if nu else 0)
    out = []
    for lam in _partitions(a + b):
        # necessary conditions before any search
        if not (_contains(lam, mu) and _contains(lam, nu)):
            continue
        if lam[0] > top or len(lam) > len(mu) + len(nu):
            continue
        E = FgAbGroup.from_cyclics(0, [p**k for k in lam])
        cols = _find_embedding(sub, E, quot, p)
        if cols is not None:
            out.append((E, cols))
    return tuple(out)


def _find_embedding(sub: FgAbGroup, E: FgAbGroup, quot: FgAbGroup, p: int):
    """Depth-first search for an injection ``sub -> E`` with cokernel ``quot``.

    Injectivity of a map out of a p-group is decided on the socle: the
    order-p elements ``p^(m-1) x_j`` must be independent in ``E[p]``.
    """
    orders = sub.invariant_factors
    if not orders:
        return [] if E == quot else None
    efs = E.invariant_factors
    by_order: dict[int, list] = {}
    for v in E.elements():
        by_order.setdefault(E.element_order(v), []).append(v)
    socle_scale = [f // p for f in efs]

    def socle(v, m):
        y = [(x * (m // p)) % f for x, f in zip(v, efs)]
        return [(yi // s) % p for yi, s in zip(y, socle_scale)]

    steps = 0
    chosen: list = []
    rows: list = []

    def dfs(j):
        nonlocal steps
        if j == len(orders):
            P = Presentation(E.ngens, [list(x) for x in chosen] + E.relation_matrix().columns())
            return P.group == quot
        for v in by_order.get(orders[j], ()):
            steps += 1
            if steps > SEARCH_BUDGET:
                raise BoundExceeded(f"embedding search for {sub} in {E} exceeded {SEARCH_BUDGET} steps")
            r = socle(v, orders[j])
            if _rank_mod_p(rows + [r], p) < j + 1:
                continue
            chosen.append(v)
            rows.append(r)
            if dfs(j + 1):
                return True
            chosen.pop()
            rows.pop()
        return False

    return [list(x) for x in chosen] if dfs(0) else None


def _rank_mod_p(rows, p) -> int:
    m = [list(r) for r in rows]
    rank, ncols = 0, len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p)
        m[rank] = [(x * inv) % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c] % p:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def exponent_divides(G: FgAbGroup, n: int) -> bool:
    return G.rank == 0 and n % G.exponent == 0


__all__ = [
    "BoundExceeded",
    "DEFAULT_MAX_ORDER",
    "ExtensionProblem",
    "POLICIES",
    "enumerate_extensions",
    "exponent_divides",
    "resolve_extension",
    "split_certificate",
]

