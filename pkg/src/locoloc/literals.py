"""Text literals for groups, prime sets, modules, graded groups and complexes.

Grammars::

    group      :=  term ('+' term)*          e.g.  Z^2 + Z/4 + Z/3
    term       :=  '0' | 'Z' | 'Z^r' | 'Z/n' | '(Z/n)^k'
                 | 'Q' | 'Q^r' | 'Z[1/N]' | 'Z[1/N]^r' | 'Z[1/primeset]'
                 | 'Q/Z' | '(Q/Z)^m' | 'Prufer(p)' | 'Prufer(primeset)' ['^m']
    module     :=  group [' over ' ring]
    primeset   :=  '{}' | '{2,3}' | 'all' | 'odd' | 'all\\{2,7}'
    graded     :=  'period=2: [' group, ... ']' | 'bounded: {' deg ':' group, ... '}'

Parsing normalises to canonical form, so ``Z/4 + Z/3`` prints as ``Z/12``.
"""

from __future__ import annotations

import json
import math
import re
from typing import Any


class ParseError(ValueError):
    def __init__(self, text: str, position: int, expected: list[str]):
        self.text = text
        self.position = position
        self.expected = expected
        shown = text[:position] + "<<" + text[position:] if position <= len(text) else text
        super().__init__(
            f"cannot parse {text!r} at position {position} ({shown!r}); expected one of: "
            + ", ".join(expected)
        )


# prime sets --------------------------------------------------------------------------------


def parse_prime_set(text: str):
    from .coefrings import PrimeSet

    s = text.strip()
    if s == "all":
        return PrimeSet.all()
    if s == "odd":
        return PrimeSet.odd()
    m = re.fullmatch(r"all\s*\\\s*\{([^}]*)\}", s)
    if m:
        return PrimeSet.excluding(*_prime_list(text, m.group(1), text.index("{") + 1))
    m = re.fullmatch(r"\{([^}]*)\}", s)
    if m:
        return PrimeSet.of(*_prime_list(text, m.group(1), text.index("{") + 1))
    raise ParseError(text, 0, ["{}", "{p,...}", "all", "odd", "all\\{p,...}"])


def _prime_list(text: str, body: str, offset: int) -> list[int]:
    from sympy import isprime

    body = body.strip()
    if not body:
        return []
    out = []
    for tok in body.split(","):
        tok = tok.strip()
        if not tok.isdigit() or not isprime(int(tok)):
            raise ParseError(text, offset + body.find(tok), ["a prime number"])
        out.append(int(tok))
    return out


def format_prime_set(S) -> str:
    ps = ",".join(map(str, S.primes))
    if not S.cofinite:
        return "{" + ps + "}"
    if not S.primes:
        return "all"
    if S.primes == (2,):
        return "odd"
    return "all\\{" + ps + "}"


# groups and modules -------------------------------------------------------------------------

_TERM = re.compile(
    r"""
    (?P<zero>0)(?![\d/])
  | \((?P<cyc>Z/\d+)\)\^(?P<cycexp>\d+)
  | \(Q/Z\)\^(?P<qzexp>\d+)
  | (?P<qz>Q/Z)
  | Z/(?P<n>-?\d+)
  | Z\[1/(?P<ring>[^\]]+)\](?:\^(?P<ringexp>\d+))?
  | Q(?:\^(?P<qexp>\d+))?
  | Prufer\((?P<pru>[^()]*)\)(?:\^(?P<pruexp>\d+))?
  | Z(?:\^(?P<zexp>\d+))?
    """,
    re.VERBOSE,
)

_TERM_EXPECTED = ["0", "Z", "Z^r", "Z/n", "(Z/n)^k", "Q", "Z[1/N]", "Q/Z", "Prufer(p)"]


def _ring_from_text(text: str, body: str, pos: int):
    from .coefrings import PrimeSet

    body = body.strip()
    if body.isdigit():
        n = int(body)
        if n < 2:
            raise ParseError(text, pos, ["an integer >= 2 in Z[1/N]"])
        return PrimeSet.generated_by(n)
    return parse_prime_set(body)


def _parse_terms(text: str) -> list[tuple]:
    """List of atoms with multiplicities: ('Z', r), ('Zn', n, k), ('Loc', S, r), ('Pru', S, m)."""
    from .coefrings import PrimeSet

    s = text
    i = 0
    n = len(s)
    atoms: list[tuple] = []

    def skip_ws(j):
        while j < n and s[j].isspace():
            j += 1
        return j

    i = skip_ws(i)
    if i == n:
        raise ParseError(text, i, _TERM_EXPECTED)
    while True:
        m = _TERM.match(s, i)
        if not m:
            raise ParseError(text, i, _TERM_EXPECTED)
        g = m.groupdict()
        if g["zero"]:
            pass
        elif g["cyc"]:
            order = int(g["cyc"][2:])
            if order < 1:
                raise ParseError(text, i + 3, ["a positive integer after Z/"])
            atoms.append(("Zn", order, int(g["cycexp"])))
        elif g["qzexp"]:
            atoms.append(("Pru", PrimeSet.all(), int(g["qzexp"])))
        elif g["qz"]:
            atoms.append(("Pru", PrimeSet.all(), 1))
        elif g["n"] is not None:
            order = int(g["n"])
            if order < 1:
                raise ParseError(text, i + 2, ["a positive integer after Z/"])
            atoms.append(("Zn", order, 1))
        elif g["ring"] is not None:
            S = _ring_from_text(text, g["ring"], m.start("ring"))
            atoms.append(("Loc", S, int(g["ringexp"] or 1)))
        elif m.group(0).startswith("Q"):
            atoms.append(("Loc", PrimeSet.all(), int(g["qexp"] or 1)))
        elif g["pru"] is not None:
            body = g["pru"].strip()
            S = PrimeSet.of(int(body)) if body.isdigit() else parse_prime_set(body)
            atoms.append(("Pru", S, int(g["pruexp"] or 1)))
        else:
            atoms.append(("Z", int(g["zexp"] or 1)))
        i = skip_ws(m.end())
        if i == n:
            return atoms
        if s[i] != "+":
            raise ParseError(text, i, ["+", "end of input"])
        i = skip_ws(i + 1)


def parse_fg_group(text: str):
    from .fgab import FgAbGroup

    atoms = _parse_terms(text)
    rank, orders = 0, []
    for a in atoms:
        if a[0] == "Z":
            rank += a[1]
        elif a[0] == "Zn":
            orders.extend([a[1]] * a[2])
        else:
            raise ParseError(text, 0, ["a finitely generated group (Z, Z^r, Z/n)"])
    return FgAbGroup.from_cyclics(rank, orders)


def parse_ext_module(text: str):
    from .coefrings import ExtModule, PrimeSet, ext_sum
    from .fgab import FgAbGroup

    base = None
    m = re.fullmatch(r"(.*?)\s+over\s+(.+)", text.strip())
    body = text
    if m:
        body = m.group(1)
        ring = m.group(2).strip()
        if ring == "Z":
            base = PrimeSet.empty()
        elif ring == "Q":
            base = PrimeSet.all()
        else:
            rm = re.fullmatch(r"Z\[1/([^\]]+)\]", ring)
            if not rm:
                raise ParseError(text, text.index(ring), ["Z", "Q", "Z[1/N]"])
            base = _ring_from_text(text, rm.group(1), text.index(ring) + 4)
    parts = []
    for a in _parse_terms(body):
        if a[0] == "Z":
            parts.append(ExtModule.from_group(FgAbGroup.free(a[1])))
        elif a[0] == "Zn":
            parts.append(ExtModule.from_group(FgAbGroup.from_cyclics(0, [a[1]] * a[2])))
        elif a[0] == "Loc":
            parts.append(ExtModule(a[1], a[2]))
        else:
            parts.append(ExtModule.pruefer_group(a[1], a[2]))
    M = ext_sum(*parts) if parts else ExtModule()
    if base is not None:
        M = ExtModule(base, M.free_rank, M.finite_torsion, M.pruefer)
    return M


def parse_value(text: str):
    """A group literal: FgAbGroup when finitely generated over Z, else ExtModule."""
    M = parse_ext_module(text)
    if M.base_ring.is_empty and not M.pruefer:
        return M.to_group()
    return M


def format_fg_group(G) -> str:
    terms = []
    if G.rank == 1:
        terms.append("Z")
    elif G.rank > 1:
        terms.append(f"Z^{G.rank}")
    terms.extend(f"Z/{f}" for f in G.invariant_factors)
    return " + ".join(terms) if terms else "0"


def format_ring(S) -> str:
    if S.is_empty:
        return "Z"
    if S.is_all:
        return "Q"
    if S.is_finite:
        return f"Z[1/{math.prod(S.primes)}]"
    return f"Z[1/{format_prime_set(S)}]"


def format_ext_module(M) -> str:
    terms = []
    if M.free_rank:
        ring = format_ring(M.base_ring)
        terms.append(ring if M.free_rank == 1 else f"{ring}^{M.free_rank}")
    terms.extend(f"Z/{f}" for f in M.finite_torsion.invariant_factors)
    for S, mult in M.pruefer:
        if S.is_all:
            base = "Q/Z"
            terms.append(base if mult == 1 else f"(Q/Z)^{mult}")
            continue
        if S.is_finite and len(S.primes) == 1:
            base = f"Prufer({S.primes[0]})"
        else:
            base = f"Prufer({format_prime_set(S)})"
        terms.append(base if mult == 1 else f"{base}^{mult}")
    out = " + ".join(terms) if terms else "0"
    if not M.free_rank and not M.base_ring.is_empty:
        out += f" over {format_ring(M.base_ring)}"
    return out


def format_value(v) -> str:
    return str(v)


# graded groups ------------------------------------------------------------------------------


def _split_top(body: str, sep: str = ",") -> list[str]:
    out, depth, cur = [], 0, []
    for ch in body:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if "".join(cur).strip():
        out.append("".join(cur))
    return out


def parse_graded(text: str):
    from .graded import GradedGroup

    s = text.strip()
    m = re.fullmatch(r"period\s*=\s*(\d+)\s*:\s*\[(.*)\]", s, re.S)
    if m:
        period = int(m.group(1))
        if period not in (2, 8):
            raise ParseError(text, text.index(m.group(1)), ["period=2", "period=8"])
        items = [parse_value(x) for x in _split_top(m.group(2))]
        if len(items) != period:
            raise ParseError(text, text.index("["), [f"exactly {period} entries"])
        return GradedGroup.periodic(items)
    m = re.fullmatch(r"bounded\s*:\s*\{(.*)\}", s, re.S)
    if m:
        entries = {}
        for item in _split_top(m.group(1)):
            km = re.fullmatch(r"\s*(-?\d+)\s*:\s*(.+)", item, re.S)
            if not km:
                raise ParseError(text, text.index(item.strip()), ["degree: group"])
            entries[int(km.group(1))] = parse_value(km.group(2))
        return GradedGroup.bounded(entries)
    raise ParseError(text, 0, ["period=2: [...]", "period=8: [...]", "bounded: {...}"])


def format_graded(F) -> str:
    if F.period:
        return f"period={F.period}: [" + ", ".join(str(F[n]) for n in range(F.period)) + "]"
    return "bounded: {" + ", ".join(f"{n}: {g}" for n, g in sorted(F.entries.items())) + "}"


# complexes ----------------------------------------------------------------------------------


def parse_complex(text: str | dict[str, Any]):
    """JSON ``{lo, hi, ranks, differentials}``; ``differentials[i]`` is d_{lo+i+1}."""
    from .toy import FreeComplex

    if isinstance(text, str):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(text, exc.pos, ["a JSON object {lo, hi, ranks, differentials}"]) from None
    else:
        data = text
    try:
        return FreeComplex.from_json(data)
    except (KeyError, TypeError) as exc:
        raise ParseError(str(text), 0, [f"complex field {exc}"]) from None


def parse_any(text: str):
    """Recognise any literal: complex JSON, graded group, prime set or group."""
    s = text.strip()
    if not s:
        raise ParseError(text, 0, ["a nonempty literal"])
    if s.startswith("{") and ('"lo"' in s or "'lo'" in s):
        return parse_complex(s)
    if s.startswith("period") or s.startswith("bounded"):
        return parse_graded(s)
    if s.startswith("{") or s in ("all", "odd") or s.startswith("all\\"):
        return parse_prime_set(s)
    return parse_value(s)
