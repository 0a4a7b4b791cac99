"""Command line interface.

Exit status: 0 on success, 1 when a check fails or a value cannot be
decided (not exact, NotRepresentable, bound exceeded), 2 on bad usage or
unparsable input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .checks import DEFAULT_SEED, DEFAULT_TRIALS, CheckConfig, run_all
from .coefrings import NotRepresentable, PrimeSet, localize_group, module_bifunctor
from .extensions import BoundExceeded
from .fgab import FgAbGroup, bifunctor
from .graded import (
    GradedGroup,
    Undetermined,
    assemble_loc_coloc_les,
    coefficient_les,
    finite_coefficients,
    localize_theory,
    torsion_theory,
)
from .kk import coefficient_object, dq_examples, fixture, kko_cq_cq_bound, kko_cq_r, uct_kk
from .literals import ParseError, format_graded, parse_any, parse_complex, parse_graded, parse_prime_set, parse_value
from .real_complex import RCPair, eta_les_check, rc_fixture, splitting_check
from .toy import (
    ChainMap,
    SearchBoundExceeded,
    cone,
    cone_les,
    homology,
    octahedron_check,
    s_equivalence_test,
    s_finite_test,
    theta_map,
)

UNDECIDED = (NotRepresentable, BoundExceeded, Undetermined, SearchBoundExceeded)


class Report:
    """Collects a JSON payload and its text rendering."""

    def __init__(self, payload, text: str, ok: bool = True):
        self.payload = payload
        self.text = text
        self.ok = ok


def _group(text: str):
    return parse_value(text)


def _load_json(text: str):
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return json.load(fh)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(text, exc.pos, ["a JSON object or @file"]) from None


# subcommands ---------------------------------------------------------------------------------


def cmd_group(a) -> Report:
    if a.op == "normalize":
        v = parse_any(a.args[0]) if len(a.args) == 1 else None
        if v is None:
            raise ParseError(" ".join(a.args), 0, ["exactly one literal"])
        if isinstance(v, PrimeSet):
            from .literals import format_prime_set

            s = format_prime_set(v)
        elif isinstance(v, GradedGroup):
            s = format_graded(v)
        elif hasattr(v, "to_json") and not isinstance(v, (FgAbGroup,)):
            s = json.dumps(v.to_json())
        else:
            s = str(v)
        payload = {"input": a.args[0], "normalized": s}
        if isinstance(v, FgAbGroup):
            payload.update(rank=v.rank, invariant_factors=list(v.invariant_factors))
        return Report(payload, s)
    if len(a.args) != 2:
        raise ParseError(" ".join(a.args), 0, ["two group literals"])
    A, B = _group(a.args[0]), _group(a.args[1])
    kind = {"hom": "Hom", "ext": "Ext", "tensor": "Tensor", "tor": "Tor"}[a.op]
    if isinstance(A, FgAbGroup) and isinstance(B, FgAbGroup):
        v = bifunctor(kind, A, B)
    else:
        v = module_bifunctor(kind, A, B)
    s = f"{kind}({A}, {B}) = {v}"
    return Report({"op": kind, "A": str(A), "B": str(B), "value": str(v)}, s)


def cmd_localize(a) -> Report:
    S = parse_prime_set(a.S)
    v = parse_any(a.group)
    if isinstance(v, GradedGroup):
        L = localize_theory(v, S)
        return Report({"S": str(a.S), "value": format_graded(L)}, format_graded(L))
    if not isinstance(v, FgAbGroup):
        raise ParseError(a.group, 0, ["a finitely generated group or graded group"])
    L = localize_group(v, S)
    return Report({"group": str(v), "S": a.S, "value": str(L)}, str(L))


def _degree_lines(F: GradedGroup) -> str:
    return "\n".join(f"degree {n}: {F[n]}" for n in sorted(F.entries))


def cmd_coeff(a) -> Report:
    F = parse_graded(a.theory)
    chosen = [x is not None for x in (a.q, a.torsion, a.localized)]
    if sum(chosen) != 1:
        raise ParseError(a.theory, 0, ["exactly one of --q, --torsion, --localized"])
    if a.q is not None:
        ext = finite_coefficients(F, a.q, a.policy, a.max_order)
        lines = []
        for n in ext.degrees():
            lines.append(f"degree {n}: {ext[n]}" + ("   (ambiguous)" if ext[n].is_ambiguous else ""))
        return Report({"q": a.q, "policy": a.policy, **ext.to_json()}, "\n".join(lines))
    if a.torsion is not None:
        T = torsion_theory(F, parse_prime_set(a.torsion))
        return Report({"torsion": a.torsion, **T.to_json(), "note": T.note}, _degree_lines(T) + f"\n({T.note})")
    L = localize_theory(F, parse_prime_set(a.localized))
    return Report({"localized": a.localized, **L.to_json()}, _degree_lines(L))


def _sequence(report) -> Report:
    return Report(report.to_json() | {"all_exact": report.all_exact}, str(report), report.all_exact)


def cmd_les(a) -> Report:
    if a.kind == "loc-coloc":
        return _sequence(assemble_loc_coloc_les(parse_graded(a.theory), parse_prime_set(a.S)))
    if a.kind == "coefficient":
        return _sequence(coefficient_les(parse_graded(a.theory), a.s, a.t, a.policy))
    return _sequence(octahedron_check(parse_complex(_load_json(a.complex)), a.s, a.t))


def cmd_toy(a) -> Report:
    if a.kind == "cone":
        f = ChainMap.from_json(_load_json(a.map))
        C = cone(f).cone
        H = homology(C)
        les = cone_les(f)
        payload = {"cone": C.to_json(), "homology": H.to_json(), "les_exact": les.all_exact}
        return Report(payload, f"cone: {C}\nhomology: {H}\nlong exact sequence exact: {les.all_exact}", les.all_exact)
    if a.kind == "sfinite":
        C = parse_complex(_load_json(a.complex))
        s = s_finite_test(C, parse_prime_set(a.S))
        text = f"S-finite, killed by s = {s}" if s is not None else "not S-finite"
        return Report({"s": s}, text)
    if a.kind == "sequiv":
        r = s_equivalence_test(ChainMap.from_json(_load_json(a.map)), parse_prime_set(a.S))
        text = (f"cone test: {r.cone_test} (s = {r.cone_s})\n"
                f"inverse search: {r.inverse_search} (s = {r.inverse_s})\nagree: {r.agree}")
        return Report(r.to_json(), text, r.agree)
    C = parse_complex(_load_json(a.complex))
    r = theta_map(C, a.q, a.p, a.r)
    payload = {"theta": r.theta.to_json(), "composite_check": r.composite_check}
    text = f"Theta_({a.p},{a.q}) on {C}"
    if a.r is not None:
        text += f"\nTheta_({a.p},{a.r}) Theta_({a.r},{a.q}) homotopic to Theta_({a.p},{a.q}): {r.composite_check}"
    return Report(payload, text, r.composite_check is not False)


def cmd_kk(a) -> Report:
    if a.kind == "uct":
        r = uct_kk(fixture(a.A), fixture(a.B))
        lines = [f"KK_{n}({r.source}, {r.target}) = {r[n]}   [{d['sub']} >-> . ->> {d['quot']}]"
                 for n, d in ((int(k), v) for k, v in r.to_json()["degrees"].items())]
        return Report(r.to_json(), "\n".join(lines) + f"\n({r.label})")
    if a.kind == "cq":
        if a.flavor == "complex":
            obj = coefficient_object(fixture("point-complex"), a.q)
            K = obj.k_groups
            return Report(obj.to_json(), f"K_0(C_{a.q}) = {K[0]}\nK_1(C_{a.q}) = {K[1]}")
        obj = coefficient_object(fixture("point-real"), a.q, a.max_order)
        kko = kko_cq_r(a.q)
        bound = kko_cq_cq_bound(a.q, a.max_order)
        lines = [f"KO_{n}(point; Z/{a.q}) = {obj.extensions[n]}" for n in range(8)]
        lines += [f"KKO_-1(C_{a.q}, R) = {kko.kko_minus1}", f"KKO_0(C_{a.q}, R) = {kko.kko_0}",
                  f"KKO_0(C_{a.q}, C_{a.q}) candidates: " + ", ".join(map(str, bound.candidates)),
                  f"exponent divides {bound.bound}: {bound.exponent_bound_holds} ({bound.conclusion})"]
        if bound.four_divides_claim:
            lines.append(bound.four_divides_claim)
        payload = {"coefficients": obj.to_json(), "kko": kko.to_json(), "exponent": bound.to_json()}
        return Report(payload, "\n".join(lines), kko.report.all_exact and bound.exponent_bound_holds)
    r = dq_examples()
    return Report(r.to_json(), "\n".join(f"{k} : {v}" for k, v in r.entries))


def _rc_pair(a) -> RCPair:
    if a.pair:
        return RCPair.from_json(_load_json(a.pair))
    return rc_fixture(a.fixture)


def cmd_rc(a) -> Report:
    p = _rc_pair(a)
    if a.kind == "les":
        return _sequence(eta_les_check(p))
    r = splitting_check(p, a.H)
    return Report(r.to_json(), str(r), r.passed)


def cmd_paper_check(a) -> Report:
    cfg = CheckConfig(seed=a.seed, trials=a.trials, max_order=a.max_order, parallel=a.parallel)
    t0 = time.perf_counter()
    progress = (lambda r: print(r.line(), file=sys.stderr, flush=True)) if a.output == "json" else None
    results = run_all(cfg, progress)
    elapsed = time.perf_counter() - t0
    ok = all(r.passed for r in results)
    c12 = ok and elapsed < 300
    lines = [r.line() for r in results]
    for r in results:
        for w in r.witnesses:
            lines.append(f"      witness: {w}")
    lines.append(f"[{'PASS' if c12 else 'FAIL'}] 12. paper-check aggregate: {sum(r.passed for r in results)}/11, "
                 f"limit 300s ({elapsed:.1f}s)")
    lines.append("")
    lines.append(_comparison_table(results))
    payload = {
        "seed": a.seed,
        "trials": a.trials,
        "criteria": [r.to_json() for r in results],
        "aggregate_passed": c12,
    }
    return Report(payload, "\n".join(lines), c12)


def _comparison_table(results) -> str:
    by = {r.number: r for r in results}
    rows = [("quantity", "computed", "expected")]

    def row(q, got, want):
        rows.append((q, got, want))

    for t in by[1].table:
        row(f"K_0(C_{t['q']}), K_1(C_{t['q']})", f"{t['K0']}, {t['K1']}", f"Z/{t['q']}, 0")
    for t in by[2].table:
        q = t["q"]
        row(f"KKO_-1(C_{q},R), KKO_0(C_{q},R)", f"{t['KKO_-1(Cq,R)']}, {t['KKO_0(Cq,R)']}",
            f"Z/{q}, " + ("Z/2" if q % 2 == 0 else "0"))
    for t in by[3].table:
        row(f"KKO_0(C_{t['q']},C_{t['q']}) candidates", "; ".join(t["candidates"]), f"exponent | {t['bound']}")
    for t in by[5].table:
        row(t["quantity"], t["value"], t["expected"])
    for t in by[10].table:
        row(f"K_n(;{t['H']}) n=0..3", ", ".join(t["left"][:4]), "KO_n + KO_(n-2): " + ", ".join(t["right"][:4]))
    w0 = max(len(r[0]) for r in rows) + 2
    w1 = max(len(r[1]) for r in rows) + 2
    return "\n".join(f"{a:<{w0}}{b:<{w1}}{c}".rstrip() for a, b, c in rows)


# parser --------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
    common.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    common.add_argument("--max-order", type=int, default=4096)
    common.add_argument("--parallel", action="store_true")

    p = argparse.ArgumentParser(prog="locoloc", description="Localisation, coefficients and exact sequences.",
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", parents=[common], help="normalise literals, Hom/Ext/Tensor/Tor")
    g.add_argument("op", choices=("normalize", "hom", "ext", "tensor", "tor"))
    g.add_argument("args", nargs="+")
    g.set_defaults(func=cmd_group)

    loc = sub.add_parser("localize", parents=[common], help="localise a group or graded group")
    loc.add_argument("--group", required=True)
    loc.add_argument("--S", required=True)
    loc.set_defaults(func=cmd_localize)

    c = sub.add_parser("coeff", parents=[common], help="finite, torsion or localised coefficients")
    c.add_argument("--theory", required=True)
    c.add_argument("--q", type=int)
    c.add_argument("--torsion")
    c.add_argument("--localized")
    c.add_argument("--policy", choices=("split", "enumerate"), default="enumerate")
    c.set_defaults(func=cmd_coeff)

    les = sub.add_parser("les", parents=[common], help="assemble and check a long exact sequence")
    les.add_argument("kind", choices=("loc-coloc", "coefficient", "octahedron"))
    les.add_argument("--theory")
    les.add_argument("--S")
    les.add_argument("--complex")
    les.add_argument("--s", type=int)
    les.add_argument("--t", type=int)
    les.add_argument("--policy", choices=("split", "enumerate"), default="split")
    les.set_defaults(func=cmd_les)

    t = sub.add_parser("toy", parents=[common], help="computations with chain complexes")
    t.add_argument("kind", choices=("cone", "sfinite", "sequiv", "theta"))
    t.add_argument("--map", help="chain map JSON or @file")
    t.add_argument("--complex", help="complex JSON or @file")
    t.add_argument("--S")
    t.add_argument("--q", type=int)
    t.add_argument("--p", type=int)
    t.add_argument("--r", type=int)
    t.set_defaults(func=cmd_toy)

    k = sub.add_parser("kk", parents=[common], help="UCT computations")
    k.add_argument("kind", choices=("uct", "cq", "dq"))
    k.add_argument("--A", default="point-complex")
    k.add_argument("--B", default="point-complex")
    k.add_argument("--q", type=int)
    k.add_argument("--flavor", choices=("complex", "real"), default="complex")
    k.set_defaults(func=cmd_kk)

    r = sub.add_parser("rc", parents=[common], help="real/complex sequence and splitting")
    r.add_argument("kind", choices=("les", "split"))
    r.add_argument("--fixture", default="point-rc")
    r.add_argument("--pair", help="RCPair JSON or @file")
    r.add_argument("--H", default="Z[1/2]")
    r.set_defaults(func=cmd_rc)

    pc = sub.add_parser("paper-check", parents=[common], help="run the full reproduction suite")
    pc.set_defaults(func=cmd_paper_check)
    return p


REQUIRED = {
    ("les", "loc-coloc"): ("theory", "S"),
    ("les", "coefficient"): ("theory", "s", "t"),
    ("les", "octahedron"): ("complex", "s", "t"),
    ("toy", "cone"): ("map",),
    ("toy", "sfinite"): ("complex", "S"),
    ("toy", "sequiv"): ("map", "S"),
    ("toy", "theta"): ("complex", "q", "p"),
    ("kk", "cq"): ("q",),
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    missing = [f"--{x}" for x in REQUIRED.get((a.command, getattr(a, "kind", None)), ()) if getattr(a, x) is None]
    if missing:
        print(f"error: {a.command} {a.kind} needs {', '.join(missing)}", file=sys.stderr)
        return 2
    try:
        rep = a.func(a)
    except UNDECIDED as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (ParseError, ValueError, KeyError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if a.output == "json":
        print(json.dumps(rep.payload, indent=2))
    else:
        print(rep.text)
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
