"""Print the headline computations one after another."""

from locoloc.coefrings import PrimeSet
from locoloc.graded import GradedGroup, assemble_loc_coloc_les, finite_coefficients
from locoloc.kk import cq, dq_examples, kko_cq_cq_bound, kko_cq_r, uct_kk
from locoloc.real_complex import eta_les_check, point_rc, splitting_check
from locoloc.toy import ChainMap, FreeComplex, homology_map, s_equivalence_test, theta_map


def section(title):
    print()
    print(title)
    print("-" * len(title))


def main():
    section("K-theory with Z/q coefficients")
    K = GradedGroup.parse("period=2: [Z, 0]")
    for q in (2, 3, 12):
        ext = finite_coefficients(K, q)
        print(f"q={q}: {ext.resolved()}")

    section("loc/coloc sequence of the point, S = all primes")
    print(assemble_loc_coloc_les(K, PrimeSet.all()))

    section("KK_0(C_q, C_q) by the UCT")
    for q in (2, 6, 10):
        print(f"q={q}: {uct_kk(cq(q), cq(q))[0]}")

    section("real case")
    for q in (2, 3, 4, 6):
        r = kko_cq_r(q)
        b = kko_cq_cq_bound(q)
        cands = ", ".join(str(E) for E in b.candidates)
        print(f"q={q}: KKO_-1(Cq,R)={r.kko_minus1}  KKO_0(Cq,R)={r.kko_0}  KKO_0(Cq,Cq) in {{{cands}}}")
        if b.four_divides_claim:
            print("      " + b.four_divides_claim)

    section("rational examples")
    for k, v in dq_examples().entries:
        print(f"{k:<28} {v}")

    section("toy category")
    Z = FreeComplex.concentrated()
    r = s_equivalence_test(ChainMap.multiplication(Z, 6), PrimeSet.of(2, 3))
    print("x6 on Z with S={2,3}:", r.to_json())
    h = homology_map(theta_map(Z, 2, 4).theta, 0)
    print("Theta: Z/2 -> Z/4 on H_0 is", h.matrix.to_rows())

    section("real/complex sequence")
    p = point_rc()
    print("24-node sequence exact:", eta_les_check(p).all_exact)
    print(splitting_check(p, "Z[1/2]"))


if __name__ == "__main__":
    main()
