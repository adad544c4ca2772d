#!/usr/bin/env python3
"""Exponential sums against their textbook bounds, as executable checks.

Four classical estimates, each evaluated on real data:
  * the geometric-series bound for linear phases, certified exactly;
  * a van-der-Corput-shape bound for quadratic phases (ratio pinned);
  * the divisor-balanced bound for sums of min(N, 1/||nu*alpha||);
  * the Weyl inequality for degree-m monomial phases, both in its
    N^(1+eps)-flavoured and log-flavoured forms.
"""

from beattysieve import (
    linear_sum_exact,
    quadratic_bound,
    reciprocal_sum,
    weyl_bound_report,
)
from beattysieve.realnum import sqrt2, sqrt3


def main() -> int:
    a = sqrt2()

    print("== linear phases: |sum e(h*alpha*n)| <= 1/(2||h*alpha||) ==")
    for h in (1, 3, 17):
        chk = linear_sum_exact(a, h, 1000)
        print(f"  h={h:>2}  |S| = {chk.actual:9.4f}  cap = {chk.cap:9.4f}  "
              f"certified = {chk.certified}")

    print("\n== quadratic phases: squared sum against the shifted sum ==")
    for h, n in ((1, 200), (5, 1000)):
        rep = quadratic_bound(a, h, 1, n)
        print(f"  h={h} N={n:>4}  |S|^2/RHS = {rep.ratio_sq:.4f} "
              f"(must stay below 16)")

    print("\n== reciprocal distances: sum min(N, 1/||nu alpha||) ==")
    for k, n in ((100, 10), (1000, 100)):
        rep = reciprocal_sum(a, k, n)
        print(f"  K={k:>4} N={n:>3}  exact = {float(rep.exact_sum):12.4f}  "
              f"bound = {rep.lemma_bound:12.4f}  ratio = {rep.ratio:.4f}")

    print("\n== Weyl inequality for cubic phases, alpha = sqrt(3) ==")
    for n in (200, 1000, 5000):
        rep = weyl_bound_report(sqrt3(), 3, 1, n)
        print(f"  N={n:>5}  |S| = {rep.actual:9.3f}  "
              f"N^(1+eps) Delta^(1/(m^2-m)) = {rep.bound_little_o:10.3f}  "
              f"ratio = {rep.ratio:.4f}  (q = {rep.q})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
