#!/usr/bin/env python3
"""Certified real arithmetic: enclosures that tighten on demand.

Every real multiplier is a *description* (surd, continued fraction,
decimal literal, Liouville-type series), and every query answers with a
dyadic enclosure guaranteed to contain the true value.  Floor and
fractional-part questions are answered only when the enclosure proves
them; otherwise precision doubles automatically.
"""

from fractions import Fraction

from beattysieve import eval_enclosure, floor_scaled, parse_real
from beattysieve.errors import PrecisionExhausted
from beattysieve.realnum import LiouvilleSeries, golden_ratio, sqrt2


def main() -> int:
    print("== enclosures from descriptions (20 bits) ==")
    for text in ("surd:(0+1*sqrt(2))/1", "cf:[1;2,2,2,2,2,2,2,2]",
                 "dec:1.41421356:8", "rat:665857/470832"):
        spec = parse_real(text)
        iv = eval_enclosure(spec, 20)
        print(f"  {text:28s} -> [{float(iv.lo):.10f}, {float(iv.hi):.10f}]  "
              f"width {float(iv.width):.3e}")

    print("\n== a stated-precision literal refuses to overreach ==")
    try:
        eval_enclosure(parse_real("dec:1.41421356:8"), 64)
    except PrecisionExhausted as exc:
        print(f"  64 bits from an 8-digit literal: {exc}")

    print("\n== sqrt(2) to 50 certified decimal places ==")
    iv = eval_enclosure(sqrt2(), 200)
    lo = iv.lo
    digits = lo.numerator * 10**50 // lo.denominator
    print(f"  1.{str(digits)[1:51]}")

    print("\n== certified floors near hard cases ==")
    # phi * F_n creeps toward an integer along the Fibonacci numbers, so
    # each floor needs a tight enclosure before it can be pronounced.
    phi = golden_ratio()
    for n in (1, 2, 5, 13, 34, 89, 233, 10946):
        fl = floor_scaled(phi, n)
        print(f"  floor(phi * {n:5d}) = {fl.value:5d}   "
              f"proved at {fl.bits_used} bits")

    print("\n== a Liouville-type series forces real escalation ==")
    liou = LiouvilleSeries(2, "poly", Fraction(2), c1=2)
    n = 4083  # a denominator right at one of the series' huge quotients
    fl = floor_scaled(liou, n)
    print(f"  floor(alpha * {n}) = {fl.value} proved at {fl.bits_used} bits")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
