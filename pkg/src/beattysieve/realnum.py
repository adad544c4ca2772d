"""Exact real numbers with certified dyadic enclosures.

Five immutable representations cover every constant the experiments need:
exact rationals, quadratic surds (a + b*sqrt(d))/c, finite continued
fractions, decimal literals of stated accuracy, and lacunary series of
Liouville type.  Every query either returns an answer together with a
dyadic interval certificate or raises; nothing is silently rounded.

The workhorse primitive is ``spec.bounds(prec)``: integers (lo, hi) with
lo <= value * 2**prec <= hi and hi - lo <= 2.  Floor and fractional-part
tests escalate ``prec`` geometrically (doubling from 64 + bit length of
the scale) until the bracket decides the question, up to a hard ceiling
(default 2**20 bits) after which PrecisionExhausted is raised with the
offending site attached.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

from .errors import InvalidSpec, PrecisionExhausted

DEFAULT_MAX_BITS = 1 << 20
MIN_ENCLOSURE_BITS = 8


def _iroot(n: int, k: int) -> int:
    """Floor of the k-th root of a nonnegative integer."""
    if n < 0 or k < 1:
        raise ValueError("iroot needs n >= 0, k >= 1")
    if k == 1 or n < 2:
        return n
    # Newton iteration seeded above the root; monotone descent to the floor.
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


# ---------------------------------------------------------------------------
# interval certificates


@dataclass(frozen=True)
class Interval:
    """Closed dyadic interval [lo, hi] certified to contain a real value.

    Endpoints are dyadic rationals; width obeys
    hi - lo <= 2**(1 - precision_bits) * max(1, |lo|).
    """

    lo: Fraction
    hi: Fraction
    precision_bits: int

    def __post_init__(self) -> None:
        for end in (self.lo, self.hi):
            d = end.denominator
            if d & (d - 1):
                raise InvalidSpec(f"interval endpoint {end} is not dyadic")
        if self.lo > self.hi:
            raise InvalidSpec("interval endpoints out of order")
        if self.precision_bits < 1:
            raise InvalidSpec("precision_bits must be >= 1")
        bound = Fraction(2) ** (1 - self.precision_bits) * max(1, abs(self.lo))
        if self.hi - self.lo > bound:
            raise InvalidSpec("interval wider than its stated precision")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, value) -> bool:
        return self.lo <= value <= self.hi


@dataclass(frozen=True)
class CertifiedFloor:
    """floor(alpha * scale) together with the enclosure that certified it."""

    value: int
    certificate: Interval
    scale: int
    bits_used: int

    def __post_init__(self) -> None:
        lo_f = self.certificate.lo.numerator // self.certificate.lo.denominator
        hi_f = self.certificate.hi.numerator // self.certificate.hi.denominator
        if not (lo_f == hi_f == self.value):
            raise InvalidSpec("certificate does not pin the floor")


# ---------------------------------------------------------------------------
# real-number specs


class RealSpec:
    """Base class for exact real-number descriptions."""

    __slots__ = ()

    def bounds(self, prec: int) -> tuple[int, int]:
        """Integers (lo, hi), lo <= value*2**prec <= hi, hi - lo <= 2."""
        raise NotImplementedError

    def exact(self) -> Optional[Fraction]:
        """The exact rational value, when the variant has one."""
        return None

    def irrational(self) -> bool:
        """True when irrationality is guaranteed by the representation."""
        return False

    def max_prec(self) -> Optional[int]:
        """Finest usable prec, or None when unbounded."""
        return None

    def text(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:  # pragma: no cover - convenience
        return self.text()


@dataclass(frozen=True)
class Rational(RealSpec):
    p: int
    q: int

    def __post_init__(self) -> None:
        if not (isinstance(self.p, int) and isinstance(self.q, int)):
            raise InvalidSpec("rational parts must be integers")
        if self.q < 1:
            raise InvalidSpec("rational denominator must be positive")

    def bounds(self, prec: int) -> tuple[int, int]:
        num = self.p << prec
        lo = num // self.q
        return (lo, lo) if lo * self.q == num else (lo, lo + 1)

    def exact(self) -> Fraction:
        return Fraction(self.p, self.q)

    def text(self) -> str:
        return f"rat:{self.p}/{self.q}"


@dataclass(frozen=True)
class QuadraticSurd(RealSpec):
    """(a + b*sqrt(d)) / c with integer a, b != 0, nonsquare d >= 2, c >= 1."""

    a: int
    b: int
    d: int
    c: int

    def __post_init__(self) -> None:
        if self.c < 1:
            raise InvalidSpec("surd denominator must be positive")
        if self.b == 0:
            raise InvalidSpec("surd coefficient b must be nonzero")
        if self.d < 2 or math.isqrt(self.d) ** 2 == self.d:
            raise InvalidSpec("surd radicand must be a nonsquare integer >= 2")

    def bounds(self, prec: int) -> tuple[int, int]:
        r = math.isqrt(self.b * self.b * self.d << (2 * prec))
        base = self.a << prec
        if self.b > 0:
            num_lo, num_hi = base + r, base + r + 1
        else:
            num_lo, num_hi = base - r - 1, base - r
        return num_lo // self.c, _ceil_div(num_hi, self.c)

    def irrational(self) -> bool:
        return True

    def text(self) -> str:
        return f"surd:({self.a}+{self.b}*sqrt({self.d}))/{self.c}"


@dataclass(frozen=True)
class FiniteCF(RealSpec):
    """Finite continued fraction [a0; a1, a2, ...]; an exact rational."""

    quotients: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.quotients:
            raise InvalidSpec("continued fraction needs at least a0")
        if any(a < 1 for a in self.quotients[1:]):
            raise InvalidSpec("partial quotients after a0 must be >= 1")

    def exact(self) -> Fraction:
        value = Fraction(self.quotients[-1])
        for a in reversed(self.quotients[:-1]):
            value = a + 1 / value
        return value

    def bounds(self, prec: int) -> tuple[int, int]:
        v = self.exact()
        num = v.numerator << prec
        lo = num // v.denominator
        return (lo, lo) if lo * v.denominator == num else (lo, lo + 1)

    def text(self) -> str:
        head, *rest = self.quotients
        tail = ",".join(str(a) for a in rest)
        return f"cf:[{head};{tail}]" if rest else f"cf:[{head}]"


_DEC_RE = re.compile(r"^-?\d+(\.\d+)?$")


@dataclass(frozen=True)
class DecimalLiteral(RealSpec):
    """A decimal string whose first `stated_precision` fractional digits are trusted.

    The value is only known to lie within +-10**-stated_precision of the
    literal, so queries needing more than ~3.32*stated_precision bits raise
    PrecisionExhausted instead of inventing digits.
    """

    digits: str
    stated_precision: int

    def __post_init__(self) -> None:
        if not _DEC_RE.match(self.digits):
            raise InvalidSpec(f"bad decimal literal {self.digits!r}")
        frac_digits = len(self.digits.split(".")[1]) if "." in self.digits else 0
        if not 1 <= self.stated_precision <= max(frac_digits, 1):
            raise InvalidSpec("stated_precision exceeds the digits supplied")

    def _mid(self) -> Fraction:
        return Fraction(self.digits)

    def max_prec(self) -> int:
        # Keep 2*10**-sp * 2**prec <= 1/2 so the bracket stays <= 2 ulps wide.
        return (10 ** self.stated_precision).bit_length() - 3

    def bounds(self, prec: int) -> tuple[int, int]:
        if prec > self.max_prec():
            raise PrecisionExhausted(
                f"decimal literal only supports {self.max_prec()} bits",
                spec=self, bits=prec)
        delta = Fraction(1, 10 ** self.stated_precision)
        lo_fr, hi_fr = self._mid() - delta, self._mid() + delta
        lo = (lo_fr.numerator << prec) // lo_fr.denominator
        hi = _ceil_div(hi_fr.numerator << prec, hi_fr.denominator)
        return lo, hi

    def text(self) -> str:
        return f"dec:{self.digits}:{self.stated_precision}"


@dataclass(frozen=True)
class LiouvilleSeries(RealSpec):
    """sum_j base**(-c_j) with a strictly increasing exponent schedule.

    The schedule is generated from c1 by rule
      poly: c_{j+1} = max(c_j + 1, floor(c_j ** tau))
      exp:  c_{j+1} = max(c_j + 1, floor(beta ** (theta * c_j)))
    and continues forever; enclosures materialize exactly as many terms as
    the requested precision demands.  `depth` only controls how many
    schedule entries helpers enumerate eagerly (display, type estimation).
    """

    base: int
    rule: str
    param: Fraction
    c1: int = 2
    beta: int = 2
    depth: int = 8

    def __post_init__(self) -> None:
        if self.base < 2:
            raise InvalidSpec("series base must be >= 2")
        if self.rule not in ("poly", "exp"):
            raise InvalidSpec("rule must be 'poly' or 'exp'")
        param = Fraction(self.param)
        object.__setattr__(self, "param", param)
        if self.rule == "poly" and param < 1:
            raise InvalidSpec("poly rule needs tau >= 1")
        if self.rule == "exp" and param <= 0:
            raise InvalidSpec("exp rule needs theta > 0")
        if self.c1 < 1 or self.beta < 2 or self.depth < 1:
            raise InvalidSpec("c1 >= 1, beta >= 2, depth >= 1 required")

    def next_exponent(self, c: int, cap: int) -> Optional[int]:
        """Exact next exponent after c, or None when certified > cap."""
        if c + 1 > cap:
            return None
        p, q = self.param.numerator, self.param.denominator
        if self.rule == "poly":
            raw = _iroot(c ** p, q)
        else:
            # beta >= 2, so floor(pc/q) >= bit_length(cap) forces
            # beta**(pc/q) >= 2**bit_length(cap) > cap without expanding it.
            if (p * c) // q >= cap.bit_length():
                return None
            raw = _iroot(self.beta ** (p * c), q)
        nxt = max(c + 1, raw)
        return nxt if nxt <= cap else None

    def schedule(self, cap: int) -> tuple[int, ...]:
        """All exponents <= cap (monotone; lazily extended on demand)."""
        return _liouville_schedule(self, cap)

    def bounds(self, prec: int) -> tuple[int, int]:
        # Include every term with c_j <= prec + 2; the rest is a tail
        # below 2 * base**-(prec+3) <= 2**-(prec+2), i.e. < 1/2 ulp here.
        exps = self.schedule(prec + 2)
        if not exps:
            return 0, 1
        clast = exps[-1]
        num = sum(self.base ** (clast - c) for c in exps)
        if self.base == 2:
            lo = num << (prec - clast) if prec >= clast else num >> (clast - prec)
        else:
            lo = (num << prec) // self.base ** clast
        return lo, lo + 2

    def irrational(self) -> bool:
        return True

    def text(self) -> str:
        key = "tau" if self.rule == "poly" else "theta"
        beta = f",beta={self.beta}" if self.rule == "exp" else ""
        return (f"liouville:base={self.base},rule={self.rule},"
                f"{key}={self.param}{beta},c1={self.c1},depth={self.depth}")


@lru_cache(maxsize=None)
def _liouville_schedule(spec: LiouvilleSeries, cap: int) -> tuple[int, ...]:
    if spec.c1 > cap:
        return ()
    exps = [spec.c1]
    while True:
        nxt = spec.next_exponent(exps[-1], cap)
        if nxt is None:
            return tuple(exps)
        exps.append(nxt)


def sqrt2() -> QuadraticSurd:
    return QuadraticSurd(0, 1, 2, 1)


def sqrt3() -> QuadraticSurd:
    return QuadraticSurd(0, 1, 3, 1)


def golden_ratio() -> QuadraticSurd:
    return QuadraticSurd(1, 1, 5, 2)


# ---------------------------------------------------------------------------
# text forms


_SURD_RE = re.compile(r"^\((-?\d+)\+(-?\d+)\*sqrt\((\d+)\)\)/(\d+)$")
_CF_RE = re.compile(r"^\[(-?\d+)(?:;([\d,]*))?\]$")


def parse_real(text: str) -> RealSpec:
    """Parse the textual real-number forms (rat:, surd:, cf:, dec:, liouville:)."""
    kind, _, body = text.strip().partition(":")
    if kind == "rat":
        num, _, den = body.partition("/")
        try:
            return Rational(int(num), int(den) if den else 1)
        except ValueError as exc:
            raise InvalidSpec(f"bad rational {body!r}") from exc
    if kind == "surd":
        m = _SURD_RE.match(body)
        if not m:
            raise InvalidSpec(f"bad surd {body!r}")
        a, b, d, c = map(int, m.groups())
        return QuadraticSurd(a, b, d, c)
    if kind == "cf":
        m = _CF_RE.match(body)
        if not m:
            raise InvalidSpec(f"bad continued fraction {body!r}")
        try:
            head = int(m.group(1))
            rest = m.group(2)
            tail = tuple(int(x) for x in rest.split(",")) if rest else ()
        except ValueError as exc:
            raise InvalidSpec(f"bad continued fraction {body!r}") from exc
        return FiniteCF((head,) + tail)
    if kind == "dec":
        digits, _, sp = body.rpartition(":")
        try:
            return DecimalLiteral(digits, int(sp))
        except ValueError as exc:
            raise InvalidSpec(f"bad decimal form {body!r}") from exc
    if kind == "liouville":
        fields = {}
        for item in body.split(","):
            key, _, val = item.partition("=")
            fields[key.strip()] = val.strip()
        try:
            rule = fields.get("rule", "poly")
            param = Fraction(fields["tau" if rule == "poly" else "theta"])
            return LiouvilleSeries(
                base=int(fields.get("base", 2)),
                rule=rule,
                param=param,
                c1=int(fields.get("c1", 2)),
                beta=int(fields.get("beta", 2)),
                depth=int(fields.get("depth", 8)),
            )
        except (KeyError, ValueError) as exc:
            raise InvalidSpec(f"bad liouville form {body!r}") from exc
    raise InvalidSpec(f"unknown real-number form {text!r}")


def format_real(spec: RealSpec) -> str:
    return spec.text()


# ---------------------------------------------------------------------------
# cached brackets and the escalation loop


@lru_cache(maxsize=4096)
def _bounds_cached(spec: RealSpec, prec: int) -> tuple[int, int]:
    return spec.bounds(prec)


def _start_prec(scale: int) -> int:
    return 64 + max(scale, 1).bit_length()


def eval_enclosure(spec: RealSpec, bits: int, *,
                   max_bits: int = DEFAULT_MAX_BITS) -> Interval:
    """Dyadic enclosure of the value, width <= 2**(1-bits) * max(1, |lo|)."""
    if bits < MIN_ENCLOSURE_BITS:
        raise ValueError(f"bits must be >= {MIN_ENCLOSURE_BITS}")
    if bits > max_bits:
        raise PrecisionExhausted("requested bits exceed the ceiling",
                                 spec=spec, bits=bits)
    prec = bits + 1
    cap = spec.max_prec()
    if cap is not None and prec > cap:
        raise PrecisionExhausted(
            "representation does not carry the requested precision",
            spec=spec, bits=bits)
    lo, hi = _bounds_cached(spec, prec)
    return Interval(Fraction(lo, 1 << prec), Fraction(hi, 1 << prec), bits)


def _bracket(spec: RealSpec, scale: int, prec: int) -> tuple[int, int]:
    lo, hi = _bounds_cached(spec, prec)
    return lo * scale, hi * scale


def floor_scaled(spec: RealSpec, scale: int, *,
                 max_bits: int = DEFAULT_MAX_BITS) -> CertifiedFloor:
    """Certified floor(value * scale) for a positive integer scale."""
    if scale < 1:
        raise ValueError("scale must be a positive integer")
    prec = _start_prec(scale)
    cap = spec.max_prec()
    sbits = scale.bit_length()
    while True:
        pe = prec if cap is None else min(prec, cap)
        lo, hi = _bracket(spec, scale, pe)
        f = lo >> pe
        if (hi >> pe) == f:
            pb = max(1, pe - sbits - 2)
            cert = Interval(Fraction(lo, 1 << pe), Fraction(hi, 1 << pe), pb)
            return CertifiedFloor(f, cert, scale, pe)
        if cap is not None and pe >= cap:
            raise PrecisionExhausted(
                "stated digits cannot separate the floor", spec=spec,
                scale=scale, bits=pe)
        if prec >= max_bits:
            raise PrecisionExhausted(
                "floor not separated within the precision ceiling",
                spec=spec, scale=scale, bits=prec)
        prec = min(2 * prec, max_bits)


def frac_below(spec: RealSpec, scale: int, bound_num: int, bound_den: int, *,
               max_bits: int = DEFAULT_MAX_BITS) -> bool:
    """Certified test  {value * scale} < bound_num / bound_den.

    For exact rationals the boundary case resolves exactly (strict
    inequality, so equality is False).  For irrational variants the
    fractional part can never equal the rational bound, hence escalation
    always terminates short of the ceiling unless the representation
    itself runs out of information.
    """
    if scale < 1:
        raise ValueError("scale must be a positive integer")
    if not (0 < Fraction(bound_num, bound_den) <= 1):
        raise ValueError("bound must lie in (0, 1]")
    exact = spec.exact()
    if exact is not None:
        v = exact * scale
        fr = v - (v.numerator // v.denominator)
        return fr * bound_den < bound_num
    prec = _start_prec(scale)
    while True:
        pe = prec if spec.max_prec() is None else min(prec, spec.max_prec())
        lo, hi = _bracket(spec, scale, pe)
        f = lo >> pe
        if (hi >> pe) == f:
            unit = 1 << pe
            r_lo, r_hi = lo - (f << pe), hi - (f << pe)
            # Strict on the True side: at exact equality the test is False.
            if r_hi * bound_den < bound_num * unit:
                return True
            if r_lo * bound_den >= bound_num * unit:
                return False
        cap = spec.max_prec()
        if cap is not None and pe >= cap:
            raise PrecisionExhausted("stated digits cannot decide the test",
                                     spec=spec, scale=scale, bits=pe)
        if prec >= max_bits:
            raise PrecisionExhausted(
                "fractional test undecided within the precision ceiling",
                spec=spec, scale=scale, bits=prec)
        prec = min(2 * prec, max_bits)


def dist_nearest_int(spec: RealSpec, scale: int, *, bits: int = 48,
                     max_bits: int = DEFAULT_MAX_BITS) -> Interval:
    """Enclosure of ||value * scale|| (distance to the nearest integer).

    A stated-precision representation that cannot reach `bits` returns
    the tightest interval its digits certify (visible through the
    interval's precision_bits) rather than refusing outright; it only
    raises when the digits certify nothing at all.
    """
    if scale < 1:
        raise ValueError("scale must be a positive integer")
    prec = max(_start_prec(scale), bits + scale.bit_length() + 2)
    cap = spec.max_prec()
    while True:
        pe = prec if cap is None else min(prec, cap)
        lo, hi = _bracket(spec, scale, pe)
        unit = 1 << pe
        half = unit >> 1
        tight = hi - lo <= unit >> min(bits + 1, pe - 1)
        capped = cap is not None and pe >= cap
        if tight or capped:
            # ||x|| is piecewise linear: minima only at integers, maxima
            # only at half-integers, so extremes over [lo, hi]/unit are at
            # those lattice points when inside, else at the endpoints.
            d_lo_end = min(lo % unit, unit - lo % unit)
            d_hi_end = min(hi % unit, unit - hi % unit)
            int_inside = _ceil_div(lo, unit) * unit <= hi
            a, b = _ceil_div(lo, half), hi // half
            half_inside = b >= a and (a % 2 != 0 or b > a)
            d_lo = 0 if int_inside else min(d_lo_end, d_hi_end)
            d_hi = half if half_inside else max(d_lo_end, d_hi_end)
            # d_hi - d_lo <= hi - lo, so this precision is always honest
            pb = min(bits, pe + 1 - (hi - lo).bit_length()) if not tight \
                else min(bits, pe - 1)
            if pb >= 1:
                return Interval(Fraction(d_lo, unit), Fraction(d_hi, unit),
                                pb)
            raise PrecisionExhausted(
                "stated digits cannot resolve the nearest-integer distance",
                spec=spec, scale=scale, bits=pe)
        if prec >= max_bits:
            raise PrecisionExhausted(
                "nearest-integer distance not resolved within the ceiling",
                spec=spec, scale=scale, bits=prec)
        prec = min(2 * prec, max_bits)


# ---------------------------------------------------------------------------
# multi-term certified linear forms


SpecLike = Union[RealSpec, int, Fraction, str]


def as_spec(value: SpecLike) -> RealSpec:
    """Coerce ints, Fractions, and strings to specs; pass RealSpecs through.

    Strings may be plain rationals ("1/2", "0.25") or any prefixed form
    accepted by parse_real.  Floats are rejected: they carry no statement
    of intent about the real they approximate.
    """
    if isinstance(value, RealSpec):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise InvalidSpec(
            f"refusing float/bool {value!r}; use an exact or described form")
    if isinstance(value, int):
        return Rational(value, 1)
    if isinstance(value, Fraction):
        return Rational(value.numerator, value.denominator)
    if isinstance(value, str):
        try:
            f = Fraction(value)
            return Rational(f.numerator, f.denominator)
        except (ValueError, ZeroDivisionError):
            return parse_real(value)
    raise InvalidSpec(f"cannot interpret {value!r} as a real number")


class LinearForm:
    """Certified evaluator of sum_t coef_t * scale_t over integer scales.

    Used for floors of alpha*n**m + g(n) and for exponential-sum phases.
    Brackets for each coefficient are cached at one shared precision and
    escalate together; scales may be negative (frequency vectors).
    """

    def __init__(self, coefs: Sequence[SpecLike], *,
                 max_bits: int = DEFAULT_MAX_BITS):
        self.coefs = [as_spec(c) for c in coefs]
        self.max_bits = max_bits
        caps = [c.max_prec() for c in self.coefs if c.max_prec() is not None]
        self._cap = min(caps) if caps else None

    def _bracket(self, scales: Sequence[int], prec: int) -> tuple[int, int]:
        lo_sum = hi_sum = 0
        for coef, s in zip(self.coefs, scales):
            lo, hi = _bounds_cached(coef, prec)
            if s >= 0:
                lo_sum += lo * s
                hi_sum += hi * s
            else:
                lo_sum += hi * s
                hi_sum += lo * s
        return lo_sum, hi_sum

    def _escalate(self, scales, need, prec):
        pe = prec if self._cap is None else min(prec, self._cap)
        if self._cap is not None and pe >= self._cap and prec > self._cap:
            raise PrecisionExhausted("stated digits cannot decide " + need,
                                     spec=tuple(self.coefs), scale=tuple(scales),
                                     bits=pe)
        if prec >= self.max_bits:
            raise PrecisionExhausted(need + " undecided within the ceiling",
                                     spec=tuple(self.coefs),
                                     scale=tuple(scales), bits=prec)
        return min(2 * prec, self.max_bits)

    def _start(self, scales) -> int:
        biggest = max((abs(s) for s in scales), default=1)
        return _start_prec(biggest * max(len(self.coefs), 1))

    def floor(self, scales: Sequence[int]) -> int:
        prec = self._start(scales)
        while True:
            pe = prec if self._cap is None else min(prec, self._cap)
            lo, hi = self._bracket(scales, pe)
            f = lo >> pe
            if (hi >> pe) == f:
                return f
            prec = self._escalate(scales, "floor", prec)

    def frac_below(self, scales: Sequence[int], num: int, den: int) -> bool:
        prec = self._start(scales)
        while True:
            pe = prec if self._cap is None else min(prec, self._cap)
            lo, hi = self._bracket(scales, pe)
            f = lo >> pe
            if (hi >> pe) == f:
                unit = 1 << pe
                if (hi - (f << pe)) * den < num * unit:
                    return True
                if (lo - (f << pe)) * den >= num * unit:
                    return False
            prec = self._escalate(scales, "fractional test", prec)

    def frac_unit(self, scales: Sequence[int], out_bits: int = 60):
        """Floor-certified fractional part as (float in [0,1), error bound)."""
        prec = max(self._start(scales), out_bits + 4)
        while True:
            pe = prec if self._cap is None else min(prec, self._cap)
            lo, hi = self._bracket(scales, pe)
            f = lo >> pe
            if (hi >> pe) == f and hi - lo <= 1 << max(pe - out_bits, 0):
                unit = 1 << pe
                frac = (lo - (f << pe)) / unit
                if frac >= 1.0:        # float rounding of (unit-1)/unit
                    frac = math.nextafter(1.0, 0.0)
                return frac, (hi - lo) / unit + 2.0 ** -52
            prec = self._escalate(scales, "fractional part", prec)

    def phase_frac(self, scales: Sequence[int], out_bits: int = 60):
        """Fractional part mod 1 for phases: no floor certificate needed.

        Returns (float in [0,1), absolute error bound valid modulo 1).
        """
        prec = max(self._start(scales), out_bits + 4)
        while True:
            pe = prec if self._cap is None else min(prec, self._cap)
            lo, hi = self._bracket(scales, pe)
            if hi - lo <= 1 << max(pe - out_bits, 0):
                unit = 1 << pe
                frac = (lo % unit) / unit
                if frac >= 1.0:        # float rounding of (unit-1)/unit
                    frac = math.nextafter(1.0, 0.0)
                return frac, (hi - lo) / unit + 2.0 ** -52
            prec = self._escalate(scales, "phase", prec)
