"""Continued-fraction machinery with certified partial quotients.

Convergent tables, best-approximation window searches, and empirical
growth-rate estimation of how well a number is rationally approximable.
Partial quotients are certified by expanding both endpoints of a dyadic
enclosure and keeping the common prefix: the reals whose expansion begins
with a given prefix form an interval, so a prefix shared by the endpoints
is correct for everything in between.  Precision escalates until the
convergent denominators provably exceed the requested cap.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import (InsufficientData, InvalidSpec, NoConvergent,
                     PrecisionExhausted, RationalTerminated)
from .realnum import (DEFAULT_MAX_BITS, Interval, RealSpec, dist_nearest_int)

Number = Union[int, float, Fraction]


@dataclass(frozen=True)
class Convergent:
    """One continued-fraction approximation a/q with a certified quality."""

    index: int
    a: int
    q: int
    quality: Interval    # encloses the distance from q*alpha to nearest int

    def __post_init__(self) -> None:
        if self.q < 1:
            raise InvalidSpec("convergent denominator must be positive")
        if math.gcd(self.a, self.q) != 1:
            raise InvalidSpec("convergent must be in lowest terms")


@dataclass(frozen=True)
class ApproxWindow:
    """Best approximation with denominator in (lower, Q]."""

    a: int
    q: int
    Q: float
    lower: float
    satisfied: bool


@dataclass(frozen=True)
class TypeEstimate:
    """Empirical approximability exponent from denominator growth."""

    tau_hat: float
    samples: tuple        # of (q_i, ratio) pairs, every usable i
    mode: str             # "polynomial" or "exponential"


def _euclid_terms(num: int, den: int, limit: int) -> list[int]:
    """Greedy partial quotients of num/den (den > 0), at most `limit` terms."""
    terms = []
    while den and len(terms) < limit:
        a, rem = divmod(num, den)
        terms.append(a)
        num, den = den, rem
    return terms


def _common_prefix(xs: list[int], ys: list[int]) -> list[int]:
    out = []
    for x, y in zip(xs, ys):
        if x != y:
            break
        out.append(x)
    return out


def _denominators_reach(terms: Sequence[int], max_q: int) -> bool:
    """True when the recurrence q_j = a_j q_{j-1} + q_{j-2} exceeds max_q."""
    q_prev, q_cur = 0, None
    for j, a in enumerate(terms):
        if j == 0:
            q_cur = 1
        else:
            q_prev, q_cur = q_cur, a * q_cur + q_prev
        if q_cur > max_q:
            return True
    return False


def _certified_quotients(spec: RealSpec, max_q: int,
                         max_bits: int) -> tuple[list[int], bool]:
    """Partial quotients valid until the denominators pass max_q.

    Returns (terms, terminated); terminated means the expansion is the
    complete (finite) expansion of an exact rational.
    """
    exact = spec.exact()
    if exact is not None:
        return _euclid_terms(exact.numerator, exact.denominator, 1 << 62), True
    prec = 64
    while True:
        pe = prec if spec.max_prec() is None else min(prec, spec.max_prec())
        lo, hi = spec.bounds(pe)
        term_cap = 2 * pe + 8
        common = _common_prefix(_euclid_terms(lo, 1 << pe, term_cap),
                                _euclid_terms(hi, 1 << pe, term_cap))
        if _denominators_reach(common, max_q):
            return common, False
        cap = spec.max_prec()
        if cap is not None and pe >= cap:
            raise PrecisionExhausted(
                "stated digits cannot certify enough partial quotients",
                spec=spec, scale=max_q, bits=pe)
        if prec >= max_bits:
            raise PrecisionExhausted(
                "partial quotients not certified within the precision ceiling",
                spec=spec, scale=max_q, bits=prec)
        prec = min(2 * prec, max_bits)


def convergents(spec: RealSpec, max_q: int, *,
                max_bits: int = DEFAULT_MAX_BITS) -> list[Convergent]:
    """All convergents of spec with denominator ≤ max_q, in increasing order.

    Emits the RationalTerminated warning when the expansion of an exact
    rational ends below max_q (the final convergent equals the value).
    When the zeroth and first convergents share denominator 1 the zeroth
    is dropped: the survivor is the better approximation and denominators
    then increase strictly.
    """
    if max_q < 1:
        raise InvalidSpec("max_q must be a positive integer")
    terms, terminated = _certified_quotients(spec, max_q, max_bits)
    pairs: list[tuple[int, int]] = []
    p_prev, q_prev = 1, 0
    p_cur, q_cur = None, None
    for j, a in enumerate(terms):
        if j == 0:
            p_cur, q_cur = a, 1
        else:
            p_cur, q_cur, p_prev, q_prev = (a * p_cur + p_prev,
                                            a * q_cur + q_prev, p_cur, q_cur)
        if q_cur > max_q:
            break
        pairs.append((p_cur, q_cur))
    if len(pairs) >= 2 and pairs[0][1] == 1 and pairs[1][1] == 1:
        pairs = pairs[1:]
    out = []
    for i, (p, q) in enumerate(pairs):
        bits = max(48, 2 * q.bit_length() + 8)
        quality = dist_nearest_int(spec, q, bits=bits, max_bits=max_bits)
        out.append(Convergent(i, p, q, quality))
    if terminated and not _denominators_reach(terms, max_q):
        warnings.warn(f"expansion of {spec.text()} terminates at denominator "
                      f"{pairs[-1][1] if pairs else 1}", RationalTerminated,
                      stacklevel=2)
    return out


def find_window(spec: RealSpec, Q: Number, varpi: Number, mode: str, *,
                max_bits: int = DEFAULT_MAX_BITS) -> ApproxWindow:
    """Best approximation with q ≤ Q, against the floor Q^varpi or (log Q)^(varpi+1).

    The returned window always carries the largest convergent denominator
    ≤ Q; `satisfied` records whether it also clears the floor, so callers
    can observe exactly where the two-sided window starts to exist.
    """
    Qf = float(Q)
    if Qf < 2:
        raise InvalidSpec("window cap Q must be >= 2")
    v = float(varpi)
    if v <= 0:
        raise InvalidSpec("varpi must be positive")
    if mode == "polynomial":
        if v >= 1:
            raise InvalidSpec("polynomial mode needs varpi in (0, 1)")
        lower = Qf ** v
    elif mode == "exponential":
        lower = math.log(Qf) ** (v + 1)
    else:
        raise InvalidSpec(f"unknown window mode {mode!r}")
    convs = convergents(spec, math.floor(Qf), max_bits=max_bits)
    if not convs:
        raise NoConvergent(f"no convergent with denominator <= {Qf}")
    best = convs[-1]
    return ApproxWindow(best.a, best.q, Qf, lower, best.q > lower)


def estimate_type(spec: RealSpec, max_q: int, mode: str, *,
                  max_bits: int = DEFAULT_MAX_BITS) -> TypeEstimate:
    """Approximability exponent from convergent-denominator growth.

    Ratios log q_{i+1}/log q_i (polynomial) or log log q_{i+1}/log q_i
    (exponential) are reported for every consecutive pair with q_i ≥ 2;
    tau_hat is the maximum over the later half of the samples, where the
    small-denominator transient has died out — early ratios like
    log 5/log 2 would otherwise dominate forever and mask the trend.
    """
    if mode not in ("polynomial", "exponential"):
        raise InvalidSpec(f"unknown type-estimation mode {mode!r}")
    convs = convergents(spec, max_q, max_bits=max_bits)
    if len(convs) < 3:
        raise InsufficientData(
            f"need at least 3 convergents below {max_q}, found {len(convs)}")
    qs = [c.q for c in convs]
    samples = []
    for q1, q2 in zip(qs, qs[1:]):
        if q1 < 2:
            continue
        if mode == "polynomial":
            samples.append((q1, math.log(q2) / math.log(q1)))
        else:
            samples.append((q1, math.log(math.log(q2)) / math.log(q1)))
    if not samples:
        raise InsufficientData("no denominator pairs with q_i >= 2")
    tail = samples[len(samples) // 2:]
    tau_hat = max(r for _, r in tail)
    return TypeEstimate(tau_hat, tuple(samples), mode)


def convergents_csv(convs: Sequence[Convergent]) -> str:
    """CSV table: index,a,q,log_ratio,quality_lo,quality_hi."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["index", "a", "q", "log_ratio", "quality_lo",
                     "quality_hi"])
    for i, c in enumerate(convs):
        if i + 1 < len(convs) and c.q >= 2:
            ratio = f"{math.log(convs[i + 1].q) / math.log(c.q):.12g}"
        else:
            ratio = ""
        writer.writerow([c.index, c.a, c.q, ratio,
                         f"{float(c.quality.lo):.17g}",
                         f"{float(c.quality.hi):.17g}"])
    return buf.getvalue()
