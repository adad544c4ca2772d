"""Coprimality counting for floor-of-power sequences, by two exact routes.

N(x) counts n ≤ x whose tuple (n, floor(a_1 n^{m_1} + g_1), ...,
floor(a_k n^{m_k} + g_k)) has gcd 1.  `direct_count` evaluates the gcd
per n; `mobius_count` expands the coprimality indicator through the
Moebius function, reducing each divisor d to a box-occupancy count
(`inner_count`).  Both routes use certified floors, so with no cutoff
they must agree exactly — that identity is the strongest self-test in
the package.  The module also carries the zeta constants the density
converges to, the closed-form error exponents, and the density
experiment harness with its log-log error fit.
"""

from __future__ import annotations

import decimal
import json
import math
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

import numpy as np

from .errors import DegenerateFit, InsufficientData, InvalidSpec, \
    PrecisionExhausted, ResourceLimit
from .realnum import (DEFAULT_MAX_BITS, Interval, LinearForm, Rational,
                      as_spec)

ExactLike = Union[int, Fraction, str]


def _as_exact(value: ExactLike, name: str) -> Fraction:
    """Exact rational from int/Fraction/str; floats are refused."""
    if isinstance(value, float):
        raise InvalidSpec(
            f"{name} must be exact; pass a string like '1/5' or '0.2', "
            f"or a Fraction, not a float")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise InvalidSpec(f"cannot read {name} from {value!r}") from exc


# ---------------------------------------------------------------------------
# problem description


@dataclass(frozen=True)
class ProblemSpec:
    """The tuple family: exponents ms (strictly increasing, m_1 = 1),
    one real multiplier per exponent, optional lower-order polynomials.

    lower_terms, when given, has one entry per coordinate: None, or a
    tuple of coefficients (constant first, degree < m_j).  The first
    coordinate never carries lower-order terms.
    """

    alphas: tuple
    ms: tuple
    lower_terms: tuple = ()
    strict: bool = True

    def __post_init__(self) -> None:
        alphas = tuple(as_spec(a) for a in self.alphas)
        ms = tuple(int(m) for m in self.ms)
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "ms", ms)
        if not ms or len(alphas) != len(ms):
            raise InvalidSpec("need one multiplier per exponent")
        if ms[0] != 1:
            raise InvalidSpec("the first exponent must be 1")
        if any(b <= a for a, b in zip(ms, ms[1:])):
            raise InvalidSpec("exponents must increase strictly")
        low = self.lower_terms
        if low:
            if len(low) != len(ms):
                raise InvalidSpec("lower_terms must align with the exponents")
            norm = []
            for j, entry in enumerate(low):
                if not entry:
                    norm.append(None)
                    continue
                if j == 0:
                    raise InvalidSpec(
                        "the first coordinate admits no lower-order terms")
                coeffs = tuple(as_spec(c) for c in entry)
                if len(coeffs) > ms[j]:
                    raise InvalidSpec(
                        f"lower-order degree must stay below {ms[j]}")
                norm.append(coeffs)
            object.__setattr__(self, "lower_terms", tuple(norm))
        else:
            object.__setattr__(self, "lower_terms",
                               tuple(None for _ in ms))
        if self.strict:
            for j, a in enumerate(alphas):
                if not a.irrational():
                    raise InvalidSpec(
                        f"multiplier {j + 1} ({a.text()}) is not an "
                        f"irrational-certified variant")

    @property
    def k(self) -> int:
        return len(self.ms)

    @classmethod
    def unchecked(cls, alphas, ms, lower_terms=()) -> "ProblemSpec":
        """Skip the irrationality requirement (rational test doubles)."""
        return cls(tuple(alphas), tuple(ms), tuple(lower_terms), strict=False)

    def describe(self) -> dict:
        return {
            "alphas": [a.text() for a in self.alphas],
            "ms": list(self.ms),
            "lower_terms": [None if e is None else [c.text() for c in e]
                            for e in self.lower_terms],
        }


@dataclass(frozen=True)
class CountResult:
    x: int
    count: int
    method: str
    d_cutoff: Optional[int]
    elapsed: float

    def __post_init__(self) -> None:
        if self.method not in ("direct", "mobius"):
            raise InvalidSpec(f"unknown counting method {self.method!r}")
        if self.d_cutoff is None and not 0 <= self.count <= self.x:
            raise InvalidSpec("full count must lie in [0, x]")


@dataclass(frozen=True)
class DensityRun:
    problem: ProblemSpec
    grid: tuple
    counts: tuple
    target: Fraction              # midpoint enclosure of 1/zeta(k+1)
    errors: tuple                 # exact |count - x*target| per grid point
    fitted_exponent: float        # OLS slope of log error vs log x
    residual: float               # RMS residual of that fit
    theoretical_gamma: Optional[Fraction]

    def __post_init__(self) -> None:
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise InvalidSpec("grid must increase strictly")
        if any(e < 0 for e in self.errors):
            raise InvalidSpec("errors must be nonnegative")

    @property
    def gamma_hat(self) -> float:
        """Error exponent implied by the fit: error ~ x^(1-gamma_hat)."""
        return 1.0 - self.fitted_exponent


# ---------------------------------------------------------------------------
# Moebius function tables


def _primes_upto(n: int) -> np.ndarray:
    if n < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p::p] = False
    return np.flatnonzero(flags).astype(np.int64)


def _mobius_block(start: int, end: int, primes: np.ndarray) -> np.ndarray:
    """mu(n) for n in [start, end] given all primes up to sqrt(end)."""
    size = end - start + 1
    mu = np.ones(size, dtype=np.int64)
    val = np.arange(start, end + 1, dtype=np.int64)
    for p in primes.tolist():
        first = -(-start // p) * p
        if first > end:
            continue
        sl = slice(first - start, size, p)
        mu[sl] = -mu[sl]
        v = val[sl]
        v //= p
        while True:
            mask = v % p == 0
            if not mask.any():
                break
            # a repeated factor kills mu; keep dividing so the residual
            # below is exactly the one possible large leftover prime
            m = mu[sl]
            m[mask] = 0
            v[mask] //= p
    big = val > 1
    mu[big] = -mu[big]
    return mu


def mobius_sieve(limit: int, *,
                 memory_budget: int = 1 << 29) -> np.ndarray:
    """mu(d) for 1 ≤ d ≤ limit as int8, index 0 unused.

    Raises ResourceLimit when the working arrays would exceed the budget
    (bytes); stream `mobius_segments` instead for such limits.
    """
    if limit < 1:
        raise InvalidSpec("sieve limit must be >= 1")
    need = 17 * (limit + 1)
    if need > memory_budget:
        raise ResourceLimit(
            f"sieve to {limit} needs ~{need} bytes > budget {memory_budget};"
            f" use mobius_segments")
    out = np.zeros(limit + 1, dtype=np.int8)
    out[1:] = _mobius_block(1, limit, _primes_upto(math.isqrt(limit)))
    return out


def mobius_segments(limit: int, block: int = 1 << 20):
    """Yield (start, int8 block of mu values) covering 1..limit."""
    if limit < 1:
        raise InvalidSpec("sieve limit must be >= 1")
    primes = _primes_upto(math.isqrt(limit))
    for start in range(1, limit + 1, block):
        end = min(start + block - 1, limit)
        yield start, _mobius_block(start, end, primes).astype(np.int8)


# ---------------------------------------------------------------------------
# certified floor engine shared by the counting loops


class _FloorEngine:
    """Brackets every coefficient at one shared precision and evaluates
    floor(a_j t^{m_j} + g_j(t)) with certification; ambiguity escalates
    the shared precision (rare: it means the value sits within 2^-60ish
    of an integer at the current bracket width)."""

    def __init__(self, problem: ProblemSpec, t_max: int,
                 max_bits: int = DEFAULT_MAX_BITS):
        self.problem = problem
        self.max_bits = max_bits
        self.terms = []
        for j, alpha in enumerate(problem.alphas):
            entry = [(alpha, problem.ms[j])]
            coeffs = problem.lower_terms[j]
            if coeffs:
                for e, c in enumerate(coeffs):
                    entry.append((c, e))
            self.terms.append(entry)
        self.prec = min(64 + problem.ms[-1] * max(t_max, 1).bit_length() + 8,
                        max_bits)
        self._rebuild()

    def _rebuild(self) -> None:
        p = self.prec
        self.brackets = []
        for entry in self.terms:
            row = []
            for spec, e in entry:
                cap = spec.max_prec()
                pe = p if cap is None else min(p, cap)
                lo, hi = spec.bounds(pe)
                row.append((lo << (p - pe), hi << (p - pe), e))
            self.brackets.append(row)

    def _escalate(self, j: int, t: int) -> None:
        if self.prec >= self.max_bits:
            raise PrecisionExhausted(
                "floor not separated within the precision ceiling",
                spec=self.problem.alphas[j], term=j, n=t, bits=self.prec)
        self.prec = min(2 * self.prec, self.max_bits)
        self._rebuild()

    def floor_term(self, j: int, t: int) -> int:
        while True:
            p = self.prec
            lo = 0
            hi = 0
            for cl, ch, e in self.brackets[j]:
                w = t ** e
                lo += cl * w
                hi += ch * w
            f = lo >> p
            if (hi >> p) == f:
                return f
            self._escalate(j, t)


# ---------------------------------------------------------------------------
# the two counting routes


def _direct_chunk(args) -> int:
    problem, n_lo, n_hi, early_exit, max_bits = args
    eng = _FloorEngine(problem, n_hi, max_bits)
    k = problem.k
    gcd = math.gcd
    cnt = 0
    if early_exit:
        for n in range(n_lo, n_hi + 1):
            g = n
            for j in range(k):
                g = gcd(g, eng.floor_term(j, n))
                if g == 1:
                    break
            if g == 1:
                cnt += 1
    else:
        for n in range(n_lo, n_hi + 1):
            g = n
            for j in range(k):
                g = gcd(g, eng.floor_term(j, n))
            if g == 1:
                cnt += 1
    return cnt


def direct_count(problem: ProblemSpec, x: int, *, workers: int = 1,
                 early_exit: bool = True,
                 max_bits: int = DEFAULT_MAX_BITS) -> CountResult:
    """Count n ≤ x with gcd(n, floor terms) = 1, term by term.

    The range splits into `workers` contiguous chunks, each summed
    independently and reduced in chunk order; counts are exact integers,
    so the result is identical for every worker count.
    """
    if x < 1:
        raise InvalidSpec("x must be >= 1")
    start = time.perf_counter()
    workers = max(1, int(workers))
    if workers == 1 or x < 4096:
        total = _direct_chunk((problem, 1, x, early_exit, max_bits))
    else:
        edges = [i * x // workers for i in range(workers + 1)]
        jobs = [(problem, lo + 1, hi, early_exit, max_bits)
                for lo, hi in zip(edges, edges[1:]) if hi > lo]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            total = sum(pool.map(_direct_chunk, jobs))
    return CountResult(x, total, "direct", None,
                       time.perf_counter() - start)


def scaled_forms(problem: ProblemSpec, d: int, *,
                 max_bits: int = DEFAULT_MAX_BITS) -> list:
    """Per-coordinate linear forms for a_j d^{m_j-1} n^{m_j} + g_j(dn)/d.

    Returns one (LinearForm, exponent list) pair per coordinate; evaluate
    at n with scales(d, n, exps).  The constant lower-order coefficient
    must be exact (it is divided by d before evaluation).
    """
    forms = []
    for j, alpha in enumerate(problem.alphas):
        coefs = [alpha]
        exps = [problem.ms[j]]
        coeffs = problem.lower_terms[j]
        if coeffs:
            for e in range(1, len(coeffs)):
                coefs.append(coeffs[e])
                exps.append(e)
            c0 = coeffs[0].exact()
            if c0 is None:
                raise InvalidSpec(
                    "the constant lower-order coefficient must be exact "
                    "(it is divided by the modulus)")
            if c0 != 0:
                c0d = c0 / d
                coefs.append(Rational(c0d.numerator, c0d.denominator))
                exps.append(0)
        forms.append((LinearForm(coefs, max_bits=max_bits), exps))
    return forms


def form_scales(d: int, n: int, exps: Sequence[int]) -> list:
    """Integer scales d^(e-1) n^e matching scaled_forms' exponent lists."""
    return [d ** (e - 1) * n ** e if e else 1 for e in exps]


def inner_count(problem: ProblemSpec, d: int, x: int, *,
                form: str = "floor", max_bits: int = DEFAULT_MAX_BITS,
                _engine: Optional[_FloorEngine] = None) -> int:
    """Count n ≤ x/d whose scaled fractional vector lands in [0, 1/d)^k.

    form="floor" tests floor(a_j (dn)^{m_j} + g_j(dn)) ≡ 0 (mod d);
    form="frac" tests {a_j d^{m_j - 1} n^{m_j} + g_j(dn)/d} < 1/d.
    The two are equivalent pointwise and are cross-checked in tests.
    """
    if d < 1:
        raise InvalidSpec("d must be >= 1")
    if x < 1:
        raise InvalidSpec("x must be >= 1")
    nmax = x // d
    if nmax == 0:
        return 0
    if d == 1:
        return nmax
    if form == "floor":
        eng = _engine if _engine is not None else _FloorEngine(
            problem, x, max_bits)
        k = problem.k
        cnt = 0
        for n in range(1, nmax + 1):
            t = d * n
            for j in range(k):
                if eng.floor_term(j, t) % d:
                    break
            else:
                cnt += 1
        return cnt
    if form == "frac":
        forms = scaled_forms(problem, d, max_bits=max_bits)
        cnt = 0
        for n in range(1, nmax + 1):
            for lf, exps in forms:
                if not lf.frac_below(form_scales(d, n, exps), 1, d):
                    break
            else:
                cnt += 1
        return cnt
    raise InvalidSpec(f"unknown inner_count form {form!r}")


def mobius_count(problem: ProblemSpec, x: int,
                 d_cutoff: Optional[int] = None, *,
                 max_bits: int = DEFAULT_MAX_BITS) -> CountResult:
    """N(x) through the divisor decomposition: sum of mu(d) * inner_count.

    With no cutoff this is an exact identity with direct_count; with a
    cutoff it is the truncation of that sum (reported as such, and it may
    leave the [0, x] range — only the full sum is a genuine count).
    """
    if x < 1:
        raise InvalidSpec("x must be >= 1")
    if d_cutoff is not None and not 1 <= d_cutoff <= x:
        raise InvalidSpec("d_cutoff must lie in [1, x]")
    start = time.perf_counter()
    depth = d_cutoff if d_cutoff is not None else x
    mu = mobius_sieve(depth)
    eng = _FloorEngine(problem, x, max_bits)
    total = 0
    for d in range(1, depth + 1):
        sign = int(mu[d])
        if sign:
            total += sign * inner_count(problem, d, x, max_bits=max_bits,
                                        _engine=eng)
    return CountResult(x, total, "mobius", d_cutoff,
                       time.perf_counter() - start)


def tail_count(problem: ProblemSpec, d: int, x: int, *,
               form: str = "scaled", max_bits: int = DEFAULT_MAX_BITS,
               _engine: Optional[_FloorEngine] = None) -> int:
    """Count n ≤ x with d | n and d | floor(a_1 n).

    form="divides" walks every n ≤ x and tests both divisibilities;
    form="scaled" substitutes n = d*n' and walks n' ≤ x/d.  Identical
    sets, enumerated two ways, cross-checked in tests.  This is the
    single-coordinate relaxation of inner_count, hence dominates it.
    """
    if d < 1:
        raise InvalidSpec("d must be >= 1")
    if x < 1:
        raise InvalidSpec("x must be >= 1")
    if x // d == 0:
        return 0
    eng = _engine if _engine is not None else _FloorEngine(
        problem, x, max_bits)
    if form == "scaled":
        return sum(1 for n in range(1, x // d + 1)
                   if eng.floor_term(0, d * n) % d == 0)
    if form == "divides":
        cnt = 0
        for n in range(d, x + 1, d):
            if eng.floor_term(0, n) % d == 0:
                cnt += 1
        return cnt
    raise InvalidSpec(f"unknown tail_count form {form!r}")


# ---------------------------------------------------------------------------
# zeta values (exact rational Euler-Maclaurin with certified remainder)


@lru_cache(maxsize=None)
def _bernoulli(m: int) -> Fraction:
    if m == 0:
        return Fraction(1)
    acc = Fraction(0)
    for k in range(m):
        acc += math.comb(m + 1, k) * _bernoulli(k)
    return -acc / (m + 1)


def zeta_int(s: int, bits: int) -> Interval:
    """Enclosure of zeta(s) for integer s ≥ 2, width below 2^(1-bits).

    Plain truncation of the series would need ~2^(bits/(s-1)) terms, so
    the sum is accelerated with the Euler-Maclaurin correction; t^(-s) is
    completely monotone, which bounds the truncated remainder by the
    magnitude of the first omitted correction term.
    """
    if not isinstance(s, int) or s < 2:
        raise InvalidSpec("zeta_int needs an integer s >= 2")
    if bits < 8:
        raise InvalidSpec("bits must be >= 8")
    tol = Fraction(1, 1 << (bits + 2))
    cut = max(16, bits // 8 + 4)
    while True:
        total = sum(Fraction(1, n ** s) for n in range(1, cut))
        total += Fraction(1, 2 * cut ** s)
        total += Fraction(1, (s - 1) * cut ** (s - 1))
        prev = None
        rem = None
        j = 1
        while True:
            two_j = 2 * j
            rise = 1
            for i in range(two_j - 1):
                rise *= s + i
            term = (_bernoulli(two_j) * rise /
                    math.factorial(two_j) / cut ** (s - 1 + two_j))
            mag = abs(term)
            if prev is not None and mag >= prev:
                break                      # series turned before tol: grow cut
            if mag < tol:
                rem = mag
                break
            total += term
            prev = mag
            j += 1
        if rem is not None:
            unit = 1 << (bits + 2)
            lo = Fraction(math.floor((total - rem) * unit), unit)
            hi = Fraction(-math.floor(-(total + rem) * unit), unit)
            return Interval(lo, hi, bits)
        cut *= 2


def inv_zeta(s: int, bits: int = 128) -> Fraction:
    """Midpoint of the reciprocal enclosure 1/zeta(s), error < 2^(1-bits)."""
    iv = zeta_int(s, bits)
    return (1 / iv.hi + 1 / iv.lo) / 2


# ---------------------------------------------------------------------------
# closed-form error exponents


def _validated_ms(ms: Sequence[int]) -> tuple:
    ms = tuple(int(m) for m in ms)
    if not ms or ms[0] != 1 or any(b <= a for a, b in zip(ms, ms[1:])):
        raise InvalidSpec("exponents must be strictly increasing from 1")
    return ms


def theoretical_gamma(ms: Sequence[int], tau: ExactLike) -> Fraction:
    """Error exponent for multipliers of polynomial approximability tau."""
    ms = _validated_ms(ms)
    tau = _as_exact(tau, "tau")
    if tau < 1:
        raise InvalidSpec("tau must be >= 1")
    if len(ms) == 1:
        return 1 / (3 * tau + 2)
    mk = ms[-1]
    return Fraction(1, 8) * min(1 / (mk * tau), Fraction(1, mk * mk - mk))


def theoretical_gamma_star(ms: Sequence[int],
                           tau_star: ExactLike) -> Optional[Fraction]:
    """Error exponent for exponential approximability tau_star.

    Returns None in the regime where the statement degenerates:
    k ≥ 2 with tau_star ≥ 1/(m_k^2 - m_k + 1).
    """
    ms = _validated_ms(ms)
    ts = _as_exact(tau_star, "tau_star")
    if ts <= 0:
        raise InvalidSpec("tau_star must be positive")
    if len(ms) == 1:
        return min(1 / ts, (1 / ts + 1) / 2)
    mk = ms[-1]
    if ts >= Fraction(1, mk * mk - mk + 1):
        return None
    return (1 - (mk * mk - mk + 1) * ts) / ((mk * mk + 2) * ts)


# ---------------------------------------------------------------------------
# density experiment


def _fit_loglog(xs: Sequence[float], ys: Sequence[Fraction]):
    pts = [(math.log(x), math.log(e)) for x, e in zip(xs, ys) if e > 0]
    dropped = len(xs) - len(pts)
    if dropped:
        warnings.warn(f"{dropped} zero-error grid point(s) dropped from "
                      f"the log-log fit", DegenerateFit, stacklevel=3)
    if len(pts) < 2:
        raise InsufficientData("need >= 2 nonzero errors to fit a slope")
    n = len(pts)
    mx = sum(p[0] for p in pts) / n
    my = sum(p[1] for p in pts) / n
    sxx = sum((p[0] - mx) ** 2 for p in pts)
    sxy = sum((p[0] - mx) * (p[1] - my) for p in pts)
    slope = sxy / sxx
    intercept = my - slope * mx
    rss = sum((p[1] - intercept - slope * p[0]) ** 2 for p in pts)
    return slope, math.sqrt(rss / n)


def density_experiment(problem: ProblemSpec, grid: Sequence[int], *,
                       tau: Optional[ExactLike] = None, workers: int = 1,
                       zeta_bits: int = 128,
                       max_bits: int = DEFAULT_MAX_BITS) -> DensityRun:
    """direct_count over a grid, exact errors against x/zeta(k+1), and the
    ordinary-least-squares slope of log error versus log x."""
    grid = tuple(int(x) for x in grid)
    if len(grid) < 3:
        raise InvalidSpec("grid needs at least 3 points")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise InvalidSpec("grid must increase strictly")
    target = inv_zeta(problem.k + 1, zeta_bits)
    counts = tuple(direct_count(problem, x, workers=workers,
                                max_bits=max_bits).count for x in grid)
    errors = tuple(abs(Fraction(c) - x * target)
                   for x, c in zip(grid, counts))
    slope, residual = _fit_loglog(grid, errors)
    gamma = theoretical_gamma(problem.ms, tau) if tau is not None else None
    return DensityRun(problem, grid, counts, target, errors, slope,
                      residual, gamma)


# ---------------------------------------------------------------------------
# serialization


def dec_str(fr: Fraction, digits: int = 30) -> str:
    """Decimal rendering of an exact rational, `digits` significant digits."""
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        return str(decimal.Decimal(fr.numerator) / decimal.Decimal(fr.denominator))


def density_run_csv(run: DensityRun) -> str:
    lines = ["x,count,density,target,abs_error"]
    for x, c, e in zip(run.grid, run.counts, run.errors):
        lines.append(",".join([str(x), str(c), dec_str(Fraction(c, x), 20),
                               dec_str(run.target, 20), dec_str(e, 20)]))
    return "\n".join(lines) + "\n"


def density_run_payload(run: DensityRun) -> dict:
    return {
        "problem": run.problem.describe(),
        "grid": list(run.grid),
        "counts": list(run.counts),
        "target": dec_str(run.target),
        "errors": [dec_str(e) for e in run.errors],
        "densities": [dec_str(Fraction(c, x), 20)
                      for x, c in zip(run.grid, run.counts)],
        "fitted_exponent": run.fitted_exponent,
        "residual": run.residual,
        "gamma_hat": run.gamma_hat,
        "theoretical_gamma": None if run.theoretical_gamma is None
        else dec_str(run.theoretical_gamma),
    }


def density_run_json(run: DensityRun) -> str:
    return json.dumps(density_run_payload(run), indent=2, sort_keys=True)
