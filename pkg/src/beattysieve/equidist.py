"""Equidistribution toolkit for scaled fractional-part sequences.

Generates the point sets ({a_j d^{m_j-1} n^{m_j} + g_j(dn)/d})_{j<=k},
measures their irregularity three ways — exact extreme discrepancy in
dimension one, box-witness lower bounds in any dimension, and the
harmonic-sum upper bound through exponential sums — and evaluates the
explicit inequalities (linear, quadratic, reciprocal-sum, and
monotonicity checks) that make those sums estimable.  Everything here
measures; the only asserted facts are the certified ones (floor-pinned
fractional parts, exact-rational inequality checks).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

import numpy as np

from .counting import ProblemSpec, _as_exact, dec_str, form_scales, \
    scaled_forms
from .dioph import convergents
from .errors import InvalidSpec, NoConvergent, ResourceLimit
from .realnum import DEFAULT_MAX_BITS, LinearForm, SpecLike, as_spec, \
    dist_nearest_int

# np.longdouble is 80-bit extended (or binary128) on the supported
# platforms; phases pass through it so per-term rounding stays far below
# the advertised 2^-50 budget.  If it degrades to binary64 the budget
# widens honestly.
_LD_OK = np.finfo(np.longdouble).nmant > 52
_TERM_ERR = 2.0 ** -50 if _LD_OK else 2.0 ** -47
_TWO_PI_LD = 2 * np.arccos(np.longdouble(-1.0))


def _cis_sum(phases: Sequence[float]) -> complex:
    """Sum of e(phase) over unit-interval phases, extended-precision cis."""
    t = np.asarray(phases, dtype=np.longdouble) * _TWO_PI_LD
    return complex(float(np.cos(t).sum()), float(np.sin(t).sum()))


# ---------------------------------------------------------------------------
# point sets


@dataclass(frozen=True, eq=False)
class PointSet:
    """N points in [0,1)^dim with a stated coordinate error radius.

    All discrepancy functionals in this module are computed on the stored
    double-precision coordinates; coord_error bounds the distance from
    each stored coordinate to the real it represents, so a reported value
    transfers to the true sequence up to boundary crossings within that
    radius.
    """

    dim: int
    points: np.ndarray
    provenance: dict
    coord_error: float = 2.0 ** -52

    def __post_init__(self) -> None:
        arr = np.ascontiguousarray(self.points, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[1] != self.dim:
            raise InvalidSpec("points must be an (N, dim) array")
        if arr.size and (not np.isfinite(arr).all()
                         or arr.min() < 0.0 or arr.max() >= 1.0):
            raise InvalidSpec("coordinates must lie in [0, 1)")
        arr.setflags(write=False)
        object.__setattr__(self, "points", arr)

    @property
    def N(self) -> int:
        return self.points.shape[0]

    @classmethod
    def synthetic(cls, points, tag: str = "synthetic",
                  coord_error: float = 0.0) -> "PointSet":
        try:
            arr = np.atleast_2d(np.asarray(points, dtype=np.float64))
        except ValueError as exc:
            raise InvalidSpec(f"points are not rectangular: {exc}") from exc
        return cls(arr.shape[1], arr, {"kind": "synthetic", "tag": tag},
                   coord_error)


def nu_sequence(problem: ProblemSpec, d: int, N: int, *,
                out_bits: int = 60,
                max_bits: int = DEFAULT_MAX_BITS) -> PointSet:
    """The first N scaled fractional-part vectors for modulus d.

    Point n has coordinates {a_j d^{m_j-1} n^{m_j} + g_j(dn)/d}; each is
    floor-certified and stored as a double within 2^-out_bits + one ulp
    of the true value.
    """
    if d < 1:
        raise InvalidSpec("d must be >= 1")
    if N < 0:
        raise InvalidSpec("N must be >= 0")
    forms = scaled_forms(problem, d, max_bits=max_bits)
    pts = np.empty((N, problem.k), dtype=np.float64)
    err = 2.0 ** -52
    for n in range(1, N + 1):
        for j, (lf, exps) in enumerate(forms):
            frac, e = lf.frac_unit(form_scales(d, n, exps), out_bits)
            pts[n - 1, j] = frac
            err = max(err, e)
    return PointSet(problem.k, pts,
                    {"kind": "scaled_fracs", "problem": problem.describe(),
                     "d": d, "N": N}, err)


# ---------------------------------------------------------------------------
# discrepancy: exact (1D), box-witness lower bound, harmonic upper bound


def _values_1d(ps_or_values) -> list:
    if isinstance(ps_or_values, PointSet):
        if ps_or_values.dim != 1:
            raise InvalidSpec("exact discrepancy needs dim = 1")
        seq = ps_or_values.points[:, 0].tolist()
    else:
        seq = list(ps_or_values)
    if not seq:
        raise InvalidSpec("need at least one point")
    vals = sorted(Fraction(v) for v in seq)
    if vals[0] < 0 or vals[-1] >= 1:
        raise InvalidSpec("points must lie in [0, 1)")
    return vals


def discrepancy_exact_1d(ps_or_values) -> Fraction:
    """Exact extreme discrepancy sup |count/N - length| over [a, b).

    The supremum over all half-open subintervals of [0,1) is attained in
    the limit at interval ends drawn from the point values and their
    one-sided neighborhoods; a single sorted scan inspects every such
    critical pair via running prefix maxima.  Input floats are converted
    to exact rationals, so the returned Fraction is the true supremum
    for the stored coordinates.
    """
    vals = _values_1d(ps_or_values)
    N = len(vals)
    # distinct values with cumulative counts below (strict) and through
    distinct = []
    c_through = []
    for v in vals:
        if distinct and distinct[-1] == v:
            c_through[-1] += 1
        else:
            distinct.append(v)
            c_through.append(c_through[-1] + 1 if c_through else 1)
    over = Fraction(0)
    under = Fraction(0)
    oa_max = None        # max of v_i - C<(v_i)/N over i <= current j
    amax = Fraction(0)   # best left end for gaps: a = 0 or just past v_i
    for j, v in enumerate(distinct):
        c_thru = Fraction(c_through[j], N)
        c_below = Fraction(c_through[j - 1] if j else 0, N)
        left = v - c_below
        oa_max = left if oa_max is None or left > oa_max else oa_max
        over = max(over, c_thru - v + oa_max)
        under = max(under, v - c_below + amax)
        amax = max(amax, c_thru - v)
    under = max(under, amax)             # right end at 1
    return max(over, under)


@dataclass(frozen=True)
class BoxLower:
    """A witnessed lower bound for the extreme discrepancy."""
    value: float
    sampled: bool
    boxes_checked: int


def discrepancy_box_lower(ps: PointSet, *, budget: int = 4_000_000,
                          samples: int = 20_000, seed: int = 0) -> BoxLower:
    """Maximize |count/N - volume| over origin-anchored boxes [0, b).

    Upper corners run over every point coordinate, its one-sided upper
    limit, and 1, per axis — the critical grid on which the supremum
    over such boxes is attained.  In dimension one this routine defers
    to the exact interval scan (which also searches two-sided intervals).
    Any returned value is a valid lower bound for the extreme
    discrepancy; when the critical grid exceeds the budget a seeded
    random subgrid is scanned instead and the result says so.
    """
    N = ps.N
    if N < 1:
        raise InvalidSpec("need at least one point")
    if ps.dim == 1:
        exact = discrepancy_exact_1d(ps)
        distinct = len(set(ps.points[:, 0].tolist()))
        return BoxLower(float(exact), False, 2 * distinct + 2)
    axes = []     # per axis: sorted distinct values
    for j in range(ps.dim):
        axes.append(np.unique(ps.points[:, j]))
    n_boxes = 1
    for vj in axes:
        n_boxes *= 2 * len(vj) + 1
    if n_boxes <= budget:
        return _box_lower_full(ps, axes, n_boxes)
    return _box_lower_sampled(ps, axes, samples, seed)


def _box_corner_candidates(vj: np.ndarray):
    """(volume coordinate, points counted strictly below cut) per option."""
    cands = [(float(v), i) for i, v in enumerate(vj)]          # b = v
    cands += [(float(v), i + 1) for i, v in enumerate(vj)]     # b = v+
    cands.append((1.0, len(vj)))                               # b = 1
    return cands


def _ranks(ps: PointSet, axes) -> np.ndarray:
    out = np.empty(ps.points.shape, dtype=np.intp)
    for j, vj in enumerate(axes):
        out[:, j] = np.searchsorted(vj, ps.points[:, j])
    return out


def _below_cut_table(ps: PointSet, axes) -> np.ndarray:
    """C[c_1,...,c_k] = number of points with rank_j < c_j on every axis."""
    ranks = _ranks(ps, axes)
    hist = np.zeros(tuple(len(vj) for vj in axes), dtype=np.int64)
    np.add.at(hist, tuple(ranks[:, j] for j in range(ps.dim)), 1)
    for axis in range(ps.dim):
        np.cumsum(hist, axis=axis, out=hist)
    return np.pad(hist, [(1, 0)] * ps.dim)


def _box_lower_full(ps: PointSet, axes, n_boxes: int) -> BoxLower:
    table = _below_cut_table(ps, axes)
    cuts = []
    vols = []
    for vj in axes:
        cands = _box_corner_candidates(vj)
        cuts.append(np.array([c for _, c in cands], dtype=np.intp))
        vols.append(np.array([v for v, _ in cands]))
    counts = table[np.ix_(*cuts)]
    vol = vols[0]
    for vv in vols[1:]:
        vol = np.multiply.outer(vol, vv)
    dev = np.abs(counts / ps.N - vol)
    return BoxLower(float(dev.max()), False, n_boxes)


def _box_lower_sampled(ps: PointSet, axes, samples: int,
                       seed: int) -> BoxLower:
    rng = np.random.default_rng(seed)
    cand_lists = [_box_corner_candidates(vj) for vj in axes]
    ranks = _ranks(ps, axes)
    N = ps.N
    best = 0.0
    for _ in range(samples):
        vol = 1.0
        mask = np.ones(N, dtype=bool)
        for j, cands in enumerate(cand_lists):
            val, cut = cands[int(rng.integers(len(cands)))]
            vol *= val
            mask &= ranks[:, j] < cut
        dev = abs(int(mask.sum()) / N - vol)
        if dev > best:
            best = dev
    return BoxLower(best, True, samples)


@dataclass(frozen=True)
class DiscrepancyReport:
    """Lower/upper sandwich around the discrepancy of one point set."""
    N: int
    exact: Optional[float]
    box_lower: Optional[float]
    et_upper: float
    H: int
    weyl_terms: tuple
    C: float
    box_lower_sampled: bool = False

    def __post_init__(self) -> None:
        if self.box_lower is not None and self.box_lower > self.et_upper:
            raise InvalidSpec("lower bound exceeds upper bound")
        if self.exact is not None:
            if self.box_lower is not None and self.box_lower > self.exact:
                raise InvalidSpec("box lower bound exceeds the exact value")
            if self.exact > self.et_upper:
                raise InvalidSpec("exact value exceeds the upper bound")


def _half_lattice(k: int, H: int):
    """One representative of each +-h pair, 0 < max|h_j| <= H."""
    for h in product(range(-H, H + 1), repeat=k):
        for c in h:
            if c > 0:
                yield h
                break
            if c < 0:
                break


def et_koksma_upper(ps: PointSet, H: int, C: Optional[float] = None, *,
                    budget: int = 4_000_000) -> DiscrepancyReport:
    """Harmonic upper bound C^k (1/H + (1/N) sum_h |S_h| / r(h)).

    The sum runs over integer frequency vectors 0 < max|h_j| <= H with
    r(h) = prod max(|h_j|, 1); opposite frequencies have conjugate sums,
    so only one representative per pair is evaluated and counted twice.
    weyl_terms records (h, |S_h|, r(h)) for each representative.  The
    per-h reduction is a fixed-order pairwise sum, so results are
    deterministic.  C defaults to 3 in dimension one and 3^k above.
    """
    if H < 1:
        raise InvalidSpec("H must be >= 1")
    N = ps.N
    if N < 1:
        raise InvalidSpec("need at least one point")
    k = ps.dim
    if (2 * H + 1) ** k - 1 > 2 * budget:
        raise ResourceLimit(
            f"frequency lattice (2*{H}+1)^{k} exceeds the budget")
    if C is None:
        C = 3.0 if k == 1 else 3.0 ** k
    if C <= 0:
        raise InvalidSpec("C must be positive")
    pts = ps.points
    total = 0.0
    terms = []
    for h in _half_lattice(k, H):
        phases = pts @ np.asarray(h, dtype=np.float64)
        s = np.exp(2j * math.pi * phases).sum()
        mag = abs(complex(s))
        r = 1
        for c in h:
            r *= max(abs(c), 1)
        terms.append((h, mag, r))
        total += 2.0 * mag / r
    rhs = C ** k * (1.0 / H + total / N)
    return DiscrepancyReport(N, None, None, rhs, H, tuple(terms), C)


def discrepancy_report(ps: PointSet, H: int, C: Optional[float] = None, *,
                       budget: int = 4_000_000,
                       seed: int = 0) -> DiscrepancyReport:
    """Assemble the exact value (dim 1), box lower bound, and upper bound."""
    upper = et_koksma_upper(ps, H, C, budget=budget)
    box = discrepancy_box_lower(ps, budget=budget, seed=seed)
    exact = float(discrepancy_exact_1d(ps)) if ps.dim == 1 else None
    return DiscrepancyReport(ps.N, exact, box.value, upper.et_upper, H,
                             upper.weyl_terms, upper.C, box.sampled)


# ---------------------------------------------------------------------------
# exponential sums


@dataclass(frozen=True)
class WeylSum:
    value: complex
    error_bound: float
    N: int

    def __abs__(self) -> float:
        return abs(self.value)


def weyl_sum(problem: ProblemSpec, d: int, hvec: Sequence[int], N: int, *,
             out_bits: int = 64,
             max_bits: int = DEFAULT_MAX_BITS) -> WeylSum:
    """sum_{n<=N} e(sum_j h_j (a_j d^{m_j-1} n^{m_j} + g_j(dn)/d)).

    Because the h_j are integers the phase equals the pairing of h with
    the scaled fractional-part vector modulo 1, so this is the Fourier
    coefficient of the corresponding point set.  Phases are certified to
    2^-out_bits, evaluated in extended precision, and the accumulated
    rounding is covered by error_bound = N * 2^-50.
    """
    if d < 1:
        raise InvalidSpec("d must be >= 1")
    if N < 1:
        raise InvalidSpec("N must be >= 1")
    hvec = [int(h) for h in hvec]
    if len(hvec) != problem.k:
        raise InvalidSpec("need one frequency per coordinate")
    if not any(hvec):
        raise InvalidSpec("the frequency vector must be nonzero")
    coefs = []
    exps = []        # (j, e) with e = exponent in n; scale h_j d^(e-1) n^e
    for j, alpha in enumerate(problem.alphas):
        coefs.append(alpha)
        exps.append((j, problem.ms[j]))
        coeffs = problem.lower_terms[j]
        if coeffs:
            for e in range(1, len(coeffs)):
                coefs.append(coeffs[e])
                exps.append((j, e))
            c0 = coeffs[0].exact()
            if c0 is None:
                raise InvalidSpec(
                    "the constant lower-order coefficient must be exact")
            if c0 != 0:
                c0d = c0 / d
                coefs.append(Fraction(c0d))
                exps.append((j, 0))
    lf = LinearForm(coefs, max_bits=max_bits)
    phases = []
    for n in range(1, N + 1):
        scales = [hvec[j] * (d ** (e - 1) * n ** e if e else 1)
                  for j, e in exps]
        phases.append(lf.phase_frac(scales, out_bits)[0])
    return WeylSum(_cis_sum(phases), N * _TERM_ERR, N)


@dataclass(frozen=True)
class WeylBoundReport:
    """Measured exponential sum against its two analytic bound shapes.

    delta = |h|/q + 1/N + q/N^m + gcd(q,h)/N^(m-1) exactly; the little-o
    factor is rendered as the heuristic N^epsilon and labeled by the eps
    field.  The report asserts nothing — ratio says how sharp the bound
    shape was.
    """
    m: int
    h: int
    q: int
    N: int
    delta: Fraction
    bound_little_o: float
    bound_log: float
    actual: float
    ratio: float
    eps: float
    sum_error_bound: float

    def __post_init__(self) -> None:
        expect = (Fraction(abs(self.h), self.q) + Fraction(1, self.N)
                  + Fraction(self.q, self.N ** self.m)
                  + Fraction(math.gcd(self.q, abs(self.h)),
                             self.N ** (self.m - 1)))
        if self.delta != expect:
            raise InvalidSpec("delta disagrees with its defining formula")


def _phases_for_poly(spec, m: int, h: int, N: int, lower_poly,
                     max_bits: int) -> list:
    coefs = [as_spec(spec)]
    exps = [m]
    if lower_poly:
        for e, c in enumerate(lower_poly):
            if e >= m:
                raise InvalidSpec("lower polynomial degree must stay below m")
            coefs.append(as_spec(c))
            exps.append(e)
    lf = LinearForm(coefs, max_bits=max_bits)
    out = []
    for n in range(1, N + 1):
        scales = [h * n ** m] + [n ** e for e in exps[1:]]
        out.append(lf.phase_frac(scales, 64)[0])
    return out


def weyl_bound_report(spec: SpecLike, m: int, h: int, N: int,
                      lower_poly: Sequence = (), *,
                      q: Optional[int] = None, eps: float = 0.05,
                      max_bits: int = DEFAULT_MAX_BITS) -> WeylBoundReport:
    """Evaluate |sum e(h a n^m + g(n))| against its bound shapes.

    q is a denominator with |a - p/q| < 1/q^2 — any convergent works;
    by default the largest convergent denominator <= N is used.
    """
    if m < 2:
        raise InvalidSpec("m must be >= 2")
    if h == 0:
        raise InvalidSpec("h must be nonzero")
    if N < 1:
        raise InvalidSpec("N must be >= 1")
    spec = as_spec(spec)
    if q is None:
        convs = convergents(spec, N, max_bits=max_bits)
        if not convs:
            raise NoConvergent("no convergent denominator within N")
        q = convs[-1].q
    if q < 1:
        raise InvalidSpec("q must be >= 1")
    delta = (Fraction(abs(h), q) + Fraction(1, N) + Fraction(q, N ** m)
             + Fraction(math.gcd(q, abs(h)), N ** (m - 1)))
    mm = m * m - m
    bound_o = float(N) ** (1.0 + eps) * float(delta) ** (1.0 / mm)
    bound_log = N * math.log(N) * float(delta) ** (1.0 / (mm + 2))
    phases = _phases_for_poly(spec, m, h, N, lower_poly, max_bits)
    actual = abs(_cis_sum(phases))
    return WeylBoundReport(m, h, q, N, delta, bound_o, bound_log, actual,
                           actual / bound_o, eps, N * _TERM_ERR)


# ---------------------------------------------------------------------------
# explicit inequality formulas


def linear_bound(q: int, h: int, N: int) -> float:
    """The bound shape N(|h|/q + q/N) for linear exponential sums."""
    if q < 1 or N < 1:
        raise InvalidSpec("q and N must be >= 1")
    if h == 0:
        raise InvalidSpec("h must be nonzero")
    return float(Fraction(abs(h) * N, q) + q)


@dataclass(frozen=True)
class LinearSumCheck:
    """Certified check of |sum e(h a n)| <= min(N, 1/(2 ||h a||)).

    certified means the float sum plus its rounding budget stays below
    the conservative cap min(N, 1/(2 dist_hi)) — an exact-rational
    comparison, so True is a proof for the stored modulus distance.
    """
    h: int
    N: int
    actual: float
    sum_error: float
    cap: float
    certified: bool


def linear_sum_exact(spec: SpecLike, h: int, N: int, *,
                     dist_bits: int = 64,
                     max_bits: int = DEFAULT_MAX_BITS) -> LinearSumCheck:
    """Evaluate a linear exponential sum against its exact reciprocal cap."""
    if h == 0:
        raise InvalidSpec("h must be nonzero")
    if N < 1:
        raise InvalidSpec("N must be >= 1")
    spec = as_spec(spec)
    prec = 64 + (abs(h) * N).bit_length()
    lo, hi = spec.bounds(prec)
    unit = 1 << prec
    step = (h * ((lo + hi) // 2)) % unit
    phase_err = (abs(h) * (hi - lo + 1)) / unit * N
    acc = 0
    phases = []
    for _ in range(N):
        acc = (acc + step) % unit
        phases.append(acc / unit)
    s = _cis_sum(phases)
    sum_error = N * _TERM_ERR + 2 * math.pi * phase_err
    dist = dist_nearest_int(spec, abs(h), bits=dist_bits, max_bits=max_bits)
    if dist.hi == 0:
        cap = Fraction(N)
    else:
        cap = min(Fraction(N), 1 / (2 * dist.hi))
    actual = abs(s)
    certified = Fraction(actual) + Fraction(sum_error) <= cap
    return LinearSumCheck(h, N, actual, sum_error, float(cap), certified)


@dataclass(frozen=True)
class QuadraticBoundReport:
    """|S|^2 against sum_v min(N, 1/||2 h d v a||), constant 1."""
    h: int
    d: int
    N: int
    rhs: float
    bound: float
    actual: float
    ratio_sq: float
    sum_error_bound: float


def quadratic_bound(spec: SpecLike, h: int, d: int, N: int,
                    g: Sequence = (), *, dist_bits: int = 48,
                    max_bits: int = DEFAULT_MAX_BITS) -> QuadraticBoundReport:
    """Reciprocal-distance bound for a quadratic-phase exponential sum.

    rhs sums min(N, 1/||2 h d v a||) for v <= N using the upper end of
    the certified distance enclosure (an under-estimate of the true
    right side, so observed ratios only overstate).  actual is
    |sum_{n<=N} e(h d a n^2 + g(n))| with g linear at most.
    """
    if h == 0:
        raise InvalidSpec("h must be nonzero")
    if d < 1 or N < 1:
        raise InvalidSpec("d and N must be >= 1")
    if len(tuple(g)) > 2:
        raise InvalidSpec("g must be a linear polynomial")
    spec = as_spec(spec)
    rhs = Fraction(0)
    for v in range(1, N + 1):
        dist = dist_nearest_int(spec, abs(2 * h * d * v), bits=dist_bits,
                                max_bits=max_bits)
        if dist.hi == 0:
            rhs += N
        else:
            rhs += min(Fraction(N), 1 / dist.hi)
    coefs = [spec]
    exps = [2]
    for e, c in enumerate(g):
        coefs.append(as_spec(c))
        exps.append(e)
    lf = LinearForm(coefs, max_bits=max_bits)
    phases = []
    hd = h * d
    for n in range(1, N + 1):
        scales = [hd * n * n] + [n ** e for e in exps[1:]]
        phases.append(lf.phase_frac(scales, 64)[0])
    actual = abs(_cis_sum(phases))
    rhs_f = float(rhs)
    return QuadraticBoundReport(h, d, N, rhs_f, math.sqrt(rhs_f), actual,
                                actual * actual / rhs_f, N * _TERM_ERR)


@dataclass(frozen=True)
class ReciprocalSumReport:
    """sum_{v<=K} min(N, 1/||v a||) against (N + q log q)(K/q + 1)."""
    K: int
    N: int
    q: int
    exact_sum: float
    enclosure: tuple
    lemma_bound: float

    @property
    def ratio(self) -> float:
        return self.exact_sum / self.lemma_bound


def reciprocal_sum(spec: SpecLike, K: int, N: int, *,
                   q: Optional[int] = None, dist_bits: int = 60,
                   max_bits: int = DEFAULT_MAX_BITS) -> ReciprocalSumReport:
    """Exact reciprocal-distance sum and its convergent-driven bound.

    The bound uses (N + q ln q)(K/q + 1) with implied constant 1; q
    defaults to the largest convergent denominator <= K.
    """
    if K < 1 or N < 1:
        raise InvalidSpec("K and N must be >= 1")
    spec = as_spec(spec)
    if q is None:
        convs = convergents(spec, K, max_bits=max_bits)
        if not convs:
            raise NoConvergent("no convergent denominator within K")
        q = convs[-1].q
    if q < 1:
        raise InvalidSpec("q must be >= 1")
    lo_sum = Fraction(0)
    hi_sum = Fraction(0)
    for v in range(1, K + 1):
        dist = dist_nearest_int(spec, v, bits=dist_bits, max_bits=max_bits)
        hi_sum += Fraction(N) if dist.lo <= 0 else min(Fraction(N),
                                                       1 / dist.lo)
        lo_sum += Fraction(N) if dist.hi == 0 else min(Fraction(N),
                                                       1 / dist.hi)
    bound = (N + q * math.log(q)) * (K / q + 1.0)
    mid = (lo_sum + hi_sum) / 2
    return ReciprocalSumReport(K, N, q, float(mid),
                               (float(lo_sum), float(hi_sum)), bound)


_MONOTONE_VARIANTS = {
    "u_over_v": "u_over_v",
    "v_over_u": "v_over_u",
    "lemma28": "u_over_v",
    "lemma29": "v_over_u",
}


def monotone_check(u, v, M: int, variant: str) -> bool:
    """Is the merged-exponent sequence nondecreasing for m = 2..M?

    u_over_v checks b_m = (u / v^(m-1))^(1/(m^2-m)); v_over_u checks
    b_m = (v^m / u)^(1/(m^2-m+2)).  Raising the step inequality
    b_{m+1} >= b_m to the (positive) product of the two exponent
    denominators turns it into an exact rational comparison:
    v^(m-1) >= u^2 for the first family, u^(2m) >= v^(m^2+m-2) for the
    second.  No rounding is involved.
    """
    uf = _as_exact(u, "u")
    vf = _as_exact(v, "v")
    if uf <= 0:
        raise InvalidSpec("u must be positive")
    if vf < 1:
        raise InvalidSpec("v must be >= 1")
    M = int(M)
    if M < 2:
        raise InvalidSpec("M must be >= 2")
    key = _MONOTONE_VARIANTS.get(variant)
    if key is None:
        raise InvalidSpec(f"unknown variant {variant!r}")
    if key == "u_over_v":
        return all(vf ** (m - 1) >= uf * uf for m in range(2, M))
    return all(uf ** (2 * m) >= vf ** (m * m + m - 2) for m in range(2, M))


# ---------------------------------------------------------------------------
# serialization


def discrepancy_report_payload(report: DiscrepancyReport) -> dict:
    return {
        "N": report.N,
        "exact": report.exact,
        "box_lower": report.box_lower,
        "box_lower_sampled": report.box_lower_sampled,
        "et_upper": report.et_upper,
        "H": report.H,
        "C": report.C,
        "weyl_terms": [{"h": list(h), "magnitude": mag, "r": r}
                       for h, mag, r in report.weyl_terms],
    }


def discrepancy_report_json(report: DiscrepancyReport) -> str:
    return json.dumps(discrepancy_report_payload(report), indent=2,
                      sort_keys=True)


def weyl_terms_csv(report: DiscrepancyReport) -> str:
    if not report.weyl_terms:
        return "magnitude,r_h\n"
    k = len(report.weyl_terms[0][0])
    lines = [",".join(f"h_{j + 1}" for j in range(k)) + ",magnitude,r_h"]
    for h, mag, r in report.weyl_terms:
        lines.append(",".join(str(c) for c in h) + f",{mag!r},{r}")
    return "\n".join(lines) + "\n"


def weyl_bound_payload(report: WeylBoundReport) -> dict:
    return {
        "m": report.m,
        "h": report.h,
        "q": report.q,
        "N": report.N,
        "delta": dec_str(report.delta),
        "delta_float": float(report.delta),
        "bound_little_o": report.bound_little_o,
        "bound_log": report.bound_log,
        "actual": report.actual,
        "ratio": report.ratio,
        "eps_heuristic": report.eps,
        "sum_error_bound": report.sum_error_bound,
    }


def weyl_bound_json(report: WeylBoundReport) -> str:
    return json.dumps(weyl_bound_payload(report), indent=2, sort_keys=True)
