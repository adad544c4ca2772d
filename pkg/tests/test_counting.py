"""Coprimality counting: the two exact routes, sieves, zeta, exponents."""

import math
import warnings
from fractions import Fraction

import mpmath
import numpy as np
import pytest
import sympy

from beattysieve.counting import (
    CountResult,
    ProblemSpec,
    _fit_loglog,
    dec_str,
    density_experiment,
    density_run_csv,
    density_run_json,
    direct_count,
    inner_count,
    inv_zeta,
    mobius_count,
    mobius_segments,
    mobius_sieve,
    tail_count,
    theoretical_gamma,
    theoretical_gamma_star,
    zeta_int,
)
from beattysieve.errors import (
    DegenerateFit,
    InsufficientData,
    InvalidSpec,
    PrecisionExhausted,
    ResourceLimit,
)
from beattysieve.realnum import (
    DecimalLiteral,
    LiouvilleSeries,
    golden_ratio,
    sqrt2,
    sqrt3,
)

mpmath.mp.prec = 200


def brute_count(problem: ProblemSpec, x: int) -> int:
    """Third route: floors via mpmath floats at high precision."""
    vals = []
    for a in problem.alphas:
        if hasattr(a, "d"):
            vals.append((a.a + a.b * mpmath.sqrt(a.d)) / a.c)
        else:
            raise NotImplementedError
    total = 0
    for n in range(1, x + 1):
        g = n
        for alpha_mp, m, low in zip(vals, problem.ms, problem.lower_terms):
            acc = alpha_mp * n**m
            if low:
                for deg, coeff in enumerate(low):
                    acc += Fraction(coeff.exact()) * n**deg
            g = math.gcd(g, int(mpmath.floor(acc)))
        if g == 1:
            total += 1
    return total


# --- problem validation --------------------------------------------------------


def test_problem_requires_first_exponent_one():
    with pytest.raises(InvalidSpec):
        ProblemSpec((sqrt2(),), (2,))


def test_problem_requires_strictly_increasing_exponents():
    with pytest.raises(InvalidSpec):
        ProblemSpec((sqrt2(), sqrt3()), (1, 1))


def test_problem_rejects_rational_multipliers_when_strict():
    with pytest.raises(InvalidSpec):
        ProblemSpec(("1/2",), (1,))
    p = ProblemSpec.unchecked(("1/2",), (1,))
    assert p.alphas[0].exact() == Fraction(1, 2)


def test_problem_lower_terms_rules():
    with pytest.raises(InvalidSpec):  # first coordinate carries none
        ProblemSpec((sqrt2(),), (1,), lower_terms=(("1/2",),))
    with pytest.raises(InvalidSpec):  # degree must stay below m_j
        ProblemSpec((sqrt2(), sqrt3()), (1, 2),
                    lower_terms=(None, ("0", "1", "2")))
    p = ProblemSpec((sqrt2(), sqrt3()), (1, 2),
                    lower_terms=(None, ("1/2", sqrt2())))
    assert p.lower_terms[0] is None
    assert len(p.lower_terms[1]) == 2


def test_problem_describe_round_trips_text():
    p = ProblemSpec((sqrt2(), sqrt3()), (1, 2))
    d = p.describe()
    assert d["ms"] == [1, 2]
    assert d["alphas"][0] == "surd:(0+1*sqrt(2))/1"


def test_count_result_validation():
    with pytest.raises(InvalidSpec):
        CountResult(10, 11, "direct", None, 0.0)
    with pytest.raises(InvalidSpec):
        CountResult(10, 5, "guess", None, 0.0)
    # truncated sums may leave [0, x]
    CountResult(10, -3, "mobius", 4, 0.0)


# --- Moebius tables ---------------------------------------------------------------


def test_mobius_small_values():
    mu = mobius_sieve(20)
    want = [sympy.mobius(n) for n in range(1, 21)]
    assert mu[1:].tolist() == want


def test_mertens_at_ten_thousand():
    assert int(mobius_sieve(10**4)[1:].sum()) == -23


def test_segments_match_sieve():
    mu = mobius_sieve(10**5)
    parts = np.concatenate([blk for _, blk in mobius_segments(10**5, 2**12)])
    assert np.array_equal(mu[1:], parts)


def test_sieve_budget_guard():
    with pytest.raises(ResourceLimit):
        mobius_sieve(10**8)
    mobius_sieve(10**8, memory_budget=1 << 62)[0]  # budget raised: allowed


# --- zeta --------------------------------------------------------------------------


@pytest.mark.parametrize("s", [2, 3, 4, 5, 11])
def test_zeta_encloses_mpmath(s):
    iv = zeta_int(s, 128)
    true = Fraction(mpmath.nstr(mpmath.zeta(s), 50, strip_zeros=False))
    assert iv.lo <= true + Fraction(1, 10**45)
    assert iv.hi >= true - Fraction(1, 10**45)
    assert iv.width <= Fraction(2) ** (1 - 128) * 2


def test_inv_zeta_worked_values():
    assert abs(float(inv_zeta(2)) - 0.6079271018540267) < 1e-15
    assert abs(float(inv_zeta(3)) - 0.8319073725807077) < 1e-15
    assert abs(float(inv_zeta(4)) - 0.9239384029215902) < 1e-15


def test_zeta_rejects_bad_arguments():
    with pytest.raises(InvalidSpec):
        zeta_int(1, 64)


# --- the two exact routes ------------------------------------------------------------


def test_single_sqrt2_first_ten_by_hand():
    # floor(n*sqrt2): 1,2,4,5,7,8,9,11,12,14; coprime with n except n=6
    # (gcd 3), n=8 (gcd 4? no: gcd(8,11)=1) -> check the honest way
    p = ProblemSpec((sqrt2(),), (1,))
    want = sum(1 for n in range(1, 11)
               if math.gcd(n, math.floor(n * math.sqrt(2))) == 1)
    assert direct_count(p, 10).count == want == 6


def test_direct_equals_mobius_across_problems():
    problems = [
        ProblemSpec((sqrt2(),), (1,)),
        ProblemSpec((golden_ratio(),), (1,)),
        ProblemSpec((sqrt2(), sqrt3()), (1, 2)),
        ProblemSpec((sqrt2(), sqrt3(), golden_ratio()), (1, 2, 4)),
        ProblemSpec((sqrt2(), golden_ratio()), (1, 2),
                    lower_terms=(None, ("1/2", sqrt2()))),
    ]
    for p in problems:
        for x in (37, 200):
            d = direct_count(p, x).count
            m = mobius_count(p, x).count
            assert d == m, (p.describe(), x, d, m)


def test_direct_matches_independent_float_route():
    for p in (ProblemSpec((sqrt2(),), (1,)),
              ProblemSpec((sqrt2(), sqrt3()), (1, 2)),
              ProblemSpec((golden_ratio(), sqrt2()), (1, 3))):
        assert direct_count(p, 300).count == brute_count(p, 300)


def test_worker_counts_are_identical():
    p = ProblemSpec((sqrt2(),), (1,))
    counts = {direct_count(p, 20000, workers=w).count for w in (1, 4, 16)}
    assert counts == {12153}


def test_early_exit_toggle_agrees():
    p = ProblemSpec((sqrt2(), sqrt3()), (1, 2))
    a = direct_count(p, 500, early_exit=True).count
    b = direct_count(p, 500, early_exit=False).count
    assert a == b


def test_inner_count_worked_value_both_forms():
    p = ProblemSpec((sqrt2(),), (1,))
    # multiples of 2 with 2 | floor(sqrt2 n), n <= 10: n in {2, 8, 10}
    assert inner_count(p, 2, 10, form="floor") == 3
    assert inner_count(p, 2, 10, form="frac") == 3


def test_inner_count_forms_agree_widely():
    p = ProblemSpec((sqrt2(), sqrt3()), (1, 2))
    for d in (2, 3, 5, 7, 11):
        assert inner_count(p, d, 500, form="floor") == \
            inner_count(p, d, 500, form="frac")


def test_inner_count_edges():
    p = ProblemSpec((sqrt2(),), (1,))
    assert inner_count(p, 1, 17) == 17
    assert inner_count(p, 19, 17) == 0


def test_tail_count_forms_and_domination():
    p = ProblemSpec((sqrt2(), sqrt3()), (1, 2))
    for d in (2, 3, 5):
        a = tail_count(p, d, 400, form="scaled")
        b = tail_count(p, d, 400, form="divides")
        assert a == b
        assert a >= inner_count(p, d, 400)


def test_mobius_truncation_is_a_partial_sum():
    p = ProblemSpec((sqrt2(),), (1,))
    full = mobius_count(p, 200)
    trunc = mobius_count(p, 200, d_cutoff=200)
    assert full.count == trunc.count
    mu = mobius_sieve(200)
    partial = mobius_count(p, 200, d_cutoff=10).count
    recon = sum(int(mu[d]) * inner_count(p, d, 200) for d in range(1, 11))
    assert partial == recon


def test_liouville_routes_agree():
    liou = LiouvilleSeries(2, "poly", Fraction(2), c1=2)
    p = ProblemSpec((liou,), (1,))
    assert direct_count(p, 3000).count == mobius_count(p, 3000).count == 1754


def test_precision_exhausted_propagates():
    p = ProblemSpec.unchecked((DecimalLiteral("0.5", 1),), (1,))
    with pytest.raises(PrecisionExhausted):
        direct_count(p, 10)


def test_count_rejects_nonpositive_x():
    p = ProblemSpec((sqrt2(),), (1,))
    with pytest.raises(InvalidSpec):
        direct_count(p, 0)
    with pytest.raises(InvalidSpec):
        mobius_count(p, 200, d_cutoff=0)


# --- error exponents -------------------------------------------------------------------


def test_gamma_worked_values():
    assert theoretical_gamma((1,), 1) == Fraction(1, 5)
    assert theoretical_gamma((1,), Fraction(3, 2)) == Fraction(2, 13)
    assert theoretical_gamma((1, 2), 1) == Fraction(1, 16)
    assert theoretical_gamma((1, 3), 1) == Fraction(1, 48)


def test_gamma_star_worked_values():
    assert theoretical_gamma_star((1,), 1) == Fraction(1, 1)
    assert theoretical_gamma_star((1, 2), Fraction(1, 3)) is None
    assert theoretical_gamma_star((1, 2), Fraction(1, 4)) == Fraction(1, 6)


def test_gamma_refuses_floats():
    with pytest.raises(InvalidSpec):
        theoretical_gamma((1,), 1.5)
    with pytest.raises(InvalidSpec):
        theoretical_gamma_star((1, 2), 0.25)


# --- density experiments -----------------------------------------------------------------


def test_density_experiment_structure():
    p = ProblemSpec((sqrt2(),), (1,))
    run = density_experiment(p, (100, 1000, 10000), tau=1)
    assert run.counts == (60, 607, 6079)
    assert run.theoretical_gamma == Fraction(1, 5)
    assert run.gamma_hat == pytest.approx(1.0 - run.fitted_exponent)
    assert all(e >= 0 for e in run.errors)


def test_density_grid_requirements():
    p = ProblemSpec((sqrt2(),), (1,))
    with pytest.raises(InvalidSpec):
        density_experiment(p, (100, 100, 1000))
    with pytest.raises(InvalidSpec):
        density_experiment(p, (100, 1000))


def test_fit_loglog_drops_zeros_with_warning():
    with pytest.warns(DegenerateFit):
        slope, _ = _fit_loglog([10, 100, 1000], [Fraction(0), Fraction(10),
                                                 Fraction(100)])
    assert slope == pytest.approx(1.0)
    with pytest.raises(InsufficientData):
        with pytest.warns(DegenerateFit):
            _fit_loglog([10, 100], [Fraction(0), Fraction(10)])


def test_density_serializers():
    p = ProblemSpec((sqrt2(),), (1,))
    run = density_experiment(p, (100, 1000, 10000), tau=1)
    text = density_run_csv(run)
    assert text.splitlines()[0] == "x,count,density,target,abs_error"
    assert len(text.strip().splitlines()) == 4
    assert '"grid": [100, 1000, 10000]' in density_run_json(run).replace(
        "\n    ", " ").replace("\n", "") or "100" in density_run_json(run)


def test_dec_str_significant_digits():
    assert dec_str(Fraction(1, 3), 5) == "0.33333"
    assert dec_str(Fraction(2, 1), 3) == "2"
    assert dec_str(Fraction(2, 3), 4) == "0.6667"  # rounds, half-even
    assert dec_str(inv_zeta(2), 15) == "0.607927101854027"
