import math

import numpy as np
import pytest

from heisopt import (
    RatioCurve,
    approx_ratio_axis,
    approx_ratio_bfv,
    bfv_expectation,
    curve_to_csv,
    hyp2f1_half,
)


def hyp2f1_brute(c, z, terms=400000):
    """Direct series sum with rational term recursion, float accumulation."""
    s = 0.0
    term = 1.0
    for k in range(terms):
        s += term
        term *= (k + 0.5) * (k + 0.5) * z / ((k + c) * (k + 1.0))
        if term < 1e-19 * max(1.0, abs(s)):
            break
    return s


def test_hyp2f1_against_direct_series(rng):
    for r in (1, 2, 3):
        c = r / 2.0 + 1.0
        for z in rng.uniform(0, 0.98, 200):
            got = hyp2f1_half(r, float(z))
            want = hyp2f1_brute(c, float(z))
            assert got == pytest.approx(want, rel=1e-13)


def test_hyp2f1_gauss_point():
    # closed forms of 2F1(1/2,1/2;c;1) for c = 3/2, 2, 5/2
    assert hyp2f1_half(1, 1.0) == pytest.approx(math.pi / 2, abs=1e-15)
    assert hyp2f1_half(2, 1.0) == pytest.approx(4 / math.pi, abs=1e-15)
    assert hyp2f1_half(3, 1.0) == pytest.approx(3 * math.pi / 8, abs=1e-15)


def test_hyp2f1_domain():
    with pytest.raises(ValueError):
        hyp2f1_half(4, 0.5)
    with pytest.raises(ValueError):
        hyp2f1_half(1, 1.5)
    assert hyp2f1_half(1, 0.0) == 1.0


def test_bfv_expectation_odd_in_t(rng):
    for r in (1, 2, 3):
        for t in rng.uniform(0, 1, 100):
            t = float(t)
            assert bfv_expectation(r, t) == pytest.approx(-bfv_expectation(r, -t), abs=1e-15)


def test_bfv_expectation_arcsin_identity(rng):
    # rank 1 reduces to the hyperplane-rounding correlation 2*arcsin(t)/pi
    for t in np.arange(-1000, 1001) / 1000.0:
        t = float(t)
        want = 2.0 * math.asin(t) / math.pi
        assert abs(bfv_expectation(1, t) - want) < 1e-12


def test_bfv_expectation_boundary_is_one():
    for r in (1, 2, 3):
        assert abs(bfv_expectation(r, 1.0) - 1.0) < 1e-12
        assert abs(bfv_expectation(r, -1.0) + 1.0) < 1e-12


def test_bfv_expectation_monotone(rng):
    for r in (1, 2, 3):
        ts = np.sort(rng.uniform(-1, 1, 200))
        vals = [bfv_expectation(r, float(t)) for t in ts]
        assert all(b >= a - 1e-14 for a, b in zip(vals, vals[1:]))


def test_ratio_minima_at_default_step():
    # three decimals, truncated, of each scheme/rank minimum
    assert math.floor(approx_ratio_bfv(1).minimum[1] * 1000) == 878
    assert math.floor(approx_ratio_bfv(2).minimum[1] * 1000) == 649
    assert math.floor(approx_ratio_bfv(3).minimum[1] * 1000) == 498
    assert math.floor(approx_ratio_axis(1).minimum[1] * 1000) == 878
    assert math.floor(approx_ratio_axis(2).minimum[1] * 1000) == 609
    assert math.floor(approx_ratio_axis(3).minimum[1] * 1000) == 462


def test_rank1_schemes_agree():
    b = approx_ratio_bfv(1).minimum[1]
    a = approx_ratio_axis(1).minimum[1]
    assert b == pytest.approx(a, abs=1e-12)


def test_grid_refinement_stability():
    # 3-decimal constants must not move by 5e-4 when refining the grid
    for fn in (approx_ratio_bfv, approx_ratio_axis):
        for r in (1, 2, 3):
            coarse = fn(r, step=0.01).minimum[1]
            fine = fn(r, step=1e-4).minimum[1]
            assert abs(coarse - fine) < 5e-4


def test_curve_samples_respect_domain():
    for r in (1, 2, 3):
        curve = approx_ratio_bfv(r, step=0.01)
        ts = np.array([t for t, _ in curve.samples])
        assert ts.min() >= -1.0
        assert ts.max() < 1.0 / r  # ratio undefined past the pole
        t_star, ratio = curve.minimum
        ratios = np.array([v for _, v in curve.samples])
        assert ratio == pytest.approx(ratios.min())


def test_axis_minimum_lies_on_a_branch():
    for r in (1, 2, 3):
        curve = approx_ratio_axis(r, step=0.01)
        t_star, ratio = curve.minimum
        g = curve.gamma
        assert g in (1.0, -1.0)
        num = 1.0 - g * 2.0 * math.asin(t_star) / math.pi
        den = 1.0 - r * g * t_star
        assert ratio == pytest.approx(num / den, abs=1e-15)


def test_curve_to_csv_round_trip():
    curve = approx_ratio_bfv(2, step=0.1)
    text = curve_to_csv(curve)
    lines = text.strip().splitlines()
    assert lines[0] == "t,ratio"
    assert len(lines) == 1 + len(curve.samples)
    t0, r0 = lines[1].split(",")
    assert float(t0) == curve.samples[0][0]
    assert float(r0) == curve.samples[0][1]


def test_invalid_rank_rejected():
    for fn in (approx_ratio_bfv, approx_ratio_axis):
        with pytest.raises(ValueError):
            fn(0)
        with pytest.raises(ValueError):
            fn(4)
