import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import almostconv as ac
from almostconv import cesaro
from almostconv.errors import EmptyGrid, WindowOutOfRange
from almostconv.signals import (
    DiscreteSignal,
    Extension,
    Sidedness,
    WindowSchedule,
    fejer_kernel,
)

from conftest import brute_window_mean

ONE = Sidedness.ONE_SIDED
TWO = Sidedness.TWO_SIDED


def test_window_average_constant():
    sig = ac.render_discrete(ac.TrigPoly(((1.0, 0.0),)), 0, 100)
    for k, shift in [(3, 10), (7, 50)]:
        assert cesaro.window_average(sig, k, shift) == pytest.approx(1.0)
        assert cesaro.window_average(sig, k, shift, ONE) == pytest.approx(1.0)


def test_window_average_alternating_cancels():
    sig = ac.render_discrete(ac.Character(0.5), 0, 63)
    assert cesaro.window_average(sig, 2, 0, ONE) == pytest.approx(0.0)


def test_window_average_inside_ones_block():
    sig = ac.render_discrete(ac.BlockSequence(), 0, 2 ** 12)
    # ones-block m=11 spans [2^11 - 1, 2^12 - 2]; shift 4 inside it
    shift = 2 ** 11 - 1 + 4
    got = cesaro.window_average(sig, 4, shift, ONE)
    oracle = brute_window_mean(sig.values, 0, 4, shift, "one")
    assert got == pytest.approx(oracle) == pytest.approx(1.0)


def test_window_average_matches_brute_force():
    rng = np.random.default_rng(5)
    vals = rng.standard_normal(200) + 1j * rng.standard_normal(200)
    sig = DiscreteSignal(0, vals, float(np.max(np.abs(vals))))
    for k, shift, side in [(5, 30, "two"), (8, 100, "two"), (6, 3, "one")]:
        oracle = brute_window_mean(vals, 0, k, shift, side)
        got = cesaro.window_average(sig, k, shift, TWO if side == "two" else ONE)
        assert got == pytest.approx(oracle)


def test_window_average_out_of_range():
    sig = ac.render_discrete(ac.Character(0.5), 0, 20)
    with pytest.raises(WindowOutOfRange):
        cesaro.window_average(sig, 5, 2)  # two-sided window would hit n=-3


def test_continuous_window_average_is_trapezoid_mean():
    sig = ac.render_continuous(ac.Character(0.05), 0.0, 0.5, 201)
    theta, shift = 10.0, 50.0
    j0 = int((shift - theta) / sig.h)
    j1 = int((shift + theta) / sig.h)
    oracle = np.trapz(sig.samples[j0:j1 + 1], dx=sig.h) / (2 * theta)
    assert cesaro.window_average(sig, theta, shift) == pytest.approx(oracle)


def test_shift_extremes_constant():
    sig = ac.render_discrete(ac.TrigPoly(((3.0, 0.0),)), 0, 64)
    ext = cesaro.shift_extremes(sig, 8, range(8, 57))
    assert ext.sup == pytest.approx(3.0)
    assert ext.inf == pytest.approx(3.0)


def test_shift_extremes_alternating_enumeration_oracle():
    sig = ac.render_discrete(ac.Character(0.5), 0, 63)
    grid = range(0, 61)
    means = [brute_window_mean(sig.values, 0, 3, s, "one") for s in grid]
    ext = cesaro.shift_extremes(sig, 3, grid, ONE)
    assert ext.sup.real == pytest.approx(max(m.real for m in means)) == pytest.approx(1 / 3)
    assert ext.inf.real == pytest.approx(min(m.real for m in means)) == pytest.approx(-1 / 3)
    assert ext.argmax % 2 == 0  # sup at an even shift
    assert ext.argmin % 2 == 1


def test_shift_extremes_blocks():
    sig = ac.render_discrete(ac.BlockSequence(), 0, 2 ** 12)
    ext = cesaro.shift_extremes(sig, 16, range(16, 2 ** 12 - 16, 7))
    assert ext.sup.real == pytest.approx(1.0)
    assert ext.inf.real == pytest.approx(0.0)


def test_shift_extremes_empty_grid():
    sig = ac.render_discrete(ac.Character(0.5), 0, 63)
    with pytest.raises(EmptyGrid):
        cesaro.shift_extremes(sig, 3, [])


def test_sweep_constant():
    sig = ac.render_discrete(ac.TrigPoly(((1.0, 0.0),)), 0, 256)
    sweep = cesaro.cesaro_sweep(sig, WindowSchedule((2, 4, 8)))
    assert sweep.p_bar_est == pytest.approx(1.0)
    assert sweep.p_lower_est == pytest.approx(1.0)


def test_sweep_alternating_even_windows_exact_zero():
    sig = ac.render_discrete(ac.Character(0.5), 0, 2 ** 12)
    sched = WindowSchedule.geometric(2, 2 ** 10, 2, ONE)
    sweep = cesaro.cesaro_sweep(sig, sched)
    assert abs(sweep.p_bar_est.real) == 0.0
    assert abs(sweep.p_lower_est.real) == 0.0
    assert sweep.gaps()[-1] < 1e-12


def test_sweep_character_geometric_sum_bound():
    lam = 1 / 7
    sig = ac.render_discrete(ac.Character(lam), -2 ** 14, 2 ** 14)
    sched = WindowSchedule.geometric(4, 2 ** 10, 2, TWO)
    sweep = cesaro.cesaro_sweep(sig, sched)
    for k, sup in zip(sweep.lengths, sweep.sup):
        # each component of the window mean is bounded by the geometric
        # sum estimate 2 / ((2k+1) |1 - e^{2 pi i lam}|)
        bound = 2.0 / ((2 * k + 1) * abs(1 - np.exp(2j * np.pi * lam)))
        assert abs(sup.real) <= bound * (1 + 1e-9) + 1e-12
        assert abs(sup.imag) <= bound * (1 + 1e-9) + 1e-12


def test_verdict_constant():
    sig = ac.render_discrete(ac.TrigPoly(((1.0, 0.0),)), 0, 256)
    sweep = cesaro.cesaro_sweep(sig, WindowSchedule((2, 4, 8)))
    v = cesaro.ac_verdict(sweep, 1e-6)
    assert v.positive
    assert v.limit == pytest.approx(1.0)
    assert v.uncertainty <= 1e-12


def test_verdict_blocks_negative_with_witness():
    sig = ac.render_discrete(ac.BlockSequence(), 0, 2 ** 16)
    sweep = cesaro.cesaro_sweep(sig, WindowSchedule.geometric(2, 64, 2, TWO))
    v = cesaro.ac_verdict(sweep, 1e-2)
    assert v.negative
    assert v.witness is not None
    assert v.witness[3] >= 0.98
    # witness shifts really achieve the extremes
    k, s_hi, s_lo, gap = v.witness
    hi = cesaro.window_average(sig, k, int(s_hi))
    lo = cesaro.window_average(sig, k, int(s_lo))
    assert hi.real - lo.real == pytest.approx(gap)


def test_verdict_character_ac_zero():
    sig = ac.render_discrete(ac.Character(1 / 7), -2 ** 14, 2 ** 14)
    sweep = cesaro.cesaro_sweep(sig, WindowSchedule.geometric(4, 2 ** 10, 2, TWO))
    v = cesaro.ac_verdict(sweep, 1e-2)
    assert v.positive
    assert abs(v.limit) <= 1e-2


def test_verdict_requires_three_windows():
    sig = ac.render_discrete(ac.Character(0.5), 0, 256)
    sweep = cesaro.cesaro_sweep(sig, WindowSchedule((2, 4)))
    with pytest.raises(ValueError):
        cesaro.ac_verdict(sweep, 1e-6)


def test_residual_constant_exact_zero():
    sig = ac.render_discrete(ac.TrigPoly(((1.0, 0.0),)), 0, 4096)
    res = cesaro.convolution_invariance_residual(
        sig, fejer_kernel(16), WindowSchedule.geometric(8, 64, 2))
    assert res == pytest.approx(0.0, abs=1e-13)


def test_residual_alternating_two_point_kernel():
    sig = ac.render_discrete(ac.Character(0.5), 0, 4096)
    kernel = DiscreteSignal(0, [0.5, 0.5], 0.5)
    # the kernel zeroes the alternating signal, so the difference is the
    # signal itself; even windows cancel it exactly
    res = cesaro.convolution_invariance_residual(
        sig, kernel, WindowSchedule.geometric(8, 64, 2, ONE))
    assert res == pytest.approx(0.0, abs=1e-12)


def test_residual_random_signal_brute_oracle():
    rng = np.random.default_rng(11)
    vals = rng.uniform(-1, 1, size=3000)
    sig = DiscreteSignal(0, vals.astype(complex), 1.0)
    kernel = fejer_kernel(64)
    sched = WindowSchedule((128, 256, 512))
    res = cesaro.convolution_invariance_residual(sig, kernel, sched)
    # brute-force oracle on the difference signal at the largest window
    smoothed = ac.convolve(sig, kernel)
    diff = ac.signals.subtract(sig, smoothed)
    k = 512
    means = [brute_window_mean(diff.values, diff.n_min, k, s)
             for s in range(diff.n_min + k, diff.n_max - k + 1, 13)]
    assert res >= max(abs(np.real(m)) for m in means) - 1e-9
    assert res <= 0.1


def test_sublinearity_per_window():
    rng = np.random.default_rng(3)
    a = DiscreteSignal(0, rng.standard_normal(400).astype(complex), 4.0)
    b = DiscreteSignal(0, rng.standard_normal(400).astype(complex), 4.0)
    both = DiscreteSignal(0, a.values + b.values, 8.0)
    grid = range(16, 380)
    for k in (4, 16):
        ea = cesaro.shift_extremes(a, k, grid)
        eb = cesaro.shift_extremes(b, k, grid)
        eab = cesaro.shift_extremes(both, k, grid)
        assert eab.sup.real <= ea.sup.real + eb.sup.real + 1e-12
        assert eab.inf.real >= ea.inf.real + eb.inf.real - 1e-12


def test_lower_functional_is_negated_upper():
    rng = np.random.default_rng(7)
    vals = rng.standard_normal(600) + 1j * rng.standard_normal(600)
    sig = DiscreteSignal(0, vals, float(np.max(np.abs(vals))))
    neg = ac.signals.scaled(sig, -1.0)
    sched = WindowSchedule((4, 8, 16))
    sw = cesaro.cesaro_sweep(sig, sched)
    sw_neg = cesaro.cesaro_sweep(neg, sched)
    # p_lower(psi) = -p_bar(-psi), exactly (float negation is exact)
    assert sw.p_lower_est == -sw_neg.p_bar_est
    assert sw.p_bar_est == -sw_neg.p_lower_est


def test_scaling_equivariance():
    sig = ac.render_discrete(ac.Character(1 / 5), 0, 500)
    sched = WindowSchedule((4, 8, 16), ONE)
    base = cesaro.cesaro_sweep(sig, sched)
    scaled = cesaro.cesaro_sweep(ac.signals.scaled(sig, 2.5), sched)
    for s0, s1 in zip(base.sup, scaled.sup):
        assert s1 == pytest.approx(2.5 * s0)
    # window averages scale for any complex factor
    c = 0.3 - 1.2j
    got = cesaro.window_average(ac.signals.scaled(sig, c), 8, 100, ONE)
    assert got == pytest.approx(c * cesaro.window_average(sig, 8, 100, ONE))


def test_one_sided_matches_two_sided_for_zero_padded():
    # signal supported on [0, N], zero outside: the one-sided and
    # two-sided verdicts agree on almost convergence to 0
    sig = ac.render_discrete(ac.Character(0.5), 0, 2 ** 12,
                             extension=Extension.ZERO_OUTSIDE)
    tol = 1e-2
    v_one = cesaro.ac_verdict(
        cesaro.cesaro_sweep(sig, WindowSchedule.geometric(16, 1024, 2, ONE)), tol)
    v_two = cesaro.ac_verdict(
        cesaro.cesaro_sweep(sig, WindowSchedule.geometric(16, 1024, 2, TWO)), tol)
    assert v_one.positive and v_two.positive
    assert abs(v_one.limit) <= tol and abs(v_two.limit) <= tol


def test_zero_outside_includes_far_windows():
    sig = DiscreteSignal(0, np.ones(16, dtype=complex), 1.0,
                         extension=Extension.ZERO_OUTSIDE)
    ext = cesaro.shift_extremes(sig, 2, range(-3, 18), TWO)
    assert ext.inf.real == pytest.approx(0.0)  # fully outside window
    assert ext.sup.real == pytest.approx(1.0)


def test_shift_stride_refinement_bound():
    lam = 0.02
    sig = ac.render_continuous(ac.Character(lam), 0.0, 1.0, 4097)
    sched = WindowSchedule((32.0, 64.0, 128.0))
    coarse = cesaro.cesaro_sweep(sig, sched, shift_stride=2)
    fine = cesaro.cesaro_sweep(sig, sched, shift_stride=1)
    for s_f, s_c in zip(fine.sup, coarse.sup):
        assert s_f.real >= s_c.real - 1e-12  # refinement only improves
        # grid-sup error bound: |d/dx mean| <= B * 2 pi lam
        assert s_f.real - s_c.real <= sig.bound * 2 * np.pi * lam * 2 * sig.h


@given(st.integers(2, 40), st.integers(0, 60))
@settings(max_examples=60)
def test_window_average_random_against_oracle(k, shift):
    rng = np.random.default_rng(k * 997 + shift)
    vals = rng.standard_normal(200).astype(complex)
    sig = DiscreteSignal(0, vals, float(np.max(np.abs(vals))))
    oracle = brute_window_mean(vals, 0, k, shift, "one")
    assert cesaro.window_average(sig, k, shift, ONE) == pytest.approx(oracle)
