import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import almostconv as ac
from almostconv.errors import AliasingError, DivergentSeries, UnsupportedPoint
from almostconv.signals import evaluate, evaluate_many, kind_of


def test_character_zero_is_one_everywhere():
    assert evaluate(ac.Character(0.0), 3.7) == pytest.approx(1.0)


def test_character_quarter_at_one_is_i():
    assert evaluate(ac.Character(0.25), 1.0) == pytest.approx(1j)


def test_dirichlet_two_term_at_zero():
    # direct two-term oracle: 1*1^-2 + 1*2^-2
    oracle = sum(1.0 * n ** (-2.0) for n in (1, 2))
    assert oracle == 1.25
    assert evaluate(ac.DirichletLine((1, 1), 2.0), 0.0) == pytest.approx(1.25)


def test_dirichlet_below_abscissa_raises():
    with pytest.raises(DivergentSeries):
        evaluate(ac.DirichletLine((1, 1), 0.5), 0.0)
    with pytest.raises(DivergentSeries):
        ac.render_discrete(ac.DirichletLine((1, 1), 1.0), 0, 8)


def test_custom_has_no_closed_form():
    with pytest.raises(UnsupportedPoint):
        evaluate(ac.Custom((1.0, 2.0)), 0.5)


def test_render_alternating():
    sig = ac.render_discrete(ac.Character(0.5), 0, 3)
    assert np.allclose(sig.values, [1, -1, 1, -1])
    assert sig.n_min == 0 and sig.n_max == 3
    assert sig.bound == 1.0


def test_render_block_sequence_expansion():
    # blocks of lengths 1, 2, 4 carrying 0, 1, 0
    expected = [0, 1, 1, 0, 0, 0, 0]
    sig = ac.render_discrete(ac.BlockSequence(), 0, 6)
    assert np.allclose(sig.values, expected)


def test_render_partial_sums_cumsum_oracle():
    inner = [(-1.0) ** n for n in range(4)]
    oracle = np.cumsum(inner)
    sig = ac.render_discrete(ac.PartialSums(ac.Character(0.5)), 0, 3)
    assert np.allclose(sig.values, oracle)
    assert np.allclose(sig.values, [1, 0, 1, 0])


def test_partial_sums_increments_are_coefficients():
    spec = ac.PartialSums(ac.Character(1 / 3))
    sig = ac.render_discrete(spec, 0, 200)
    coeffs = evaluate_many(ac.Character(1 / 3), np.arange(201))
    increments = np.diff(sig.values)
    # differencing the cumulative sums recovers the coefficients up to
    # one rounding of the running sums
    scale = np.max(np.abs(sig.values))
    assert np.max(np.abs(increments - coeffs[1:])) <= 8 * np.finfo(float).eps * scale
    # the real parts of the alternating case are exactly +-1
    alt = ac.render_discrete(ac.PartialSums(ac.Character(0.5)), 0, 200)
    assert np.array_equal(np.diff(alt.values.real), [(-1.0) ** (n + 1) for n in range(200)])


def test_render_continuous_constant():
    sig = ac.render_continuous(ac.Character(0.0), 0.0, 0.5, 3)
    assert np.allclose(sig.samples, [1, 1, 1])
    assert sig.h == 0.5


def test_render_continuous_single_term_poly():
    sig = ac.render_continuous(ac.TrigPoly(((1.0, 0.25),)), 0.0, 0.1, 11)
    assert sig.samples[0] == pytest.approx(1.0)
    assert sig.samples[10] == pytest.approx(1j)  # x=1, quarter turn


def test_measure_transform_at_zero_sums_weights():
    spec = ac.MeasureTransform(((0.0, 0.3), (0.2, 0.7)))
    assert evaluate(spec, 0.0) == pytest.approx(1.0)


def test_measure_transform_density_trapezoid():
    dens = ac.Density(-0.1, 0.1, tuple([1.0] * 21))
    spec = ac.MeasureTransform((), density=dens)
    # at x=0 the transform integrates the density itself
    grid = np.linspace(-0.1, 0.1, 21)
    oracle = np.trapz(np.ones(21), grid)
    assert evaluate(spec, 0.0) == pytest.approx(oracle)


@given(lam=st.floats(-3, 3), x=st.floats(-50, 50), y=st.floats(-50, 50))
@settings(max_examples=200)
def test_character_multiplicativity(lam, x, y):
    cx = evaluate(ac.Character(lam), x)
    cy = evaluate(ac.Character(lam), y)
    cxy = evaluate(ac.Character(lam), x + y)
    assert abs(cxy - cx * cy) < 1e-12


@pytest.mark.parametrize("spec", [
    ac.Character(0.3),
    ac.TrigPoly(((0.5, 0.1), (0.25j, -0.2))),
    ac.DirichletLine((1, 2, 0.5), 1.5),
    ac.MeasureTransform(((0.0, 0.5), (0.1, 0.5j))),
    ac.BlockSequence((0.0, 1.0)),
    ac.Convergent(1.5, "power", 2.0, 0.5),
])
def test_rendered_values_respect_declared_bound(spec):
    sig = ac.render_discrete(spec, -64, 64)
    assert np.all(np.abs(sig.values) <= sig.bound * (1 + 1e-12) + 1e-12)


def test_aliasing_guard():
    with pytest.raises(AliasingError):
        ac.render_continuous(ac.Character(1.0), 0.0, 0.5, 10)
    # h * f = 0.1 passes
    ac.render_continuous(ac.Character(1.0), 0.0, 0.1, 10)


def test_bound_validation_rejects_lies():
    with pytest.raises(ValueError):
        ac.DiscreteSignal(0, [2.0, 0.0], bound=1.0)


def test_window_schedule_validation():
    with pytest.raises(ValueError):
        ac.WindowSchedule((4, 4, 8))
    with pytest.raises(ValueError):
        ac.WindowSchedule(())
    sched = ac.WindowSchedule.geometric(2, 16, 2)
    assert sched.lengths == (2, 4, 8, 16)


def test_shift_and_subtract_alignment():
    sig = ac.render_discrete(ac.Character(0.25), 0, 63)
    moved = sig.shifted(3)
    assert moved.value_at(0) == sig.value_at(3)
    diff = ac.signals.subtract(sig, moved)
    # psi - psi_3 = (1 - chi(3)) chi(n)
    factor = 1 - evaluate(ac.Character(0.25), 3.0)
    expect = factor * sig.values[: len(diff)]
    assert np.allclose(diff.values, expect)


def test_known_limits():
    assert ac.known_limit(ac.Character(0.0)) == 1.0
    assert ac.known_limit(ac.Character(0.25)) == 0.0
    assert ac.known_limit(ac.TrigPoly(((2.0, 0.0), (1.0, 0.5)))) == 2.0
    assert ac.known_limit(ac.DirichletLine((3.0, 1.0), 2.0)) == 3.0
    assert ac.known_limit(ac.MeasureTransform(((0.0, 0.3), (0.2, 0.7)))) == pytest.approx(0.3)
    assert ac.known_limit(ac.BlockSequence()) is None


def test_kernels_have_unit_mass():
    assert ac.signals.fejer_kernel(64).values.sum() == pytest.approx(1.0)
    assert ac.signals.gaussian_kernel(1.0).values.sum() == pytest.approx(1.0)
    k = ac.signals.gaussian_kernel_continuous(0.5, 0.25)
    assert np.trapz(k.values, dx=k.h) == pytest.approx(1.0)


def test_custom_render_roundtrip():
    spec = ac.Custom((1.0, 2.0, 3.0, 4.0), start=10.0)
    sig = ac.render_discrete(spec, 11, 12)
    assert np.allclose(sig.values, [2.0, 3.0])
    with pytest.raises(UnsupportedPoint):
        ac.render_discrete(spec, 9, 12)


def test_kind_names_cover_union():
    specs = [ac.Character(0.1), ac.TrigPoly(((1.0, 0.1),)),
             ac.DirichletLine((1,), 2.0), ac.MeasureTransform(()),
             ac.BlockSequence(), ac.PartialSums(ac.Character(0.0)),
             ac.Convergent(1.0), ac.Custom((1.0,))]
    assert len({kind_of(s) for s in specs}) == 8
