"""Uniform sliding Cesaro analysis.

A bounded function almost converges to a value exactly when its window
means converge to that value uniformly in the window position.  This
module computes, for each window length in a schedule, the extremes of
the window mean over a shift grid, producing finite estimates of the
upper/lower uniform-mean functionals (``p_bar_est`` / ``p_lower_est``)
and a deterministic tri-state verdict.

Window conventions
------------------
- discrete two-sided, length k:  mean of 2k+1 values centered at the shift
- discrete one-sided, length k:  mean of k values starting at the shift
  (shift restricted to n >= 0)
- continuous: trapezoid-rule means over [x-k, x+k] resp. [x, x+k], with
  window lengths snapped to grid multiples.

The verdict logic is a finite-data surrogate, not a theorem: a limit is
reported when the sup-inf gap at the largest window is below tolerance
and has been non-increasing over the last three windows; divergence is
reported when a gap at least ten times the tolerance persists without
shrinking, together with witness shifts.  Everything else is
inconclusive.  Real and imaginary parts are tracked separately.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import EmptyGrid, WindowOutOfRange
from .signals import (
    ContinuousSignal,
    DiscreteSignal,
    Extension,
    Sidedness,
    Signal,
    WindowSchedule,
    subtract,
)

_MONOTONE_SLACK = 1e-12
_NEGATIVE_FACTOR = 10.0
_PERSISTENCE = 0.9


@dataclass(frozen=True)
class ShiftExtremes:
    """Componentwise extremes of window means over a shift grid."""

    sup: complex
    inf: complex
    argmax: float
    argmin: float


@dataclass(frozen=True)
class CesaroSweep:
    """Window-by-window extreme means plus final functional estimates.

    ``sup`` / ``inf`` hold componentwise extremes per window length
    (real and imaginary parts maximized independently); ``p_bar_est``
    and ``p_lower_est`` are the extremes at the largest window.
    """

    lengths: tuple
    sup: tuple
    inf: tuple
    argmax: tuple
    argmin: tuple
    sidedness: Sidedness
    shift_stride: int
    p_bar_est: complex
    p_lower_est: complex
    source: Optional[str] = None

    def __post_init__(self):
        for s, i in zip(self.sup, self.inf):
            if s.real < i.real - 1e-12 or s.imag < i.imag - 1e-12:
                raise ValueError("window sup fell below window inf")

    def gaps(self) -> np.ndarray:
        """|sup - inf| per window length (complex modulus of the gap)."""
        return np.asarray([abs(s - i) for s, i in zip(self.sup, self.inf)])


class VerdictStatus(str, Enum):
    ALMOST_CONVERGENT = "almost_convergent"
    NOT_ALMOST_CONVERGENT = "not_almost_convergent"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ACVerdict:
    """Tri-state almost-convergence decision.

    ``limit`` is the midpoint of the final [inf, sup] box when the
    verdict is positive; ``witness`` records (window length, sup shift,
    inf shift, gap) when divergence is certified on the grid.
    """

    status: VerdictStatus
    limit: Optional[complex]
    uncertainty: float
    witness: Optional[Tuple[float, float, float, float]] = None
    notes: str = ""

    @property
    def positive(self) -> bool:
        return self.status is VerdictStatus.ALMOST_CONVERGENT

    @property
    def negative(self) -> bool:
        return self.status is VerdictStatus.NOT_ALMOST_CONVERGENT


# ---------------------------------------------------------------------------
# window means
# ---------------------------------------------------------------------------

def _snap_length(signal: Signal, k) -> tuple:
    """(integer half/full width in samples, actual length in x units)."""
    if isinstance(signal, DiscreteSignal):
        m = int(round(k))
        if m < 1:
            raise WindowOutOfRange(f"window length {k} below one sample")
        return m, float(m)
    m = int(round(k / signal.h))
    if m < 1:
        raise WindowOutOfRange(f"window length {k} below one grid step {signal.h}")
    return m, m * signal.h


def _prefix_sums(values: np.ndarray) -> np.ndarray:
    out = np.empty(len(values) + 1, dtype=np.complex128)
    out[0] = 0.0
    np.cumsum(values, out=out[1:])
    return out


def _prefix_trapz(signal: ContinuousSignal) -> np.ndarray:
    v = signal.samples
    out = np.empty(len(v), dtype=np.complex128)
    out[0] = 0.0
    np.cumsum((v[1:] + v[:-1]) * (signal.h / 2.0), out=out[1:])
    return out


def _discrete_grid_and_means(signal: DiscreteSignal, m: int,
                             sidedness: Sidedness) -> tuple:
    """All admissible shifts and their window means for one length."""
    n = len(signal)
    cs = _prefix_sums(signal.values)
    zero_out = signal.extension is Extension.ZERO_OUTSIDE
    if sidedness is Sidedness.TWO_SIDED:
        width = 2 * m + 1
        if zero_out:
            shifts = np.arange(signal.n_min - m - 1, signal.n_max + m + 2)
            idx = shifts - signal.n_min
            lo = np.clip(idx - m, 0, n)
            hi = np.clip(idx + m + 1, 0, n)
        else:
            if width > n:
                raise WindowOutOfRange(
                    f"window of {width} samples exceeds signal length {n}")
            idx = np.arange(m, n - m)
            shifts = idx + signal.n_min
            lo = idx - m
            hi = idx + m + 1
    else:
        width = m
        first = max(0, signal.n_min)
        if zero_out:
            shifts = np.arange(first, signal.n_max + 2)
            idx = shifts - signal.n_min
            lo = np.clip(idx, 0, n)
            hi = np.clip(idx + m, 0, n)
        else:
            if signal.n_max - m + 1 < first:
                raise WindowOutOfRange(
                    f"no one-sided window of {m} samples fits in "
                    f"[{first}, {signal.n_max}]")
            shifts = np.arange(first, signal.n_max - m + 2)
            idx = shifts - signal.n_min
            lo = idx
            hi = idx + m
    means = (cs[hi] - cs[lo]) / width
    return shifts.astype(np.float64), means


def _continuous_grid_and_means(signal: ContinuousSignal, m: int,
                               sidedness: Sidedness) -> tuple:
    n = len(signal)
    cum = _prefix_trapz(signal)
    zero_out = signal.extension is Extension.ZERO_OUTSIDE
    theta = m * signal.h
    if sidedness is Sidedness.TWO_SIDED:
        span = 2 * theta
        if zero_out:
            idx = np.arange(-m - 1, n + m + 1)
            lo = np.clip(idx - m, 0, n - 1)
            hi = np.clip(idx + m, 0, n - 1)
        else:
            if 2 * m >= n:
                raise WindowOutOfRange(
                    f"window of half-width {theta} exceeds the rendered span")
            idx = np.arange(m, n - m)
            lo = idx - m
            hi = idx + m
    else:
        span = theta
        first_x = max(0.0, signal.x0)
        first = int(np.ceil((first_x - signal.x0) / signal.h - 1e-9))
        if zero_out:
            idx = np.arange(first, n + m + 1)
            lo = np.clip(idx, 0, n - 1)
            hi = np.clip(idx + m, 0, n - 1)
        else:
            if n - 1 - m < first:
                raise WindowOutOfRange(
                    f"no one-sided window of length {theta} fits the range")
            idx = np.arange(first, n - m)
            lo = idx
            hi = idx + m
    means = (cum[hi] - cum[lo]) / span
    shifts = signal.x0 + signal.h * idx
    return shifts, means


def _grid_and_means(signal: Signal, k, sidedness: Sidedness) -> tuple:
    m, _ = _snap_length(signal, k)
    if isinstance(signal, DiscreteSignal):
        return _discrete_grid_and_means(signal, m, sidedness)
    return _continuous_grid_and_means(signal, m, sidedness)


def window_average(signal: Signal, k, shift,
                   sidedness: Sidedness = Sidedness.TWO_SIDED) -> complex:
    """Mean of the signal over one window anchored at ``shift``.

    Discrete signals use the arithmetic mean (2k+1 points two-sided,
    k points one-sided); continuous signals use the trapezoid-rule mean
    on their grid.  Raises :class:`WindowOutOfRange` when the window does
    not fit under the VALID_ONLY policy.
    """
    shifts, means = _grid_and_means(signal, k, sidedness)
    pos = np.searchsorted(shifts, shift)
    step = shifts[1] - shifts[0] if len(shifts) > 1 else 1.0
    if pos >= len(shifts) or abs(shifts[pos] - shift) > 1e-9 * max(1.0, abs(step)):
        raise WindowOutOfRange(
            f"shift {shift} not admissible for window length {k}")
    return complex(means[pos])


def shift_extremes(signal: Signal, k, shift_grid,
                   sidedness: Sidedness = Sidedness.TWO_SIDED) -> ShiftExtremes:
    """Componentwise extremes of window means over an explicit shift grid.

    Ties break deterministically toward the smallest shift.  The recorded
    argmax/argmin follow the component (real or imaginary) with the wider
    spread.
    """
    grid = np.asarray(list(shift_grid), dtype=np.float64)
    if grid.size == 0:
        raise EmptyGrid("shift grid is empty")
    grid = np.sort(grid)
    shifts, means = _grid_and_means(signal, k, sidedness)
    pos = np.searchsorted(shifts, grid)
    step = shifts[1] - shifts[0] if len(shifts) > 1 else 1.0
    ok = (pos < len(shifts))
    if not np.all(ok) or np.any(np.abs(shifts[pos[ok]] - grid[ok]) > 1e-9 * max(1.0, abs(step))):
        bad = grid[~ok] if not np.all(ok) else grid[np.abs(shifts[pos] - grid) > 1e-9]
        raise WindowOutOfRange(f"shifts {bad[:4]} not admissible for length {k}")
    sel = means[pos]
    return _extremes_from(grid, sel)


def _extremes_from(shifts: np.ndarray, means: np.ndarray) -> ShiftExtremes:
    re, im = means.real, means.imag
    sup = complex(re.max(), im.max())
    inf = complex(re.min(), im.min())
    re_gap = re.max() - re.min()
    im_gap = im.max() - im.min()
    comp = re if re_gap >= im_gap else im
    return ShiftExtremes(sup=sup, inf=inf,
                         argmax=float(shifts[int(np.argmax(comp))]),
                         argmin=float(shifts[int(np.argmin(comp))]))


def cesaro_sweep(signal: Signal, schedule: WindowSchedule,
                 shift_stride: int = 1) -> CesaroSweep:
    """Sup/inf window means for every length in the schedule.

    The shift grid is every admissible grid position, subsampled by
    ``shift_stride``.  For continuous signals the grid stride equals the
    sample step, so the sup over the grid is within B*O(h*f_max) of the
    true sup for band-limited inputs; halving the stride can only refine
    the extremes within that bound.
    """
    if shift_stride < 1:
        raise ValueError("shift_stride must be >= 1")
    lengths, sups, infs, argmaxes, argmins = [], [], [], [], []
    for k in schedule.lengths:
        m, actual = _snap_length(signal, k)
        shifts, means = _grid_and_means(signal, k, schedule.sidedness)
        shifts = shifts[::shift_stride]
        means = means[::shift_stride]
        if means.size == 0:
            raise EmptyGrid(f"no shifts remain for window length {k}")
        ext = _extremes_from(shifts, means)
        lengths.append(actual)
        sups.append(ext.sup)
        infs.append(ext.inf)
        argmaxes.append(ext.argmax)
        argmins.append(ext.argmin)
    return CesaroSweep(
        lengths=tuple(lengths),
        sup=tuple(sups),
        inf=tuple(infs),
        argmax=tuple(argmaxes),
        argmin=tuple(argmins),
        sidedness=schedule.sidedness,
        shift_stride=shift_stride,
        p_bar_est=sups[-1],
        p_lower_est=infs[-1],
        source=signal.source,
    )


def ac_verdict(sweep: CesaroSweep, tol: float) -> ACVerdict:
    """Tri-state decision from a sweep with at least three window lengths.

    Positive: final gap <= tol and gaps non-increasing over the last
    three windows; the limit is the midpoint of the final box and the
    uncertainty is the final gap.  Negative: all of the last three gaps
    >= 10*tol without shrinking; witness shifts come from the largest
    window.  Otherwise inconclusive.
    """
    if len(sweep.lengths) < 3:
        raise ValueError("verdict requires a sweep over at least 3 window lengths")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    gaps = sweep.gaps()
    g1, g2, g3 = gaps[-3], gaps[-2], gaps[-1]
    slack = _MONOTONE_SLACK * max(1.0, float(gaps.max()))
    notes = ""
    if sweep.source in (None, "custom"):
        notes = "grid-relative: no smoothness info for this data, extremes are grid sups"
    if g3 <= tol and g3 <= g2 + slack and g2 <= g1 + slack:
        mid = (sweep.p_bar_est + sweep.p_lower_est) / 2.0
        return ACVerdict(VerdictStatus.ALMOST_CONVERGENT, mid, float(g3),
                         None, notes)
    if min(g1, g2, g3) >= _NEGATIVE_FACTOR * tol and g3 >= _PERSISTENCE * g1:
        witness = (sweep.lengths[-1], sweep.argmax[-1], sweep.argmin[-1], float(g3))
        return ACVerdict(VerdictStatus.NOT_ALMOST_CONVERGENT, None, float(g3),
                         witness, notes)
    return ACVerdict(VerdictStatus.INCONCLUSIVE, None, float(g3), None, notes)


def analyze(signal: Signal, schedule: WindowSchedule, tol: float,
            shift_stride: int = 1) -> tuple:
    """Convenience: sweep then verdict.  Returns (sweep, verdict)."""
    sweep = cesaro_sweep(signal, schedule, shift_stride)
    return sweep, ac_verdict(sweep, tol)


def convolve_signal(signal: Signal, kernel: Signal) -> Signal:
    """Convolution against a finite kernel; see :mod:`almostconv.spectral`.

    Re-exported there; kept here to avoid an import cycle for
    :func:`convolution_invariance_residual`.
    """
    from .spectral import convolve

    return convolve(signal, kernel)


def convolution_invariance_residual(signal: Signal, kernel: Signal,
                                    schedule: WindowSchedule,
                                    shift_stride: int = 1) -> float:
    """Size of the uniform-mean functionals on ``signal - kernel*signal``.

    For any nonnegative unit-mass kernel the difference has upper and
    lower uniform means exactly zero in the limit, so the returned
    ``max(|p_bar_est|, |p_lower_est|)`` should shrink as the schedule
    grows; it quantifies how far the finite sweep is from that identity.
    """
    vals = np.asarray(kernel.values)
    if np.any(vals.real < -1e-12) or np.any(np.abs(vals.imag) > 1e-12):
        raise ValueError("kernel must be nonnegative")
    if isinstance(kernel, ContinuousSignal):
        mass = _prefix_trapz(kernel)[-1]
    else:
        mass = vals.sum()
    if abs(mass - 1.0) > 1e-9:
        raise ValueError(f"kernel mass {mass} is not 1")
    smoothed = convolve_signal(signal, kernel)
    diff = subtract(signal, smoothed)
    sweep = cesaro_sweep(diff, schedule, shift_stride)
    return float(max(abs(sweep.p_bar_est), abs(sweep.p_lower_est)))
