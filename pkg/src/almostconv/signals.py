"""Bounded sampled signals, closed-form generators, and window schedules.

Two containers carry all data through the analysis routes:

- :class:`DiscreteSignal` - complex values on an integer range
  ``[n_min, n_max]`` with a declared sup bound.
- :class:`ContinuousSignal` - complex samples on a uniform grid
  ``x_j = x0 + j*h``; window integrals are always trapezoid-rule
  integrals on this grid, so every module agrees on quadrature.

Each signal declares an extension policy. ``VALID_ONLY`` (the default)
means analysis windows must fit inside the rendered range; operations
that cannot honor that raise instead of silently touching the boundary.
``ZERO_OUTSIDE`` treats the signal as identically zero off its range.

Generators are small frozen recipes (:data:`GeneratorSpec`) with exact
closed forms, so every rendered signal comes with a certified bound and,
where theory pins it down, a known almost-convergence limit
(:func:`known_limit`) that the analysis routes can be checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence, Union

import numpy as np

from .errors import (
    AliasingError,
    DivergentSeries,
    UnsupportedPoint,
    WindowOutOfRange,
)

_trapz = getattr(np, "trapezoid", None) or np.trapz

#: Aliasing guard for continuous rendering: require h * f_max <= this.
MAX_CYCLES_PER_STEP = 0.1

_BOUND_SLACK = 1e-12


class Extension(str, Enum):
    """How windows touching the rendered boundary are treated."""

    VALID_ONLY = "valid_only"
    ZERO_OUTSIDE = "zero_outside"


class Sidedness(str, Enum):
    """Two-sided windows ``[x-k, x+k]`` or one-sided ``[x, x+k)``."""

    TWO_SIDED = "two_sided"
    ONE_SIDED = "one_sided"


def _as_complex(values) -> np.ndarray:
    out = np.asarray(values, dtype=np.complex128)
    if out.ndim != 1 or out.size == 0:
        raise ValueError("signal values must be a nonempty 1-d array")
    if not np.all(np.isfinite(out.real)) or not np.all(np.isfinite(out.imag)):
        raise ValueError("signal values must be finite")
    return out


def _check_bound(values: np.ndarray, bound: float) -> None:
    if not math.isfinite(bound) or bound < 0:
        raise ValueError(f"bound must be finite and nonnegative, got {bound}")
    top = float(np.max(np.abs(values)))
    if top > bound * (1.0 + _BOUND_SLACK) + _BOUND_SLACK:
        raise ValueError(f"|values| reach {top} above declared bound {bound}")


@dataclass(frozen=True)
class DiscreteSignal:
    """Complex values on the integer range ``[n_min, n_min + len - 1]``.

    Parameters
    ----------
    n_min : int
        Index of the first stored value.
    values : array-like of complex
        One value per integer index.
    bound : float
        Declared sup bound; every ``|value|`` must stay at or below it.
    extension : Extension
        Boundary policy for analysis windows.
    source : str, optional
        Name of the generator that rendered this signal, when known.
        Verdicts on unsourced data are flagged grid-relative.
    """

    n_min: int
    values: np.ndarray
    bound: float
    extension: Extension = Extension.VALID_ONLY
    source: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "values", _as_complex(self.values))
        _check_bound(self.values, self.bound)

    @property
    def n_max(self) -> int:
        return self.n_min + len(self.values) - 1

    def __len__(self) -> int:
        return len(self.values)

    def value_at(self, n: int) -> complex:
        if self.n_min <= n <= self.n_max:
            return complex(self.values[n - self.n_min])
        if self.extension is Extension.ZERO_OUTSIDE:
            return 0.0
        raise WindowOutOfRange(f"index {n} outside [{self.n_min}, {self.n_max}]")

    def shifted(self, s: int) -> "DiscreteSignal":
        """Translate: the result at n equals this signal at n + s."""
        return DiscreteSignal(self.n_min - s, self.values, self.bound,
                              self.extension, self.source)

    def restricted(self, lo: int, hi: int) -> "DiscreteSignal":
        if lo < self.n_min or hi > self.n_max or lo > hi:
            raise ValueError(f"[{lo}, {hi}] not inside [{self.n_min}, {self.n_max}]")
        vals = self.values[lo - self.n_min: hi - self.n_min + 1]
        return DiscreteSignal(lo, vals, self.bound, self.extension, self.source)

    def with_values(self, values, bound: Optional[float] = None,
                    source: Optional[str] = None) -> "DiscreteSignal":
        vals = _as_complex(values)
        if bound is None:
            bound = float(np.max(np.abs(vals)))
        return DiscreteSignal(self.n_min, vals, bound, self.extension,
                              source if source is not None else self.source)

    def mean(self) -> complex:
        return complex(np.mean(self.values))


@dataclass(frozen=True)
class ContinuousSignal:
    """Complex samples at ``x_j = x0 + j*h``; integrals are trapezoid sums.

    Parameters mirror :class:`DiscreteSignal` with a positive grid step
    ``h`` in real units.
    """

    x0: float
    h: float
    samples: np.ndarray
    bound: float
    extension: Extension = Extension.VALID_ONLY
    source: Optional[str] = None

    def __post_init__(self):
        if not (self.h > 0) or not math.isfinite(self.h):
            raise ValueError(f"grid step must be positive, got {self.h}")
        object.__setattr__(self, "samples", _as_complex(self.samples))
        _check_bound(self.samples, self.bound)

    @property
    def values(self) -> np.ndarray:
        return self.samples

    @property
    def x_end(self) -> float:
        return self.x0 + (len(self.samples) - 1) * self.h

    def __len__(self) -> int:
        return len(self.samples)

    def x_at(self, j: int) -> float:
        return self.x0 + j * self.h

    def shifted(self, s: float) -> "ContinuousSignal":
        """Translate by a multiple of the grid step."""
        steps = s / self.h
        if abs(steps - round(steps)) > 1e-9:
            raise ValueError(f"shift {s} is not a multiple of the grid step {self.h}")
        return ContinuousSignal(self.x0 - round(steps) * self.h, self.h,
                                self.samples, self.bound, self.extension,
                                self.source)

    def restricted_idx(self, i_lo: int, i_hi: int) -> "ContinuousSignal":
        if i_lo < 0 or i_hi >= len(self.samples) or i_lo > i_hi:
            raise ValueError("index range outside the sample range")
        return ContinuousSignal(self.x_at(i_lo), self.h,
                                self.samples[i_lo:i_hi + 1], self.bound,
                                self.extension, self.source)

    def with_values(self, samples, bound: Optional[float] = None,
                    source: Optional[str] = None) -> "ContinuousSignal":
        vals = _as_complex(samples)
        if bound is None:
            bound = float(np.max(np.abs(vals)))
        return ContinuousSignal(self.x0, self.h, vals, bound, self.extension,
                                source if source is not None else self.source)

    def mean(self) -> complex:
        if len(self.samples) == 1:
            return complex(self.samples[0])
        span = (len(self.samples) - 1) * self.h
        return complex(_trapz(self.samples, dx=self.h) / span)


Signal = Union[DiscreteSignal, ContinuousSignal]


def step_of(signal: Signal) -> float:
    """Grid step: 1 for discrete signals, h for continuous ones."""
    return signal.h if isinstance(signal, ContinuousSignal) else 1.0


def subtract(a: Signal, b: Signal) -> Signal:
    """Pointwise ``a - b`` on the intersection of the two valid ranges."""
    if isinstance(a, DiscreteSignal) and isinstance(b, DiscreteSignal):
        lo = max(a.n_min, b.n_min)
        hi = min(a.n_max, b.n_max)
        if lo > hi:
            raise ValueError("signals have no overlapping range")
        va = a.values[lo - a.n_min: hi - a.n_min + 1]
        vb = b.values[lo - b.n_min: hi - b.n_min + 1]
        return DiscreteSignal(lo, va - vb, a.bound + b.bound, a.extension, None)
    if isinstance(a, ContinuousSignal) and isinstance(b, ContinuousSignal):
        if abs(a.h - b.h) > 1e-12 * a.h:
            raise ValueError("grid steps differ")
        off = (b.x0 - a.x0) / a.h
        if abs(off - round(off)) > 1e-6:
            raise ValueError("grids are not aligned")
        off = round(off)
        ia = max(0, off)
        ib = max(0, -off)
        n = min(len(a) - ia, len(b) - ib)
        if n <= 0:
            raise ValueError("signals have no overlapping range")
        va = a.samples[ia: ia + n]
        vb = b.samples[ib: ib + n]
        return ContinuousSignal(a.x_at(ia), a.h, va - vb, a.bound + b.bound,
                                a.extension, None)
    raise TypeError("cannot mix discrete and continuous signals")


def scaled(signal: Signal, c: complex) -> Signal:
    vals = signal.values * c
    bound = signal.bound * abs(c)
    if isinstance(signal, DiscreteSignal):
        return DiscreteSignal(signal.n_min, vals, bound, signal.extension,
                              signal.source)
    return ContinuousSignal(signal.x0, signal.h, vals, bound, signal.extension,
                            signal.source)


def offset(signal: Signal, c: complex) -> Signal:
    """Pointwise ``signal + c`` with the bound enlarged accordingly."""
    vals = signal.values + c
    bound = signal.bound + abs(c)
    if isinstance(signal, DiscreteSignal):
        return DiscreteSignal(signal.n_min, vals, bound, signal.extension,
                              signal.source)
    return ContinuousSignal(signal.x0, signal.h, vals, bound, signal.extension,
                            signal.source)


# ---------------------------------------------------------------------------
# Window schedules
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WindowSchedule:
    """Strictly increasing window lengths plus a sidedness choice.

    Even lengths are preferred in the defaults so pure alternating
    signals cancel exactly instead of leaving an O(1/k) floor.
    """

    lengths: tuple
    sidedness: Sidedness = Sidedness.TWO_SIDED

    def __post_init__(self):
        ls = tuple(self.lengths)
        if not ls:
            raise ValueError("schedule must be nonempty")
        if any(l <= 0 for l in ls):
            raise ValueError("window lengths must be positive")
        if any(b <= a for a, b in zip(ls, ls[1:])):
            raise ValueError("window lengths must be strictly increasing")
        object.__setattr__(self, "lengths", ls)

    @classmethod
    def geometric(cls, k_min, k_max, factor: float = 2.0,
                  sidedness: Sidedness = Sidedness.TWO_SIDED) -> "WindowSchedule":
        if factor <= 1:
            raise ValueError("growth factor must exceed 1")
        if k_min <= 0 or k_min > k_max:
            raise ValueError("need 0 < k_min <= k_max")
        ls = []
        k = float(k_min)
        while k <= k_max * (1 + 1e-12):
            ls.append(k)
            k *= factor
        if isinstance(k_min, int) and isinstance(k_max, int) and factor == int(factor):
            ls = [int(round(v)) for v in ls]
        return cls(tuple(ls), sidedness)


# ---------------------------------------------------------------------------
# Generator recipes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Character:
    """Pure frequency: x -> exp(2*pi*i*frequency*x)."""

    frequency: float


@dataclass(frozen=True)
class TrigPoly:
    """Finite sum of characters: ``terms`` is ((coefficient, frequency), ...)."""

    terms: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "terms",
            tuple((complex(c), float(f)) for c, f in self.terms))
        if not self.terms:
            raise ValueError("TrigPoly requires at least one term")


@dataclass(frozen=True)
class DirichletLine:
    """Vertical-line trace of a Dirichlet series.

    ``t -> sum_n coeffs[n-1] * n**(-sigma) * exp(-i*t*log n)``.  The
    convergence abscissa is declared by the caller, never inferred;
    evaluation with ``sigma <= abscissa`` raises :class:`DivergentSeries`.
    """

    coeffs: tuple
    sigma: float
    abscissa: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("DirichletLine requires at least one coefficient")


@dataclass(frozen=True)
class Density:
    """Sampled density on a frequency interval, integrated by trapezoid."""

    freq_min: float
    freq_max: float
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(complex(v) for v in self.values))
        if len(self.values) < 2:
            raise ValueError("density needs at least two samples")
        if not self.freq_max > self.freq_min:
            raise ValueError("density interval must have positive length")

    def grid(self) -> np.ndarray:
        return np.linspace(self.freq_min, self.freq_max, len(self.values))


@dataclass(frozen=True)
class MeasureTransform:
    """Transform of atoms plus an optional absolutely continuous density.

    ``x -> sum_j w_j exp(2*pi*i*f_j*x) + integral exp(2*pi*i*f*x) dens(f) df``.
    """

    atoms: tuple
    density: Optional[Density] = None

    def __post_init__(self):
        object.__setattr__(
            self, "atoms",
            tuple((float(f), complex(w)) for f, w in self.atoms))


@dataclass(frozen=True)
class BlockSequence:
    """Blocks of constant symbols with geometrically growing lengths.

    Block m (m = 0, 1, ...) has length ``round(growth**m)`` and carries
    ``symbols[m % len(symbols)]``; the sequence lives on n >= 0 and is 0
    for n < 0.
    """

    symbols: tuple = (0.0, 1.0)
    growth: float = 2.0

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(complex(s) for s in self.symbols))
        if self.growth <= 1:
            raise ValueError("block growth must exceed 1")


@dataclass(frozen=True)
class PartialSums:
    """Cumulative sums s_n = sum_{k<=n} a_k of an inner coefficient recipe."""

    inner: "GeneratorSpec"


@dataclass(frozen=True)
class Convergent:
    """A limit plus a decaying perturbation: ``limit + amplitude*decay(|x|)``.

    ``decay`` is ``"exp"`` for exp(-rate*|x|) or ``"power"`` for
    (1+|x|)**(-rate).
    """

    limit: complex
    decay: str = "exp"
    rate: float = 1.0
    amplitude: complex = 1.0

    def __post_init__(self):
        if self.decay not in ("exp", "power"):
            raise ValueError(f"unknown decay profile {self.decay!r}")
        if self.rate <= 0:
            raise ValueError("decay rate must be positive")


@dataclass(frozen=True)
class Custom:
    """Explicit samples on ``start + j*step``; no closed form off-grid."""

    values: tuple
    start: float = 0.0
    step: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(complex(v) for v in self.values))
        if not self.values:
            raise ValueError("Custom requires samples")
        if self.step <= 0:
            raise ValueError("Custom step must be positive")


GeneratorSpec = Union[Character, TrigPoly, DirichletLine, MeasureTransform,
                      BlockSequence, PartialSums, Convergent, Custom]

_KIND_NAMES = {
    Character: "character",
    TrigPoly: "trig_poly",
    DirichletLine: "dirichlet_line",
    MeasureTransform: "measure_transform",
    BlockSequence: "block_sequence",
    PartialSums: "partial_sums",
    Convergent: "convergent",
    Custom: "custom",
}


def kind_of(spec: GeneratorSpec) -> str:
    return _KIND_NAMES[type(spec)]


def _character_values(freq: float, xs: np.ndarray) -> np.ndarray:
    """exp(2*pi*i*freq*xs) with the phase reduced mod 1 first.

    Keeps the exp argument O(1) so dyadic frequencies on integer grids
    (e.g. the alternating sequence) come out exact instead of drifting
    by eps * |freq * x|.
    """
    return np.exp(2j * np.pi * np.mod(freq * xs, 1.0))


def _block_boundaries(spec: BlockSequence, n_top: int) -> np.ndarray:
    """Cumulative block end indices covering [0, n_top]."""
    ends = []
    total = 0
    m = 0
    while total <= n_top:
        total += max(1, int(round(spec.growth ** m)))
        ends.append(total)
        m += 1
    return np.asarray(ends)


def evaluate_many(spec: GeneratorSpec, points) -> np.ndarray:
    """Closed-form values of the generated function at the given points."""
    xs = np.asarray(points, dtype=np.float64)
    if isinstance(spec, Character):
        return _character_values(spec.frequency, xs)
    if isinstance(spec, TrigPoly):
        out = np.zeros(xs.shape, dtype=np.complex128)
        for c, f in spec.terms:
            out += c * _character_values(f, xs)
        return out
    if isinstance(spec, DirichletLine):
        if not spec.sigma > spec.abscissa:
            raise DivergentSeries(
                f"sigma={spec.sigma} not above declared abscissa {spec.abscissa}")
        out = np.zeros(xs.shape, dtype=np.complex128)
        for n, a in enumerate(spec.coeffs, start=1):
            out += a * n ** (-spec.sigma) * _character_values(
                -math.log(n) / (2 * math.pi), xs)
        return out
    if isinstance(spec, MeasureTransform):
        out = np.zeros(xs.shape, dtype=np.complex128)
        for f, w in spec.atoms:
            out += w * _character_values(f, xs)
        if spec.density is not None:
            grid = spec.density.grid()
            dens = np.asarray(spec.density.values, dtype=np.complex128)
            phases = np.exp(2j * np.pi * np.mod(np.outer(grid, xs), 1.0))
            out += _trapz(dens[:, None] * phases, grid, axis=0)
        return out
    if isinstance(spec, BlockSequence):
        ns = np.floor(xs).astype(np.int64)
        out = np.zeros(xs.shape, dtype=np.complex128)
        pos = ns >= 0
        if np.any(pos):
            ends = _block_boundaries(spec, int(ns[pos].max()))
            blocks = np.searchsorted(ends, ns[pos], side="right")
            syms = np.asarray(spec.symbols)
            out[pos] = syms[blocks % len(syms)]
        return out
    if isinstance(spec, PartialSums):
        ns = np.floor(xs).astype(np.int64)
        out = np.zeros(xs.shape, dtype=np.complex128)
        pos = ns >= 0
        if np.any(pos):
            top = int(ns[pos].max())
            coeffs = evaluate_many(spec.inner, np.arange(top + 1))
            sums = np.cumsum(coeffs)
            out[pos] = sums[ns[pos]]
        return out
    if isinstance(spec, Convergent):
        a = np.abs(xs)
        if spec.decay == "exp":
            tail = np.exp(-spec.rate * a)
        else:
            tail = (1.0 + a) ** (-spec.rate)
        return spec.limit + spec.amplitude * tail
    if isinstance(spec, Custom):
        raise UnsupportedPoint("custom samples have no closed form")
    raise TypeError(f"not a generator spec: {spec!r}")


def evaluate(spec: GeneratorSpec, point: float) -> complex:
    """Scalar version of :func:`evaluate_many`."""
    return complex(evaluate_many(spec, np.asarray([point]))[0])


def declared_bound(spec: GeneratorSpec) -> Optional[float]:
    """Closed-form sup bound, or None when only the rendering knows it."""
    if isinstance(spec, Character):
        return 1.0
    if isinstance(spec, TrigPoly):
        return float(sum(abs(c) for c, _ in spec.terms))
    if isinstance(spec, DirichletLine):
        return float(sum(abs(a) * n ** (-spec.sigma)
                         for n, a in enumerate(spec.coeffs, start=1)))
    if isinstance(spec, MeasureTransform):
        total = sum(abs(w) for _, w in spec.atoms)
        if spec.density is not None:
            grid = spec.density.grid()
            total += float(_trapz(np.abs(spec.density.values), grid))
        return float(total)
    if isinstance(spec, BlockSequence):
        return float(max(abs(s) for s in spec.symbols))
    if isinstance(spec, Convergent):
        return abs(spec.limit) + abs(spec.amplitude)
    if isinstance(spec, Custom):
        return float(max(abs(v) for v in spec.values))
    return None  # PartialSums: no closed form in general


def max_frequency(spec: GeneratorSpec) -> Optional[float]:
    """Largest |frequency| present, used by the continuous aliasing guard."""
    if isinstance(spec, Character):
        return abs(spec.frequency)
    if isinstance(spec, TrigPoly):
        return max(abs(f) for _, f in spec.terms)
    if isinstance(spec, DirichletLine):
        return math.log(len(spec.coeffs)) / (2 * math.pi) if len(spec.coeffs) > 1 else 0.0
    if isinstance(spec, MeasureTransform):
        tops = [abs(f) for f, _ in spec.atoms]
        if spec.density is not None:
            tops += [abs(spec.density.freq_min), abs(spec.density.freq_max)]
        return max(tops) if tops else 0.0
    if isinstance(spec, Convergent):
        return None
    return None


def declared_frequencies(spec: GeneratorSpec) -> Optional[np.ndarray]:
    """Frequency set a spectrum estimate should concentrate on, if declared."""
    if isinstance(spec, Character):
        return np.asarray([spec.frequency])
    if isinstance(spec, TrigPoly):
        return np.asarray(sorted({f for _, f in spec.terms}))
    if isinstance(spec, DirichletLine):
        return np.asarray([-math.log(n) / (2 * math.pi)
                           for n in range(1, len(spec.coeffs) + 1)])
    if isinstance(spec, MeasureTransform):
        return np.asarray(sorted({f for f, _ in spec.atoms}))
    return None


def known_limit(spec: GeneratorSpec) -> Optional[complex]:
    """Exact almost-convergence limit when theory provides one.

    Characters and trig polynomials almost converge to their zero-frequency
    coefficient; measure transforms to the weight of the atom at 0;
    Dirichlet lines to their leading coefficient; convergent profiles to
    their limit.  Returns None when no closed-form limit is known.
    """
    if isinstance(spec, Character):
        return 1.0 if spec.frequency == 0 else 0.0
    if isinstance(spec, TrigPoly):
        return complex(sum(c for c, f in spec.terms if f == 0.0))
    if isinstance(spec, DirichletLine):
        return spec.coeffs[0]
    if isinstance(spec, MeasureTransform):
        return complex(sum(w for f, w in spec.atoms if f == 0.0))
    if isinstance(spec, Convergent):
        return complex(spec.limit)
    if isinstance(spec, BlockSequence) and len(set(spec.symbols)) == 1:
        return complex(spec.symbols[0])
    return None


def render_discrete(spec: GeneratorSpec, n_min: int, n_max: int,
                    extension: Extension = Extension.VALID_ONLY) -> DiscreteSignal:
    """Sample the generator at every integer in ``[n_min, n_max]``."""
    if n_min > n_max:
        raise ValueError(f"need n_min <= n_max, got [{n_min}, {n_max}]")
    ns = np.arange(n_min, n_max + 1)
    if isinstance(spec, Custom):
        if spec.step != 1.0:
            raise UnsupportedPoint("custom samples are not on an integer grid")
        lo = n_min - spec.start
        if abs(lo - round(lo)) > 1e-9:
            raise UnsupportedPoint("requested integer range off the custom grid")
        lo = int(round(lo))
        hi = lo + (n_max - n_min)
        if lo < 0 or hi >= len(spec.values):
            raise UnsupportedPoint("requested range outside the custom samples")
        vals = np.asarray(spec.values[lo:hi + 1], dtype=np.complex128)
    else:
        vals = evaluate_many(spec, ns)
    bound = declared_bound(spec)
    if bound is None:
        bound = float(np.max(np.abs(vals)))
    return DiscreteSignal(n_min, vals, bound, extension, kind_of(spec))


def render_continuous(spec: GeneratorSpec, x0: float, h: float, count: int,
                      extension: Extension = Extension.VALID_ONLY) -> ContinuousSignal:
    """Sample the generator at ``x0 + j*h`` for ``j = 0..count-1``.

    Enforces the aliasing guard ``h * f_max <= MAX_CYCLES_PER_STEP`` for
    generators with declared frequencies, keeping the trapezoid window
    quadrature error at O((h*f)^2) per window.
    """
    if h <= 0:
        raise ValueError("grid step must be positive")
    if count < 1:
        raise ValueError("need at least one sample")
    fm = max_frequency(spec)
    if fm is not None and h * fm > MAX_CYCLES_PER_STEP + 1e-12:
        raise AliasingError(
            f"h*f_max = {h * fm:.4g} exceeds {MAX_CYCLES_PER_STEP}; refine the grid")
    xs = x0 + h * np.arange(count)
    if isinstance(spec, Custom):
        if abs(h - spec.step) > 1e-12 * spec.step:
            raise UnsupportedPoint("requested step differs from the custom grid")
        lo = (x0 - spec.start) / spec.step
        if abs(lo - round(lo)) > 1e-6:
            raise UnsupportedPoint("requested grid misaligned with custom samples")
        lo = int(round(lo))
        if lo < 0 or lo + count > len(spec.values):
            raise UnsupportedPoint("requested range outside the custom samples")
        vals = np.asarray(spec.values[lo:lo + count], dtype=np.complex128)
    else:
        vals = evaluate_many(spec, xs)
    bound = declared_bound(spec)
    if bound is None:
        bound = float(np.max(np.abs(vals)))
    return ContinuousSignal(x0, h, vals, bound, extension, kind_of(spec))


# ---------------------------------------------------------------------------
# Finite kernels (nonnegative, unit mass)
# ---------------------------------------------------------------------------

def delta_kernel() -> DiscreteSignal:
    return DiscreteSignal(0, [1.0], 1.0, Extension.VALID_ONLY, "kernel")


def box_kernel(width: int) -> DiscreteSignal:
    """Flat unit-mass kernel on ``width`` consecutive offsets centered at 0."""
    if width < 1:
        raise ValueError("width must be >= 1")
    vals = np.full(width, 1.0 / width)
    return DiscreteSignal(-(width // 2), vals, 1.0 / width,
                          Extension.VALID_ONLY, "kernel")


def fejer_kernel(width: int) -> DiscreteSignal:
    """Triangular unit-mass kernel supported on ``[-width//2, width//2]``."""
    m = max(1, width // 2)
    j = np.arange(-m, m + 1)
    w = 1.0 - np.abs(j) / (m + 1.0)
    w /= w.sum()
    return DiscreteSignal(-m, w, float(w.max()), Extension.VALID_ONLY, "kernel")


def gaussian_kernel(sigma: float, radius: Optional[int] = None) -> DiscreteSignal:
    """Truncated discrete Gaussian, normalized to unit mass."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    r = int(math.ceil(4 * sigma)) if radius is None else int(radius)
    j = np.arange(-r, r + 1)
    w = np.exp(-0.5 * (j / sigma) ** 2)
    w /= w.sum()
    return DiscreteSignal(-r, w, float(w.max()), Extension.VALID_ONLY, "kernel")


def gaussian_kernel_continuous(sigma: float, h: float,
                               radius: Optional[float] = None) -> ContinuousSignal:
    """Sampled Gaussian on step ``h`` with unit trapezoid mass."""
    if sigma <= 0 or h <= 0:
        raise ValueError("sigma and h must be positive")
    r = 4 * sigma if radius is None else radius
    m = max(1, int(round(r / h)))
    t = h * np.arange(-m, m + 1)
    w = np.exp(-0.5 * (t / sigma) ** 2)
    w /= _trapz(w, dx=h)
    return ContinuousSignal(-m * h, h, w, float(w.max()),
                            Extension.VALID_ONLY, "kernel")


def fejer_kernel_continuous(width: float, h: float) -> ContinuousSignal:
    """Triangular kernel of total support ``width`` with unit trapezoid mass."""
    m = max(1, int(round(width / (2 * h))))
    t = np.arange(-m, m + 1)
    w = 1.0 - np.abs(t) / (m + 1.0)
    w /= _trapz(w, dx=h)
    return ContinuousSignal(-m * h, h, w, float(w.max()),
                            Extension.VALID_ONLY, "kernel")
