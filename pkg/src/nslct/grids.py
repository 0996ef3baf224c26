"""Uniform sample grids, signals on them, and the discrete pairings/norms.

Signals live on origin-anchored uniform grids x_k = o + k * delta with
power-of-two counts so the fast transform path can lean on the FFT.  All
integrals are plain Riemann sums (cell volume times a deterministic sum),
which keeps every figure in the test battery bit-reproducible.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadParam, GridMismatch

TWO_PI = 2.0 * math.pi


def _per_axis(value, n: int, name: str, cast):
    vals = np.atleast_1d(np.asarray(value))
    if vals.size == 1:
        vals = np.repeat(vals, n)
    if vals.size != n:
        raise BadParam(f"{name} needs 1 or {n} entries, got {vals.size}")
    return tuple(cast(v) for v in vals)


@dataclass(frozen=True)
class Grid:
    """Uniform grid: per-axis sample counts, spacings and origin."""

    counts: tuple[int, ...]
    spacing: tuple[float, ...]
    origin: tuple[float, ...]

    def __post_init__(self):
        n = len(self.counts)
        if n not in (1, 2) or len(self.spacing) != n or len(self.origin) != n:
            raise BadParam("grid needs matching 1- or 2-axis metadata")
        for N in self.counts:
            if N < 8 or (N & (N - 1)) != 0:
                raise BadParam(f"axis count {N} must be a power of two >= 8")
        for step in self.spacing:
            if not (step > 0.0) or not math.isfinite(step):
                raise BadParam("grid spacing must be positive and finite")
        if not all(math.isfinite(o) for o in self.origin):
            raise BadParam("grid origin must be finite")

    @classmethod
    def centered(cls, counts, spacing) -> "Grid":
        """Grid with the default origin o_j = -N_j * delta_j / 2."""
        counts = tuple(int(c) for c in np.atleast_1d(counts))
        n = len(counts)
        spacing = _per_axis(spacing, n, "spacing", float)
        origin = tuple(-(N * s) / 2.0 for N, s in zip(counts, spacing))
        return cls(counts, spacing, origin)

    @property
    def n(self) -> int:
        return len(self.counts)

    @property
    def size(self) -> int:
        return int(np.prod(self.counts))

    @property
    def vol(self) -> float:
        """Volume of one sample cell."""
        return float(np.prod(self.spacing))

    def axis(self, j: int) -> np.ndarray:
        return self.origin[j] + self.spacing[j] * np.arange(self.counts[j])

    def mesh(self) -> list[np.ndarray]:
        """Coordinate arrays shaped like the value array (ij indexing)."""
        return list(np.meshgrid(*(self.axis(j) for j in range(self.n)), indexing="ij"))

    def flat_points(self) -> np.ndarray:
        """All sample positions, row-major, as a (size, n) array."""
        return np.stack([m.ravel() for m in self.mesh()], axis=-1)

    def extent(self, j: int) -> tuple[float, float]:
        """First and last sample position along axis j."""
        return self.origin[j], self.origin[j] + self.spacing[j] * (self.counts[j] - 1)


@dataclass(frozen=True, eq=False)
class SampledSignal:
    """Complex samples attached to their grid."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.shape != self.grid.counts:
            if vals.size != self.grid.size:
                raise GridMismatch(
                    f"value shape {vals.shape} does not fit grid {self.grid.counts}"
                )
            vals = vals.reshape(self.grid.counts)
        if not np.all(np.isfinite(vals)):
            raise BadParam("signal values must be finite")
        vals = np.ascontiguousarray(vals)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True, eq=False)
class WarpedGrid:
    """Output lattice w = L * omega over the FFT frequencies of a base grid.

    The warp is stored, never resampled: points are the image of the base
    lattice under L and the cell volume picks up |det L|.
    """

    base: Grid
    warp: np.ndarray

    def __post_init__(self):
        w = np.ascontiguousarray(np.asarray(self.warp, dtype=float))
        if w.shape != (self.base.n, self.base.n):
            raise GridMismatch("warp matrix shape must match the grid dimension")
        w.setflags(write=False)
        object.__setattr__(self, "warp", w)

    def __eq__(self, other):
        return (
            isinstance(other, WarpedGrid)
            and self.base == other.base
            and np.array_equal(self.warp, other.warp)
        )

    @property
    def det_warp(self) -> float:
        w = self.warp
        if w.shape[0] == 1:
            return float(w[0, 0])
        return float(w[0, 0] * w[1, 1] - w[0, 1] * w[1, 0])

    @property
    def cell(self) -> float:
        """Volume represented by one lattice point."""
        return abs(self.det_warp) * self.base.vol

    def point_meshes(self) -> list[np.ndarray]:
        """Warped coordinates, one array per output axis."""
        base = self.base.mesh()
        n = self.base.n
        return [sum(self.warp[i, j] * base[j] for j in range(n)) for i in range(n)]


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Transform values on a warped frequency lattice.

    Carries the source grid so the chirp-FFT-chirp pipeline can be undone
    without guessing the original origin.
    """

    wgrid: WarpedGrid
    values: np.ndarray
    signal_grid: Grid

    def __post_init__(self):
        vals = np.ascontiguousarray(np.asarray(self.values, dtype=np.complex128))
        if vals.shape != self.wgrid.base.counts:
            raise GridMismatch("spectrum values must be shaped like the base lattice")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True, eq=False)
class Gram:
    """Windowed-transform table indexed (shift u, frequency w)."""

    wgrid: WarpedGrid
    ugrid: Grid
    values: np.ndarray

    def __post_init__(self):
        vals = np.ascontiguousarray(np.asarray(self.values, dtype=np.complex128))
        want = self.ugrid.counts + self.wgrid.base.counts
        if vals.shape != want:
            raise GridMismatch(f"gram values must have shape {want}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def cell(self) -> float:
        """Volume of one (u, w) cell."""
        return self.wgrid.cell * self.ugrid.vol


def frequency_grid(grid: Grid) -> Grid:
    """FFT frequency lattice of a signal grid, in ascending order.

    omega_j runs over 2 pi m / (N_j delta_j) for m in [-N_j/2, N_j/2).
    """
    spacing = tuple(TWO_PI / (N * s) for N, s in zip(grid.counts, grid.spacing))
    origin = tuple(-(N // 2) * s for N, s in zip(grid.counts, spacing))
    return Grid(grid.counts, spacing, origin)


# ---------------------------------------------------------------------------
# pairings and norms


def inner(f: SampledSignal, g: SampledSignal) -> complex:
    """Discrete L2 pairing vol * sum f * conj(g); conjugate-linear in g."""
    if f.grid != g.grid:
        raise GridMismatch("inner product needs both signals on one grid")
    return complex(f.grid.vol * np.sum(f.values * np.conj(g.values)))


def norm_l2(f: SampledSignal) -> float:
    return math.sqrt(max(inner(f, f).real, 0.0))


def _cell_of(obj) -> float:
    if isinstance(obj, SampledSignal):
        return obj.grid.vol
    if isinstance(obj, Spectrum):
        return obj.wgrid.cell
    if isinstance(obj, Gram):
        return obj.cell
    raise BadParam(f"lp_norm does not handle {type(obj).__name__}")


def lp_norm(obj, p: float) -> float:
    """Discrete L^p norm of a signal, spectrum or gram (p = inf for the sup)."""
    mags = np.abs(obj.values)
    if p == math.inf:
        return float(np.max(mags)) if mags.size else 0.0
    if not (p >= 1.0):
        raise BadParam(f"p = {p} is outside [1, inf]")
    return float((_cell_of(obj) * np.sum(mags**p)) ** (1.0 / p))


# ---------------------------------------------------------------------------
# deterministic test-signal factory


def _gaussian_values(grid: Grid, sigma, center) -> np.ndarray:
    sig = _per_axis(sigma, grid.n, "sigma", float)
    cen = _per_axis(center, grid.n, "center", float)
    if any(not (s > 0.0) for s in sig):
        raise BadParam("gaussian sigma must be positive")
    out = np.ones(grid.counts)
    for j, m in enumerate(grid.mesh()):
        out = out * (
            math.pi ** -0.25 / math.sqrt(sig[j]) * np.exp(-((m - cen[j]) ** 2) / (2.0 * sig[j] ** 2))
        )
    return out.astype(np.complex128)


def synthesize(kind: str, grid: Grid, **params) -> SampledSignal:
    """Build one of the stock test signals on a grid.

    Kinds:
        gaussian(sigma=1, center=0, normalize=True)
            product Gaussian, continuum-normalized, then (optionally)
            rescaled to unit discrete L2 norm
        chirp(freq=0, rate=0, sigma=extent/16, center=0, normalize=True)
            Gaussian envelope times exp(i (freq x + rate x^2 / 2)) per axis;
            rate = 0 degenerates to a plain tone under the envelope
        noise(seed, band=0.5, sigma=extent/16, normalize=True)
            band-limited complex noise (white on the kept frequency box)
            under a Gaussian envelope so edge samples stay negligible
        boxcar(lo, hi)
            indicator of the closed per-axis box [lo_j, hi_j]

    The envelopes keep every stock signal's edge samples below 1e-12, which
    is what the quadrature error budget of the whole battery assumes.
    """
    kind = kind.lower()
    normalize = bool(params.pop("normalize", True))

    if kind == "gaussian":
        vals = _gaussian_values(grid, params.pop("sigma", 1.0), params.pop("center", 0.0))
    elif kind == "chirp":
        default_sig = tuple(N * s / 16.0 for N, s in zip(grid.counts, grid.spacing))
        env = _gaussian_values(grid, params.pop("sigma", default_sig), params.pop("center", 0.0))
        freq = _per_axis(params.pop("freq", 0.0), grid.n, "freq", float)
        rate = _per_axis(params.pop("rate", 0.0), grid.n, "rate", float)
        phase = np.zeros(grid.counts)
        for j, m in enumerate(grid.mesh()):
            phase = phase + freq[j] * m + 0.5 * rate[j] * m * m
        vals = env * np.exp(1j * phase)
    elif kind == "noise":
        if "seed" not in params:
            raise BadParam("noise needs an explicit seed")
        rng = np.random.default_rng(int(params.pop("seed")))
        band = float(params.pop("band", 0.5))
        if not (0.0 < band <= 1.0):
            raise BadParam("band must sit in (0, 1]")
        spec = rng.standard_normal(grid.counts) + 1j * rng.standard_normal(grid.counts)
        for j in range(grid.n):
            om = TWO_PI * np.fft.fftfreq(grid.counts[j], d=grid.spacing[j])
            keep = np.abs(om) <= band * math.pi / grid.spacing[j]
            shape = [1] * grid.n
            shape[j] = grid.counts[j]
            spec = spec * keep.reshape(shape)
        default_sig = tuple(N * s / 16.0 for N, s in zip(grid.counts, grid.spacing))
        env = _gaussian_values(grid, params.pop("sigma", default_sig), 0.0)
        vals = np.fft.ifftn(spec) * env
    elif kind == "boxcar":
        if "lo" not in params or "hi" not in params:
            raise BadParam("boxcar needs lo and hi")
        lo = _per_axis(params.pop("lo"), grid.n, "lo", float)
        hi = _per_axis(params.pop("hi"), grid.n, "hi", float)
        inside = np.ones(grid.counts, dtype=bool)
        for j, m in enumerate(grid.mesh()):
            inside &= (m >= lo[j]) & (m <= hi[j])
        vals = inside.astype(np.complex128)
        normalize = False
    else:
        raise BadParam(f"unknown signal kind {kind!r}")

    if params:
        raise BadParam(f"unused parameters for {kind}: {sorted(params)}")

    sig = SampledSignal(grid, vals)
    if normalize:
        scale = norm_l2(sig)
        if scale == 0.0:
            raise BadParam("cannot normalize an all-zero signal")
        sig = SampledSignal(grid, sig.values / scale)
    return sig
