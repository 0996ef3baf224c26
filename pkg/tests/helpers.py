"""Shared fixtures: reference implementations kept deliberately independent
of the package internals (plain loops over the defining sums)."""
from __future__ import annotations

import numpy as np

from nslct import Grid, SampledSignal

TWO_PI = 2.0 * np.pi


def grid1(n_samples: int = 256, spacing: float = 0.1) -> Grid:
    return Grid.centered(n_samples, spacing)


def grid2(n_samples: int = 64, spacing: float = 0.35) -> Grid:
    return Grid.centered((n_samples, n_samples), spacing)


def gaussian_1d(grid: Grid, sigma: float = 1.0, shift: float = 0.0) -> SampledSignal:
    x = grid.axis(0)
    vals = np.exp(-0.5 * ((x - shift) / sigma) ** 2).astype(complex)
    vals /= np.sqrt(grid.vol * np.sum(np.abs(vals) ** 2))
    return SampledSignal(grid, vals)


def reference_nslct(f: SampledSignal, blocks, wpts: np.ndarray) -> np.ndarray:
    """Direct Riemann sum of the defining integral, written from the raw
    A, B, C, D blocks with explicit per-point loops.  Slow on purpose."""
    a, b, c, d = (np.atleast_2d(np.asarray(blk, dtype=float)) for blk in blocks)
    n = a.shape[0]
    binv = np.linalg.inv(b)
    amp = (TWO_PI) ** (-n / 2.0) / np.sqrt(abs(np.linalg.det(b)))
    xs = f.grid.flat_points()
    fv = f.values.ravel()
    qx = 0.5 * np.einsum("ki,ij,kj->k", xs, binv @ a, xs)
    wpts = np.asarray(wpts, dtype=float).reshape(-1, n)
    out = np.empty(wpts.shape[0], dtype=complex)
    for row, w in enumerate(wpts):
        qw = 0.5 * w @ (d @ binv) @ w
        cross = xs @ (binv.T @ w)
        out[row] = amp * f.grid.vol * np.sum(
            fv * np.exp(1j * (qw - cross + qx))
        )
    return out


def reference_stft(f: SampledSignal, window: SampledSignal, stride: int) -> np.ndarray:
    """Unitary-convention windowed DFT laid out like the package gram:
    leading shift axis, trailing frequency axis ascending."""
    N = f.grid.counts[0]
    vol = f.grid.vol
    fv = f.values
    wv = window.values
    origin_idx = round(f.grid.origin[0] / f.grid.spacing[0])
    rows = []
    for i in range(N // stride):
        shift = stride * i + origin_idx
        shifted = np.array([wv[(k - shift) % N] for k in range(N)])
        g = fv * np.conj(shifted)
        spec = np.fft.fftshift(np.fft.fft(g))
        # unitary continuous-style normalization with origin phase carried in
        k = np.arange(-N // 2, N // 2)
        omega = TWO_PI * k / (N * f.grid.spacing[0])
        rows.append(vol / np.sqrt(TWO_PI) * np.exp(-1j * omega * f.grid.origin[0]) * spec)
    return np.array(rows)


def align_phase(got: np.ndarray, want: np.ndarray) -> np.ndarray:
    """Rotate `got` by the unimodular factor that best matches `want`."""
    z = np.vdot(want, got)
    if z == 0:
        return got
    return got * (np.conj(z) / abs(z))


def rel_max_err(got: np.ndarray, want: np.ndarray) -> float:
    scale = np.max(np.abs(want))
    return float(np.max(np.abs(got - want)) / (scale if scale > 0 else 1.0))
