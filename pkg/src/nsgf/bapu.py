"""Smooth partition of unity subordinate to a covering, as Fourier multipliers.

The partition is built from a single plateau bump: a C^infty function that is
1 on the inner box, 0 outside the base box, with exp(-1/t) ramps in between.
Each member is pulled back through its affine map, and the family is
normalized pointwise so the sampled functions sum to 1 on the grid band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .covering import Covering, invert_affine, apply_affine

__all__ = [
    "FrequencyGrid",
    "PlateauBump",
    "Bapu",
    "plateau_value",
    "build_bapu",
    "multiplier_apply",
    "transplanted_l1_norms",
    "bapu_rows",
]


@dataclass(frozen=True)
class FrequencyGrid:
    """Uniform grid of n_bins frequencies over [lo, hi), optionally periodic."""

    n_bins: int
    lo: float = 0.0
    hi: float = 1.0
    periodic: bool = False

    def __post_init__(self):
        if self.n_bins < 1:
            raise ValueError("need at least one bin")
        if self.hi <= self.lo:
            raise ValueError("empty band")

    @property
    def spacing(self) -> float:
        return (self.hi - self.lo) / self.n_bins

    @property
    def period(self) -> float | None:
        return self.hi - self.lo if self.periodic else None

    @cached_property
    def xi(self) -> np.ndarray:
        return self.lo + np.arange(self.n_bins) * self.spacing


def _ramp(t: np.ndarray) -> np.ndarray:
    """sigma(t) = rho(t) / (rho(t) + rho(1-t)), clamped to {0, 1} off (0, 1)."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    out[t >= 1.0] = 1.0
    mid = (t > 0.0) & (t < 1.0)
    tm = t[mid]
    with np.errstate(over="ignore"):
        a = np.exp(-1.0 / tm)
        b = np.exp(-1.0 / (1.0 - tm))
    out[mid] = a / (a + b)
    return out


@dataclass(frozen=True)
class PlateauBump:
    """Bump on (0,1)^d: 1 on (w, 1-w)^d, 0 outside, smooth ramps of width w."""

    ramp_width: float
    dimension: int = 1

    def __post_init__(self):
        if not 0.0 < self.ramp_width < 0.5:
            raise ValueError("ramp_width must lie in (0, 1/2)")

    def profile(self, t) -> np.ndarray:
        """One-coordinate factor sigma(t/w) * sigma((1-t)/w)."""
        t = np.asarray(t, dtype=float)
        w = self.ramp_width
        return _ramp(t / w) * _ramp((1.0 - t) / w)


def plateau_value(bump: PlateauBump, point) -> float:
    point = np.atleast_1d(np.asarray(point, dtype=float))
    if point.size != bump.dimension:
        raise ValueError("point dimension mismatch")
    return float(np.prod(bump.profile(point)))


def _bump_values(cov: Covering, bump: PlateauBump, points: np.ndarray, period):
    """Matrix (n_maps, n_points) of Phi(T^{-1} xi), periodized when requested.

    Points are mapped through the normalized base-box coordinates so the
    plateau of the bump lands on the inner box of the covering.
    """
    qlo = cov.base_box[:, 0]
    qwidth = cov.base_box[:, 1] - cov.base_box[:, 0]
    n = len(cov)
    raw = np.zeros((n, points.shape[0]))
    for i, affine in enumerate(cov.maps):
        box = cov.image_boxes[i]
        if period is None:
            shifts = [0.0]
        else:
            j_lo = math.floor((box[:, 0].min() - points[:, 0].max()) / period)
            j_hi = math.ceil((box[:, 1].max() - points[:, 0].min()) / period)
            shifts = [j * period for j in range(j_lo, j_hi + 1)]
        for shift in shifts:
            u = invert_affine(affine, points + shift)
            v = (u - qlo) / qwidth
            vals = np.prod(bump.profile(v.T), axis=0)
            raw[i] += vals
    return raw


def _default_ramp(cov: Covering) -> float:
    # largest ramp for which the bump plateau still contains the inner box
    qlo = cov.base_box[:, 0]
    qhi = cov.base_box[:, 1]
    plo = cov.inner_box[:, 0]
    phi = cov.inner_box[:, 1]
    width = qhi - qlo
    margin = np.minimum((plo - qlo) / width, (qhi - phi) / width)
    return float(margin.min())


@dataclass
class Bapu:
    """Sampled partition of unity: psi has shape (n_maps, n_bins)."""

    covering: Covering
    grid: FrequencyGrid
    psi: np.ndarray
    bump: PlateauBump

    @property
    def n_maps(self) -> int:
        return self.psi.shape[0]

    def overlap_counts(self) -> np.ndarray:
        return (self.psi > 0.0).sum(axis=0)


def build_bapu(cov: Covering, grid: FrequencyGrid, bump: PlateauBump | None = None) -> Bapu:
    """Normalize pulled-back bumps into a partition of unity on the grid band."""
    if cov.dimension != 1:
        raise ValueError("sampled partitions are built on one-dimensional grids")
    if bump is None:
        bump = PlateauBump(ramp_width=_default_ramp(cov), dimension=1)
    points = grid.xi[:, None]
    raw = _bump_values(cov, bump, points, grid.period)
    denom = raw.sum(axis=0)
    bad = np.nonzero(denom < 1e-14)[0]
    if bad.size:
        raise ValueError(f"covering gap at bin {int(bad[0])} (xi={grid.xi[bad[0]]})")
    return Bapu(covering=cov, grid=grid, psi=raw / denom, bump=bump)


def multiplier_apply(psi: np.ndarray, signal: np.ndarray) -> np.ndarray:
    """Unitary-DFT Fourier multiplier: ifft(psi * fft(signal))."""
    psi = np.asarray(psi)
    signal = np.asarray(signal)
    if psi.shape[-1] != signal.shape[-1]:
        raise ValueError("multiplier and signal length mismatch")
    return np.fft.ifft(psi * np.fft.fft(signal, norm="ortho"), norm="ortho")


def transplanted_l1_norms(bapu: Bapu, resolution: int = 256) -> np.ndarray:
    """Per-member l^1 norms of the inverse DFT of psi_T composed with T.

    Samples psi_T(T u) for u on a uniform grid over the base box and sums the
    moduli of its inverse DFT; a proxy for the L^1 multiplier norms, stable in
    the resolution since psi_T(T .) is supported on the fixed base box.
    """
    cov = bapu.covering
    qlo, qhi = cov.base_box[0]
    u = (qlo + (np.arange(resolution) + 0.5) * (qhi - qlo) / resolution)[:, None]
    out = np.empty(len(cov))
    for i, affine in enumerate(cov.maps):
        pts = apply_affine(affine, u)
        raw = _bump_values(cov, bapu.bump, pts, bapu.grid.period)
        denom = raw.sum(axis=0)
        vals = np.where(denom > 0.0, raw[i] / np.maximum(denom, 1e-300), 0.0)
        out[i] = float(np.abs(np.fft.ifft(vals)).sum())
    return out


def bapu_rows(bapu: Bapu):
    """Nonzero entries as (bin, xi, member index, psi value) tuples."""
    for t in range(bapu.n_maps):
        for k in np.nonzero(bapu.psi[t])[0]:
            yield int(k), float(bapu.grid.xi[k]), t, float(bapu.psi[t, k])
