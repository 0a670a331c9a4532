"""Painless nonstationary Gabor frame engine on a length-L periodic grid.

Windows are defined in the frequency domain: channel m holds samples of
hhat_m(xi) = sqrt(a_m) * phi(a_m * (xi - b_m)) on the bins xi_k = k/L, with
support contained in the half-open band [b_m, b_m + 1/a_m).  The time step
a_m must be a positive integer dividing L, which makes the frame operator an
exact Fourier multiplier and all transforms FFT-sized.

Plain (non-unitary) DFT convention throughout this module: the dense oracle
at small L is the normalization ground truth for the folded fast path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .bapu import PlateauBump
from .covering import Covering, covering_from_nsgf, validate_structured

__all__ = [
    "Channel",
    "NsgfSystem",
    "CoefficientSet",
    "FrameConditionError",
    "make_windows",
    "validate_painless",
    "dual_windows",
    "analyze",
    "synthesize",
    "frame_apply",
    "dense_frame_matrix",
    "decay_check",
]

DENSE_GUARD = 256


class FrameConditionError(ValueError):
    """Raised when a window family fails the frame condition."""


@dataclass
class Channel:
    """One frequency channel: offset b in [0,1), integer time step a."""

    b: float
    a: int
    n_shifts: int
    support_start: int
    window_hat: np.ndarray

    @property
    def bandwidth_bins(self) -> int:
        return self.n_shifts  # B_m = L / a_m for the half-open band convention

    def support_bins(self, L: int) -> np.ndarray:
        return (self.support_start + np.arange(self.bandwidth_bins)) % L


@dataclass
class NsgfSystem:
    L: int
    channels: list
    c_star: float = 0.25
    frame_multiplier: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        if self.frame_multiplier is None:
            s = np.zeros(self.L)
            for ch in self.channels:
                s += np.abs(ch.window_hat) ** 2 / ch.a
            self.frame_multiplier = s

    @property
    def frame_bounds(self) -> tuple:
        s = self.frame_multiplier
        return float(s.min()), float(s.max())

    @property
    def n_coefficients(self) -> int:
        return sum(ch.n_shifts for ch in self.channels)

    @cached_property
    def covering(self) -> Covering:
        # channel bandwidth in cycles/sample is 1/a_m, so a_m enters directly
        return covering_from_nsgf(
            [(ch.b, float(ch.a)) for ch in self.channels], self.c_star
        )

    @property
    def determinants(self) -> np.ndarray:
        """Per-channel |T| of the companion covering, (2 c_star + 1) / a_m."""
        return self.covering.determinants


@dataclass
class CoefficientSet:
    """Frame coefficients c[m][n]; channel order matches the system."""

    entries: list

    def __post_init__(self):
        self.entries = [np.asarray(e, dtype=complex) for e in self.entries]

    @property
    def total(self) -> int:
        return sum(e.size for e in self.entries)

    def copy(self) -> "CoefficientSet":
        return CoefficientSet([e.copy() for e in self.entries])

    def scaled(self, factors) -> "CoefficientSet":
        """Per-channel scalar multiples."""
        return CoefficientSet([f * e for f, e in zip(factors, self.entries)])


def _prototype_fn(prototype):
    """Accept a PlateauBump, a ramp width (0 = flat indicator), or a callable."""
    if callable(prototype) and not isinstance(prototype, PlateauBump):
        return prototype
    if isinstance(prototype, PlateauBump):
        return prototype.profile
    ramp = float(prototype)
    if ramp == 0.0:
        return lambda t: np.where((np.asarray(t) >= 0.0) & (np.asarray(t) < 1.0), 1.0, 0.0)
    return PlateauBump(ramp_width=ramp).profile


def make_windows(L: int, spec, c_star: float = 0.25, prototype=0.125) -> NsgfSystem:
    """Build channel windows hhat_m from (b, a) pairs and a prototype bump."""
    if L < 2:
        raise ValueError("signal length too small")
    phi = _prototype_fn(prototype)
    channels = []
    for b, a in spec:
        b = float(b) % 1.0
        a_int = int(round(a))
        if abs(a - a_int) > 1e-9 or a_int < 1:
            raise ValueError(f"time step {a} must be a positive integer")
        if L % a_int != 0:
            raise ValueError(f"time step must divide signal length: {a_int} | {L}")
        n_shifts = L // a_int
        k0 = int(math.ceil(b * L - 1e-9))
        window_hat = np.zeros(L, dtype=complex)
        ks = k0 + np.arange(n_shifts)
        t = a_int * (ks / L - b)
        window_hat[ks % L] = math.sqrt(a_int) * phi(np.clip(t, 0.0, None))
        channels.append(
            Channel(b=b, a=a_int, n_shifts=n_shifts, support_start=k0 % L,
                    window_hat=window_hat)
        )
    sys = NsgfSystem(L=L, channels=channels, c_star=c_star)
    A, B = sys.frame_bounds
    if A <= 1e-12 * B:
        raise FrameConditionError("not a frame: covering gap in the frequency band")
    return sys


def validate_painless(sys: NsgfSystem):
    """Painless checks, reported through the covering's ValidationReport.

    Hard-errors on support containment; other findings land in violations or
    extras (overlap step ratios, empirical derivative-scaling constants).
    """
    L = sys.L
    for m, ch in enumerate(sys.channels):
        mask = np.zeros(L, dtype=bool)
        mask[ch.support_bins(L)] = True
        if np.any(np.abs(ch.window_hat[~mask]) > 0.0):
            raise ValueError(f"channel {m}: window leaks outside its support band")

    finest = min((2.0 * sys.c_star + 1.0) / ch.a for ch in sys.channels)
    report = validate_structured(
        sys.covering, domain=[[0.0, 1.0]], period=1.0, grid_step=finest / 4.0
    )

    steps = np.array([ch.a for ch in sys.channels], dtype=float)
    from .covering import neighbor_sets  # local to avoid cycle at import time

    nbrs = neighbor_sets(sys.covering, period=1.0)
    ratio_max = 1.0
    for i, s in enumerate(nbrs):
        for j in s:
            ratio_max = max(ratio_max, steps[j] / steps[i])

    for m, ch in enumerate(sys.channels):
        if ch.bandwidth_bins > ch.n_shifts:
            report.violations.append(
                f"channel {m}: bandwidth {ch.bandwidth_bins} bins exceeds "
                f"{ch.n_shifts} time shifts (painless condition fails)"
            )

    # finite-difference proxy for the prototype derivative scaling:
    # |d^beta hhat_m| <= C_beta * a_m^(1/2 + beta), beta in {0, 1}
    c_beta = {0: 0.0, 1: 0.0}
    for ch in sys.channels:
        hat = np.abs(ch.window_hat)
        c_beta[0] = max(c_beta[0], float(hat.max()) / ch.a**0.5)
        d1 = np.abs(np.diff(ch.window_hat)) * L  # difference quotient in xi
        c_beta[1] = max(c_beta[1], float(d1.max()) / ch.a**1.5)

    report.extras.update(
        {
            "max_time_step": float(steps.max()),
            "overlap_step_ratio_max": ratio_max,
            "derivative_constants": {str(k): v for k, v in c_beta.items()},
        }
    )
    return report


def dual_windows(sys: NsgfSystem, mode: str = "canonical_dual") -> list:
    """Canonical dual (divide by the multiplier) or tight (by its square root)."""
    A, _ = sys.frame_bounds
    if A <= 0.0:
        raise FrameConditionError("frame multiplier vanishes; no dual exists")
    s = sys.frame_multiplier
    if mode == "canonical_dual":
        denom = s
    elif mode == "canonical_tight":
        denom = np.sqrt(s)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return [ch.window_hat / denom for ch in sys.channels]


def _window_family(sys: NsgfSystem, windows):
    if isinstance(windows, str):
        if windows == "original":
            return [ch.window_hat for ch in sys.channels]
        if windows == "dual":
            return dual_windows(sys, "canonical_dual")
        if windows == "tight":
            return dual_windows(sys, "canonical_tight")
        raise ValueError(f"unknown window family {windows!r}")
    return windows


def analyze(sys: NsgfSystem, signal: np.ndarray, windows="original") -> CoefficientSet:
    """Inner products with all atoms via per-channel folded FFTs.

    c[m][n] = sum_x signal[x] * conj(h_m(x - n a_m)) with the plain inner
    product; computed as (N_m / L) * ifft_N of the length-N fold of
    fft(signal) * conj(hhat_m).
    """
    signal = np.asarray(signal)
    if signal.shape != (sys.L,):
        raise ValueError(f"signal length {signal.shape} != ({sys.L},)")
    fhat = np.fft.fft(signal)
    hats = _window_family(sys, windows)
    entries = []
    for ch, what in zip(sys.channels, hats):
        prod = fhat * np.conj(what)
        folded = prod.reshape(ch.a, ch.n_shifts).sum(axis=0)
        entries.append((ch.n_shifts / sys.L) * np.fft.ifft(folded))
    return CoefficientSet(entries)


def synthesize(sys: NsgfSystem, coeffs: CoefficientSet, windows="dual") -> np.ndarray:
    """sum_{m,n} c[m][n] * w_{m,n}, accumulated in the frequency domain."""
    if len(coeffs.entries) != len(sys.channels):
        raise ValueError("coefficient set does not match channel count")
    hats = _window_family(sys, windows)
    out_hat = np.zeros(sys.L, dtype=complex)
    for ch, what, c in zip(sys.channels, hats, coeffs.entries):
        if c.shape != (ch.n_shifts,):
            raise ValueError("coefficient array has wrong length")
        spread = np.tile(np.fft.fft(c), ch.a)
        out_hat += what * spread
    return np.fft.ifft(out_hat)


def frame_apply(sys: NsgfSystem, signal: np.ndarray) -> np.ndarray:
    """Frame operator as a Fourier multiplier with symbol the frame multiplier."""
    signal = np.asarray(signal)
    if signal.shape != (sys.L,):
        raise ValueError("signal length mismatch")
    return np.fft.ifft(sys.frame_multiplier * np.fft.fft(signal))


def atom_time_domain(sys: NsgfSystem, m: int, n: int, windows="original") -> np.ndarray:
    """Time-domain atom w_{m,n}, built by a frequency-domain shift."""
    ch = sys.channels[m]
    what = _window_family(sys, windows)[m]
    phase = np.exp(-2j * np.pi * np.arange(sys.L) * (n * ch.a) / sys.L)
    return np.fft.ifft(what * phase)


def dense_frame_matrix(sys: NsgfSystem, windows="original") -> np.ndarray:
    """Ground-truth analysis matrix (sum N_m rows x L columns) for tiny L."""
    if sys.L > DENSE_GUARD:
        raise ValueError(f"dense matrix restricted to L <= {DENSE_GUARD}")
    hats = _window_family(sys, windows)
    k = np.arange(sys.L)
    rows = []
    for ch, what in zip(sys.channels, hats):
        for n in range(ch.n_shifts):
            phase = np.exp(-2j * np.pi * k * (n * ch.a) / sys.L)
            rows.append(np.conj(np.fft.ifft(what * phase)))
    return np.array(rows)


def frame_bapu(sys: NsgfSystem, bump: PlateauBump | None = None):
    """Partition of unity for the companion covering on the frame's own grid."""
    from .bapu import FrequencyGrid, build_bapu

    grid = FrequencyGrid(n_bins=sys.L, lo=0.0, hi=1.0, periodic=True)
    return build_bapu(sys.covering, grid, bump=bump)


def decay_check(sys: NsgfSystem, N: int) -> dict:
    """Empirical constants in the polynomial decay bound of the atoms.

    Per channel: max over the grid of |h_m(x)| * (1 + A_m * dist(x))^N
    divided by |T_m|^{1/2}, with torus-periodized distance, plus the
    normalized l^p atom norms for p in {1, 2, 4}.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    L = sys.L
    x = np.arange(L, dtype=float)
    dist = np.minimum(x, L - x)
    dets = sys.determinants
    per_channel = []
    for ch, det in zip(sys.channels, dets):
        h = np.fft.ifft(ch.window_hat)
        a_scale = (2.0 * sys.c_star + 1.0) / ch.a  # A_m in cycles/sample
        c_n = float(np.max(np.abs(h) * (1.0 + a_scale * dist) ** N) / det**0.5)
        norms = {
            p: float(np.sum(np.abs(h) ** p) ** (1.0 / p) / det ** (0.5 - 1.0 / p))
            for p in (1, 2, 4)
        }
        per_channel.append({"C_N": c_n, "lp_ratios": norms})
    return {
        "N": N,
        "per_channel": per_channel,
        "C_N_max": max(c["C_N"] for c in per_channel),
        "lp_ratio_max": {
            p: max(c["lp_ratios"][p] for c in per_channel) for p in (1, 2, 4)
        },
    }
