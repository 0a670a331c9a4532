"""Thresholding-based nonlinear N-term approximation and decay-rate fitting."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bapu import Bapu
from .covering import Covering
from .frames import CoefficientSet, NsgfSystem, analyze, synthesize
from .spaces import NormParams, ds_norm

__all__ = [
    "SweepResult",
    "rearrange",
    "nterm_approx",
    "error_sweep",
    "fit_decay",
]


def rearrange(coeffs: CoefficientSet, channel_weights=None):
    """Entries as (magnitude, channel, shift), sorted by decreasing magnitude.

    Optional per-channel weights rescale magnitudes before sorting (used for
    L^p-normalized thresholding).  Ties break lexicographically on
    (channel, shift) so the ordering is deterministic.
    """
    items = []
    for m, c in enumerate(coeffs.entries):
        w = 1.0 if channel_weights is None else float(channel_weights[m])
        mags = w * np.abs(c)
        items.extend((float(mags[n]), m, n) for n in range(c.size))
    items.sort(key=lambda t: (-t[0], t[1], t[2]))
    return items


def _threshold_mask(sys, coeffs, covering, N, p):
    """Kept-coefficient mask for top-N thresholding of normalized magnitudes."""
    weights = covering.determinants ** (0.5 - 1.0 / p)
    order = rearrange(coeffs, channel_weights=weights)
    kept = [np.zeros(c.size, dtype=bool) for c in coeffs.entries]
    for _, m, n in order[: max(N, 0)]:
        kept[m][n] = True
    return kept


def nterm_approx(sys: NsgfSystem, covering: Covering, f, N: int, p: float) -> np.ndarray:
    """Keep the N largest L^p-normalized coefficients, reconstruct with duals.

    The normalization factors cancel between analysis and reconstruction, so
    this equals thresholding the canonical coefficients by |T|^(1/2-1/p)|c|
    and synthesizing the kept ones with the canonical dual windows.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    f = np.asarray(f)
    coeffs = analyze(sys, f)
    N = min(N, coeffs.total)
    kept = _threshold_mask(sys, coeffs, covering, N, p)
    masked = CoefficientSet(
        [np.where(mask, c, 0.0) for mask, c in zip(kept, coeffs.entries)]
    )
    return synthesize(sys, masked, windows="dual")


@dataclass
class SweepResult:
    Ns: list
    errors: list
    tau: float
    p: float
    s: float
    alpha: float
    source_norm: float  # ||f|| in the (tau, tau, s) decomposition norm
    fitted_slope: float
    fit_range: tuple

    def to_dict(self) -> dict:
        return {
            "Ns": self.Ns,
            "errors": self.errors,
            "tau": self.tau,
            "p": self.p,
            "s": self.s,
            "alpha": self.alpha,
            "source_norm": self.source_norm,
            "fitted_slope": self.fitted_slope,
            "fit_range": list(self.fit_range),
        }


def fit_decay(Ns, errors, fit_range=None) -> float:
    """Least-squares slope of log(error) against log(N) over an index range."""
    Ns = np.asarray(Ns, dtype=float)
    errors = np.asarray(errors, dtype=float)
    if fit_range is None:
        fit_range = (0, len(Ns))
    lo, hi = fit_range
    Ns, errors = Ns[lo:hi], errors[lo:hi]
    if Ns.size < 2:
        raise ValueError("need at least two points to fit a slope")
    if np.any(errors <= 0.0):
        raise ValueError("exact recovery reached; shrink the fit range")
    slope, _ = np.polyfit(np.log(Ns), np.log(errors), 1)
    return float(slope)


def error_sweep(
    sys: NsgfSystem,
    covering: Covering,
    bapu: Bapu,
    f,
    Ns,
    tau: float,
    p: float,
    s: float = 0.0,
) -> SweepResult:
    """Thresholding errors over increasing N, measured in the (p, p, s) norm.

    Also records the source norm of f in the (tau, tau, s) norm and fits the
    log-log decay slope, by default over all but the first and last points.
    """
    if tau >= p:
        raise ValueError("alpha must be positive: require tau < p")
    Ns = [int(n) for n in Ns]
    if any(b <= a for a, b in zip(Ns, Ns[1:])):
        raise ValueError("Ns must be strictly increasing")
    f = np.asarray(f)
    alpha = 1.0 / tau - 1.0 / p
    params_err = NormParams(p=p, q=p, s=s)
    params_src = NormParams(p=tau, q=tau, s=s)

    coeffs = analyze(sys, f)
    weights = covering.determinants ** (0.5 - 1.0 / p)
    order = rearrange(coeffs, channel_weights=weights)
    errors = []
    for N in Ns:
        kept = [np.zeros(c.size, dtype=bool) for c in coeffs.entries]
        for _, m, n in order[: min(N, coeffs.total)]:
            kept[m][n] = True
        masked = CoefficientSet(
            [np.where(mask, c, 0.0) for mask, c in zip(kept, coeffs.entries)]
        )
        f_n = synthesize(sys, masked, windows="dual")
        errors.append(ds_norm(f - f_n, bapu, params_err))

    fit_range = (1, len(Ns) - 1) if len(Ns) > 3 else (0, len(Ns))
    slope = fit_decay(Ns, errors, fit_range)
    return SweepResult(
        Ns=Ns,
        errors=errors,
        tau=tau,
        p=p,
        s=s,
        alpha=alpha,
        source_norm=ds_norm(f, bapu, params_src),
        fitted_slope=slope,
        fit_range=fit_range,
    )
