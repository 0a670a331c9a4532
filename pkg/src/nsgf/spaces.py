"""Decomposition-space and coefficient-space norms, and their empirical
two-sided comparison through the frame coefficients."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .bapu import Bapu, multiplier_apply
from .covering import Covering
from .frames import CoefficientSet, NsgfSystem, analyze

__all__ = [
    "NormParams",
    "EquivalenceReport",
    "seq_norm",
    "lp_grid_norm",
    "ds_norm",
    "lp_normalized_coeffs",
    "coeff_norm",
    "equivalence_report",
    "appendix_lemma_checks",
]

log = logging.getLogger("nsgf")


@dataclass(frozen=True)
class NormParams:
    """Inner exponent p, outer exponent q, weight exponent s."""

    p: float
    q: float
    s: float = 0.0

    def __post_init__(self):
        if not (0.0 < self.p < float("inf")) or not (0.0 < self.q < float("inf")):
            raise ValueError("p and q must be finite and positive")


def seq_norm(values, weights, q: float, s: float = 0.0) -> float:
    """Weighted sequence norm (sum (w^s |a|)^q)^(1/q)."""
    values = np.abs(np.asarray(values))
    weights = np.asarray(weights, dtype=float)
    if values.shape != weights.shape:
        raise ValueError("values and weights must have equal length")
    if q <= 0.0:
        raise ValueError("q must be positive")
    terms = (weights**s) * values
    return float(np.sum(terms**q) ** (1.0 / q))


def lp_grid_norm(g, p: float) -> float:
    """Unit-spacing grid realization of the L^p norm."""
    if p <= 0.0:
        raise ValueError("p must be positive")
    g = np.asarray(g)
    return float(np.sum(np.abs(g) ** p) ** (1.0 / p))


def ds_norm(signal, bapu: Bapu, params: NormParams) -> float:
    """Outer weighted l^q over members of the per-member multiplier L^p norms."""
    signal = np.asarray(signal)
    if signal.shape[-1] != bapu.grid.n_bins:
        raise ValueError("signal length does not match the multiplier grid")
    pieces = multiplier_apply(bapu.psi, signal)
    local = np.array([lp_grid_norm(piece, params.p) for piece in pieces])
    return seq_norm(local, bapu.covering.weights, q=params.q, s=params.s)


def lp_normalized_coeffs(
    sys: NsgfSystem, coeffs: CoefficientSet, covering: Covering, p: float
) -> CoefficientSet:
    """Rescale channel m by |T_m|^(1/2 - 1/p), matching L^p-normalized atoms."""
    if p <= 0.0:
        raise ValueError("p must be positive")
    factors = covering.determinants ** (0.5 - 1.0 / p)
    return coeffs.scaled(factors)


def coeff_norm(coeffs: CoefficientSet, covering: Covering, params: NormParams) -> float:
    """Inner l^p over time shifts, outer weighted l^q over channels."""
    if len(coeffs.entries) != len(covering):
        raise ValueError("coefficient channels do not match the covering")
    local = np.array([lp_grid_norm(c, params.p) for c in coeffs.entries])
    return seq_norm(local, covering.weights, q=params.q, s=params.s)


@dataclass
class EquivalenceReport:
    """Empirical two-sided norm comparison constants over a signal corpus."""

    ratios: list
    C1_hat: float
    C2_hat: float
    params: NormParams
    corpus_size: int
    skipped: int = 0
    ds_norms: list = None
    coeff_norms: list = None

    def to_dict(self) -> dict:
        return {
            "p": self.params.p,
            "q": self.params.q,
            "s": self.params.s,
            "corpus_size": self.corpus_size,
            "skipped": self.skipped,
            "C1_hat": self.C1_hat,
            "C2_hat": self.C2_hat,
            "spread": self.C2_hat / self.C1_hat,
            "ratios": self.ratios,
        }


def equivalence_report(
    corpus, sys: NsgfSystem, covering: Covering, bapu: Bapu, params: NormParams
) -> EquivalenceReport:
    """Ratios coefficient-norm / decomposition-norm over a corpus of signals."""
    ratios, ds_norms, coeff_norms = [], [], []
    skipped = 0
    for i, f in enumerate(corpus):
        f = np.asarray(f)
        if not np.any(f):
            log.warning("skipping zero signal %d in equivalence corpus", i)
            skipped += 1
            continue
        coeffs = lp_normalized_coeffs(sys, analyze(sys, f), covering, params.p)
        cn = coeff_norm(coeffs, covering, params)
        dn = ds_norm(f, bapu, params)
        ratios.append(cn / dn)
        ds_norms.append(dn)
        coeff_norms.append(cn)
    if not ratios:
        raise ValueError("corpus contained no nonzero signal")
    return EquivalenceReport(
        ratios=ratios,
        C1_hat=float(min(ratios)),
        C2_hat=float(max(ratios)),
        params=params,
        corpus_size=len(corpus),
        skipped=skipped,
        ds_norms=ds_norms,
        coeff_norms=coeff_norms,
    )


def appendix_lemma_checks(sys: NsgfSystem, covering: Covering, bapu: Bapu, seed=0) -> dict:
    """Empirical constants for the two auxiliary multiplier inequalities.

    Band-limited norm comparison: per channel, ||h||_q / (|T|^(1/p-1/q) ||h||_p)
    for (p, q) in {(1,2), (2,4), (1, max)}.  Multiplier bound: per member,
    ||psi(D)f||_p / (||F^{-1}psi||_ptilde * ||f||_p) for band-limited random f.
    """
    rng = np.random.default_rng(seed)
    dets = sys.determinants
    nikolskii = {}
    for p, q in ((1.0, 2.0), (2.0, 4.0), (1.0, None)):
        vals = []
        for ch, det in zip(sys.channels, dets):
            h = np.fft.ifft(ch.window_hat)
            hq = float(np.max(np.abs(h))) if q is None else lp_grid_norm(h, q)
            inv_q = 0.0 if q is None else 1.0 / q
            vals.append(hq / (det ** (1.0 / p - inv_q) * lp_grid_norm(h, p)))
        label = f"p={p:g},q={'max' if q is None else f'{q:g}'}"
        nikolskii[label] = {"max": max(vals), "min": min(vals)}

    multiplier = {}
    L = sys.L
    for p in (1.0, 2.0):
        p_tilde = min(1.0, p)
        vals = []
        for t in range(bapu.n_maps):
            psi = bapu.psi[t]
            support = psi > 0.0
            fhat = np.zeros(L, dtype=complex)
            fhat[support] = rng.standard_normal(int(support.sum())) + 1j * rng.standard_normal(
                int(support.sum())
            )
            f = np.fft.ifft(fhat)
            num = lp_grid_norm(multiplier_apply(psi, f), p)
            kernel_norm = lp_grid_norm(np.fft.ifft(psi), p_tilde)
            vals.append(num / (kernel_norm * lp_grid_norm(f, p)))
        multiplier[f"p={p:g}"] = {"max": max(vals), "min": min(vals)}

    return {"bandlimited_norm_comparison": nikolskii, "multiplier_bound": multiplier}
