"""Deterministic test-signal corpora.

All randomness flows through numpy's seeded default generator (PCG64), so a
fixed seed reproduces signals bitwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .frames import CoefficientSet, NsgfSystem, synthesize

__all__ = ["Corpus", "generate_corpus", "KINDS"]

KINDS = ("white", "bandlimited", "chirp", "sparse_in_frame", "prescribed_decay", "mixed")


@dataclass
class Corpus:
    seed: int
    signals: list
    kinds: list

    def __len__(self) -> int:
        return len(self.signals)

    def __iter__(self):
        return iter(self.signals)


def _white(rng, L):
    return (rng.standard_normal(L) + 1j * rng.standard_normal(L)) / np.sqrt(2 * L)


def _bandlimited(rng, L):
    fhat = np.zeros(L, dtype=complex)
    width = int(rng.integers(L // 16, L // 3))
    start = int(rng.integers(0, L))
    idx = (start + np.arange(width)) % L
    fhat[idx] = rng.standard_normal(width) + 1j * rng.standard_normal(width)
    return np.fft.ifft(fhat)


def _chirp(rng, L):
    x = np.arange(L) / L
    f0 = float(rng.uniform(0.02, 0.2)) * L
    f1 = float(rng.uniform(0.25, 0.45)) * L
    phase = 2 * np.pi * (f0 * x + 0.5 * (f1 - f0) * x**2)
    return np.exp(1j * phase) * np.hanning(L)


def _sparse_in_frame(rng, sys, K):
    """Synthesis of K random canonical-dual atoms."""
    entries = [np.zeros(ch.n_shifts, dtype=complex) for ch in sys.channels]
    total = sys.n_coefficients
    flat = rng.choice(total, size=min(K, total), replace=False)
    bounds = np.cumsum([ch.n_shifts for ch in sys.channels])
    for idx in flat:
        m = int(np.searchsorted(bounds, idx, side="right"))
        n = int(idx - (bounds[m - 1] if m else 0))
        mag = float(rng.uniform(0.5, 2.0))
        entries[m][n] = mag * np.exp(2j * np.pi * rng.uniform())
    return synthesize(sys, CoefficientSet(entries), windows="dual")


def _prescribed_decay(rng, sys, beta):
    """Coefficient magnitudes m^(-beta) scattered over random slots, then
    synthesized with the canonical duals."""
    total = sys.n_coefficients
    mags = (1.0 + np.arange(total)) ** (-beta)
    perm = rng.permutation(total)
    phases = np.exp(2j * np.pi * rng.uniform(size=total))
    flat = np.zeros(total, dtype=complex)
    flat[perm] = mags * phases
    entries, pos = [], 0
    for ch in sys.channels:
        entries.append(flat[pos : pos + ch.n_shifts])
        pos += ch.n_shifts
    return synthesize(sys, CoefficientSet(entries), windows="dual")


def generate_corpus(
    kind: str,
    count: int,
    L: int,
    seed: int,
    sys: NsgfSystem | None = None,
    K: int = 5,
    beta: float = 1.1,
) -> Corpus:
    if kind not in KINDS:
        raise ValueError(f"unknown corpus kind {kind!r}; have {KINDS}")
    if kind in ("sparse_in_frame", "prescribed_decay", "mixed"):
        if sys is None:
            raise ValueError(f"kind {kind!r} needs a frame system")
        if sys.L != L:
            raise ValueError("corpus length must match the frame system")
    rng = np.random.default_rng(seed)
    signals, kinds = [], []
    order = KINDS[:-1] if kind == "mixed" else (kind,)
    for i in range(count):
        k = order[i % len(order)]
        if k == "white":
            f = _white(rng, L)
        elif k == "bandlimited":
            f = _bandlimited(rng, L)
        elif k == "chirp":
            f = _chirp(rng, L)
        elif k == "sparse_in_frame":
            f = _sparse_in_frame(rng, sys, K)
        else:
            f = _prescribed_decay(rng, sys, beta)
        signals.append(f)
        kinds.append(k)
    return Corpus(seed=seed, signals=signals, kinds=kinds)
