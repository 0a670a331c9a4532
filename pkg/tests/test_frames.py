import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nsgf.configs import (
    dyadic_six_channel,
    flat_two_channel,
    irregular_eight_channel,
    toy_three_channel,
)
from nsgf.frames import (
    CoefficientSet,
    FrameConditionError,
    analyze,
    atom_time_domain,
    decay_check,
    dense_frame_matrix,
    dual_windows,
    frame_apply,
    make_windows,
    synthesize,
    validate_painless,
)
from oracles import dense_analyze, dense_frame_operator, dense_synthesize


def _rand(rng, L):
    return rng.standard_normal(L) + 1j * rng.standard_normal(L)


def test_make_windows_rejects_bad_steps():
    with pytest.raises(ValueError, match="integer"):
        make_windows(64, [(0.0, 2.5)])
    with pytest.raises(ValueError, match="divide"):
        make_windows(64, [(0.0, 3)])


def test_non_frame_rejected():
    # one narrow channel leaves most of the band uncovered
    with pytest.raises(FrameConditionError):
        make_windows(64, [(0.0, 8)])


def test_window_support_band():
    sys = make_windows(64, [(0.25, 4), (0.0, 2), (0.5, 2)], prototype=0.0)
    for ch in sys.channels:
        mask = np.zeros(64, dtype=bool)
        mask[ch.support_bins(64)] = True
        assert np.all(ch.window_hat[~mask] == 0.0)
        assert ch.n_shifts == 64 // ch.a


def test_analyze_matches_dense_oracle():
    sys = toy_three_channel(16)
    rng = np.random.default_rng(0)
    f = _rand(rng, 16)
    fast = analyze(sys, f)
    slow = dense_analyze(sys, f)
    for a, b in zip(fast.entries, slow.entries):
        assert np.allclose(a, b, atol=1e-12)


def test_synthesize_matches_dense_oracle():
    sys = toy_three_channel(16)
    rng = np.random.default_rng(1)
    coeffs = CoefficientSet([_rand(rng, ch.n_shifts) for ch in sys.channels])
    fast = synthesize(sys, coeffs, windows="original")
    slow = dense_synthesize(sys, coeffs)
    assert np.allclose(fast, slow, atol=1e-12)


def test_frame_apply_matches_dense_operator():
    sys = toy_three_channel(16)
    S = dense_frame_operator(sys)
    rng = np.random.default_rng(2)
    f = _rand(rng, 16)
    assert np.allclose(frame_apply(sys, f), S @ f, atol=1e-12)


def test_frame_bounds_are_multiplier_extremes():
    sys = dyadic_six_channel(256)
    A, B = sys.frame_bounds
    s = sys.frame_multiplier
    assert A == s.min() and B == s.max()
    assert A > 0.0


@given(seed=st.integers(0, 1000))
@settings(max_examples=20, deadline=None)
def test_dual_roundtrip_random_signals(seed):
    sys = dyadic_six_channel(256)
    rng = np.random.default_rng(seed)
    f = _rand(rng, 256)
    g = synthesize(sys, analyze(sys, f), windows="dual")
    assert np.max(np.abs(f - g)) <= 1e-10


def test_analysis_with_dual_then_original_synthesis():
    # the two factorizations of S^{-1} agree
    sys = irregular_eight_channel(512)
    rng = np.random.default_rng(3)
    f = _rand(rng, 512)
    g = synthesize(sys, analyze(sys, f, windows="dual"), windows="original")
    assert np.max(np.abs(f - g)) <= 1e-10


def test_tight_windows_parseval_and_roundtrip():
    sys = dyadic_six_channel(512)
    tight = dual_windows(sys, "canonical_tight")
    rng = np.random.default_rng(4)
    f = _rand(rng, 512)
    c = analyze(sys, f, windows=tight)
    energy = sum(np.sum(np.abs(e) ** 2) for e in c.entries)
    assert abs(energy - np.sum(np.abs(f) ** 2)) <= 1e-8 * np.sum(np.abs(f) ** 2)
    g = synthesize(sys, c, windows=tight)
    assert np.max(np.abs(f - g)) <= 1e-10


def test_dual_mode_validation():
    sys = flat_two_channel(64)
    with pytest.raises(ValueError):
        dual_windows(sys, "pseudo")


def test_atom_time_domain_is_shift():
    sys = toy_three_channel(16)
    a0 = atom_time_domain(sys, 0, 0)
    a1 = atom_time_domain(sys, 0, 1)
    assert np.allclose(np.roll(a0, sys.channels[0].a), a1, atol=1e-12)


def test_dense_matrix_guard():
    sys = dyadic_six_channel(512)
    with pytest.raises(ValueError, match="dense"):
        dense_frame_matrix(sys)


def test_validate_painless_clean_configs():
    for sys in (flat_two_channel(256), dyadic_six_channel(256), irregular_eight_channel(512)):
        rep = validate_painless(sys)
        assert rep.violations == []
        assert rep.covers_domain
        assert "derivative_constants" in rep.extras


def test_flat_config_is_orthonormal():
    sys = flat_two_channel(64)
    D = dense_frame_matrix(sys)
    G = D @ D.conj().T
    assert np.allclose(G, np.eye(sys.n_coefficients), atol=1e-10)


def test_decay_check_constants():
    sys = dyadic_six_channel(256)
    out = decay_check(sys, 2)
    assert out["N"] == 2
    assert np.isfinite(out["C_N_max"]) and out["C_N_max"] > 0.0
    assert all(np.isfinite(v) for v in out["lp_ratio_max"].values())
    with pytest.raises(ValueError):
        decay_check(sys, 0)


def test_coefficient_set_utilities():
    c = CoefficientSet([[1.0, 2.0], [3.0]])
    assert c.total == 3
    scaled = c.scaled([2.0, 0.5])
    assert np.allclose(scaled.entries[0], [2.0, 4.0])
    assert np.allclose(scaled.entries[1], [1.5])
    cp = c.copy()
    cp.entries[0][0] = 9.0
    assert c.entries[0][0] == 1.0
