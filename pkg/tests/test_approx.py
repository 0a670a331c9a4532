import numpy as np
import pytest

from nsgf.approx import error_sweep, fit_decay, nterm_approx, rearrange
from nsgf.configs import dyadic_six_channel, flat_two_channel, toy_three_channel
from nsgf.corpus import generate_corpus
from nsgf.frames import CoefficientSet, analyze, frame_bapu, synthesize
from nsgf.spaces import NormParams, ds_norm
from oracles import best_subset_error


def test_rearrange_sorting_and_ties():
    c = CoefficientSet([[1.0, 3.0], [3.0, 2.0]])
    order = rearrange(c)
    assert [(m, n) for _, m, n in order] == [(0, 1), (1, 0), (1, 1), (0, 0)]
    # weights flip the ranking
    weighted = rearrange(c, channel_weights=[1.0, 10.0])
    assert weighted[0][1:] == (1, 0)


def test_nterm_zero_and_full():
    sys = dyadic_six_channel(256)
    rng = np.random.default_rng(0)
    f = rng.standard_normal(256) + 1j * rng.standard_normal(256)
    zero = nterm_approx(sys, sys.covering, f, 0, 2.0)
    assert np.allclose(zero, 0.0)
    full = nterm_approx(sys, sys.covering, f, sys.n_coefficients, 2.0)
    assert np.max(np.abs(f - full)) <= 1e-10
    with pytest.raises(ValueError):
        nterm_approx(sys, sys.covering, f, -1, 2.0)


def test_nterm_error_monotone_in_l2():
    sys = dyadic_six_channel(512)
    rng = np.random.default_rng(1)
    f = rng.standard_normal(512)
    errs = []
    for N in (8, 32, 128, 512):
        g = nterm_approx(sys, sys.covering, f, N, 2.0)
        errs.append(float(np.linalg.norm(f - g)))
    assert all(b <= a + 1e-9 for a, b in zip(errs, errs[1:]))


def test_exact_recovery_orthonormal():
    sys = flat_two_channel(256)
    f = generate_corpus("sparse_in_frame", 1, 256, 0, sys=sys, K=5).signals[0]
    g = nterm_approx(sys, sys.covering, f, 5, 2.0)
    assert np.max(np.abs(f - g)) <= 1e-12


def test_fit_decay_recovers_power_law():
    Ns = [2, 4, 8, 16, 32]
    errors = [n**-0.7 for n in Ns]
    assert abs(fit_decay(Ns, errors) + 0.7) <= 1e-10
    with pytest.raises(ValueError, match="exact recovery"):
        fit_decay(Ns, [1.0, 0.5, 0.0, 0.1, 0.1])
    with pytest.raises(ValueError):
        fit_decay([2], [1.0])


def test_error_sweep_validation():
    sys = dyadic_six_channel(256)
    bapu = frame_bapu(sys)
    f = np.ones(256)
    with pytest.raises(ValueError, match="alpha"):
        error_sweep(sys, sys.covering, bapu, f, [2, 4], tau=2.0, p=2.0)
    with pytest.raises(ValueError, match="increasing"):
        error_sweep(sys, sys.covering, bapu, f, [4, 2], tau=1.0, p=2.0)


def test_error_sweep_fields():
    sys = dyadic_six_channel(512)
    bapu = frame_bapu(sys)
    f = generate_corpus("prescribed_decay", 1, 512, 0, sys=sys, beta=1.25).signals[0]
    Ns = [2, 8, 32, 128]
    sw = error_sweep(sys, sys.covering, bapu, f, Ns, tau=1.0, p=2.0)
    assert sw.alpha == 0.5
    assert sw.Ns == Ns and len(sw.errors) == 4
    assert all(e > 0.0 for e in sw.errors)
    assert sw.source_norm > 0.0
    d = sw.to_dict()
    assert d["fitted_slope"] == sw.fitted_slope


def test_thresholding_near_best_subset_toy():
    sys = toy_three_channel(16)
    bapu = frame_bapu(sys)
    params = NormParams(2.0, 2.0, 0.0)
    rng = np.random.default_rng(3)
    f = rng.standard_normal(16) + 1j * rng.standard_normal(16)
    for N in (1, 2):
        best = best_subset_error(sys, bapu, f, N, params)
        mine = ds_norm(f - nterm_approx(sys, sys.covering, f, N, 2.0), bapu, params)
        assert mine <= 2.0 * best + 1e-12
