import numpy as np
import pytest

from nsgf.configs import dyadic_six_channel, irregular_eight_channel
from nsgf.corpus import generate_corpus
from nsgf.frames import analyze, frame_bapu
from nsgf.spaces import (
    NormParams,
    appendix_lemma_checks,
    coeff_norm,
    ds_norm,
    equivalence_report,
    lp_grid_norm,
    lp_normalized_coeffs,
    seq_norm,
)


def test_norm_params_validation():
    with pytest.raises(ValueError):
        NormParams(p=0.0, q=2.0)
    with pytest.raises(ValueError):
        NormParams(p=2.0, q=-1.0)


def test_seq_norm_basics():
    assert seq_norm([3.0, 4.0], [1.0, 1.0], q=2.0) == 5.0
    # weight exponent scales entries by w^s
    assert seq_norm([1.0], [2.0], q=1.0, s=2.0) == 4.0
    with pytest.raises(ValueError):
        seq_norm([1.0], [1.0, 1.0], q=2.0)


def test_lp_grid_norm_complex():
    assert lp_grid_norm([3.0 + 4.0j], 2.0) == 5.0
    assert lp_grid_norm([1.0, -1.0, 1.0j], 1.0) == 3.0


def test_ds_norm_l2_identity():
    # p = q = 2, s = 0: squared norm is sum |fhat|^2 sum_T psi_T^2 exactly
    sys = dyadic_six_channel(256)
    bapu = frame_bapu(sys)
    rng = np.random.default_rng(0)
    f = rng.standard_normal(256) + 1j * rng.standard_normal(256)
    dn = ds_norm(f, bapu, NormParams(2.0, 2.0, 0.0))
    fhat = np.fft.fft(f, norm="ortho")
    rhs = float(np.sum(np.abs(fhat) ** 2 * (bapu.psi**2).sum(axis=0)))
    assert abs(dn**2 - rhs) <= 1e-10 * rhs


def test_ds_norm_comparable_to_l2():
    # overlap count at most n0 => sum psi^2 in [1/n0, 1]
    sys = irregular_eight_channel(512)
    bapu = frame_bapu(sys)
    n0 = int(bapu.overlap_counts().max())
    rng = np.random.default_rng(1)
    f = rng.standard_normal(512)
    dn = ds_norm(f, bapu, NormParams(2.0, 2.0, 0.0))
    l2 = float(np.sqrt(np.sum(np.abs(f) ** 2)))
    assert l2 / np.sqrt(n0) - 1e-9 <= dn <= l2 + 1e-9


def test_lp_normalization_factors():
    sys = dyadic_six_channel(256)
    coeffs = analyze(sys, np.ones(256))
    scaled = lp_normalized_coeffs(sys, coeffs, sys.covering, p=2.0)
    # p = 2 leaves coefficients untouched
    for a, b in zip(scaled.entries, coeffs.entries):
        assert np.allclose(a, b)
    scaled1 = lp_normalized_coeffs(sys, coeffs, sys.covering, p=1.0)
    dets = sys.determinants
    for det, a, b in zip(dets, scaled1.entries, coeffs.entries):
        assert np.allclose(a, det ** (-0.5) * b)


def test_coeff_norm_channel_mismatch():
    sys = dyadic_six_channel(256)
    coeffs = analyze(sys, np.ones(256))
    coeffs.entries.pop()
    with pytest.raises(ValueError):
        coeff_norm(coeffs, sys.covering, NormParams(2.0, 2.0, 0.0))


def test_equivalence_report_two_sided():
    sys = dyadic_six_channel(512)
    bapu = frame_bapu(sys)
    corpus = generate_corpus("mixed", 20, 512, 0, sys=sys)
    rep = equivalence_report(corpus, sys, sys.covering, bapu, NormParams(2.0, 2.0, 0.0))
    assert 0.0 < rep.C1_hat <= rep.C2_hat < np.inf
    assert len(rep.ratios) == 20
    assert len(rep.ds_norms) == len(rep.coeff_norms) == 20
    d = rep.to_dict()
    assert d["spread"] == rep.C2_hat / rep.C1_hat


def test_equivalence_skips_zero_signals():
    sys = dyadic_six_channel(256)
    bapu = frame_bapu(sys)
    signals = [np.zeros(256), np.ones(256)]
    rep = equivalence_report(signals, sys, sys.covering, bapu, NormParams(2.0, 2.0, 0.0))
    assert rep.skipped == 1
    assert len(rep.ratios) == 1


def test_equivalence_all_zero_raises():
    sys = dyadic_six_channel(256)
    bapu = frame_bapu(sys)
    with pytest.raises(ValueError, match="nonzero"):
        equivalence_report(
            [np.zeros(256)], sys, sys.covering, bapu, NormParams(2.0, 2.0, 0.0)
        )


def test_appendix_lemma_checks_finite():
    sys = dyadic_six_channel(256)
    bapu = frame_bapu(sys)
    out = appendix_lemma_checks(sys, sys.covering, bapu, seed=0)
    for block in out.values():
        for v in block.values():
            assert np.isfinite(v["max"]) and v["max"] >= v["min"] > 0.0
