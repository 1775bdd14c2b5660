import numpy as np
import pytest

from fovmd import (EmdConfig, SampledSignal, ToneSpec, VmdParams, compare_methods,
                   eemd, emd, preset_tones, synth_multitone, vmd_decompose)

FS = 4096.0
N = 4096


@pytest.fixture(scope="module")
def well_separated_pair():
    return synth_multitone([ToneSpec(1.0, 3.0), ToneSpec(1.0, 271.0)], FS, N)


@pytest.fixture(scope="module")
def eq14_emd(eq14):
    return emd(eq14)


@pytest.fixture(scope="module")
def eq14_eemd(eq14):
    return eemd(eq14, EmdConfig(ensemble_size=100, noise_std_fraction=0.2, seed=0))


def _corr(a, b):
    return abs(np.corrcoef(a, b)[0, 1])


def test_emd_separates_wide_frequency_ratio(well_separated_pair):
    result = emd(well_separated_pair)
    t = np.arange(N) / FS
    hi = np.sin(2 * np.pi * 271 * t)
    lo = np.sin(2 * np.pi * 3 * t)
    assert _corr(result.imfs[0], hi) > 0.95
    best_lo = max(_corr(imf, lo) for imf in result.imfs[1:])
    assert best_lo > 0.95


def test_emd_completeness(well_separated_pair):
    result = emd(well_separated_pair)
    recon = sum(result.imfs) + result.residual
    scale = np.max(np.abs(well_separated_pair.samples))
    assert np.max(np.abs(recon - well_separated_pair.samples)) < 1e-9 * scale


def test_emd_monotone_input_gives_no_imfs():
    sig = SampledSignal(np.linspace(0.0, 1.0, 64), FS)
    result = emd(sig)
    assert len(result.imfs) == 0
    assert np.array_equal(result.residual, sig.samples)


def test_emd_imf_extrema_vs_zero_crossings(well_separated_pair):
    result = emd(well_separated_pair)
    for imf in result.imfs[:2]:
        interior = imf[N // 20 : -N // 20]
        zc = int(np.sum(np.abs(np.diff(np.sign(interior))) > 1))
        d = np.diff(interior)
        ext = int(np.sum((d[:-1] > 0) & (d[1:] < 0)) + np.sum((d[:-1] < 0) & (d[1:] > 0)))
        assert abs(ext - zc) <= 1


def test_emd_mixes_close_interharmonics(eq14, eq14_emd):
    t = np.arange(N) / FS
    for f in (104.0, 117.0):
        tone = np.sin(2 * np.pi * f * t)
        assert max(_corr(imf, tone) for imf in eq14_emd.imfs) < 0.9


def test_eemd_determinism(eq14):
    cfg = EmdConfig(ensemble_size=3, seed=5)
    a = eemd(eq14, cfg)
    b = eemd(eq14, cfg)
    assert all(np.array_equal(x, y) for x, y in zip(a, b))


def test_eemd_degenerate_ensemble_equals_emd(eq14, eq14_emd):
    single = eemd(eq14, EmdConfig(ensemble_size=1, noise_std_fraction=0.0))
    assert len(single) == len(eq14_emd.imfs)
    for ours, plain in zip(single, eq14_emd.imfs):
        assert np.array_equal(ours, plain)


def test_eemd_recovers_fifth_harmonic(eq14, eq14_eemd):
    t = np.arange(N) / FS
    tone = np.sin(2 * np.pi * 250 * t)
    assert max(_corr(imf, tone) for imf in eq14_eemd) > 0.9


def test_compare_methods_eq14(eq14, eq14_emd, eq14_eemd):
    truth = list(preset_tones("eq14"))
    vmd_modes = list(vmd_decompose(eq14, VmdParams(k=7)).modes)
    table = compare_methods(eq14, truth, {
        "vmd": vmd_modes,
        "emd": list(eq14_emd.imfs),
        "eemd": list(eq14_eemd),
    })
    assert table.matched_count("vmd") == 6
    assert table.spurious_counts["vmd"] <= 1
    assert table.matched_count("emd") < 6


def test_compare_methods_empty_truth_counts_spurious(eq14, eq14_emd):
    table = compare_methods(eq14, [], {"emd": list(eq14_emd.imfs)})
    assert table.rows == ()
    assert table.spurious_counts["emd"] == len(eq14_emd.imfs)
