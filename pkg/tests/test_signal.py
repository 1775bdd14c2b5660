import math

import numpy as np
import pytest

from fovmd import (NoiseSpec, SampledSignal, ToneSpec, add_awgn, build_preset,
                   preset_tones, signal_power, synth_multitone)

FS = 4096.0
N = 4096


def test_single_tone_matches_formula():
    sig = synth_multitone([ToneSpec(1.0, 50.0)], FS, N)
    expected = np.sin(2 * np.pi * 50.0 * np.arange(N) / FS)
    assert np.array_equal(sig.samples, expected)


def test_eq14_preset_contains_six_tones():
    sig = build_preset("eq14")
    assert len(sig) == 4096 and sig.sample_rate_hz == 4096.0
    # each tone is bin-exact over the window: read amplitudes off the DFT
    spec = np.fft.rfft(sig.samples) / (N / 2)
    for tone in preset_tones("eq14"):
        assert abs(abs(spec[int(tone.frequency_hz)]) - tone.amplitude) < 1e-9


def test_eq15_gating_at_t_0p1():
    sig = build_preset("eq15")
    i = int(round(0.1 * FS))
    t = i / FS
    expected = math.sin(30 * math.pi * t) + 4 * math.sin(100 * math.pi * t)
    assert sig.samples[i] == pytest.approx(expected, abs=1e-12)


def test_gated_tone_zero_outside_gate():
    sig = synth_multitone([ToneSpec(2.0, 119.0, t_start_s=0.2, t_end_s=0.5)], FS, N)
    t = sig.times()
    outside = (t < 0.2) | (t >= 0.5)
    assert np.all(sig.samples[outside] == 0.0)
    assert np.any(sig.samples[~outside] != 0.0)


def test_gate_end_is_exclusive():
    sig = synth_multitone([ToneSpec(1.0, 50.0, phase_rad=np.pi / 2,
                                    t_start_s=0.0, t_end_s=0.5)], FS, N)
    assert sig.samples[int(0.5 * FS)] == 0.0
    assert sig.samples[int(0.5 * FS) - 1] != 0.0


def test_synthesis_is_linear():
    a = [ToneSpec(1.0, 50.0), ToneSpec(0.3, 104.0)]
    b = [ToneSpec(0.5, 250.0, 0.7)]
    both = synth_multitone(a + b, FS, N)
    parts = synth_multitone(a, FS, N).samples + synth_multitone(b, FS, N).samples
    np.testing.assert_allclose(both.samples, parts, atol=1e-12)


def test_rejects_nyquist_and_empty():
    with pytest.raises(ValueError):
        synth_multitone([ToneSpec(1.0, 2048.0)], FS, N)
    with pytest.raises(ValueError):
        synth_multitone([], FS, N)
    with pytest.raises(ValueError):
        synth_multitone([ToneSpec(1.0, 50.0)], FS, 1)


def test_signal_power_constant():
    assert signal_power(SampledSignal(np.full(128, 2.0), FS)) == pytest.approx(4.0)


def test_signal_power_sine_half():
    sig = synth_multitone([ToneSpec(1.0, 50.0)], FS, N)
    assert signal_power(sig) == pytest.approx(0.5, abs=1e-9)


def test_signal_power_eq14():
    # orthogonal integer-period tones: power is the sum of A^2/2
    assert signal_power(build_preset("eq14")) == pytest.approx(0.79, abs=1e-6)


def test_awgn_variance_at_0db():
    sig = synth_multitone([ToneSpec(1.0, 50.0)], FS, 65536)  # unit-power-ish
    noisy = add_awgn(sig, NoiseSpec(snr_db=0.0, seed=3))
    noise = noisy.samples - sig.samples
    assert np.var(noise) == pytest.approx(signal_power(sig), rel=0.02)


def test_awgn_realized_snr_within_half_db():
    sig = build_preset("eq15")
    noisy = add_awgn(sig, NoiseSpec(snr_db=38.0, seed=1))
    noise = noisy.samples - sig.samples
    snr = 10 * np.log10(signal_power(sig) / np.mean(noise**2))
    assert abs(snr - 38.0) < 0.5


def test_awgn_infinite_snr_is_identity():
    sig = build_preset("eq14")
    out = add_awgn(sig, NoiseSpec(snr_db=math.inf, seed=0))
    assert np.array_equal(out.samples, sig.samples)


def test_awgn_seed_determinism():
    sig = build_preset("eq14")
    a = add_awgn(sig, NoiseSpec(38.0, seed=7)).samples
    b = add_awgn(sig, NoiseSpec(38.0, seed=7)).samples
    c = add_awgn(sig, NoiseSpec(38.0, seed=8)).samples
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_awgn_rejects_zero_power():
    with pytest.raises(ValueError):
        add_awgn(SampledSignal(np.zeros(16), FS), NoiseSpec(10.0))


def test_signal_validation():
    with pytest.raises(ValueError):
        SampledSignal(np.array([]), FS)
    with pytest.raises(ValueError):
        SampledSignal(np.array([1.0, np.nan]), FS)
    with pytest.raises(ValueError):
        SampledSignal(np.ones(4), 0.0)
    with pytest.raises(ValueError):
        ToneSpec(1.0, 50.0, t_start_s=0.5, t_end_s=0.5)
