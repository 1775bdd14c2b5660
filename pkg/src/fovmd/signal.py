"""Sampled waveforms, multitone synthesis and calibrated noise injection."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SampledSignal:
    """A uniformly sampled real waveform.

    Parameters
    ----------
    samples : ndarray
        Signal values in volts. Must be non-empty and finite.
    sample_rate_hz : float
        Sampling rate, strictly positive.
    t0_s : float
        Time of the first sample, seconds.
    """

    samples: np.ndarray
    sample_rate_hz: float
    t0_s: float = 0.0

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float).reshape(-1)
        if samples.size == 0:
            raise ValueError("signal must contain at least one sample")
        if not np.isfinite(samples).all():
            raise ValueError("signal contains non-finite values")
        if not (self.sample_rate_hz > 0):
            raise ValueError("sample_rate_hz must be positive")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_rate_hz", float(self.sample_rate_hz))
        object.__setattr__(self, "t0_s", float(self.t0_s))

    def __len__(self):
        return self.samples.size

    @property
    def duration_s(self) -> float:
        return len(self) / self.sample_rate_hz

    def times(self) -> np.ndarray:
        """Sample times t_i = t0 + i / fs."""
        return self.t0_s + np.arange(len(self)) / self.sample_rate_hz


@dataclass(frozen=True)
class ToneSpec:
    """One sinusoid ``A * sin(2*pi*f*t + phase)``, active on [t_start_s, t_end_s)."""

    amplitude: float
    frequency_hz: float
    phase_rad: float = 0.0
    t_start_s: float = 0.0
    t_end_s: float = math.inf

    def __post_init__(self):
        if self.amplitude < 0:
            raise ValueError("amplitude must be >= 0")
        if self.frequency_hz < 0:
            raise ValueError("frequency_hz must be >= 0")
        if not self.t_start_s < self.t_end_s:
            raise ValueError("t_start_s must be < t_end_s")


@dataclass(frozen=True)
class NoiseSpec:
    """Additive white Gaussian noise at a target SNR; ``snr_db = inf`` disables it."""

    snr_db: float
    seed: int = 0

    def __post_init__(self):
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")


def synth_multitone(tones, sample_rate_hz, n_samples, t0_s=0.0) -> SampledSignal:
    """Render the sum of gated sinusoids on a uniform time grid.

    Sample i at ``t = t0 + i/fs`` receives every tone with
    ``t_start <= t < t_end`` (hard gate edges, no taper).

    Raises
    ------
    ValueError
        If the tone list is empty, ``n_samples < 2``, or any tone sits at or
        above the Nyquist frequency.
    """
    tones = list(tones)
    if not tones:
        raise ValueError("tone list must not be empty")
    if n_samples < 2:
        raise ValueError("n_samples must be >= 2")
    nyquist = sample_rate_hz / 2.0
    for tone in tones:
        if tone.frequency_hz >= nyquist:
            raise ValueError(
                f"tone at {tone.frequency_hz} Hz is at or above Nyquist ({nyquist} Hz)"
            )
    t = t0_s + np.arange(int(n_samples)) / float(sample_rate_hz)
    out = np.zeros(int(n_samples))
    for tone in tones:
        gate = (t >= tone.t_start_s) & (t < tone.t_end_s)
        if gate.any():
            out[gate] += tone.amplitude * np.sin(
                2.0 * np.pi * tone.frequency_hz * t[gate] + tone.phase_rad
            )
    return SampledSignal(out, sample_rate_hz, t0_s)


def signal_power(signal: SampledSignal) -> float:
    """Mean squared sample value."""
    return float(np.mean(signal.samples**2))


def add_awgn(signal: SampledSignal, noise: NoiseSpec) -> SampledSignal:
    """Add zero-mean Gaussian noise calibrated to ``noise.snr_db``.

    Noise variance is ``P_signal / 10^(snr_db/10)`` with P measured over the
    full window of the clean input. Deterministic for a fixed seed; an
    infinite SNR returns the input unchanged.
    """
    if math.isinf(noise.snr_db) and noise.snr_db > 0:
        return SampledSignal(signal.samples.copy(), signal.sample_rate_hz, signal.t0_s)
    p = signal_power(signal)
    if p <= 0.0:
        raise ValueError("cannot calibrate SNR against a zero-power signal")
    variance = p / 10.0 ** (noise.snr_db / 10.0)
    rng = np.random.default_rng(noise.seed)
    w = rng.normal(0.0, math.sqrt(variance), len(signal))
    return SampledSignal(signal.samples + w, signal.sample_rate_hz, signal.t0_s)
