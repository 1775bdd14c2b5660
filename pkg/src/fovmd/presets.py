"""Bundled benchmark signals used throughout the tests and the CLI."""

from __future__ import annotations

import math

from .signal import NoiseSpec, SampledSignal, ToneSpec, add_awgn, synth_multitone

# Three-tone demo: widely separated components at 3, 28 and 271 Hz with a
# 16:4:1 amplitude taper. Cosines are phase-shifted sines.
EQ12_TONES = (
    ToneSpec(1.0, 3.0, math.pi / 2),
    ToneSpec(0.25, 28.0),
    ToneSpec(1.0 / 16.0, 271.0, math.pi / 2),
)

# Steady-state benchmark: fundamental, four close interharmonics, 5th harmonic.
EQ14_TONES = (
    ToneSpec(1.0, 50.0),
    ToneSpec(0.3, 104.0),
    ToneSpec(0.4, 117.0),
    ToneSpec(0.2, 134.0),
    ToneSpec(0.2, 147.0),
    ToneSpec(0.5, 250.0),
)

# Transient benchmark: two full-span tones plus two time-gated bursts.
EQ15_TONES = (
    ToneSpec(1.0, 15.0, t_start_s=0.0, t_end_s=1.0),
    ToneSpec(4.0, 50.0, t_start_s=0.0, t_end_s=1.0),
    ToneSpec(2.0, 119.0, t_start_s=0.2, t_end_s=0.5),
    ToneSpec(3.0, 250.0, t_start_s=0.6, t_end_s=1.0),
)

_PRESETS = {
    "eq12": (EQ12_TONES, 4096.0, 4096),
    "eq14": (EQ14_TONES, 4096.0, 4096),
    "eq15": (EQ15_TONES, 4096.0, 4096),
}

PRESET_NAMES = tuple(sorted(_PRESETS))


def preset_tones(name: str) -> tuple[ToneSpec, ...]:
    try:
        return _PRESETS[name][0]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {PRESET_NAMES}") from None


def build_preset(name: str, snr_db: float | None = None, seed: int = 0) -> SampledSignal:
    """Render a named preset, optionally adding seeded Gaussian noise."""
    tones, fs, n = _PRESETS[name] if name in _PRESETS else (preset_tones(name), 0, 0)
    sig = synth_multitone(tones, fs, n)
    if snr_db is not None and not math.isinf(snr_db):
        sig = add_awgn(sig, NoiseSpec(snr_db=snr_db, seed=seed))
    return sig
