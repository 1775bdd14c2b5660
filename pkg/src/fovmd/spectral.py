"""DFT services, analytic-signal construction and mirror boundary extension.

Convention used everywhere in this package: unnormalized forward DFT,
``1/N`` on the inverse, so ``dft_inverse(dft_forward(x)) == x``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .signal import SampledSignal


@dataclass(frozen=True)
class ComplexSpectrum:
    """Full-length complex spectrum of a time series."""

    bins: np.ndarray
    sample_rate_hz: float = 1.0

    def __post_init__(self):
        bins = np.asarray(self.bins, dtype=complex).reshape(-1)
        if bins.size < 2:
            raise ValueError("spectrum must have at least two bins")
        object.__setattr__(self, "bins", bins)

    def __len__(self):
        return self.bins.size


def _as_array(x) -> np.ndarray:
    if isinstance(x, SampledSignal):
        return x.samples
    return np.asarray(x).reshape(-1)


def dft_forward(x, sample_rate_hz: float = 1.0) -> ComplexSpectrum:
    """Unnormalized forward DFT of a real or complex sequence."""
    arr = _as_array(x)
    if arr.size < 2:
        raise ValueError("input must have length >= 2")
    if isinstance(x, SampledSignal):
        sample_rate_hz = x.sample_rate_hz
    return ComplexSpectrum(np.fft.fft(arr), sample_rate_hz)


def dft_inverse(spectrum: ComplexSpectrum) -> np.ndarray:
    """Inverse DFT with the 1/N normalization; exact inverse of dft_forward."""
    return np.fft.ifft(spectrum.bins)


def analytic_signal(x) -> np.ndarray:
    """Discrete analytic signal via single-sided spectrum doubling.

    Bin 0 (and the Nyquist bin for even lengths) is kept, bins in
    (0, N/2) are doubled, bins above N/2 are zeroed. The real part of the
    result reproduces the input to roundoff.
    """
    arr = _as_array(x).astype(float)
    n = arr.size
    if n < 4:
        raise ValueError("input must have length >= 4")
    spec = np.fft.fft(arr)
    gain = np.zeros(n)
    if n % 2 == 0:
        gain[0] = gain[n // 2] = 1.0
        gain[1 : n // 2] = 2.0
    else:
        gain[0] = 1.0
        gain[1 : (n + 1) // 2] = 2.0
    return np.fft.ifft(spec * gain)


def _mirror(arr: np.ndarray) -> np.ndarray:
    n = arr.size
    h = n // 2
    return np.concatenate([arr[:h][::-1], arr, arr[n - h :][::-1]])


def _crop(arr: np.ndarray) -> np.ndarray:
    n = (arr.size + 1) // 2
    h = n // 2
    return arr[h : h + n]


def mirror_extend(x: SampledSignal) -> SampledSignal:
    """Reflect the first and last N/2 samples around each end (length ~2N).

    The solver runs on the extended signal and crops afterwards; reflection
    keeps the seams value-continuous.
    """
    if len(x) < 2:
        raise ValueError("input must have length >= 2")
    ext = _mirror(x.samples)
    h = len(x) // 2
    return SampledSignal(ext, x.sample_rate_hz, x.t0_s - h / x.sample_rate_hz)


def crop_mirror(y: SampledSignal) -> SampledSignal:
    """Recover the central original samples from a mirror-extended signal."""
    n = (len(y) + 1) // 2
    h = n // 2
    return SampledSignal(_crop(y.samples), y.sample_rate_hz, y.t0_s + h / y.sample_rate_hz)
