"""Input validation helpers shared by the estimator layer and the CLI."""

from __future__ import annotations

import numpy as np

from .signal import SampledSignal


def as_sampled_signal(X, sample_rate_hz: float | None = None,
                      t0_s: float = 0.0) -> SampledSignal:
    """Coerce estimator input to a SampledSignal.

    Accepts a SampledSignal (passed through; an explicit conflicting sample
    rate is an error), a 1-D array-like, or a column vector of shape (n, 1).
    Plain arrays default to a 1 Hz sample rate unless one is given.
    """
    if isinstance(X, SampledSignal):
        if sample_rate_hz is not None and sample_rate_hz != X.sample_rate_hz:
            raise ValueError(
                f"sample_rate_hz={sample_rate_hz} conflicts with the signal's "
                f"{X.sample_rate_hz}")
        return X
    arr = np.asarray(X, dtype=float)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D signal, got shape {arr.shape}")
    return SampledSignal(arr, sample_rate_hz if sample_rate_hz else 1.0, t0_s)


def check_positive(value, name: str):
    if not value > 0:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def check_k_range(k_min: int, k_max: int) -> tuple[int, int]:
    k_min, k_max = int(k_min), int(k_max)
    if not (1 <= k_min <= k_max):
        raise ValueError(f"need 1 <= k_min <= k_max, got [{k_min}, {k_max}]")
    return k_min, k_max
