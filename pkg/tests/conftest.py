import numpy as np
import pytest

from fovmd import (VmdParams, build_preset, detect_harmonics, preset_tones,
                   select_k, vmd_decompose)

EQ15_ACCEPTANCE_SEED = 4


@pytest.fixture(scope="session")
def eq14():
    return build_preset("eq14")


@pytest.fixture(scope="session")
def eq15_noisy():
    return build_preset("eq15", snr_db=38.0, seed=EQ15_ACCEPTANCE_SEED)


@pytest.fixture(scope="session")
def eq12():
    return build_preset("eq12")


@pytest.fixture(scope="session")
def eq14_decomp_k7(eq14):
    return vmd_decompose(eq14, VmdParams(k=7))


@pytest.fixture(scope="session")
def eq14_trace(eq14):
    return select_k(eq14, 1, 10)


@pytest.fixture(scope="session")
def eq14_report(eq14):
    return detect_harmonics(eq14, (1, 10), ground_truth=list(preset_tones("eq14")))


@pytest.fixture(scope="session")
def eq15_report(eq15_noisy):
    return detect_harmonics(eq15_noisy, (1, 8),
                            ground_truth=list(preset_tones("eq15")))


# ---------------------------------------------------------------- oracles

def direct_dft(x):
    """O(N^2) DFT oracle, blocked matmul to keep rounding tight."""
    x = np.asarray(x, dtype=complex)
    n = x.size
    out = np.empty(n, dtype=complex)
    idx = np.arange(n)
    block = 512
    for start in range(0, n, block):
        rows = np.arange(start, min(start + block, n))
        kernel = np.exp(-2j * np.pi * np.outer(rows, idx) / n)
        out[rows] = kernel @ x
    return out


def grid_membership_count(xn, eps):
    """Box-count oracle: cells touched by linear interpolation between samples."""
    n = len(xn)
    m = int(round(1.0 / eps))
    t = np.arange(n) / n
    cells = set()
    for i in range(n - 1):
        x0, x1 = t[i], t[i + 1]
        y0, y1 = xn[i], xn[i + 1]
        c0 = int(x0 * m)
        c1 = min(int(x1 * m), m - 1)
        for c in range(c0, c1 + 1):
            lo = max(x0, c / m)
            hi = min(x1, (c + 1) / m)
            if hi < lo:
                continue
            if x1 > x0:
                ya = y0 + (y1 - y0) * (lo - x0) / (x1 - x0)
                yb = y0 + (y1 - y0) * (hi - x0) / (x1 - x0)
            else:
                ya, yb = y0, y1
            r0 = int(min(ya, yb) * m)
            r1 = int(max(ya, yb) * m)
            for r in range(max(r0, 0), min(r1, m - 1) + 1):
                cells.add((c, r))
    return len(cells)


def tone_capture(mode, tone, sample_rate_hz, t0_s=0.0):
    """Fraction of a tone's amplitude recovered in a mode (in-gate projection)."""
    n = len(mode)
    t = t0_s + np.arange(n) / sample_rate_hz
    gate = (t >= tone.t_start_s) & (t < tone.t_end_s)
    z = np.exp(-2j * np.pi * tone.frequency_hz * t[gate])
    amp = 2.0 * abs(np.sum(np.asarray(mode)[gate] * z)) / gate.sum()
    return amp / tone.amplitude
