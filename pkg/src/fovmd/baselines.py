"""EMD and EEMD reference decompositions plus a method comparison table.

Standard sifting with cubic-spline envelopes; the two extrema nearest each
end are mirrored before spline fitting to tame end effects. EEMD averages
EMD runs over noise-perturbed copies with per-trial deterministic seeds.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from .hht import instantaneous_attributes
from .signal import SampledSignal, ToneSpec, synth_multitone


@dataclass(frozen=True)
class EmdConfig:
    max_imfs: int = 12
    sift_sd_threshold: float = 0.3
    max_sifts_per_imf: int = 50
    ensemble_size: int = 100
    noise_std_fraction: float = 0.2
    seed: int = 0

    def __post_init__(self):
        if self.max_imfs < 1:
            raise ValueError("max_imfs must be >= 1")
        if self.sift_sd_threshold <= 0:
            raise ValueError("sift_sd_threshold must be positive")
        if self.max_sifts_per_imf < 1:
            raise ValueError("max_sifts_per_imf must be >= 1")
        if self.ensemble_size < 1:
            raise ValueError("ensemble_size must be >= 1")
        if self.noise_std_fraction < 0:
            raise ValueError("noise_std_fraction must be >= 0")


@dataclass(frozen=True)
class EmdResult:
    imfs: tuple[np.ndarray, ...]
    residual: np.ndarray


def _extrema(y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Indices of local maxima and minima; flat segments keep one extremum."""
    d = np.diff(y)
    s = np.sign(d)
    nz = s != 0
    if not nz.any():
        return np.array([], int), np.array([], int)
    # carry the previous nonzero slope across flat runs
    pos = np.where(nz, np.arange(s.size), -1)
    np.maximum.accumulate(pos, out=pos)
    filled = np.where(pos >= 0, s[np.maximum(pos, 0)], 0.0)
    change = np.diff(filled)
    valid = filled[:-1] != 0
    maxima = np.where((change < 0) & valid)[0] + 1
    minima = np.where((change > 0) & valid)[0] + 1
    return maxima, minima


def _envelope(t, ext_idx, y):
    """Cubic-spline envelope through extrema, mirroring two past each end."""
    ti, yi = t[ext_idx], y[ext_idx]
    m = min(2, ti.size)
    tl = 2 * t[0] - ti[m - 1 :: -1]
    tr = 2 * t[-1] - ti[: -m - 1 : -1]
    knots_t = np.concatenate([tl, ti, tr])
    knots_y = np.concatenate([yi[m - 1 :: -1], yi, yi[: -m - 1 : -1]])
    order = np.argsort(knots_t)
    knots_t, knots_y = knots_t[order], knots_y[order]
    uniq = np.concatenate([[True], np.diff(knots_t) > 0])
    knots_t, knots_y = knots_t[uniq], knots_y[uniq]
    if knots_t.size >= 4:
        return CubicSpline(knots_t, knots_y)(t)
    return np.interp(t, knots_t, knots_y)


def _sift(t, y):
    maxima, minima = _extrema(y)
    if maxima.size < 2 or minima.size < 2:
        return None
    upper = _envelope(t, maxima, y)
    lower = _envelope(t, minima, y)
    return y - 0.5 * (upper + lower)


def emd(signal: SampledSignal, cfg: EmdConfig | None = None) -> EmdResult:
    """Empirical mode decomposition by iterated sifting.

    IMF extraction stops when the residual has fewer than two maxima or
    minima (monotone trend) or ``max_imfs`` is reached. The IMFs plus the
    residual reconstruct the input exactly by construction.
    """
    cfg = cfg or EmdConfig()
    if len(signal) < 16:
        raise ValueError("signal must have length >= 16")
    t = np.arange(len(signal)) / signal.sample_rate_hz
    residual = signal.samples.astype(float).copy()
    imfs: list[np.ndarray] = []
    for _ in range(cfg.max_imfs):
        maxima, minima = _extrema(residual)
        if maxima.size < 2 or minima.size < 2:
            break
        h = residual
        for _ in range(cfg.max_sifts_per_imf):
            h_next = _sift(t, h)
            if h_next is None:
                break
            sd = float(np.sum((h - h_next) ** 2) / max(np.sum(h**2), 1e-300))
            h = h_next
            if sd < cfg.sift_sd_threshold:
                break
        imfs.append(h)
        residual = residual - h
    return EmdResult(imfs=tuple(imfs), residual=residual)


def eemd(signal: SampledSignal, cfg: EmdConfig | None = None,
         threads: int = 1) -> list[np.ndarray]:
    """Ensemble EMD: average per-trial IMFs under added white noise.

    Trial ``i`` perturbs the signal with noise of standard deviation
    ``noise_std_fraction * std(signal)`` drawn from ``default_rng(seed + i)``.
    Trials with fewer IMFs are padded with zeros before averaging, so the
    result is an order-independent mean. With one noiseless trial the output
    equals plain EMD bit for bit.
    """
    cfg = cfg or EmdConfig()
    std = cfg.noise_std_fraction * float(np.std(signal.samples))

    def trial(i: int):
        if std > 0:
            rng = np.random.default_rng(cfg.seed + i)
            perturbed = SampledSignal(
                signal.samples + rng.normal(0.0, std, len(signal)),
                signal.sample_rate_hz, signal.t0_s)
        else:
            perturbed = signal
        return emd(perturbed, cfg).imfs

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            runs = list(pool.map(trial, range(cfg.ensemble_size)))
    else:
        runs = [trial(i) for i in range(cfg.ensemble_size)]

    n_imfs = max((len(r) for r in runs), default=0)
    out: list[np.ndarray] = []
    for j in range(n_imfs):
        acc = np.zeros(len(signal))
        for r in runs:
            if j < len(r):
                acc += r[j]
        out.append(acc / cfg.ensemble_size)
    return out


@dataclass(frozen=True)
class ToneMatch:
    method: str
    true_amplitude: float
    true_frequency_hz: float
    correlation: float
    amplitude_rel_error: float
    frequency_rel_error: float
    matched: bool
    component_index: int


@dataclass(frozen=True)
class ComparisonTable:
    rows: tuple[ToneMatch, ...]
    spurious_counts: dict[str, int]

    def matched_count(self, method: str) -> int:
        return sum(1 for r in self.rows if r.method == method and r.matched)


MATCH_CORRELATION = 0.9


def compare_methods(signal: SampledSignal, ground_truth: list[ToneSpec],
                    components_by_method: dict[str, list[np.ndarray]]) -> ComparisonTable:
    """Score each method's components against the true tones.

    For every tone, the best-|correlation| component over the tone's active
    window is reported with its amplitude and frequency errors; a tone
    counts as matched at correlation >= 0.9. Components that match no tone
    at that level are counted as spurious; with no tones at all, every
    component is spurious and the table holds only the counts.
    """
    fs = signal.sample_rate_hz
    n = len(signal)
    t = signal.times()
    rows: list[ToneMatch] = []
    spurious: dict[str, int] = {}
    for method, comps in components_by_method.items():
        comps = [np.asarray(c, float).reshape(-1) for c in comps]
        used_for_tone: list[int] = []
        corr_matrix = np.zeros((len(ground_truth), max(len(comps), 1)))
        for ti, tone in enumerate(ground_truth):
            rendered = synth_multitone([tone], fs, n, signal.t0_s).samples
            gate = (t >= tone.t_start_s) & (t < tone.t_end_s)
            if gate.sum() < 8:
                gate = np.ones(n, bool)
            for ci, comp in enumerate(comps):
                a, b = comp[gate], rendered[gate]
                denom = np.std(a) * np.std(b)
                corr_matrix[ti, ci] = (
                    abs(np.mean((a - a.mean()) * (b - b.mean())) / denom)
                    if denom > 0 else 0.0)
            if not comps:
                rows.append(ToneMatch(method, tone.amplitude, tone.frequency_hz,
                                      0.0, 1.0, 1.0, False, -1))
                continue
            best = int(np.argmax(corr_matrix[ti]))
            series = instantaneous_attributes(comps[best], fs)
            v0, v1 = series.valid_range
            sel = gate.copy()
            sel[:v0] = False
            sel[v1:] = False
            if not sel.any():
                sel = gate
            amp = float(series.amplitude[sel].mean())
            freq = float(series.frequency_hz[sel].mean())
            corr = float(corr_matrix[ti, best])
            rows.append(ToneMatch(
                method=method,
                true_amplitude=tone.amplitude,
                true_frequency_hz=tone.frequency_hz,
                correlation=corr,
                amplitude_rel_error=abs(amp - tone.amplitude) / tone.amplitude
                if tone.amplitude else np.inf,
                frequency_rel_error=abs(freq - tone.frequency_hz) / tone.frequency_hz
                if tone.frequency_hz else np.inf,
                matched=corr >= MATCH_CORRELATION,
                component_index=best,
            ))
            used_for_tone.append(best)
        spurious[method] = sum(
            1 for ci in range(len(comps))
            if corr_matrix[:, ci].max(initial=0.0) < MATCH_CORRELATION)
    return ComparisonTable(rows=tuple(rows), spurious_counts=spurious)
