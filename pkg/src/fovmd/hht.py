"""Hilbert instantaneous attributes, transient support detection and the
end-to-end harmonic detection pipeline."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kselect import (DEFAULT_PLATEAU_EPSILON, KSelectionTrace, PruneConfig,
                      prune_residual_modes, select_k)
from .signal import SampledSignal, ToneSpec
from .spectral import analytic_signal
from .vmd import VmdParams, vmd_decompose

EDGE_TRIM_FRACTION = 0.05
SUPPORT_THRESHOLD_FRACTION = 0.25
SUPPORT_PERCENTILE = 95.0
SUPPORT_GAP_S = 0.04
DEFAULT_MERGE_RADIUS_HZ = 5.0
DEFAULT_COMPONENT_ENERGY_THRESHOLD = 0.015
DEFAULT_HARMONIC_TOLERANCE_HZ = 2.5


@dataclass(frozen=True)
class InstantaneousSeries:
    """Per-sample amplitude/frequency with an edge-trimmed valid range."""

    amplitude: np.ndarray
    frequency_hz: np.ndarray
    valid_range: tuple[int, int]
    degenerate: bool = False


@dataclass(frozen=True)
class TimeSupport:
    start_s: float
    end_s: float
    degenerate: bool = False


@dataclass(frozen=True)
class Classification:
    """fundamental | harmonic (with order >= 2) | interharmonic."""

    kind: str
    order: int | None = None

    def __post_init__(self):
        if self.kind not in ("fundamental", "harmonic", "interharmonic"):
            raise ValueError(f"unknown classification kind {self.kind!r}")
        if self.kind == "harmonic" and (self.order is None or self.order < 2):
            raise ValueError("harmonic classification requires order >= 2")

    @property
    def label(self) -> str:
        return f"harmonic({self.order})" if self.kind == "harmonic" else self.kind


@dataclass(frozen=True)
class ComponentSummary:
    mean_amplitude_v: float
    mean_frequency_hz: float
    support_s: tuple[float, float]
    classification: Classification
    source_mode_index: int
    energy_fraction: float = 0.0


@dataclass(frozen=True)
class GroundTruthError:
    true_amplitude: float
    true_frequency_hz: float
    detected_amplitude: float
    detected_frequency_hz: float
    amplitude_rel_error: float
    frequency_rel_error: float


@dataclass(frozen=True)
class DetectionReport:
    components: tuple[ComponentSummary, ...]
    chosen_k: int
    selection_trace: KSelectionTrace
    ground_truth_errors: tuple[GroundTruthError, ...] | None = None
    flags: tuple[str, ...] = ()


def instantaneous_attributes(mode, sample_rate_hz: float) -> InstantaneousSeries:
    """Amplitude envelope and instantaneous frequency of one mode.

    Amplitude is the analytic-signal magnitude; frequency is the central
    difference of the unwrapped phase scaled by ``fs / 4 pi`` (one-sided at
    the ends). 5 % of the samples at each edge are excluded from the valid
    range to suppress Hilbert end effects.
    """
    arr = np.asarray(mode, dtype=float).reshape(-1)
    n = arr.size
    if n < 8:
        raise ValueError("mode must have length >= 8")
    trim = int(round(EDGE_TRIM_FRACTION * n))
    valid = (trim, n - trim)
    if np.max(np.abs(arr)) == 0.0:
        return InstantaneousSeries(np.zeros(n), np.zeros(n), valid, degenerate=True)
    z = analytic_signal(arr)
    amplitude = np.abs(z)
    phase = np.unwrap(np.angle(z))
    freq = np.empty(n)
    freq[1:-1] = (phase[2:] - phase[:-2]) * sample_rate_hz / (4.0 * np.pi)
    freq[0] = (phase[1] - phase[0]) * sample_rate_hz / (2.0 * np.pi)
    freq[-1] = (phase[-1] - phase[-2]) * sample_rate_hz / (2.0 * np.pi)
    return InstantaneousSeries(amplitude, freq, valid)


def time_support(series: InstantaneousSeries, sample_rate_hz: float,
                 t0_s: float = 0.0) -> TimeSupport:
    """Interval where the envelope is active.

    Threshold is 25 % of the 95th-percentile amplitude over the valid range;
    above-threshold samples are grouped into runs after closing gaps shorter
    than 40 ms, and the longest run becomes the support. An all-quiet series
    yields a zero-length degenerate support.
    """
    amp = series.amplitude
    v0, v1 = series.valid_range
    if series.degenerate or v1 <= v0:
        return TimeSupport(t0_s, t0_s, degenerate=True)
    threshold = SUPPORT_THRESHOLD_FRACTION * np.percentile(amp[v0:v1], SUPPORT_PERCENTILE)
    if threshold <= 0.0:
        return TimeSupport(t0_s, t0_s, degenerate=True)
    above = np.where(amp >= threshold)[0]
    if above.size == 0:
        return TimeSupport(t0_s, t0_s, degenerate=True)
    close_n = int(round(SUPPORT_GAP_S * sample_rate_hz))
    breaks = np.where(np.diff(above) > close_n)[0]
    starts = np.r_[0, breaks + 1]
    ends = np.r_[breaks, above.size - 1]
    runs = [(above[s], above[e]) for s, e in zip(starts, ends)]
    first, last = max(runs, key=lambda r: r[1] - r[0])
    return TimeSupport(t0_s + first / sample_rate_hz, t0_s + last / sample_rate_hz)


def classify_component(mean_frequency_hz: float, fundamental_hz: float = 50.0,
                       tolerance_hz: float = DEFAULT_HARMONIC_TOLERANCE_HZ) -> Classification:
    """Label a frequency as fundamental, n-th harmonic, or interharmonic."""
    if fundamental_hz <= 0:
        raise ValueError("fundamental_hz must be positive")
    n = int(round(mean_frequency_hz / fundamental_hz))
    if abs(mean_frequency_hz - n * fundamental_hz) <= tolerance_hz:
        if n == 1:
            return Classification("fundamental")
        if n >= 2:
            return Classification("harmonic", n)
    return Classification("interharmonic")


def _merge_groups(indices, center_freqs, radius_hz):
    """Group ascending-frequency mode indices whose centers nearly coincide."""
    groups: list[list[int]] = []
    for i in indices:
        if groups and abs(center_freqs[i] - center_freqs[groups[-1][-1]]) <= radius_hz:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def detect_harmonics(signal: SampledSignal, k_range: tuple[int, int],
                     vmd_defaults: VmdParams | None = None,
                     fundamental_hz: float = 50.0,
                     prune_cfg: PruneConfig | None = None,
                     plateau_epsilon: float = DEFAULT_PLATEAU_EPSILON,
                     merge_radius_hz: float = DEFAULT_MERGE_RADIUS_HZ,
                     component_energy_threshold: float = DEFAULT_COMPONENT_ENERGY_THRESHOLD,
                     tolerance_hz: float = DEFAULT_HARMONIC_TOLERANCE_HZ,
                     ground_truth: list[ToneSpec] | None = None,
                     threads: int = 1) -> DetectionReport:
    """Full pipeline: select K, decompose, prune, extract, classify.

    Retained modes whose center frequencies agree to within
    ``merge_radius_hz`` are summed back into one component (they are
    over-decomposition splinters of a single tone); merged components below
    ``component_energy_threshold`` of the input energy are treated as
    spurious and dropped.
    """
    vmd_defaults = vmd_defaults or VmdParams()
    prune_cfg = prune_cfg or PruneConfig()
    trace = select_k(signal, k_range[0], k_range[1], vmd_defaults, prune_cfg,
                     plateau_epsilon, threads=threads)
    decomp = vmd_decompose(signal, vmd_defaults.with_k(trace.chosen_k))
    e_in = float(np.mean(signal.samples**2))
    keep = prune_residual_modes(decomp, prune_cfg, e_in)
    groups = _merge_groups(keep, decomp.center_freqs_hz, merge_radius_hz)

    fs = signal.sample_rate_hz
    freq_floor_hz = 1.0 / signal.duration_s
    flags: list[str] = []
    components: list[ComponentSummary] = []
    for group in groups:
        mode = decomp.modes[group].sum(axis=0)
        energy_fraction = float(np.mean(mode**2) / e_in) if e_in > 0 else 0.0
        if energy_fraction < component_energy_threshold:
            flags.append(f"mode {group[0]} dropped: energy fraction "
                         f"{energy_fraction:.2e} below component threshold")
            continue
        series = instantaneous_attributes(mode, fs)
        if series.degenerate:
            flags.append(f"mode {group[0]} dropped: zero amplitude")
            continue
        support = time_support(series, fs, signal.t0_s)
        if support.degenerate:
            flags.append(f"mode {group[0]} dropped: degenerate support")
            continue
        v0, v1 = series.valid_range
        i0 = max(int(round((support.start_s - signal.t0_s) * fs)), v0)
        i1 = min(int(round((support.end_s - signal.t0_s) * fs)) + 1, v1)
        if i1 <= i0:
            flags.append(f"mode {group[0]} dropped: support outside valid range")
            continue
        mean_amp = float(series.amplitude[i0:i1].mean())
        mean_freq = float(series.frequency_hz[i0:i1].mean())
        if mean_freq < freq_floor_hz:
            flags.append(f"mode {group[0]} dropped: near-DC mean frequency "
                         f"{mean_freq:.3f} Hz")
            continue
        components.append(ComponentSummary(
            mean_amplitude_v=mean_amp,
            mean_frequency_hz=mean_freq,
            support_s=(support.start_s, support.end_s),
            classification=classify_component(mean_freq, fundamental_hz, tolerance_hz),
            source_mode_index=group[0],
            energy_fraction=energy_fraction,
        ))
    components.sort(key=lambda c: c.mean_frequency_hz)
    if not components:
        flags.append("degenerate: no oscillatory components detected")

    gt_errors = None
    if ground_truth is not None:
        gt_errors = tuple(_ground_truth_errors(ground_truth, components))
    return DetectionReport(
        components=tuple(components),
        chosen_k=trace.chosen_k,
        selection_trace=trace,
        ground_truth_errors=gt_errors,
        flags=tuple(flags),
    )


def _ground_truth_errors(truth, components):
    for tone in truth:
        if not components:
            yield GroundTruthError(tone.amplitude, tone.frequency_hz,
                                   0.0, 0.0, 1.0, 1.0)
            continue
        best = min(components,
                   key=lambda c: abs(c.mean_frequency_hz - tone.frequency_hz))
        yield GroundTruthError(
            true_amplitude=tone.amplitude,
            true_frequency_hz=tone.frequency_hz,
            detected_amplitude=best.mean_amplitude_v,
            detected_frequency_hz=best.mean_frequency_hz,
            amplitude_rel_error=abs(best.mean_amplitude_v - tone.amplitude)
            / tone.amplitude if tone.amplitude else np.inf,
            frequency_rel_error=abs(best.mean_frequency_hz - tone.frequency_hz)
            / tone.frequency_hz if tone.frequency_hz else np.inf,
        )
