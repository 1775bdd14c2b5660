"""CSV and JSON serialization for signals, traces and reports.

Signal files are two-column CSV (`t,value`); the sample rate is inferred
from the median time step unless overridden. JSON output is schema-tagged,
sorted and timestamp-free so identical runs are byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import asdict

import numpy as np

from .baselines import ComparisonTable
from .hht import DetectionReport
from .kselect import KSelectionTrace
from .signal import SampledSignal

SCHEMA_VERSION = 1
FLOAT_FMT = "%.17g"


def write_signal_csv(path, signal: SampledSignal) -> None:
    data = np.column_stack([signal.times(), signal.samples])
    np.savetxt(path, data, fmt=FLOAT_FMT, delimiter=",", header="t,value", comments="")


def read_signal_csv(path, sample_rate_hz: float | None = None) -> SampledSignal:
    """Load a `t,value` CSV; infer fs from the median time step."""
    try:
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    except Exception as exc:
        raise ValueError(f"cannot parse signal CSV {path}: {exc}") from exc
    if data.shape[0] < 2 or data.shape[1] < 2:
        raise ValueError(f"signal CSV {path} needs >= 2 rows of t,value")
    t, values = data[:, 0], data[:, 1]
    if sample_rate_hz is None:
        dt = float(np.median(np.diff(t)))
        if dt <= 0:
            raise ValueError("time column must be increasing to infer the sample rate")
        sample_rate_hz = 1.0 / dt
    return SampledSignal(values, sample_rate_hz, t0_s=float(t[0]))


def write_modes_csv(path, times, modes) -> None:
    header = "t," + ",".join(f"imf{i + 1}" for i in range(len(modes)))
    data = np.column_stack([times, *modes])
    np.savetxt(path, data, fmt=FLOAT_FMT, delimiter=",", header=header, comments="")


def write_series_csv(path, times, series_list) -> None:
    """Per-mode instantaneous amplitude/frequency columns."""
    cols, names = [times], ["t"]
    for i, series in enumerate(series_list):
        cols.extend([series.amplitude, series.frequency_hz])
        names.extend([f"amp{i + 1}", f"freq{i + 1}"])
    np.savetxt(path, np.column_stack(cols), fmt=FLOAT_FMT, delimiter=",",
               header=",".join(names), comments="")


def trace_rows(trace: KSelectionTrace) -> list[tuple[int, float, int]]:
    return [(int(k), float(s), int(p))
            for k, s, p in zip(trace.k_values, trace.scores, trace.pruned_counts)]


def write_trace_csv(path, trace: KSelectionTrace) -> None:
    lines = ["k,score,pruned"]
    lines += [f"{k},{FLOAT_FMT % s},{p}" for k, s, p in trace_rows(trace)]
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _jsonify(obj):
    if isinstance(obj, np.ndarray):
        return _jsonify(obj.tolist())
    if isinstance(obj, (np.floating, np.integer)):
        return _jsonify(obj.item())
    if isinstance(obj, float) and not np.isfinite(obj):
        return repr(obj)  # divergent sweep entries serialize as "inf"
    if isinstance(obj, dict):
        return {k: _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    return obj


def trace_to_dict(trace: KSelectionTrace) -> dict:
    return _jsonify({
        "k_values": trace.k_values,
        "scores": trace.scores,
        "pruned_counts": trace.pruned_counts,
        "chosen_k": trace.chosen_k,
        "argmin_k": trace.argmin_k,
        "plateau_epsilon": trace.plateau_epsilon,
    })


def report_to_dict(report: DetectionReport, config: dict | None = None) -> dict:
    components = [{
        "mean_amplitude_v": c.mean_amplitude_v,
        "mean_frequency_hz": c.mean_frequency_hz,
        "support_s": list(c.support_s),
        "classification": c.classification.label,
        "source_mode_index": c.source_mode_index,
        "energy_fraction": c.energy_fraction,
    } for c in report.components]
    out = {
        "schema": SCHEMA_VERSION,
        "chosen_k": report.chosen_k,
        "components": components,
        "selection_trace": trace_to_dict(report.selection_trace),
        "flags": list(report.flags),
    }
    if report.ground_truth_errors is not None:
        out["ground_truth_errors"] = [_jsonify(asdict(e))
                                      for e in report.ground_truth_errors]
    if config is not None:
        out["config"] = _jsonify(config)
    return out


def comparison_to_dict(table: ComparisonTable, config: dict | None = None) -> dict:
    out = {
        "schema": SCHEMA_VERSION,
        "rows": [_jsonify(asdict(r)) for r in table.rows],
        "spurious_counts": dict(sorted(table.spurious_counts.items())),
    }
    if config is not None:
        out["config"] = _jsonify(config)
    return out


def comparison_csv_lines(table: ComparisonTable) -> list[str]:
    lines = ["method,true_frequency_hz,true_amplitude,correlation,"
             "amplitude_rel_error,frequency_rel_error,matched"]
    for r in table.rows:
        lines.append(f"{r.method},{r.true_frequency_hz:g},{r.true_amplitude:g},"
                     f"{r.correlation:.6f},{r.amplitude_rel_error:.6f},"
                     f"{r.frequency_rel_error:.6f},{int(r.matched)}")
    return lines


def dumps(obj) -> str:
    """Deterministic JSON encoding used for every report."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
