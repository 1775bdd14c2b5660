"""Command-line front end.

Exit codes: 0 success, 2 bad input, 3 numerical failure (divergence/NaN),
4 degenerate result (e.g. no components detected).
"""

from __future__ import annotations

import math
import os
import sys

import click
import numpy as np

from . import io
from .baselines import EmdConfig, compare_methods, emd as run_emd, eemd as run_eemd
from .fbd import fractal_box_dimension
from .hht import detect_harmonics, instantaneous_attributes
from .kselect import PruneConfig, select_k
from .presets import PRESET_NAMES, build_preset, preset_tones
from .signal import NoiseSpec, ToneSpec, add_awgn, synth_multitone
from .vmd import INIT_CHOICES, VmdDivergenceError, VmdParams, vmd_decompose

EXIT_BAD_INPUT = 2
EXIT_NUMERICAL = 3
EXIT_DEGENERATE = 4


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("FOVMD_THREADS", "1")))
    except ValueError:
        return 1


def _parse_tone(text: str) -> ToneSpec:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) not in (3, 5):
        raise click.UsageError(
            f"--tone expects 'A,F,PHASE' or 'A,F,PHASE,START,END', got {text!r}")
    try:
        nums = [float(p) for p in parts]
    except ValueError:
        raise click.UsageError(f"--tone has a non-numeric field: {text!r}") from None
    if len(nums) == 3:
        return ToneSpec(nums[0], nums[1], nums[2])
    return ToneSpec(nums[0], nums[1], nums[2], nums[3], nums[4])


def _load_input(input_path, preset, fs, n, tones, snr_db, seed, t0):
    """Resolve the input signal from a file, a preset, or --tone flags."""
    if sum(x is not None for x in (input_path, preset)) + bool(tones) != 1:
        raise click.UsageError("provide exactly one of INPUT, --preset, or --tone")
    if preset is not None:
        sig = build_preset(preset, snr_db=snr_db, seed=seed)
        return sig
    if tones:
        if fs is None or n is None:
            raise click.UsageError("--tone requires --fs and --n")
        sig = synth_multitone([_parse_tone(t) for t in tones], fs, n, t0)
        if snr_db is not None and not math.isinf(snr_db):
            sig = add_awgn(sig, NoiseSpec(snr_db=snr_db, seed=seed))
        return sig
    return io.read_signal_csv(input_path, sample_rate_hz=fs)


def _vmd_params(k, alpha, tau, dc, init, init_seed, tol, max_iters) -> VmdParams:
    return VmdParams(k=k, alpha=alpha, tau=tau, dc=dc, init=init,
                     seed=init_seed, tol=tol, max_iters=max_iters)


def _input_options(f):
    f = click.argument("input_path", required=False,
                       type=click.Path(exists=True, dir_okay=False))(f)
    f = click.option("--preset", type=click.Choice(PRESET_NAMES), default=None,
                     help="Use a bundled benchmark signal instead of a file.")(f)
    f = click.option("--tone", "tones", multiple=True,
                     help="Add a tone 'A,F,PHASE[,START,END]' (repeatable).")(f)
    f = click.option("--fs", type=float, default=None,
                     help="Sample rate override (Hz).")(f)
    f = click.option("--n", type=int, default=None, help="Sample count for --tone.")(f)
    f = click.option("--t0", type=float, default=0.0, help="Start time (s).")(f)
    f = click.option("--snr-db", type=float, default=None,
                     help="Add Gaussian noise at this SNR.")(f)
    f = click.option("--seed", type=int, default=0, help="Noise seed.")(f)
    return f


def _solver_options(f):
    f = click.option("--alpha", type=float, default=4096.0, show_default=True,
                     help="Bandwidth penalty.")(f)
    f = click.option("--tau", type=float, default=0.0, show_default=True,
                     help="Dual ascent step.")(f)
    f = click.option("--dc", is_flag=True, help="Pin the first mode at 0 Hz.")(f)
    f = click.option("--init", type=click.Choice(INIT_CHOICES), default="uniform",
                     show_default=True)(f)
    f = click.option("--init-seed", type=int, default=None,
                     help="Seed for --init random.")(f)
    f = click.option("--tol", type=float, default=1e-10, show_default=True)(f)
    f = click.option("--max-iters", type=int, default=500, show_default=True)(f)
    return f


@click.group()
def main():
    """Decompose power-system signals and detect harmonics/interharmonics."""


@main.command()
@_input_options
@click.option("-o", "--output", type=click.Path(dir_okay=False), required=True)
def generate(input_path, preset, tones, fs, n, t0, snr_db, seed, output):
    """Synthesize a signal (preset or --tone list) and write it as CSV."""
    if input_path is not None:
        raise click.UsageError("generate takes no input file")
    try:
        sig = _load_input(None, preset, fs, n, tones, snr_db, seed, t0)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    io.write_signal_csv(output, sig)
    click.echo(f"wrote {len(sig)} samples at {sig.sample_rate_hz:g} Hz to {output}")


@main.command()
@_input_options
@_solver_options
@click.option("--k", type=int, required=True, help="Number of modes.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), required=True,
              help="Modes CSV (t, imf1..imfK).")
@click.option("--meta", type=click.Path(dir_okay=False), default=None,
              help="Write center frequencies and diagnostics as JSON.")
def decompose(input_path, preset, tones, fs, n, t0, snr_db, seed,
              alpha, tau, dc, init, init_seed, tol, max_iters, k, output, meta):
    """Run the decomposition at a fixed K and write the modes."""
    try:
        sig = _load_input(input_path, preset, fs, n, tones, snr_db, seed, t0)
        params = _vmd_params(k, alpha, tau, dc, init, init_seed, tol, max_iters)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    try:
        result = vmd_decompose(sig, params)
    except VmdDivergenceError as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        sys.exit(EXIT_NUMERICAL)
    io.write_modes_csv(output, sig.times(), list(result.modes))
    if meta:
        with open(meta, "w") as fh:
            fh.write(io.dumps({
                "schema": io.SCHEMA_VERSION,
                "center_freqs_hz": result.center_freqs_hz.tolist(),
                "iterations": result.iterations,
                "converged": result.converged,
                "k": result.k,
                "config": _config_dict(sig, params=params),
            }))
    click.echo(f"decomposed into {result.k} modes "
               f"(iterations={result.iterations}, converged={result.converged})")


def _config_dict(sig, **extra):
    cfg = {"sample_rate_hz": sig.sample_rate_hz, "n_samples": len(sig),
           "t0_s": sig.t0_s}
    for key, value in extra.items():
        if isinstance(value, VmdParams):
            cfg[key] = {"k": value.k, "alpha": value.alpha, "tau": value.tau,
                        "dc": value.dc, "init": value.init, "seed": value.seed,
                        "tol": value.tol, "max_iters": value.max_iters}
        else:
            cfg[key] = value
    return cfg


@main.command(name="select-k")
@_input_options
@_solver_options
@click.option("--k-min", type=int, default=1, show_default=True)
@click.option("--k-max", type=int, default=10, show_default=True)
@click.option("--prune-threshold", type=float, default=1e-3, show_default=True)
@click.option("--plateau-epsilon", type=float, default=0.05, show_default=True)
@click.option("--threads", type=int, default=None,
              help="Worker threads for the sweep (default FOVMD_THREADS or 1).")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None,
              help="Trace CSV (k, score, pruned).")
@click.option("--json", "json_path", type=click.Path(dir_okay=False), default=None)
def select_k_cmd(input_path, preset, tones, fs, n, t0, snr_db, seed,
                 alpha, tau, dc, init, init_seed, tol, max_iters,
                 k_min, k_max, prune_threshold, plateau_epsilon, threads,
                 output, json_path):
    """Sweep K and report the selected mode count."""
    try:
        sig = _load_input(input_path, preset, fs, n, tones, snr_db, seed, t0)
        params = _vmd_params(max(k_min, 1), alpha, tau, dc, init, init_seed,
                             tol, max_iters)
        cfg = PruneConfig(prune_threshold)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    try:
        trace = select_k(sig, k_min, k_max, params, cfg, plateau_epsilon,
                         threads=threads or _default_threads())
    except VmdDivergenceError as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        sys.exit(EXIT_NUMERICAL)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    if output:
        io.write_trace_csv(output, trace)
    if json_path:
        with open(json_path, "w") as fh:
            fh.write(io.dumps({"schema": io.SCHEMA_VERSION,
                               "trace": io.trace_to_dict(trace),
                               "config": _config_dict(sig, params=params,
                                                      prune_threshold=prune_threshold,
                                                      plateau_epsilon=plateau_epsilon)}))
    for k, score, pruned in io.trace_rows(trace):
        click.echo(f"k={k} score={score:.6f} pruned={pruned}")
    click.echo(f"chosen_k={trace.chosen_k}")


@main.command()
@_input_options
@_solver_options
@click.option("--k-min", type=int, default=1, show_default=True)
@click.option("--k-max", type=int, default=10, show_default=True)
@click.option("--fundamental-hz", type=float, default=50.0, show_default=True)
@click.option("--tolerance-hz", type=float, default=2.5, show_default=True)
@click.option("--prune-threshold", type=float, default=1e-3, show_default=True)
@click.option("--plateau-epsilon", type=float, default=0.05, show_default=True)
@click.option("--merge-radius-hz", type=float, default=5.0, show_default=True)
@click.option("--component-threshold", type=float, default=0.015, show_default=True)
@click.option("--ground-truth", "gt_tones", multiple=True,
              help="True tone 'A,F,PHASE[,START,END]' for error columns.")
@click.option("--ground-truth-preset", type=click.Choice(PRESET_NAMES), default=None,
              help="Use a preset's tone table as ground truth.")
@click.option("--threads", type=int, default=None)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None,
              help="Report JSON path.")
@click.option("--series-csv", type=click.Path(dir_okay=False), default=None,
              help="Write per-component amplitude/frequency series.")
def detect(input_path, preset, tones, fs, n, t0, snr_db, seed,
           alpha, tau, dc, init, init_seed, tol, max_iters,
           k_min, k_max, fundamental_hz, tolerance_hz, prune_threshold,
           plateau_epsilon, merge_radius_hz, component_threshold,
           gt_tones, ground_truth_preset, threads, output, series_csv):
    """Detect harmonic/interharmonic components end to end."""
    try:
        sig = _load_input(input_path, preset, fs, n, tones, snr_db, seed, t0)
        params = _vmd_params(max(k_min, 1), alpha, tau, dc, init, init_seed,
                             tol, max_iters)
        truth = None
        if ground_truth_preset:
            truth = list(preset_tones(ground_truth_preset))
        elif gt_tones:
            truth = [_parse_tone(t) for t in gt_tones]
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    try:
        report = detect_harmonics(
            sig, (k_min, k_max), params, fundamental_hz=fundamental_hz,
            prune_cfg=PruneConfig(prune_threshold),
            plateau_epsilon=plateau_epsilon, merge_radius_hz=merge_radius_hz,
            component_energy_threshold=component_threshold,
            tolerance_hz=tolerance_hz, ground_truth=truth,
            threads=threads or _default_threads())
    except VmdDivergenceError as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        sys.exit(EXIT_NUMERICAL)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc

    config = _config_dict(
        sig, params=params, k_min=k_min, k_max=k_max,
        fundamental_hz=fundamental_hz, tolerance_hz=tolerance_hz,
        prune_threshold=prune_threshold, plateau_epsilon=plateau_epsilon,
        merge_radius_hz=merge_radius_hz, component_threshold=component_threshold,
        snr_db=snr_db, noise_seed=seed, preset=preset)
    payload = io.dumps(io.report_to_dict(report, config))
    if output:
        with open(output, "w") as fh:
            fh.write(payload)
        for c in report.components:
            click.echo(f"{c.classification.label}: {c.mean_frequency_hz:.3f} Hz, "
                       f"{c.mean_amplitude_v:.4f} V, "
                       f"support [{c.support_s[0]:.3f}, {c.support_s[1]:.3f}] s")
    else:
        click.echo(payload, nl=False)
    if series_csv:
        modal = vmd_decompose(sig, params.with_k(report.chosen_k))
        series = [instantaneous_attributes(m, sig.sample_rate_hz)
                  for m in modal.modes]
        io.write_series_csv(series_csv, sig.times(), series)
    if not report.components:
        click.echo("no components detected (degenerate input)", err=True)
        sys.exit(EXIT_DEGENERATE)


@main.command()
@_input_options
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None,
              help="Write the count curve as CSV.")
def fbd(input_path, preset, tones, fs, n, t0, snr_db, seed, output):
    """Box-counting dimension of a waveform."""
    try:
        sig = _load_input(input_path, preset, fs, n, tones, snr_db, seed, t0)
        estimate = fractal_box_dimension(sig.samples)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    click.echo(f"dimension={estimate.dimension:.6f} r2={estimate.fit_r2:.6f} "
               f"degenerate={estimate.degenerate}")
    lines = ["eps,count"] + [f"{s:.10g},{c}" for s, c in
                             zip(estimate.curve.scales, estimate.curve.counts)]
    if output:
        with open(output, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    else:
        for line in lines:
            click.echo(line)


@main.command()
@_input_options
@_solver_options
@click.option("--k", type=int, default=None,
              help="Fixed K for the VMD leg (default: auto-select 1..10).")
@click.option("--k-min", type=int, default=1, show_default=True)
@click.option("--k-max", type=int, default=10, show_default=True)
@click.option("--ground-truth", "gt_tones", multiple=True)
@click.option("--ground-truth-preset", type=click.Choice(PRESET_NAMES), default=None)
@click.option("--trials", type=int, default=100, show_default=True,
              help="EEMD ensemble size.")
@click.option("--noise-fraction", type=float, default=0.2, show_default=True)
@click.option("--emd-seed", type=int, default=0, show_default=True)
@click.option("--threads", type=int, default=None)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None,
              help="Comparison CSV.")
@click.option("--json", "json_path", type=click.Path(dir_okay=False), default=None)
def compare(input_path, preset, tones, fs, n, t0, snr_db, seed,
            alpha, tau, dc, init, init_seed, tol, max_iters,
            k, k_min, k_max, gt_tones, ground_truth_preset, trials,
            noise_fraction, emd_seed, threads, output, json_path):
    """Run VMD, EMD and EEMD on one signal and tabulate tone recovery."""
    try:
        sig = _load_input(input_path, preset, fs, n, tones, snr_db, seed, t0)
        if ground_truth_preset:
            truth = list(preset_tones(ground_truth_preset))
        elif gt_tones:
            truth = [_parse_tone(t) for t in gt_tones]
        elif preset:
            truth = list(preset_tones(preset))
        elif tones:
            truth = [_parse_tone(t) for t in tones]
        else:
            raise click.UsageError("compare requires ground truth tones")
        params = _vmd_params(k or max(k_min, 1), alpha, tau, dc, init,
                             init_seed, tol, max_iters)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    nthreads = threads or _default_threads()
    try:
        if k is None:
            trace = select_k(sig, k_min, k_max, params, PruneConfig(),
                             threads=nthreads)
            params = params.with_k(trace.chosen_k)
        vmd_result = vmd_decompose(sig, params)
    except VmdDivergenceError as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        sys.exit(EXIT_NUMERICAL)
    emd_cfg = EmdConfig(ensemble_size=trials, noise_std_fraction=noise_fraction,
                        seed=emd_seed)
    emd_result = run_emd(sig, emd_cfg)
    eemd_imfs = run_eemd(sig, emd_cfg, threads=nthreads)
    table = compare_methods(sig, truth, {
        "vmd": list(vmd_result.modes),
        "emd": list(emd_result.imfs),
        "eemd": eemd_imfs,
    })
    lines = io.comparison_csv_lines(table)
    if output:
        with open(output, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    for line in lines:
        click.echo(line)
    for method in ("vmd", "emd", "eemd"):
        click.echo(f"{method}: matched={table.matched_count(method)}"
                   f"/{len(truth)} spurious={table.spurious_counts[method]}")
    if json_path:
        with open(json_path, "w") as fh:
            fh.write(io.dumps(io.comparison_to_dict(
                table, _config_dict(sig, params=params, trials=trials,
                                    noise_fraction=noise_fraction,
                                    emd_seed=emd_seed))))


if __name__ == "__main__":
    main()
