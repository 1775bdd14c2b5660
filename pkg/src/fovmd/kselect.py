"""Mode-count selection: sweep K, score by minimum box dimension, pick the
plateau onset.

Under-decomposition leaves modes rough (mode mixing raises their box
dimension); once K is large enough the score curve drops to a stable floor.
The selected K is the smallest one whose score sits within
``plateau_epsilon`` of the sweep minimum and stays there for the next two
sweep points.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .fbd import fractal_box_dimension
from .signal import SampledSignal
from .vmd import VmdDecomposition, VmdDivergenceError, VmdParams, vmd_decompose

DEFAULT_PLATEAU_EPSILON = 0.05


@dataclass(frozen=True)
class PruneConfig:
    """Residual-mode pruning: drop modes below a fraction of input energy."""

    energy_fraction_threshold: float = 1e-3

    def __post_init__(self):
        if not (0.0 < self.energy_fraction_threshold < 1.0):
            raise ValueError("energy_fraction_threshold must be in (0, 1)")


@dataclass(frozen=True)
class KSelectionTrace:
    """Per-K scores from the sweep plus the selected mode count.

    ``chosen_k`` follows the plateau-onset rule; ``argmin_k`` (the plain
    minimizer) is recorded alongside for comparison.
    """

    k_values: np.ndarray
    scores: np.ndarray
    pruned_counts: np.ndarray
    chosen_k: int
    plateau_epsilon: float
    argmin_k: int

    def __post_init__(self):
        if self.chosen_k not in self.k_values:
            raise ValueError("chosen_k must be one of the swept k values")


def prune_residual_modes(decomp: VmdDecomposition, cfg: PruneConfig,
                         input_energy: float | None = None) -> list[int]:
    """Indices of modes whose energy clears the threshold.

    Energy is the mean square of the mode relative to the decomposed
    signal's mean square. If every mode falls below the threshold, the
    single strongest one is kept.
    """
    energies = decomp.mode_energies()
    if input_energy is None:
        input_energy = float(np.mean((decomp.modes.sum(axis=0) + decomp.residual) ** 2))
    keep = [i for i, e in enumerate(energies)
            if e >= cfg.energy_fraction_threshold * input_energy]
    if not keep:
        keep = [int(np.argmax(energies))]
    return keep


def k_score(decomp: VmdDecomposition, cfg: PruneConfig,
            input_energy: float | None = None) -> float:
    """Minimum box dimension over the retained (non-residual) modes."""
    keep = prune_residual_modes(decomp, cfg, input_energy)
    best = np.inf
    for i in keep:
        est = fractal_box_dimension(decomp.modes[i])
        if est.degenerate:
            warnings.warn(f"mode {i} is constant; box dimension degenerate",
                          RuntimeWarning, stacklevel=2)
        best = min(best, est.dimension)
    return float(best)


def _plateau_choice(k_values, scores, eps):
    finite = [s for s in scores if np.isfinite(s)]
    if not finite:
        raise VmdDivergenceError(0)
    floor = min(finite)
    for i, k in enumerate(k_values):
        if not np.isfinite(scores[i]):
            continue
        window = [j for j in range(i, len(k_values))
                  if k_values[j] <= min(k + 2, k_values[-1]) and np.isfinite(scores[j])]
        if window and all(scores[j] <= floor + eps for j in window):
            return int(k)
    return int(k_values[int(np.argmin([s if np.isfinite(s) else np.inf for s in scores]))])


def select_k(signal: SampledSignal, k_min: int, k_max: int,
             vmd_defaults: VmdParams | None = None,
             cfg: PruneConfig | None = None,
             plateau_epsilon: float = DEFAULT_PLATEAU_EPSILON,
             threads: int = 1) -> KSelectionTrace:
    """Sweep K in [k_min, k_max] and select the plateau-onset mode count.

    Each K runs an independent decomposition with fresh initialization so
    scores stay comparable. A diverging K is recorded with an infinite score
    and skipped; if every K diverges the error propagates.
    """
    if not (1 <= k_min < k_max):
        raise ValueError("need 1 <= k_min < k_max")
    vmd_defaults = vmd_defaults or VmdParams()
    cfg = cfg or PruneConfig()
    e_in = float(np.mean(signal.samples**2))
    k_values = list(range(k_min, k_max + 1))

    def run(k: int):
        try:
            decomp = vmd_decompose(signal, vmd_defaults.with_k(k))
        except VmdDivergenceError:
            return np.inf, 0
        keep = prune_residual_modes(decomp, cfg, e_in)
        return k_score(decomp, cfg, e_in), decomp.k - len(keep)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, k_values))
    else:
        results = [run(k) for k in k_values]

    scores = [r[0] for r in results]
    pruned = [r[1] for r in results]
    if not any(np.isfinite(s) for s in scores):
        raise VmdDivergenceError(0)
    chosen = _plateau_choice(k_values, scores, plateau_epsilon)
    finite_scores = [s if np.isfinite(s) else np.inf for s in scores]
    argmin = int(k_values[int(np.argmin(finite_scores))])
    return KSelectionTrace(
        k_values=np.asarray(k_values),
        scores=np.asarray(scores),
        pruned_counts=np.asarray(pruned),
        chosen_k=chosen,
        plateau_epsilon=plateau_epsilon,
        argmin_k=argmin,
    )
