"""Scikit-learn style estimators wrapping the functional core.

Each estimator takes a 1-D signal (array-like or SampledSignal). ``fit``
runs the underlying algorithm and exposes results as trailing-underscore
attributes; ``transform`` applies the same configuration to the given
signal and returns the decomposition as a ``(n_modes, n_samples)`` array,
so the classes compose with pipelines, ``clone`` and ``get_params``.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from . import baselines, hht, kselect, vmd
from .validation import as_sampled_signal, check_k_range


class VMD(TransformerMixin, BaseEstimator):
    """Variational mode decomposition as a transformer.

    ``transform`` returns the stacked modes of the input signal; fitting
    additionally stores center frequencies and convergence diagnostics.
    """

    def __init__(self, k=3, alpha=4096.0, tau=0.0, dc=False, init="uniform",
                 seed=None, tol=1e-10, max_iters=500, sample_rate_hz=None):
        self.k = k
        self.alpha = alpha
        self.tau = tau
        self.dc = dc
        self.init = init
        self.seed = seed
        self.tol = tol
        self.max_iters = max_iters
        self.sample_rate_hz = sample_rate_hz

    def _params(self):
        return vmd.VmdParams(k=self.k, alpha=self.alpha, tau=self.tau,
                             dc=self.dc, init=self.init, seed=self.seed,
                             tol=self.tol, max_iters=self.max_iters)

    def _decompose(self, X):
        signal = as_sampled_signal(X, self.sample_rate_hz)
        return vmd.vmd_decompose(signal, self._params())

    def fit(self, X, y=None):
        result = self._decompose(X)
        self.modes_ = result.modes
        self.center_freqs_hz_ = result.center_freqs_hz
        self.residual_ = result.residual
        self.n_iter_ = result.iterations
        self.converged_ = result.converged
        return self

    def transform(self, X):
        return self._decompose(X).modes

    def fit_transform(self, X, y=None):
        self.fit(X)
        return self.modes_


class EMD(TransformerMixin, BaseEstimator):
    """Empirical mode decomposition transformer (IMFs stacked row-wise)."""

    def __init__(self, max_imfs=12, sift_sd_threshold=0.3, max_sifts_per_imf=50,
                 sample_rate_hz=None):
        self.max_imfs = max_imfs
        self.sift_sd_threshold = sift_sd_threshold
        self.max_sifts_per_imf = max_sifts_per_imf
        self.sample_rate_hz = sample_rate_hz

    def _config(self):
        return baselines.EmdConfig(max_imfs=self.max_imfs,
                                   sift_sd_threshold=self.sift_sd_threshold,
                                   max_sifts_per_imf=self.max_sifts_per_imf)

    def fit(self, X, y=None):
        result = baselines.emd(as_sampled_signal(X, self.sample_rate_hz), self._config())
        self.imfs_ = np.vstack(result.imfs) if result.imfs else np.empty((0, len(result.residual)))
        self.residual_ = result.residual
        return self

    def transform(self, X):
        result = baselines.emd(as_sampled_signal(X, self.sample_rate_hz), self._config())
        return np.vstack(result.imfs) if result.imfs else np.empty((0, len(result.residual)))

    def fit_transform(self, X, y=None):
        self.fit(X)
        return self.imfs_


class EEMD(EMD):
    """Noise-assisted ensemble EMD transformer."""

    def __init__(self, max_imfs=12, sift_sd_threshold=0.3, max_sifts_per_imf=50,
                 ensemble_size=100, noise_std_fraction=0.2, seed=0,
                 sample_rate_hz=None, threads=1):
        super().__init__(max_imfs, sift_sd_threshold, max_sifts_per_imf, sample_rate_hz)
        self.ensemble_size = ensemble_size
        self.noise_std_fraction = noise_std_fraction
        self.seed = seed
        self.threads = threads

    def _config(self):
        return baselines.EmdConfig(max_imfs=self.max_imfs,
                                   sift_sd_threshold=self.sift_sd_threshold,
                                   max_sifts_per_imf=self.max_sifts_per_imf,
                                   ensemble_size=self.ensemble_size,
                                   noise_std_fraction=self.noise_std_fraction,
                                   seed=self.seed)

    def fit(self, X, y=None):
        imfs = baselines.eemd(as_sampled_signal(X, self.sample_rate_hz),
                              self._config(), threads=self.threads)
        self.imfs_ = np.vstack(imfs) if imfs else np.empty((0, 0))
        return self

    def transform(self, X):
        imfs = baselines.eemd(as_sampled_signal(X, self.sample_rate_hz),
                              self._config(), threads=self.threads)
        return np.vstack(imfs) if imfs else np.empty((0, 0))


class KSelector(BaseEstimator):
    """Sweeps the mode count and exposes the selected K and score trace."""

    def __init__(self, k_min=1, k_max=10, alpha=4096.0, tau=0.0, dc=False,
                 init="uniform", seed=None, tol=1e-10, max_iters=500,
                 prune_threshold=1e-3, plateau_epsilon=0.05,
                 sample_rate_hz=None, threads=1):
        self.k_min = k_min
        self.k_max = k_max
        self.alpha = alpha
        self.tau = tau
        self.dc = dc
        self.init = init
        self.seed = seed
        self.tol = tol
        self.max_iters = max_iters
        self.prune_threshold = prune_threshold
        self.plateau_epsilon = plateau_epsilon
        self.sample_rate_hz = sample_rate_hz
        self.threads = threads

    def fit(self, X, y=None):
        k_min, k_max = check_k_range(self.k_min, self.k_max)
        params = vmd.VmdParams(k=k_min, alpha=self.alpha, tau=self.tau,
                               dc=self.dc, init=self.init, seed=self.seed,
                               tol=self.tol, max_iters=self.max_iters)
        self.trace_ = kselect.select_k(
            as_sampled_signal(X, self.sample_rate_hz), k_min, k_max, params,
            kselect.PruneConfig(self.prune_threshold), self.plateau_epsilon,
            threads=self.threads)
        self.chosen_k_ = self.trace_.chosen_k
        return self

    def predict(self, X=None):
        if not hasattr(self, "chosen_k_"):
            raise NotFittedError("call fit first")
        return self.chosen_k_


class HarmonicDetector(BaseEstimator):
    """End-to-end detector: K selection, decomposition, component report."""

    def __init__(self, k_min=1, k_max=10, alpha=4096.0, tau=0.0, dc=False,
                 init="uniform", seed=None, tol=1e-10, max_iters=500,
                 fundamental_hz=50.0, prune_threshold=1e-3,
                 plateau_epsilon=0.05, merge_radius_hz=5.0,
                 component_energy_threshold=0.015, tolerance_hz=2.5,
                 sample_rate_hz=None, threads=1):
        self.k_min = k_min
        self.k_max = k_max
        self.alpha = alpha
        self.tau = tau
        self.dc = dc
        self.init = init
        self.seed = seed
        self.tol = tol
        self.max_iters = max_iters
        self.fundamental_hz = fundamental_hz
        self.prune_threshold = prune_threshold
        self.plateau_epsilon = plateau_epsilon
        self.merge_radius_hz = merge_radius_hz
        self.component_energy_threshold = component_energy_threshold
        self.tolerance_hz = tolerance_hz
        self.sample_rate_hz = sample_rate_hz
        self.threads = threads

    def fit(self, X, y=None):
        k_min, k_max = check_k_range(self.k_min, self.k_max)
        params = vmd.VmdParams(k=k_min, alpha=self.alpha, tau=self.tau,
                               dc=self.dc, init=self.init, seed=self.seed,
                               tol=self.tol, max_iters=self.max_iters)
        self.report_ = hht.detect_harmonics(
            as_sampled_signal(X, self.sample_rate_hz), (k_min, k_max), params,
            fundamental_hz=self.fundamental_hz,
            prune_cfg=kselect.PruneConfig(self.prune_threshold),
            plateau_epsilon=self.plateau_epsilon,
            merge_radius_hz=self.merge_radius_hz,
            component_energy_threshold=self.component_energy_threshold,
            tolerance_hz=self.tolerance_hz,
            threads=self.threads)
        self.components_ = self.report_.components
        self.chosen_k_ = self.report_.chosen_k
        return self

    def predict(self, X):
        """Detect and return the component summaries for a signal."""
        self.fit(X)
        return self.components_
