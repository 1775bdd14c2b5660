"""Fractal-optimized variational mode decomposition for harmonic detection.

The mode count K is selected automatically by sweeping decompositions and
scoring each with the minimum box-counting dimension of its retained modes;
per-component amplitude, frequency and time support then come from the
Hilbert analytic signal. EMD/EEMD baselines are included for comparison.
"""

from .baselines import ComparisonTable, EmdConfig, EmdResult, compare_methods, eemd, emd
from .estimators import EEMD, EMD, VMD, HarmonicDetector, KSelector
from .fbd import BoxCountCurve, FbdEstimate, box_count, fractal_box_dimension
from .hht import (Classification, ComponentSummary, DetectionReport,
                  InstantaneousSeries, TimeSupport, classify_component,
                  detect_harmonics, instantaneous_attributes, time_support)
from .kselect import KSelectionTrace, PruneConfig, k_score, prune_residual_modes, select_k
from .presets import PRESET_NAMES, build_preset, preset_tones
from .signal import (NoiseSpec, SampledSignal, ToneSpec, add_awgn, signal_power,
                     synth_multitone)
from .spectral import (ComplexSpectrum, analytic_signal, crop_mirror, dft_forward,
                       dft_inverse, mirror_extend)
from .vmd import (VmdDecomposition, VmdDivergenceError, VmdParams,
                  init_center_frequencies, vmd_decompose)

__version__ = "0.1.0"

__all__ = [
    "ComparisonTable", "EmdConfig", "EmdResult", "compare_methods", "eemd", "emd",
    "EEMD", "EMD", "VMD", "HarmonicDetector", "KSelector",
    "BoxCountCurve", "FbdEstimate", "box_count", "fractal_box_dimension",
    "Classification", "ComponentSummary", "DetectionReport", "InstantaneousSeries",
    "TimeSupport", "classify_component", "detect_harmonics",
    "instantaneous_attributes", "time_support",
    "KSelectionTrace", "PruneConfig", "k_score", "prune_residual_modes", "select_k",
    "PRESET_NAMES", "build_preset", "preset_tones",
    "NoiseSpec", "SampledSignal", "ToneSpec", "add_awgn", "signal_power",
    "synth_multitone",
    "ComplexSpectrum", "analytic_signal", "crop_mirror", "dft_forward",
    "dft_inverse", "mirror_extend",
    "VmdDecomposition", "VmdDivergenceError", "VmdParams",
    "init_center_frequencies", "vmd_decompose",
    "__version__",
]
