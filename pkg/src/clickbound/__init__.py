"""Upper bounds on single-photon click probabilities from causality and
dark counts, for a square-prism detector facing a normally incident
single-mode coherent state."""

from .bound import BoundResult, SweepSpec, envelope, minimize_bound, sweep
from .bump import SpectralTransforms
from .errfun import error_of_zeta, gauss_weight, norm_factor
from .exceptions import (AccuracyError, ClickboundError, ConsistencyError,
                         MinimizationError, RangeError, ValidationError)
from .params import (DimensionlessConfig, PhysicalSetup, coherence_volume,
                     ideal_click_probability, to_dimensionless)
from .wightman import (KGridSpec, WightmanCurve, build_curve, w2_of_eta,
                       w2_zero)

__all__ = [
    "AccuracyError", "BoundResult", "ClickboundError", "ConsistencyError",
    "DimensionlessConfig", "KGridSpec", "MinimizationError", "PhysicalSetup",
    "RangeError", "SpectralTransforms", "SweepSpec", "ValidationError",
    "WightmanCurve", "build_curve", "coherence_volume", "envelope",
    "error_of_zeta", "gauss_weight", "ideal_click_probability",
    "minimize_bound", "norm_factor", "sweep", "to_dimensionless",
    "w2_of_eta", "w2_zero",
]

__version__ = "0.1.0"
