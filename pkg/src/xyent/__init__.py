"""Three-spin free and bound entanglement in the infinite XY chain."""

__version__ = "0.1.0"

from .params import ModelParams, QuadratureConfig, TripleGeometry
from .correlators import (CorrelatorSet, correlator_set, dispersion, g_k, g_table,
                          magnetization, three_point, two_point)
from .state import Rho2, Rho3, assemble_rho3, partial_trace, reduced_pair
from .entanglement import (Cut, EntanglementClass, EntanglementReport, analyze_triple,
                           classify, concurrence, negativity, partial_transpose,
                           wootters_concurrence)
from .scans import (FigureConfig, ThresholdSet, factorizing_field, pair_range,
                    sweep_field, thermal_thresholds)

__all__ = [
    "ModelParams", "QuadratureConfig", "TripleGeometry",
    "CorrelatorSet", "correlator_set", "dispersion", "g_k", "g_table",
    "magnetization", "three_point", "two_point",
    "Rho2", "Rho3", "assemble_rho3", "partial_trace", "reduced_pair",
    "Cut", "EntanglementClass", "EntanglementReport", "analyze_triple", "classify",
    "concurrence", "negativity", "partial_transpose", "wootters_concurrence",
    "FigureConfig", "ThresholdSet", "factorizing_field", "pair_range",
    "sweep_field", "thermal_thresholds",
]
