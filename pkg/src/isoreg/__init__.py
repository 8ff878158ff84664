"""Isotonic regression on partial orders.

Exact L0, L1 and L2 fits and grid-approximate Lp fits, all built on one
pipeline: a violator dag for the data, a maximum-weight antichain of it
found by minimum flow with lower bounds, and (for L1/Lp/L2) recursive
partitioning into binary problems.
"""

from .errors import (CycleDetected, ExtractionMismatch, InvalidDelta, InvalidP, IsoregError,
                     NotAntichain, OrderViolation, ParseError, TooLarge)
from .flow import (AntichainResult, FlowNetwork, build_antichain_network, max_weight_antichain,
                   min_flow_lower_bounds)
from .instances import BoxSet, Pairwise, resolve_order
from .l0 import extend_antichain, l0_regress
from .linear import binary_l1_chain, l0_chain, l1_chain, pav_l2
from .oracle import oracle_antichain, oracle_l2_maxmin, oracle_regress
from .order import (Dag, Metric, RegressionResult, WeightedFunction, isotonic_check,
                    prune_nonviolating, regression_error, topological_order)
from .partition import binary_l1, l1_regress, l2_exact, lp_approx, weighted_p_mean
from .violator import (PointSet, SteinerCoordinate, ViolatorDag, box_contains, boxes_to_domination,
                       rendezvous_violator, steiner_relation, transitive_closure, violator_closure,
                       violator_pairwise)

__version__ = "0.1.0"

__all__ = [
    "AntichainResult", "BoxSet", "CycleDetected", "Dag", "ExtractionMismatch", "FlowNetwork",
    "InvalidDelta", "InvalidP", "IsoregError", "Metric", "NotAntichain", "OrderViolation",
    "Pairwise", "ParseError", "PointSet", "RegressionResult", "SteinerCoordinate", "TooLarge",
    "ViolatorDag", "WeightedFunction", "binary_l1", "binary_l1_chain", "box_contains",
    "boxes_to_domination", "build_antichain_network", "extend_antichain", "isotonic_check",
    "l0_chain", "l0_regress", "l1_chain", "l1_regress", "l2_exact", "lp_approx",
    "max_weight_antichain", "min_flow_lower_bounds", "oracle_antichain", "oracle_l2_maxmin",
    "oracle_regress", "pav_l2", "prune_nonviolating", "regression_error", "rendezvous_violator",
    "resolve_order", "steiner_relation", "topological_order", "transitive_closure",
    "violator_closure", "violator_pairwise", "weighted_p_mean",
]
