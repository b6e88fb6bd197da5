"""Line planning on all lines: exact solvers, a brute-force oracle and reductions."""
from .core import (
    INF,
    FeasibilityReport,
    Graph,
    Instance,
    Line,
    LineConcept,
    Violation,
    concept_cost,
    is_feasible,
    line_ends,
    line_ends_at,
    total_frequency,
)
from .errors import LpalError
from .formats import format_concept, format_instance, parse_concept, parse_instance
from .oracle import AUTO, Decision, OracleConfig, enumerate_simple_paths, oracle_decide, oracle_solve
from .star import OptimalityCondition, StarInstance, optimality_condition, pair_demands, solve_star
from .tree import (
    CostVector,
    cost_vector_introduce_parent,
    cost_vector_leaf,
    cost_vector_merge,
    solve_tree_dp,
    solve_tree_fixed_freq,
)

__all__ = [
    "AUTO",
    "INF",
    "CostVector",
    "Decision",
    "FeasibilityReport",
    "Graph",
    "Instance",
    "Line",
    "LineConcept",
    "LpalError",
    "OptimalityCondition",
    "OracleConfig",
    "StarInstance",
    "Violation",
    "concept_cost",
    "cost_vector_introduce_parent",
    "cost_vector_leaf",
    "cost_vector_merge",
    "enumerate_simple_paths",
    "format_concept",
    "format_instance",
    "is_feasible",
    "line_ends",
    "line_ends_at",
    "optimality_condition",
    "oracle_decide",
    "oracle_solve",
    "pair_demands",
    "parse_concept",
    "parse_instance",
    "solve_star",
    "solve_tree_dp",
    "solve_tree_fixed_freq",
    "total_frequency",
]
