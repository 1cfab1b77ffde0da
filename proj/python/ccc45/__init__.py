"""Cost-sensitive C4.5 decision trees with lambda competition."""

from ._ccc45 import (
    ArgumentError,
    DecisionTree,
    ParseError,
    StructureError,
    ValidationError,
    average_cost,
    average_reduction_ratio,
    build_tree,
    dataset,
    lambda_grid,
    load_csv,
    post_prune,
    reduction_ratio,
    run_competition,
    run_experiment,
)

__all__ = [
    "ArgumentError",
    "DecisionTree",
    "ParseError",
    "StructureError",
    "ValidationError",
    "average_cost",
    "average_reduction_ratio",
    "build_tree",
    "dataset",
    "lambda_grid",
    "load_csv",
    "post_prune",
    "reduction_ratio",
    "run_competition",
    "run_experiment",
]
