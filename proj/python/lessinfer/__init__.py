"""Similarity-aware choice models and Bayesian reward inference.

Thin python veneer over the C++ core.  See the project README for the
model definitions and the experiment harness.
"""

from ._core import (  # noqa: F401
    Cell,
    ConfigError,
    DegenerateInputError,
    GridWorld,
    NumericalError,
    ThetaGrid,
    Trajectory,
    TrajectorySet,
    attribute_rule,
    batch_update,
    boltzmann,
    density,
    enumerate_trajectories,
    kl_aggregate,
    less_rule,
    map_theta,
    predict,
    run_turk_predict,
    sample_demos,
    select_bandwidth,
    subsample,
    true_match,
    true_posterior,
    uniform_belief,
    update,
)

__all__ = [
    "Cell",
    "ConfigError",
    "DegenerateInputError",
    "GridWorld",
    "NumericalError",
    "ThetaGrid",
    "Trajectory",
    "TrajectorySet",
    "attribute_rule",
    "batch_update",
    "boltzmann",
    "density",
    "enumerate_trajectories",
    "kl_aggregate",
    "less_rule",
    "map_theta",
    "predict",
    "run_turk_predict",
    "sample_demos",
    "select_bandwidth",
    "subsample",
    "true_match",
    "true_posterior",
    "uniform_belief",
    "update",
]

__version__ = "0.1.0"
