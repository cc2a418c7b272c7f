"""Shortcut-edge augmentation for red/blue random-walk hitting times."""

from ._core import (
    CapacityExceeded,
    DisconnectedGraph,
    Error,
    GenerationFailed,
    Instance,
    InstanceTooLarge,
    InvalidBipartition,
    InvalidParameter,
    InvariantViolation,
    MalformedInput,
    SolverFailure,
    asymm,
    brute_force,
    estimate_g,
    f,
    g,
    greedy,
    greedy_plus,
    hitting_times,
    hitting_to_target,
    path,
    planted_two_community,
    pure_random,
    quasi_metric,
    spectral_radius,
    star_path_clique,
    top_hitting,
)

__all__ = [name for name in dir() if not name.startswith("_")]
