"""Network efficacy models, heterogeneous capacity planning, and Monte Carlo checks."""

from ._core import (
    BridgeVerdict,
    EfficacyReport,
    HetNetEstimate,
    HetNetResult,
    ParseError,
    PreconditionError,
    SimResult,
    UsageError,
    ValidationError,
    bridge_value_check,
    compare_value_models,
    dependent_capacity,
    disconnect_experiment,
    efficacy,
    expected_utility,
    growth_trajectory,
    hetnet_capacity,
    information_density,
    multipurpose_total,
    plan_coverage,
    run,
    saturating_schedule,
    simulate_contacts,
    simulate_hetnet,
    split_contradiction,
)

__all__ = [
    "BridgeVerdict",
    "EfficacyReport",
    "HetNetEstimate",
    "HetNetResult",
    "ParseError",
    "PreconditionError",
    "SimResult",
    "UsageError",
    "ValidationError",
    "bridge_value_check",
    "compare_value_models",
    "dependent_capacity",
    "disconnect_experiment",
    "efficacy",
    "expected_utility",
    "growth_trajectory",
    "hetnet_capacity",
    "information_density",
    "multipurpose_total",
    "plan_coverage",
    "run",
    "saturating_schedule",
    "simulate_contacts",
    "simulate_hetnet",
    "split_contradiction",
]
