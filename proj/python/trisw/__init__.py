"""Three-switch three-phase inverter: plant model, FCS-MPC, metrics and design formulas."""

from ._core import (
    ConfigError,
    ConstraintError,
    NumericError,
    SwitchState,
    compare,
    continuous_model,
    design,
    load_config,
    model_bank,
    select_switch_state,
    simulate,
    sweep,
    thd,
)

__all__ = [
    "ConfigError",
    "ConstraintError",
    "NumericError",
    "SwitchState",
    "compare",
    "continuous_model",
    "design",
    "load_config",
    "model_bank",
    "select_switch_state",
    "simulate",
    "sweep",
    "thd",
]
