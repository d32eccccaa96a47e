"""Five-valued model checking for branching-time requirements."""

from ._core import (
    Formula,
    Model,
    check,
    oracle_value,
    state_value,
    truth_values,
    values,
)

__all__ = [
    "Formula",
    "Model",
    "check",
    "oracle_value",
    "state_value",
    "truth_values",
    "values",
]
