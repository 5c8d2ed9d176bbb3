"""Exact immersion minimization through a propositional encoding."""

from .encoding import ConstraintModel, decode, encode
from .minimize import (
    MinimizationResult,
    VpaMinimizationResult,
    brute_force_min_immersion,
    lower_bound,
    min_immersion,
    min_vpa_special,
)
from .solver import KERNEL, SolveResult, solve

__all__ = [
    "ConstraintModel", "decode", "encode", "MinimizationResult", "VpaMinimizationResult",
    "brute_force_min_immersion", "lower_bound", "min_immersion", "min_vpa_special",
    "KERNEL", "SolveResult", "solve",
]
