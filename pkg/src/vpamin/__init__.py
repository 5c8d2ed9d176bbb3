"""Visibly pushdown automata, immersions and their exact minimization."""

from .dfa import Dfa, Verdict
from .errors import (
    BackendError,
    ContractError,
    InputError,
    ScaleError,
    ShapeError,
    SoundnessError,
    StructureError,
    VpaminError,
)
from .immersion import Immersion, Slot, StructureReport, TransitionGraph
from .vpa import VisiblyAlphabet, Vpa

__version__ = "0.1.0"

__all__ = [
    "Dfa", "Verdict", "Immersion", "Slot", "StructureReport", "TransitionGraph",
    "VisiblyAlphabet", "Vpa", "BackendError", "ContractError", "InputError", "ScaleError",
    "ShapeError", "SoundnessError", "StructureError", "VpaminError",
]
