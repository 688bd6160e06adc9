"""Grounding, SAT search, and the three inferences."""

from .ground import GroundProblem, Instantiation, ground
from .inference import (
    CoreItem,
    Inconsistent,
    Satisfiable,
    UnsatCore,
    evaluate,
    modelexpand,
    propagate,
    unsatcore,
)
from .sat import Solver, SolveResult, solve, solve_clauses
from .structure import EngineError, PartialStructure, build_structure

__all__ = [
    "GroundProblem",
    "Instantiation",
    "ground",
    "CoreItem",
    "UnsatCore",
    "Inconsistent",
    "Satisfiable",
    "evaluate",
    "modelexpand",
    "propagate",
    "unsatcore",
    "Solver",
    "SolveResult",
    "solve",
    "solve_clauses",
    "EngineError",
    "PartialStructure",
    "build_structure",
]
