"""Exhaustive census of choice functions on four items under bounded-rationality models."""
from __future__ import annotations

from .census import CountTable, run_census, verify_implications
from .core import (
    ChoiceFormatError,
    ChoiceFunction,
    GroundSet,
    Permutation,
    TournamentClass,
    canonicalize_greedy,
    canonicalize_min,
    classify_tournament,
    enumerate_normalized,
    is_isomorphic,
    parse_choice,
    parse_compact,
)
from .deciders import DECIDERS, HEADLINE_MODELS, MODELS, ModelVerdict, decide
from .fixtures import load_fixture
from .kernels import BACKEND
from .replay import replay

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ChoiceFormatError",
    "ChoiceFunction",
    "CountTable",
    "DECIDERS",
    "GroundSet",
    "HEADLINE_MODELS",
    "MODELS",
    "ModelVerdict",
    "Permutation",
    "TournamentClass",
    "canonicalize_greedy",
    "canonicalize_min",
    "classify_tournament",
    "decide",
    "enumerate_normalized",
    "is_isomorphic",
    "load_fixture",
    "parse_choice",
    "parse_compact",
    "replay",
    "run_census",
    "verify_implications",
]
