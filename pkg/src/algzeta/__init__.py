"""Exact periodic point counts and zeta functions for zero-dimensional algebraic Z^d-actions."""

from __future__ import annotations

__version__ = "0.1.0"

from .action import ActionSpec, Curve, Principal, count_fixed, entropy, growth_scan, suspend, validate_mixing
from .errors import DomainError, NonIntegerCoefficient
from .factored import Factored, LogValue
from .lattice import Subgroup, enumerate_subgroups
from .specio import load_spec

__all__ = [
    "ActionSpec",
    "Curve",
    "DomainError",
    "Factored",
    "LogValue",
    "NonIntegerCoefficient",
    "Principal",
    "Subgroup",
    "count_fixed",
    "entropy",
    "enumerate_subgroups",
    "growth_scan",
    "load_spec",
    "suspend",
    "validate_mixing",
]
