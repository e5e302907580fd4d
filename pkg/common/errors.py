# election-matching-solvers/common/errors.py
from __future__ import annotations


class SolverError(RuntimeError):
    """Base class for every error raised by the solver suite."""


class ParseError(SolverError):
    def __init__(self, line: int, message: str):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


class CapExceededError(SolverError):
    """An exponential-time routine was asked to run beyond its configured cap."""

    def __init__(self, what: str, size: int, cap: int):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what} = {size} exceeds cap {cap}")


class WeightOverflowError(SolverError):
    pass


class InfeasibleDemandError(SolverError):
    """Vote realization was handed demands that violate its preconditions."""


class WitnessError(SolverError):
    """A solver witness failed independent re-verification."""
