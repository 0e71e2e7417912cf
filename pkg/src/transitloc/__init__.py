"""Exact location of a service facility together with a rapid transit line under L1 travel."""

from .model import DemandPoint, Instance, Segment, Solution, make_instance, validate_instance
from .objective import evaluate
from .oracle import brute_force
from .solver import solve

__all__ = [
    "DemandPoint",
    "Instance",
    "Segment",
    "Solution",
    "brute_force",
    "evaluate",
    "make_instance",
    "solve",
    "validate_instance",
]
