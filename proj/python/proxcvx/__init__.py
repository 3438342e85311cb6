"""Proximity operators, prox-convexity certificates and the proximal point algorithm."""

from ._core import (
    InvalidArgument,
    SolverError,
    builtin_names,
    certify,
    evaluate,
    function_json,
    ppa,
    prox,
    suite,
)

__all__ = [
    "InvalidArgument",
    "SolverError",
    "builtin_names",
    "certify",
    "evaluate",
    "function_json",
    "ppa",
    "prox",
    "suite",
]
