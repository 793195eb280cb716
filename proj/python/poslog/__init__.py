"""Exact finite-model workbench for modal logic over posets."""

from ._poslog import (
    InputError,
    ResourceError,
    beta,
    check_exact_squares,
    check_weak_pullbacks,
    convex_powerset,
    dunn_counterexample,
    eval_formula,
    liftings,
    nstep_injective,
    parse_formula,
    posetify,
    translate,
    verify_dualities,
)

__all__ = [
    "InputError",
    "ResourceError",
    "beta",
    "check_exact_squares",
    "check_weak_pullbacks",
    "convex_powerset",
    "dunn_counterexample",
    "eval_formula",
    "liftings",
    "nstep_injective",
    "parse_formula",
    "posetify",
    "translate",
    "verify_dualities",
]
