"""Owicki-Gries checker and weak-fairness oracle for guarded-command programs."""

from ._core import (
    ContractError,
    Error,
    EvalError,
    LabelError,
    ParseError,
    Program,
    ResolveError,
    ResourceError,
    check,
    equivalent,
    is_valid,
    leadsto,
    load,
    obligations,
    oracle,
    parse,
    split,
)

__all__ = [
    "ContractError", "Error", "EvalError", "LabelError", "ParseError", "Program", "ResolveError",
    "ResourceError", "check", "equivalent", "is_valid", "leadsto", "load", "obligations", "oracle",
    "parse", "split",
]
