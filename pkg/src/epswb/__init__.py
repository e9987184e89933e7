from .ordinal import (
    Cmp,
    CoefficientOverflow,
    O,
    OMEGA,
    ONE,
    Ord,
    OrdinalError,
    ParseError,
    ZERO,
    add,
    cmp,
    eps,
    eps_index,
    is_epsilon,
    is_limit,
    is_principal,
    lim_depth_of_index,
    mul,
    nat,
    next_epsilon,
    omega_pow,
    parse,
    pred_if_succ,
    succ,
    to_str,
)

__version__ = "0.1.0"

__all__ = [
    "Cmp",
    "CoefficientOverflow",
    "O",
    "OMEGA",
    "ONE",
    "Ord",
    "OrdinalError",
    "ParseError",
    "ZERO",
    "add",
    "cmp",
    "eps",
    "eps_index",
    "is_epsilon",
    "is_limit",
    "is_principal",
    "lim_depth_of_index",
    "mul",
    "nat",
    "next_epsilon",
    "omega_pow",
    "parse",
    "pred_if_succ",
    "succ",
    "to_str",
]
