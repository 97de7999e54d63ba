"""p-Riccati solver and central differential operator factorization over F_q(x)."""

from ._core import (
    Curve,
    Element,
    IncompleteSearchError,
    InputError,
    PrecisionError,
    PriccatiError,
    UnsupportedError,
    derive,
    frobenius,
    is_reducible,
    is_solution,
    log_derivative,
    reconstruct_factor,
    riccati_map,
    right_divides,
    run_cli,
    solve,
    vdp_extract,
)

__all__ = [
    "Curve",
    "Element",
    "IncompleteSearchError",
    "InputError",
    "PrecisionError",
    "PriccatiError",
    "UnsupportedError",
    "derive",
    "frobenius",
    "is_reducible",
    "is_solution",
    "log_derivative",
    "reconstruct_factor",
    "riccati_map",
    "right_divides",
    "run_cli",
    "solve",
    "vdp_extract",
]
