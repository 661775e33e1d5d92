"""Minimum spanning tree with conflicts: kernel search solver."""

from ._core import (
    InfeasibleError,
    InputError,
    Instance,
    KsParams,
    check_solution,
    default_params,
    from_native,
    generate,
    load,
    mst,
    preprocess,
    solve,
    solve_lp,
    solve_restricted,
)

__all__ = [
    "InfeasibleError",
    "InputError",
    "Instance",
    "KsParams",
    "check_solution",
    "default_params",
    "from_native",
    "generate",
    "load",
    "mst",
    "preprocess",
    "solve",
    "solve_lp",
    "solve_restricted",
]
