"""Exact undulation invariant of plane quartics.

Thin wrapper over the C++ core: invariant evaluation, graded ideal
component dimensions, and the tabulated-vs-pipeline cross validation.
"""

import os

try:
    from ._undulation import (  # noqa: F401
        UndulationError,
        component_dim,
        default_primes,
        gen_random_curve,
        gen_undulation_curve,
        get_data_path,
        invariant,
        refined_triangle,
        set_data_path,
        tangency_check,
        verify,
    )
except ImportError:  # extension on sys.path instead of inside the package
    from _undulation import (  # noqa: F401
        UndulationError,
        component_dim,
        default_primes,
        gen_random_curve,
        gen_undulation_curve,
        get_data_path,
        invariant,
        refined_triangle,
        set_data_path,
        tangency_check,
        verify,
    )

def _locate_data() -> None:
    if os.environ.get("UNDULATION_DATA"):
        return
    here = os.path.dirname(__file__)
    packaged = os.path.join(here, "data", "quartic_matrix_21.txt")
    if os.path.exists(packaged):
        set_data_path(packaged)

_locate_data()

__all__ = [
    "UndulationError",
    "component_dim",
    "default_primes",
    "gen_random_curve",
    "gen_undulation_curve",
    "get_data_path",
    "invariant",
    "refined_triangle",
    "set_data_path",
    "tangency_check",
    "verify",
]
