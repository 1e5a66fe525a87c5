"""Exhaustive minimization by Gray-code enumeration.

Assignments are ordered lexicographically with ``x_0`` as the most
significant bit, so the code of ``(x_0, ..., x_{n-1})`` is
``sum(x_i << (n - 1 - i))``.  The walk flips one bit per step and updates
the cost with a single-flip delta.
"""

from __future__ import annotations

import numpy as np

from hobo import _kernels
from hobo.evaluator import pack
from hobo.polynomial import Assignment, HoboError, Polynomial, evaluate

MAX_ENUMERATE_VARS = 24
MAX_LANDSCAPE_VARS = 16
TIE_TOL = 1e-9


def code_to_assignment(code: int, n: int) -> Assignment:
    return tuple((code >> (n - 1 - i)) & 1 for i in range(n))


def brute_force_min(p: Polynomial) -> tuple[Assignment, float]:
    """Lexicographically smallest minimizer over all ``2**n`` assignments.

    Costs within ``TIE_TOL`` of the minimum count as ties, which absorbs the
    rounding picked up by incremental updates.  The returned cost is
    recomputed directly for the chosen assignment.
    """
    n = p.num_vars
    if n > MAX_ENUMERATE_VARS:
        raise HoboError(f"brute force limited to {MAX_ENUMERATE_VARS} variables, got {n}")
    pk = pack(p)
    best = _kernels.gray_min(n, p.offset, pk.ptr, pk.idx, pk.tvars, pk.coefs)
    code = _kernels.gray_first_below(
        n, p.offset, best + TIE_TOL, pk.ptr, pk.idx, pk.tvars, pk.coefs
    )
    x = code_to_assignment(code, n)
    return x, evaluate(p, x)


def landscape_costs(p: Polynomial) -> np.ndarray:
    """Costs of all assignments as an array indexed by lexicographic code."""
    n = p.num_vars
    if n > MAX_LANDSCAPE_VARS:
        raise HoboError(f"landscape limited to {MAX_LANDSCAPE_VARS} variables, got {n}")
    pk = pack(p)
    out = np.empty(1 << n)
    _kernels.gray_landscape(n, p.offset, pk.ptr, pk.idx, pk.tvars, pk.coefs, out)
    return out


def full_landscape(p: Polynomial) -> list[tuple[Assignment, float]]:
    costs = landscape_costs(p)
    n = p.num_vars
    return [(code_to_assignment(c, n), float(v)) for c, v in enumerate(costs)]
