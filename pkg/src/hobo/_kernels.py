"""Compiled inner loops over the packed term layout (see ``evaluator.pack``).

Each dispatcher keeps the plain-Python body on ``.py_func``; the tests run
both and compare.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def flip_delta(x, j, ptr, idx, tvars, coefs):
    """Cost change from flipping bit ``j`` of ``x``."""
    s = 0.0
    for p in range(ptr[j], ptr[j + 1]):
        t = idx[p]
        alive = True
        for d in range(tvars.shape[1]):
            v = tvars[t, d]
            if v < 0:
                break
            if v != j and x[v] == 0:
                alive = False
                break
        if alive:
            s += coefs[t]
    if x[j] == 0:
        return s
    return -s


@njit(cache=True, nogil=True)
def anneal_chunk(x, cost, best_x, best_cost, flips, uniforms, temps, ptr, idx, tvars, coefs):
    """Run ``len(temps)`` sweeps of single-flip Metropolis moves in place.

    Sweep ``s`` consumes ``flips[s*n:(s+1)*n]`` and the matching uniforms at
    temperature ``temps[s]``.  Returns ``(cost, best_cost, accepted)``.
    """
    n = x.shape[0]
    accepted = 0
    for s in range(temps.shape[0]):
        t = temps[s]
        for k in range(s * n, (s + 1) * n):
            j = flips[k]
            d = flip_delta(x, j, ptr, idx, tvars, coefs)
            if d <= 0.0 or uniforms[k] < np.exp(-d / t):
                x[j] = 1 - x[j]
                cost += d
                accepted += 1
                if cost < best_cost:
                    best_cost = cost
                    best_x[:] = x
    return cost, best_cost, accepted


@njit(cache=True, nogil=True)
def _low_bit(i):
    b = 0
    while (i & 1) == 0:
        i >>= 1
        b += 1
    return b


@njit(cache=True, nogil=True)
def gray_min(n, offset, ptr, idx, tvars, coefs):
    """Minimum cost over all ``2**n`` assignments, by Gray-code walk."""
    x = np.zeros(n, dtype=np.uint8)
    cost = offset
    best = cost
    for i in range(1, 1 << n):
        v = n - 1 - _low_bit(i)
        cost += flip_delta(x, v, ptr, idx, tvars, coefs)
        x[v] = 1 - x[v]
        if cost < best:
            best = cost
    return best


@njit(cache=True, nogil=True)
def gray_first_below(n, offset, threshold, ptr, idx, tvars, coefs):
    """Smallest lexicographic code (bit 0 most significant) with cost <= threshold, or -1."""
    x = np.zeros(n, dtype=np.uint8)
    cost = offset
    code = 0
    found = -1
    if cost <= threshold:
        return 0
    for i in range(1, 1 << n):
        b = _low_bit(i)
        v = n - 1 - b
        cost += flip_delta(x, v, ptr, idx, tvars, coefs)
        x[v] = 1 - x[v]
        code ^= 1 << b
        if cost <= threshold and (found < 0 or code < found):
            found = code
    return found


@njit(cache=True, nogil=True)
def gray_landscape(n, offset, ptr, idx, tvars, coefs, out):
    """Fill ``out[code]`` with the cost of every assignment along a Gray-code walk."""
    x = np.zeros(n, dtype=np.uint8)
    cost = offset
    code = 0
    out[0] = cost
    for i in range(1, 1 << n):
        b = _low_bit(i)
        v = n - 1 - b
        cost += flip_delta(x, v, ptr, idx, tvars, coefs)
        x[v] = 1 - x[v]
        code ^= 1 << b
        out[code] = cost
