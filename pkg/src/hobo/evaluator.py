"""Cost evaluation: dense tensor contraction, sparse terms, single-flip deltas."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from hobo import _kernels
from hobo.polynomial import HoboError, Polynomial, Term, as_assignment, evaluate
from hobo.tensor import HoboTensor, QuboMatrix

__all__ = [
    "contract",
    "quadratic_form",
    "evaluate",
    "delta_flip",
    "build_flip_index",
    "PackedPolynomial",
    "pack",
]

FlipIndex = tuple[tuple[Term, ...], ...]


def contract(t: HoboTensor, x, restrict_support: bool = True) -> float:
    """Contract every arm of ``t`` with the binary vector ``x``.

    With ``restrict_support`` only the sub-block indexed by the ones of ``x``
    is summed; entries touching a zero bit contribute nothing anyway.
    """
    bits = as_assignment(x, t.n)
    if restrict_support:
        on = np.flatnonzero(bits)
        if on.size == 0:
            return 0.0
        return float(t.entries[np.ix_(*(on,) * t.order)].sum())
    r = t.entries
    xf = bits.astype(float)
    for _ in range(t.order):
        r = r @ xf
    return float(r)


def quadratic_form(q: QuboMatrix, x) -> float:
    xf = as_assignment(x, q.n).astype(float)
    return float(xf @ q.entries @ xf)


def build_flip_index(p: Polynomial) -> FlipIndex:
    """For each variable, the terms that contain it."""
    buckets: list[list[Term]] = [[] for _ in range(p.num_vars)]
    for term in p.iter_terms():
        for v in term.vars:
            buckets[v].append(term)
    return tuple(tuple(b) for b in buckets)


def delta_flip(p: Polynomial, x, j: int, index: FlipIndex | None = None) -> float:
    """``evaluate(p, x with bit j flipped) - evaluate(p, x)``, touching only terms with ``j``."""
    if not 0 <= j < p.num_vars:
        raise HoboError(f"flip index {j} out of range for num_vars={p.num_vars}")
    bits = as_assignment(x, p.num_vars).tolist()
    terms = index[j] if index is not None else (t for t in p.iter_terms() if j in t.vars)
    s = 0.0
    for vars_, coef in terms:
        for i in vars_:
            if i != j and not bits[i]:
                break
        else:
            s += coef
    return -s if bits[j] else s


@dataclass(frozen=True, eq=False)
class PackedPolynomial:
    """Array layout consumed by the compiled kernels.

    ``tvars`` holds each term's variables padded with -1; ``ptr``/``idx`` is
    a CSR map from variable to the ids of terms containing it.
    """

    n: int
    offset: float
    tvars: np.ndarray
    coefs: np.ndarray
    ptr: np.ndarray
    idx: np.ndarray

    def delta(self, x: np.ndarray, j: int) -> float:
        return _kernels.flip_delta(x, j, self.ptr, self.idx, self.tvars, self.coefs)


def pack(p: Polynomial) -> PackedPolynomial:
    width = max(p.degree, 1)
    tvars = np.full((len(p), width), -1, dtype=np.int64)
    coefs = np.zeros(len(p))
    counts = np.zeros(p.num_vars + 1, dtype=np.int64)
    for t, (key, coef) in enumerate(p.terms.items()):
        tvars[t, : len(key)] = key
        coefs[t] = coef
        for v in key:
            counts[v + 1] += 1
    ptr = np.cumsum(counts)
    idx = np.empty(ptr[-1], dtype=np.int64)
    fill = ptr[:-1].copy()
    for t, key in enumerate(p.terms):
        for v in key:
            idx[fill[v]] = t
            fill[v] += 1
    return PackedPolynomial(p.num_vars, p.offset, tvars, coefs, ptr, idx)
