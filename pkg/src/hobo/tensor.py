"""Dense coefficient tensors for HOBO problems and the QUBO matrix special case.

A degree-``m`` monomial ``x_{i1} ... x_{im}`` (``i1 < ... < im``) is stored in
an order-``k`` tensor at the single index ``(i1, ..., i1, i2, ..., im)``: the
smallest index is repeated until the tuple has ``k`` entries.  Linear terms
therefore sit on the main diagonal and quadratic terms at ``H[i, i, j]``.
Every entry's index tuple is non-decreasing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from hobo.polynomial import HoboError, Polynomial

MAX_DENSE_ENTRIES = 10**8


@dataclass(frozen=True, eq=False)
class HoboTensor:
    n: int
    order: int
    entries: np.ndarray

    def __post_init__(self):
        if self.order < 1:
            raise HoboError("tensor order must be >= 1")
        arr = np.array(self.entries, dtype=float)
        if arr.shape != (self.n,) * self.order:
            raise HoboError(f"entries shape {arr.shape} != {(self.n,) * self.order}")
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.entries.shape

    def __eq__(self, other):
        if not isinstance(other, HoboTensor):
            return NotImplemented
        return (
            self.n == other.n
            and self.order == other.order
            and np.array_equal(self.entries, other.entries)
        )


@dataclass(frozen=True, eq=False)
class QuboMatrix:
    n: int
    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=float)
        if arr.shape != (self.n, self.n):
            raise HoboError(f"QUBO matrix must be {self.n}x{self.n}, got {arr.shape}")
        if np.any(np.tril(arr, -1)):
            raise HoboError("QUBO matrix must be upper triangular")
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)


def canonical_index(vars_: tuple[int, ...], order: int) -> tuple[int, ...]:
    """Tensor slot of a sorted monomial in an order-``order`` tensor."""
    pad = order - len(vars_)
    if pad < 0:
        raise HoboError(f"monomial {vars_} does not fit an order-{order} tensor")
    return (vars_[0],) * pad + tuple(vars_)


def _check_size(n: int, order: int):
    if n**order > MAX_DENSE_ENTRIES:
        raise HoboError(
            f"dense tensor would hold {n}^{order} = {n**order} entries "
            f"(limit {MAX_DENSE_ENTRIES}); use sparse evaluation instead"
        )


def build_hobo_tensor(p: Polynomial, order: int | None = None) -> HoboTensor:
    """Populate the order-``order`` coefficient tensor of ``p``.

    ``order`` defaults to ``max(degree, 1)``.  The offset is not stored; add
    ``p.offset`` to the contraction to recover the full cost.
    """
    if order is None:
        order = max(p.degree, 1)
    if order < 1:
        raise HoboError("tensor order must be >= 1")
    if order < p.degree:
        raise HoboError(f"order {order} is below polynomial degree {p.degree}")
    _check_size(p.num_vars, order)
    entries = np.zeros((p.num_vars,) * order)
    for key, coef in p.terms.items():
        entries[canonical_index(key, order)] = coef
    return HoboTensor(p.num_vars, order, entries)


def tensor_to_polynomial(t: HoboTensor) -> Polynomial:
    """Fold an arbitrary dense tensor back into a canonical polynomial.

    Each nonzero entry contributes its coefficient to the monomial given by
    the set of its indices, so symmetric or scattered layouts import the same
    way as canonical ones.
    """
    idx = np.argwhere(t.entries != 0)
    raw = [(tuple(row), t.entries[tuple(row)]) for row in idx.tolist()]
    return Polynomial.from_terms(raw, num_vars=t.n)


def build_qubo_matrix(p: Polynomial) -> QuboMatrix:
    """Upper-triangular QUBO matrix: linear terms on the diagonal, ``q_ij`` at ``(i, j)``."""
    if p.degree > 2:
        raise HoboError(f"QUBO matrix needs degree <= 2, got {p.degree}")
    q = np.zeros((p.num_vars, p.num_vars))
    for key, coef in p.terms.items():
        i, j = key[0], key[-1]
        q[i, j] = coef
    return QuboMatrix(p.num_vars, q)


def tensor_to_json(t: HoboTensor) -> dict:
    return {"n": t.n, "order": t.order, "entries": t.entries.ravel().tolist()}


def tensor_from_json(obj: Mapping) -> HoboTensor:
    try:
        n, order, flat = int(obj["n"]), int(obj["order"]), obj["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise HoboError(f"malformed tensor JSON: {exc}") from exc
    if order < 1:
        raise HoboError("tensor order must be >= 1")
    if len(flat) != n**order:
        raise HoboError(f"expected {n**order} entries, got {len(flat)}")
    return HoboTensor(n, order, np.asarray(flat, dtype=float).reshape((n,) * order))
