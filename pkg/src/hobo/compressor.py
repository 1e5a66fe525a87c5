"""Low-rank compression of coefficient tensors through their mode-1 unfolding.

An order-``k`` tensor over ``n`` variables is reshaped to an
``n x n**(k-1)`` matrix (row = first index, trailing indices row-major),
factored by SVD, and truncated to a chosen rank.  Costs can then be computed
from the factors without rebuilding the tensor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from hobo.polynomial import HoboError, as_assignment
from hobo.tensor import HoboTensor

_EPS = np.finfo(float).eps


@dataclass(frozen=True, eq=False)
class SvdFactors:
    rows: int
    cols: int
    singular_values: np.ndarray
    left_vectors: np.ndarray  # rows x r, orthonormal columns
    right_vectors: np.ndarray  # cols x r, orthonormal columns
    source_shape: tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.singular_values.size

    def reconstruct(self) -> np.ndarray:
        return (self.left_vectors * self.singular_values) @ self.right_vectors.T


def unfold_mode1(t: HoboTensor) -> np.ndarray:
    if t.order < 2:
        raise HoboError("unfolding needs a tensor of order >= 2")
    return t.entries.reshape(t.n, -1).copy()


def refold(m: np.ndarray, shape: tuple[int, ...]) -> np.ndarray:
    return np.asarray(m).reshape(shape)


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pair up ``0..n-1`` into rounds of disjoint pairs, covering every pair once."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        left, right = [], []
        for a in range(m // 2):
            i, j = players[a], players[m - 1 - a]
            if i < n and j < n:
                left.append(min(i, j))
                right.append(max(i, j))
        rounds.append((np.array(left, dtype=int), np.array(right, dtype=int)))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def _jacobi(a: np.ndarray, max_sweeps: int) -> tuple[np.ndarray, np.ndarray]:
    """One-sided (Hestenes) Jacobi: rotate columns of ``a`` until mutually orthogonal.

    Returns ``(a @ v, v)`` with ``v`` orthogonal.  Each round applies a set
    of disjoint plane rotations at once.
    """
    rows, cols = a.shape
    v = np.eye(cols)
    tol = _EPS * rows
    rounds = _round_robin(cols)
    for _ in range(max_sweeps):
        rotated = False
        for i, j in rounds:
            if i.size == 0:
                continue
            ai, aj = a[:, i], a[:, j]
            alpha = np.einsum("rk,rk->k", ai, ai)
            beta = np.einsum("rk,rk->k", aj, aj)
            gamma = np.einsum("rk,rk->k", ai, aj)
            active = np.abs(gamma) > tol * np.sqrt(alpha * beta)
            if not active.any():
                continue
            i, j = i[active], j[active]
            alpha, beta, gamma = alpha[active], beta[active], gamma[active]
            with np.errstate(over="ignore"):
                zeta = (beta - alpha) / (2.0 * gamma)
                t = np.where(zeta >= 0, 1.0, -1.0) / (np.abs(zeta) + np.hypot(1.0, zeta))
            if not t.any():
                continue
            rotated = True
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = c * t
            for mat in (a, v):
                ci, cj = mat[:, i].copy(), mat[:, j]
                mat[:, i] = c * ci - s * cj
                mat[:, j] = s * ci + c * cj
        if not rotated:
            break
    return a, v


def _complete_basis(q: np.ndarray, missing: np.ndarray):
    """Replace columns ``missing`` of ``q`` by unit vectors orthogonal to the rest."""
    rows = q.shape[0]
    keep = [k for k in range(q.shape[1]) if k not in set(missing.tolist())]
    basis = [q[:, k] for k in keep]
    candidates = iter(range(rows))
    for k in missing:
        while True:
            e = np.zeros(rows)
            e[next(candidates)] = 1.0
            for _ in range(2):
                for b in basis:
                    e -= (b @ e) * b
            norm = np.linalg.norm(e)
            if norm > 0.5:
                e /= norm
                break
        q[:, k] = e
        basis.append(e)


def svd(m, max_sweeps: int = 60) -> SvdFactors:
    """Thin SVD ``m = U diag(sigma) V^T`` with ``sigma`` sorted non-increasing."""
    a = np.array(m, dtype=float)
    if a.ndim != 2:
        raise HoboError("svd expects a 2-D matrix")
    if not np.all(np.isfinite(a)):
        raise HoboError("svd input contains non-finite entries")
    rows, cols = a.shape
    flipped = rows < cols
    work = a.T.copy() if flipped else a
    r = min(rows, cols)

    w, v = _jacobi(work, max_sweeps)
    sigma = np.linalg.norm(w, axis=0)
    order = np.argsort(-sigma, kind="stable")
    sigma, w, v = sigma[order], w[:, order], v[:, order]

    q = np.zeros_like(w)
    floor = _EPS * max(rows, cols) * (sigma[0] if r else 0.0)
    nz = sigma > floor
    q[:, nz] = w[:, nz] / sigma[nz]
    if not nz.all():
        _complete_basis(q, np.flatnonzero(~nz))

    left, right = (v, q) if flipped else (q, v)
    return SvdFactors(rows, cols, sigma, left, right, (rows, cols))


def tensor_svd(t: HoboTensor) -> SvdFactors:
    f = svd(unfold_mode1(t))
    return SvdFactors(f.rows, f.cols, f.singular_values, f.left_vectors,
                      f.right_vectors, t.shape)


def truncate(f: SvdFactors, rank: int) -> SvdFactors:
    if not 1 <= rank <= f.rank:
        raise HoboError(f"rank must be in 1..{f.rank}, got {rank}")
    return SvdFactors(
        f.rows, f.cols,
        f.singular_values[:rank].copy(),
        f.left_vectors[:, :rank].copy(),
        f.right_vectors[:, :rank].copy(),
        f.source_shape,
    )


def rank_for_threshold(f: SvdFactors, tau: float) -> int:
    """Number of singular values above ``tau`` times the largest (at least 1)."""
    if f.rank == 0:
        raise HoboError("no singular values")
    return max(1, int(np.count_nonzero(f.singular_values > tau * f.singular_values[0])))


def tail_error(f: SvdFactors, rank: int) -> float:
    """Frobenius error of the rank-``rank`` truncation predicted by the dropped values."""
    return float(math.sqrt(np.sum(f.singular_values[rank:] ** 2)))


def compressed_cost(f: SvdFactors, x) -> float:
    """Contract the factored tensor with ``x`` on every arm.

    Each right vector is reshaped to the trailing ``k - 1`` modes and
    contracted one mode at a time.
    """
    shape = f.source_shape
    n, k = shape[0], len(shape)
    if k < 2 or any(s != n for s in shape):
        raise HoboError(f"factors do not come from a cubical tensor: {shape}")
    xf = as_assignment(x, n).astype(float)
    left = xf @ f.left_vectors
    right = f.right_vectors.T.reshape((f.rank,) + shape[1:])
    for _ in range(k - 1):
        right = right @ xf
    return float(np.sum(f.singular_values * left * right))


def compression_report(t: HoboTensor, rank: int) -> dict:
    f = truncate(tensor_svd(t), rank)
    dense = unfold_mode1(t)
    err = float(np.linalg.norm(dense - f.reconstruct()))
    norm = float(np.linalg.norm(dense))
    return {
        "rank": rank,
        "stored_values_dense": int(t.entries.size),
        "stored_values_factored": rank * (f.rows + f.cols + 1),
        "frobenius_error": err,
        "relative_error": err / norm if norm > 0 else 0.0,
    }


def factors_to_json(f: SvdFactors) -> dict:
    return {
        "sigma": f.singular_values.tolist(),
        "u": f.left_vectors.tolist(),
        "v": f.right_vectors.tolist(),
        "source_shape": list(f.source_shape),
    }


def factors_from_json(obj: Mapping) -> SvdFactors:
    try:
        sigma = np.asarray(obj["sigma"], dtype=float)
        shape = tuple(int(s) for s in obj["source_shape"])
        u = np.asarray(obj["u"], dtype=float).reshape(shape[0], sigma.size)
        rows = shape[0]
        cols = int(np.prod(shape[1:])) if len(shape) > 1 else 1
        v = np.asarray(obj["v"], dtype=float).reshape(cols, sigma.size)
    except (KeyError, TypeError, ValueError) as exc:
        raise HoboError(f"malformed factor JSON: {exc}") from exc
    return SvdFactors(rows, cols, sigma, u, v, shape)
