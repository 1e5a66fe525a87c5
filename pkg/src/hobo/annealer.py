"""Simulated annealing over binary assignments with single-bit-flip moves.

Each restart draws from its own generator seeded with ``(seed, restart)``,
so results do not depend on how restarts are scheduled across threads.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from hobo import _kernels
from hobo.evaluator import PackedPolynomial, pack
from hobo.polynomial import Assignment, HoboError, Polynomial, evaluate

# proposals drawn per RNG batch; bounds memory for large n * sweeps
_BATCH_PROPOSALS = 1 << 20


@dataclass(frozen=True)
class AnnealConfig:
    sweeps: int = 1000
    restarts: int = 8
    t_initial: float | None = None  # None -> auto_initial_temperature
    t_final: float = 1e-3
    seed: int = 0
    schedule: str = "geometric"

    def __post_init__(self):
        if self.sweeps < 1:
            raise HoboError("sweeps must be >= 1")
        if self.restarts < 1:
            raise HoboError("restarts must be >= 1")
        if self.t_final <= 0:
            raise HoboError("t_final must be > 0")
        if self.t_initial is not None:
            if self.t_initial <= 0:
                raise HoboError("t_initial must be > 0")
            if self.t_final > self.t_initial:
                raise HoboError("t_final must not exceed t_initial")
        if self.seed < 0:
            raise HoboError("seed must be non-negative")
        if self.schedule != "geometric":
            raise HoboError(f"unknown schedule {self.schedule!r}")


@dataclass(frozen=True)
class AnnealResult:
    best_assignment: Assignment
    best_cost: float
    restart_costs: tuple[float, ...]
    accepted_moves: int
    seed_used: int
    restart_assignments: tuple[Assignment, ...] = field(default=(), repr=False)

    def to_json(self) -> dict:
        return {
            "assignment": list(self.best_assignment),
            "cost": self.best_cost,
            "restart_costs": list(self.restart_costs),
            "seed": self.seed_used,
        }


def acceptance_probability(delta: float, temperature: float) -> float:
    if temperature <= 0:
        raise HoboError("temperature must be > 0")
    if delta <= 0:
        return 1.0
    return math.exp(-delta / temperature)


def auto_initial_temperature(p: Polynomial) -> float:
    """Largest |coefficient| times the degree of ``p``."""
    if not p.terms:
        raise HoboError("constant polynomial has no energy scale")
    return max(abs(c) for c in p.terms.values()) * p.degree


def temperature_schedule(t_initial: float, t_final: float, sweeps: int) -> np.ndarray:
    """Per-sweep temperatures, geometric from ``t_initial`` to ``t_final``."""
    if sweeps == 1:
        return np.array([t_initial])
    alpha = (t_final / t_initial) ** (1.0 / (sweeps - 1))
    return t_initial * alpha ** np.arange(sweeps)


def _run_restart(
    p: Polynomial, pk: PackedPolynomial, temps: np.ndarray, seed: int, restart: int
) -> tuple[np.ndarray, float, int]:
    n = pk.n
    rng = np.random.default_rng([seed, restart])
    x = rng.integers(0, 2, size=n).astype(np.uint8)
    cost = evaluate(p, x)
    best_x = x.copy()
    best_cost = cost
    accepted = 0
    if pk.coefs.size == 0:
        return best_x, best_cost, accepted
    per_batch = max(1, _BATCH_PROPOSALS // n)
    for start in range(0, temps.size, per_batch):
        chunk = temps[start:start + per_batch]
        flips = rng.integers(0, n, size=chunk.size * n)
        uniforms = rng.random(chunk.size * n)
        cost, best_cost, acc = _kernels.anneal_chunk(
            x, cost, best_x, best_cost, flips, uniforms, chunk,
            pk.ptr, pk.idx, pk.tvars, pk.coefs,
        )
        accepted += acc
    return best_x, best_cost, accepted


def anneal(p: Polynomial, cfg: AnnealConfig = AnnealConfig(), workers: int = 1) -> AnnealResult:
    """Minimize ``p`` by simulated annealing with independent restarts.

    The best state visited in any restart wins; ties go to the lower
    restart index.  ``workers`` only changes scheduling, never the result.
    """
    if p.num_vars < 1:
        raise HoboError("cannot anneal a polynomial with no variables")
    if cfg.t_initial is not None:
        t0, t1 = cfg.t_initial, cfg.t_final
    elif p.terms:
        t0 = auto_initial_temperature(p)
        t1 = min(cfg.t_final, t0)
    else:
        t0 = t1 = 1.0
    temps = temperature_schedule(t0, t1, cfg.sweeps)
    pk = pack(p)

    def job(r):
        return _run_restart(p, pk, temps, cfg.seed, r)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            runs = list(pool.map(job, range(cfg.restarts)))
    else:
        runs = [job(r) for r in range(cfg.restarts)]

    assignments = tuple(tuple(int(b) for b in bx) for bx, _, _ in runs)
    # re-evaluate so reported costs carry no drift from incremental updates
    costs = tuple(evaluate(p, a) for a in assignments)
    best = min(range(len(costs)), key=lambda r: (costs[r], r))
    return AnnealResult(
        best_assignment=assignments[best],
        best_cost=costs[best],
        restart_costs=costs,
        accepted_moves=sum(acc for _, _, acc in runs),
        seed_used=cfg.seed,
        restart_assignments=assignments,
    )
