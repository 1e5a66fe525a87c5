import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import polynomials
from hobo import _kernels
from hobo.annealer import (
    AnnealConfig,
    acceptance_probability,
    anneal,
    auto_initial_temperature,
    temperature_schedule,
)
from hobo.evaluator import pack
from hobo.oracle import brute_force_min
from hobo.polynomial import HoboError, Polynomial, evaluate, parse_text, random_instance


class TestAcceptanceProbability:
    def test_zero_delta(self):
        assert acceptance_probability(0.0, 3.7) == 1.0

    def test_delta_equals_temperature(self):
        assert acceptance_probability(2.5, 2.5) == pytest.approx(0.367879, abs=1e-6)

    def test_improving_move_clamped(self):
        assert acceptance_probability(-5.0, 0.1) == 1.0

    @pytest.mark.parametrize("t", [0.0, -1.0])
    def test_bad_temperature(self, t):
        with pytest.raises(HoboError):
            acceptance_probability(1.0, t)

    @given(st.floats(-50, 50), st.floats(-50, 50), st.floats(1e-3, 100))
    def test_non_increasing_in_delta(self, d1, d2, t):
        lo, hi = sorted((d1, d2))
        assert acceptance_probability(lo, t) >= acceptance_probability(hi, t)

    @given(st.floats(1e-3, 50), st.floats(1e-3, 100), st.floats(1e-3, 100))
    def test_non_decreasing_in_temperature(self, d, t1, t2):
        lo, hi = sorted((t1, t2))
        assert acceptance_probability(d, lo) <= acceptance_probability(d, hi)


class TestAutoTemperature:
    def test_worked(self, worked):
        assert auto_initial_temperature(worked) == 30

    def test_single(self):
        assert auto_initial_temperature(parse_text("1 x0")) == 1

    def test_uniform_magnitude(self):
        p = parse_text("2.5 x0 x1 x2 x3\n-2.5 x1\n2.5 x0 x2")
        assert auto_initial_temperature(p) == 10

    def test_constant(self):
        with pytest.raises(HoboError):
            auto_initial_temperature(Polynomial(2, {}, 4.0))


def test_schedule_endpoints():
    temps = temperature_schedule(30.0, 1e-3, 50)
    assert temps[0] == 30.0
    assert temps[-1] == pytest.approx(1e-3, rel=1e-12)
    ratios = temps[1:] / temps[:-1]
    assert np.allclose(ratios, ratios[0])
    assert temperature_schedule(5.0, 1.0, 1).tolist() == [5.0]


@pytest.mark.parametrize(
    "kw", [dict(sweeps=0), dict(restarts=0), dict(t_final=0), dict(t_initial=-1),
           dict(t_initial=1, t_final=2), dict(seed=-1), dict(schedule="linear")],
)
def test_config_validation(kw):
    with pytest.raises(HoboError):
        AnnealConfig(**kw)


def test_worked_optimum(worked):
    res = anneal(worked, AnnealConfig(sweeps=1000, restarts=8, seed=42))
    assert res.best_cost == -14
    assert res.best_assignment == (1, 0, 1)
    assert res.seed_used == 42


def test_constant_polynomial():
    res = anneal(Polynomial(3, {}, 5.0), AnnealConfig(sweeps=10, restarts=2))
    assert res.best_cost == 5
    assert res.accepted_moves == 0


def test_no_variables():
    with pytest.raises(HoboError):
        anneal(Polynomial(0, {}, 1.0))


def test_single_sweep(worked):
    res = anneal(worked, AnnealConfig(sweeps=1, restarts=3, seed=1))
    assert res.best_cost == evaluate(worked, res.best_assignment)


def test_deterministic_across_workers():
    p = random_instance(14, 3, 40, (-5, 5), seed=11)
    cfg = AnnealConfig(sweeps=300, restarts=6, seed=9)
    a = anneal(p, cfg)
    assert anneal(p, cfg) == a
    assert anneal(p, cfg, workers=4) == a
    assert anneal(p, AnnealConfig(sweeps=300, restarts=6, seed=10)) != a


@settings(max_examples=25)
@given(polynomials(max_vars=7, integer=False), st.integers(0, 1000))
def test_result_invariants(p, seed):
    res = anneal(p, AnnealConfig(sweeps=40, restarts=3, seed=seed))
    assert res.best_cost == min(res.restart_costs)
    assert res.best_cost == evaluate(p, res.best_assignment)
    first = res.restart_costs.index(res.best_cost)
    assert res.best_assignment == res.restart_assignments[first]
    assert brute_force_min(p)[1] <= res.best_cost + 1e-9


def replay_chain(p, x, flips, uniforms, temps):
    """Reference Metropolis chain; returns (final x, costs of every visited state, accepted)."""
    n = p.num_vars
    x = list(x)
    visited = [evaluate(p, x)]
    accepted = 0
    for s, t in enumerate(temps):
        for k in range(s * n, (s + 1) * n):
            j = int(flips[k])
            y = list(x)
            y[j] = 1 - y[j]
            d = evaluate(p, y) - evaluate(p, x)
            if d <= 0 or uniforms[k] < acceptance_probability(d, t):
                x = y
                accepted += 1
                visited.append(evaluate(p, x))
    return x, visited, accepted


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("compiled", [True, False])
def test_chain_matches_reference(seed, compiled):
    p = random_instance(6, 3, 12, (-4, 4), seed=seed, integer=True)
    pk = pack(p)
    rng = np.random.default_rng(seed)
    temps = temperature_schedule(12.0, 0.05, 30)
    flips = rng.integers(0, 6, size=temps.size * 6)
    uniforms = rng.random(temps.size * 6)
    x0 = rng.integers(0, 2, 6).astype(np.uint8)

    x, best_x = x0.copy(), x0.copy()
    c0 = evaluate(p, x0)
    fn = _kernels.anneal_chunk if compiled else _kernels.anneal_chunk.py_func
    cost, best, acc = fn(x, c0, best_x, c0, flips, uniforms, temps,
                         pk.ptr, pk.idx, pk.tvars, pk.coefs)

    ref_x, visited, ref_acc = replay_chain(p, x0, flips, uniforms, temps)
    assert x.tolist() == ref_x
    assert acc == ref_acc
    assert cost == visited[-1]
    assert best == min(visited)
    assert evaluate(p, best_x) == best
