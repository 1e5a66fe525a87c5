import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import WORKED_TENSOR, poly_and_bits, polynomials
from hobo import _kernels
from hobo.evaluator import build_flip_index, contract, delta_flip, pack
from hobo.polynomial import HoboError, Polynomial, evaluate, parse_text, random_instance
from hobo.tensor import HoboTensor, build_hobo_tensor


def flipped(x, j):
    y = list(x)
    y[j] = 1 - y[j]
    return y


def brute_contract(entries, x):
    """Sum over every index tuple, no shortcuts."""
    total = 0.0
    for idx in itertools.product(range(len(x)), repeat=entries.ndim):
        total += entries[idx] * np.prod([x[i] for i in idx])
    return total


class TestContract:
    def test_worked(self):
        t = HoboTensor(3, 3, WORKED_TENSOR)
        assert contract(t, (1, 0, 1)) == -14
        assert contract(t, (1, 0, 1), restrict_support=False) == -14

    @given(st.integers(1, 4), st.integers(1, 3), st.data())
    def test_all_ones_and_zeros(self, n, order, data):
        flat = data.draw(st.lists(st.integers(-9, 9), min_size=n**order, max_size=n**order))
        t = HoboTensor(n, order, np.reshape(flat, (n,) * order))
        assert contract(t, [1] * n) == pytest.approx(sum(flat))
        assert contract(t, [0] * n) == 0

    @given(st.integers(1, 4), st.integers(1, 3), st.data())
    def test_support_restriction_matches_full_sum(self, n, order, data):
        flat = data.draw(st.lists(st.floats(-9, 9), min_size=n**order, max_size=n**order))
        t = HoboTensor(n, order, np.reshape(flat, (n,) * order))
        for x in itertools.product((0, 1), repeat=n):
            full = brute_contract(t.entries, x)
            assert contract(t, x) == pytest.approx(full, abs=1e-9)
            assert contract(t, x, restrict_support=False) == pytest.approx(full, abs=1e-9)

    def test_length_mismatch(self):
        with pytest.raises(HoboError):
            contract(HoboTensor(3, 3, WORKED_TENSOR), (1, 0))

    @given(polynomials(max_vars=8, max_degree=4, integer=False))
    def test_dense_sparse_agreement(self, p):
        t = build_hobo_tensor(p)
        for x in itertools.product((0, 1), repeat=p.num_vars):
            assert contract(t, x) + p.offset == pytest.approx(evaluate(p, x), abs=1e-9)


class TestDeltaFlip:
    def test_worked(self, worked):
        assert delta_flip(worked, (1, 0, 1), 1) == 15

    @given(poly_and_bits(max_vars=8), st.data())
    def test_matches_recompute(self, pair, data):
        p, x = pair
        j = data.draw(st.integers(0, p.num_vars - 1))
        expect = evaluate(p, flipped(x, j)) - evaluate(p, x)
        assert delta_flip(p, x, j) == pytest.approx(expect, abs=1e-9)
        assert delta_flip(p, x, j, build_flip_index(p)) == pytest.approx(expect, abs=1e-9)

    @given(poly_and_bits(max_vars=8), st.data())
    def test_involution(self, pair, data):
        p, x = pair
        j = data.draw(st.integers(0, p.num_vars - 1))
        assert delta_flip(p, x, j) + delta_flip(p, flipped(x, j), j) == pytest.approx(0, abs=1e-9)

    def test_untouched_variable(self):
        p = Polynomial(3, {(0, 1): 4.0})
        assert delta_flip(p, (1, 1, 0), 2) == 0

    def test_out_of_range(self, worked):
        with pytest.raises(HoboError):
            delta_flip(worked, (1, 0, 1), 3)


class TestFlipIndex:
    def test_worked(self, worked):
        idx = build_flip_index(worked)
        assert {t.vars for t in idx[2]} == {(0, 2), (1, 2), (0, 1, 2)}

    def test_constant(self):
        assert build_flip_index(Polynomial(3, {}, 2.0)) == ((), (), ())

    def test_single(self):
        idx = build_flip_index(parse_text("vars 2\n1 x0"))
        assert [t.vars for t in idx[0]] == [(0,)] and idx[1] == ()


@given(poly_and_bits(max_vars=8, integer=False), st.data())
def test_packed_kernel_matches(pair, data):
    p, x = pair
    j = data.draw(st.integers(0, p.num_vars - 1))
    pk = pack(p)
    xa = np.array(x, dtype=np.uint8)
    expect = delta_flip(p, x, j)
    assert pk.delta(xa, j) == pytest.approx(expect, abs=1e-12)
    assert _kernels.flip_delta.py_func(xa, j, pk.ptr, pk.idx, pk.tvars, pk.coefs) == pytest.approx(
        expect, abs=1e-12
    )


def test_delta_consistency_many():
    rng = np.random.default_rng(5)
    polys = [random_instance(10, 4, 30, (-10, 10), seed=s) for s in range(20)]
    for _ in range(2000):
        p = polys[rng.integers(len(polys))]
        x = rng.integers(0, 2, p.num_vars).tolist()
        j = int(rng.integers(p.num_vars))
        d = delta_flip(p, x, j)
        assert abs(d - (evaluate(p, flipped(x, j)) - evaluate(p, x))) <= 1e-9
