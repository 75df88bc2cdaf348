import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bellsim.bell import (
    BellExpression,
    brick_wall_patch,
    build_chain_expression,
    build_chsh_expression,
    build_gisin_expression,
    build_honeycomb_expression,
    build_mermin_expression,
    build_svetlichny_expression,
    honeycomb_couplings,
    k_nonlocal_bound,
    lhv_bound_bruteforce,
)
from bellsim.errors import CapacityError


def test_k_bound_examples():
    assert k_nonlocal_bound(2, 1) == -1.0
    assert k_nonlocal_bound(24, 23) == -2048.0
    assert k_nonlocal_bound(3, 2) == pytest.approx(-np.sqrt(2))


def test_k_bound_range():
    with pytest.raises(ValueError):
        k_nonlocal_bound(3, 0)
    with pytest.raises(ValueError):
        k_nonlocal_bound(3, 3)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 24))
def test_k_bounds_monotone_and_above_quantum(n):
    bounds = [k_nonlocal_bound(n, k) for k in range(1, n)]
    assert all(b1 >= b2 for b1, b2 in zip(bounds, bounds[1:]))
    assert bounds[-1] > -(2 ** ((n - 1) / 2))


def test_chsh_bruteforce():
    assert lhv_bound_bruteforce(build_chsh_expression()[0]) == -2.0


def test_gisin_bruteforce():
    assert lhv_bound_bruteforce(build_gisin_expression()[0]) == -6.0


def test_honeycomb_patch_bruteforce():
    lat = brick_wall_patch(2, 3)
    expr, _ = build_honeycomb_expression(lat, 0.7)
    expected = -2.0 * sum(honeycomb_couplings(lat, 0.7))
    assert lhv_bound_bruteforce(expr) == pytest.approx(expected, abs=1e-12)
    assert expr.classical_bound == pytest.approx(expected, abs=1e-12)


def test_chain_bruteforce():
    expr, _ = build_chain_expression(3, 2.0, 0.95)
    assert lhv_bound_bruteforce(expr) == pytest.approx(-16.0, abs=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_multipartite_bruteforce(n):
    for builder in (build_svetlichny_expression, build_mermin_expression):
        expr, _ = builder(n)
        assert lhv_bound_bruteforce(expr) == pytest.approx(
            expr.classical_bound, abs=1e-12
        )


def test_bruteforce_capacity():
    expr = BellExpression(13, (2,) * 13, {tuple([0] * 13): 1.0}, -1.0)
    with pytest.raises(CapacityError):
        lhv_bound_bruteforce(expr)
