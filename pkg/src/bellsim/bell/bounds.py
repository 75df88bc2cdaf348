"""Classical and k-nonlocal bounds, and the brute-force LHV oracle."""

from __future__ import annotations

import math

import numpy as np

from ..errors import CapacityError
from .expressions import BellExpression

BRUTEFORCE_BITS_LIMIT = 24
_CHUNK = 1 << 18


def k_nonlocal_bound(n: int, k: int) -> float:
    """Energy threshold -2^((n - ceil(n/k)) / 2) for k-producible correlations."""
    if not (1 <= k <= n - 1):
        raise ValueError(f"k must lie in 1..{n - 1}, got {k}")
    return -(2.0 ** ((n - math.ceil(n / k)) / 2.0))


def lhv_bound_bruteforce(expr: BellExpression) -> float:
    """Exact minimum over all deterministic local strategies.

    A strategy assigns one sign per (party, setting); strategies are encoded
    as integers whose bit (offset_party + setting) is the sign exponent, and
    each correlator's value is (-1)^popcount(strategy & term_mask).
    Enumeration is chunked so memory stays bounded.
    """
    bits = expr.strategy_bits()
    if bits > BRUTEFORCE_BITS_LIMIT:
        raise CapacityError(
            f"strategy space needs {bits} sign bits; enumeration supports <= {BRUTEFORCE_BITS_LIMIT}"
        )
    offsets = np.cumsum([0] + list(expr.settings_per_party[:-1]))
    masks = []
    coeffs = []
    for key, coeff in expr.coefficients.items():
        mask = 0
        for party, x in enumerate(key):
            if x is not None:
                mask |= 1 << int(offsets[party] + x)
        masks.append(mask)
        coeffs.append(coeff)
    masks = np.array(masks, dtype=np.int64)
    coeffs = np.array(coeffs)

    total = 1 << bits
    best = np.inf
    for start in range(0, total, _CHUNK):
        strategies = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        values = np.zeros(len(strategies))
        for mask, coeff in zip(masks, coeffs):
            signs = 1.0 - 2.0 * (np.bitwise_count(strategies & mask) & 1)
            values += coeff * signs
        best = min(best, float(values.min()))
    return best
