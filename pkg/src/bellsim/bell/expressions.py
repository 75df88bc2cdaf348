"""Bell expressions and measurement assignments.

A BellExpression stores correlator coefficients sparsely: each key is a
length-N tuple whose entry for party i is either a setting index or None when
the party does not appear in that correlator.  Svetlichny/Mermin use full
correlators (no None); the lattice and chain models are sums of two-body
correlators.

A MeasurementAssignment gives each party, per setting, a traceless +-1-valued
qubit observable as a unit 3-vector of (X, Y, Z) Pauli coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import CapacityError
from .lattice import HoneycombLattice

TermKey = tuple  # length num_parties, entries int | None


@dataclass
class BellExpression:
    num_parties: int
    settings_per_party: tuple[int, ...]
    coefficients: dict[TermKey, float]
    classical_bound: float

    def __post_init__(self):
        if len(self.settings_per_party) != self.num_parties:
            raise ValueError("settings_per_party must list one count per party")
        for key, coeff in self.coefficients.items():
            if len(key) != self.num_parties:
                raise ValueError(f"term key {key} has wrong arity")
            if all(x is None for x in key):
                raise ValueError("term key touching no party")
            for party, x in enumerate(key):
                if x is not None and not (0 <= x < self.settings_per_party[party]):
                    raise ValueError(f"setting {x} out of range for party {party}")
            if not np.isfinite(coeff):
                raise ValueError("non-finite coefficient")

    @property
    def max_settings(self) -> int:
        return max(self.settings_per_party)

    def strategy_bits(self) -> int:
        """Sign bits of one deterministic local strategy (sum of setting counts)."""
        return int(sum(self.settings_per_party))

    def evaluate_deterministic(self, outcomes: list[list[int]]) -> float:
        """Value under fixed outcomes[party][setting] in {-1, +1}."""
        total = 0.0
        for key, coeff in self.coefficients.items():
            prod = 1
            for party, x in enumerate(key):
                if x is not None:
                    prod *= outcomes[party][x]
            total += coeff * prod
        return total


@dataclass
class MeasurementAssignment:
    """observables[party][setting] = unit (x, y, z) Pauli coefficient vector."""

    observables: list[list[np.ndarray]]

    def __post_init__(self):
        for party, obs in enumerate(self.observables):
            for k, vec in enumerate(obs):
                vec = np.asarray(vec, dtype=float)
                if vec.shape != (3,):
                    raise ValueError(f"observable ({party},{k}) is not a 3-vector")
                if abs(np.linalg.norm(vec) - 1.0) > 1e-12:
                    raise ValueError(
                        f"observable ({party},{k}) has norm {np.linalg.norm(vec)}; "
                        "unit norm is required for a +-1 spectrum"
                    )
                self.observables[party][k] = vec

    def matrix(self, party: int, setting: int) -> np.ndarray:
        x, y, z = self.observables[party][setting]
        return np.array([[z, x - 1j * y], [x + 1j * y, -z]], dtype=np.complex128)


# ---------------------------------------------------------------------------
# two-party building blocks

#: CHSH correlator signs (-1)^(x*y) keyed by (x, y)
CHSH_SIGNS = {(0, 0): 1.0, (0, 1): 1.0, (1, 0): 1.0, (1, 1): -1.0}

#: Gisin elegant-inequality signs, keyed (x setting of the 4-setting party,
#: y setting of the 3-setting party); the y=2 row is the one scaled by delta.
GISIN_SIGNS = {
    (0, 0): 1.0, (1, 0): 1.0, (2, 0): -1.0, (3, 0): -1.0,
    (0, 1): 1.0, (1, 1): -1.0, (2, 1): 1.0, (3, 1): -1.0,
    (0, 2): 1.0, (1, 2): -1.0, (2, 2): -1.0, (3, 2): 1.0,
}

_SQ3 = 1.0 / np.sqrt(3.0)
TETRAHEDRON = [
    np.array([1, 1, 1]) * _SQ3,
    np.array([1, -1, -1]) * _SQ3,
    np.array([-1, 1, -1]) * _SQ3,
    np.array([-1, -1, 1]) * _SQ3,
]
ORTHOGONAL_XYZ = [np.array([1.0, 0, 0]), np.array([0, 1.0, 0]), np.array([0, 0, 1.0])]

_SQ2 = 1.0 / np.sqrt(2.0)
HONEYCOMB_A_SETTINGS = [np.array([0, 0, 1.0]), np.array([1.0, 0, 0])]  # Z, X
HONEYCOMB_B_SETTINGS = [np.array([_SQ2, 0, _SQ2]), np.array([-_SQ2, 0, _SQ2])]


def build_chsh_expression() -> tuple[BellExpression, MeasurementAssignment]:
    """Two-party CHSH (>= -2 form) with the honeycomb measurement settings."""
    coeffs = {(x, y): s for (x, y), s in CHSH_SIGNS.items()}
    expr = BellExpression(2, (2, 2), coeffs, classical_bound=-2.0)
    meas = MeasurementAssignment([list(HONEYCOMB_A_SETTINGS), list(HONEYCOMB_B_SETTINGS)])
    return expr, meas


def build_gisin_expression(delta: float = 1.0) -> tuple[BellExpression, MeasurementAssignment]:
    """Gisin's elegant inequality (delta=1) or its delta-modified variant.

    Classical bound -(2|d| + |d+2| + |d-2|), which is -6 at delta=1.
    """
    coeffs = {}
    for (x, y), s in GISIN_SIGNS.items():
        coeffs[(x, y)] = s * (delta if y == 2 else 1.0)
    bound = -(2 * abs(delta) + abs(delta + 2) + abs(delta - 2))
    expr = BellExpression(2, (4, 3), coeffs, classical_bound=bound)
    meas = MeasurementAssignment([list(TETRAHEDRON), list(ORTHOGONAL_XYZ)])
    return expr, meas


# ---------------------------------------------------------------------------
# lattice / chain models


def honeycomb_couplings(lattice: HoneycombLattice, eps: float) -> list[float]:
    """Per-link weight J: 1+eps on r links, (1-eps)/2 on b/g links."""
    if not (-1.0 <= eps <= 1.0):
        raise ValueError(f"eps must lie in [-1, 1], got {eps}")
    return [(1.0 + eps) if color == "r" else (1.0 - eps) / 2.0 for _, _, color in lattice.links]


def build_honeycomb_expression(
    lattice: HoneycombLattice, eps: float
) -> tuple[BellExpression, MeasurementAssignment]:
    """Sum of CHSH terms over lattice links, weighted by the link color.

    Classical bound -2 * sum_links J(eps): every link can reach its CHSH
    minimum simultaneously (e.g. all A outcomes +1, all B setting-0 outcomes
    -1), so the naive per-link bound is tight.
    """
    weights = honeycomb_couplings(lattice, eps)
    n = lattice.num_sites
    coeffs: dict[TermKey, float] = {}
    for (a, b, _), w in zip(lattice.links, weights):
        for (x, y), s in CHSH_SIGNS.items():
            key = [None] * n
            key[a], key[b] = x, y
            key = tuple(key)
            coeffs[key] = coeffs.get(key, 0.0) + w * s
    expr = BellExpression(n, (2,) * n, coeffs, classical_bound=-2.0 * sum(weights))
    obs = [
        list(HONEYCOMB_A_SETTINGS) if lab == "A" else list(HONEYCOMB_B_SETTINGS)
        for lab in lattice.sublattice
    ]
    return expr, MeasurementAssignment(obs)


def chain_weights(n: int, eps: float) -> list[float]:
    """Per-link weights 1 - (-1)^i eps for links i = 1..n-1 (1-indexed)."""
    if n < 3 or n % 2 == 0:
        raise ValueError(
            f"chain length must be odd and >= 3 (even link count), got {n}"
        )
    if abs(eps) > 1.0:
        raise ValueError(f"|eps| must be <= 1, got {eps}")
    return [1.0 - ((-1.0) ** i) * eps for i in range(1, n)]


def build_chain_expression(
    n: int, delta: float, eps: float
) -> tuple[BellExpression, MeasurementAssignment]:
    """Weighted chain of delta-modified Gisin inequalities.

    Odd sites (1-indexed; qubits 0, 2, ... ) perform the four tetrahedral
    measurements; even sites the three orthogonal ones.  Link i joins sites
    i, i+1 with weight 1 - (-1)^i eps; the odd-numbered endpoint plays the
    four-setting role.
    """
    weights = chain_weights(n, eps)
    settings = tuple(4 if q % 2 == 0 else 3 for q in range(n))
    coeffs: dict[TermKey, float] = {}
    for link, w in enumerate(weights):  # link joins qubits (link, link+1)
        qa, qb = link, link + 1
        if qa % 2 != 0:  # four-setting party is the even qubit (odd 1-indexed site)
            qa, qb = qb, qa
        for (x, y), s in GISIN_SIGNS.items():
            key = [None] * n
            key[qa], key[qb] = x, y
            key = tuple(key)
            coeffs[key] = coeffs.get(key, 0.0) + w * s * (delta if y == 2 else 1.0)
    bound = -(n - 1) * (2 * abs(delta) + abs(delta + 2) + abs(delta - 2))
    expr = BellExpression(n, settings, coeffs, classical_bound=bound)
    obs = [
        list(TETRAHEDRON) if q % 2 == 0 else list(ORTHOGONAL_XYZ) for q in range(n)
    ]
    return expr, MeasurementAssignment(obs)


# ---------------------------------------------------------------------------
# multipartite full-correlator models

MULTIPARTITE_LIMIT = 24


def _floor_half_sign(total_settings: int) -> float:
    return -1.0 if (total_settings // 2) % 2 else 1.0


def svetlichny_angles(n: int) -> tuple[float, float]:
    return -np.pi / (4 * n), (2 * n - 1) * np.pi / (4 * n)


def _xy_plane_assignment(n: int, phi0: float, phi1: float) -> MeasurementAssignment:
    obs = [
        [np.array([np.cos(p), np.sin(p), 0.0]) for p in (phi0, phi1)] for _ in range(n)
    ]
    return MeasurementAssignment(obs)


def build_svetlichny_expression(n: int) -> tuple[BellExpression, MeasurementAssignment]:
    """Svetlichny expression: 2^(-n/2) (-1)^floor(sum(x)/2) over all tuples.

    The sign rule is fixed by requiring the Bell operator under the XY-plane
    settings phi_1 = -pi/4n, phi_2 = (2n-1)pi/4n to equal
    2^((n-1)/2)(|0..0><1..1| + h.c.); see the operator-equality tests.

    The deterministic-strategy minimum of this normalized form depends on the
    party-count parity: writing one strategy's value as
    sqrt(2) * cos(pi (m - 1) / 4) with m an integer congruent to n mod 2, the
    reachable minimum is -sqrt(2) for odd n and -1 for even n.  The brute
    force oracle confirms this on small systems.
    """
    if not (2 <= n <= MULTIPARTITE_LIMIT):
        raise CapacityError(f"supported party range is 2..{MULTIPARTITE_LIMIT}, got {n}")
    scale = 2.0 ** (-n / 2.0)
    coeffs: dict[TermKey, float] = {}
    for x in np.ndindex(*([2] * n)):
        coeffs[tuple(int(v) for v in x)] = scale * _floor_half_sign(sum(x))
    lhv = -np.sqrt(2.0) if n % 2 else -1.0
    expr = BellExpression(n, (2,) * n, coeffs, classical_bound=lhv)
    return expr, _xy_plane_assignment(n, *svetlichny_angles(n))


def build_mermin_expression(n: int) -> tuple[BellExpression, MeasurementAssignment]:
    """Mermin expression: 2^(-(n-1)/2) (-1)^floor(sum(x)/2), even-parity tuples only.

    Deterministic minimum mirrors the Svetlichny case with the parities
    swapped: -1 for odd n, -sqrt(2) for even n.
    """
    if not (2 <= n <= MULTIPARTITE_LIMIT):
        raise CapacityError(f"supported party range is 2..{MULTIPARTITE_LIMIT}, got {n}")
    scale = 2.0 ** (-(n - 1) / 2.0)
    coeffs: dict[TermKey, float] = {}
    for x in np.ndindex(*([2] * n)):
        if sum(x) % 2 == 0:
            coeffs[tuple(int(v) for v in x)] = scale * _floor_half_sign(sum(x))
    lhv = -1.0 if n % 2 else -np.sqrt(2.0)
    expr = BellExpression(n, (2,) * n, coeffs, classical_bound=lhv)
    return expr, _xy_plane_assignment(n, 0.0, np.pi / 2)  # X and Y
