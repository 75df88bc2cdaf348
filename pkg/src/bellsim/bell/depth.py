"""Bell correlation depth certification from an energy estimate."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bounds import k_nonlocal_bound


@dataclass(frozen=True)
class DepthMargin:
    k: int
    bound: float
    sigma_margin: float  # (bound - energy) / std; positive when violated


@dataclass(frozen=True)
class DepthCertificate:
    num_parties: int
    energy: float
    energy_std: float
    margins: tuple[DepthMargin, ...]
    certified_depth: int

    def to_json_dict(self) -> dict:
        return {
            "num_parties": self.num_parties,
            "energy": self.energy,
            "energy_std": self.energy_std,
            "certified_depth": self.certified_depth,
            "margins": [
                {"k": m.k, "bound": m.bound, "sigma_margin": m.sigma_margin}
                for m in self.margins
            ],
        }


def certify_depth(n: int, energy: float, energy_std: float) -> DepthCertificate:
    """Depth = 1 + largest k whose bound is strictly violated (1 if none).

    The certified depth uses the strict rule energy < bound_k only; the
    standard deviation enters the per-k sigma margins alone, so any
    energy_std yields the same depth.
    """
    if energy_std < 0:
        raise ValueError("energy_std must be >= 0")
    margins = []
    depth = 1
    for k in range(1, n):
        bound = k_nonlocal_bound(n, k)
        gap = bound - energy
        if energy_std > 0:
            sigma = gap / energy_std
        else:
            sigma = 0.0 if gap == 0 else float(np.sign(gap) * np.inf)
        margins.append(DepthMargin(k, bound, float(sigma)))
        if energy < bound:
            depth = k + 1
    return DepthCertificate(n, float(energy), float(energy_std), tuple(margins), depth)
