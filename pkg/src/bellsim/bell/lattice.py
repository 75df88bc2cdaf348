"""Honeycomb (brick-wall) lattices: data type, JSON I/O, patch generator.

A lattice is bipartite with sublattices A and B and links colored r, b, g.
Strong (r) links are the vertical rungs of the brick-wall drawing; the
horizontal links alternate b and g along each row so no site sees the same
color twice.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..errors import ConfigError

COLORS = ("r", "b", "g")


@dataclass
class HoneycombLattice:
    num_sites: int
    sublattice: list[str]              # per-site "A" or "B"
    links: list[tuple[int, int, str]]  # (a_site, b_site, color); a_site is on sublattice A

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.num_sites < 2:
            raise ConfigError("lattice needs at least 2 sites")
        if len(self.sublattice) != self.num_sites:
            raise ConfigError(
                f"sublattice has {len(self.sublattice)} labels for {self.num_sites} sites"
            )
        for lab in self.sublattice:
            if lab not in ("A", "B"):
                raise ConfigError(f"invalid sublattice label {lab!r}")
        seen_colors: dict[int, set[str]] = {}
        normalized = []
        for a, b, color in self.links:
            if color not in COLORS:
                raise ConfigError(f"invalid link color {color!r}")
            if not (0 <= a < self.num_sites and 0 <= b < self.num_sites) or a == b:
                raise ConfigError(f"invalid link endpoints ({a}, {b})")
            if self.sublattice[a] == self.sublattice[b]:
                raise ConfigError(
                    f"link ({a}, {b}) joins two {self.sublattice[a]} sites; lattice must be bipartite"
                )
            if self.sublattice[a] == "B":
                a, b = b, a
            for site in (a, b):
                colors = seen_colors.setdefault(site, set())
                if color in colors:
                    raise ConfigError(f"site {site} carries two {color!r} links")
                colors.add(color)
            normalized.append((a, b, color))
        if not normalized:
            raise ConfigError("lattice has no links")
        self.links = normalized

    def color_counts(self) -> dict[str, int]:
        counts = {c: 0 for c in COLORS}
        for _, _, color in self.links:
            counts[color] += 1
        return counts

    def to_json_dict(self) -> dict:
        return {
            "num_sites": self.num_sites,
            "sublattice": list(self.sublattice),
            "links": [[a, b, c] for a, b, c in self.links],
        }


def load_lattice(path) -> HoneycombLattice:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read lattice file {path}: {exc}") from exc
    return lattice_from_dict(data)


def lattice_from_dict(data: dict) -> HoneycombLattice:
    required = {"num_sites", "sublattice", "links"}
    if not isinstance(data, dict) or set(data) != required:
        raise ConfigError(f"lattice file must have exactly the keys {sorted(required)}")
    links = []
    for entry in data["links"]:
        if not (isinstance(entry, list) and len(entry) == 3):
            raise ConfigError(f"malformed link entry {entry!r}")
        links.append((int(entry[0]), int(entry[1]), str(entry[2])))
    return HoneycombLattice(int(data["num_sites"]), list(data["sublattice"]), links)


def save_lattice(lattice: HoneycombLattice, path) -> None:
    with open(path, "w") as fh:
        json.dump(lattice.to_json_dict(), fh, indent=1, sort_keys=True)
        fh.write("\n")


def brick_wall_patch(rows: int, cols: int) -> HoneycombLattice:
    """Rectangular brick-wall patch.

    Sites on a rows x cols grid, site index = row * cols + col.  Sublattice A
    at even (row + col).  Horizontal links alternate b (even col) / g (odd
    col); vertical r rungs sit where (row + col) is even, giving every site at
    most one link of each color.
    """
    if rows < 1 or cols < 2:
        raise ConfigError("brick-wall patch needs rows >= 1 and cols >= 2")
    sub = ["A" if (r + c) % 2 == 0 else "B" for r in range(rows) for c in range(cols)]
    links = []
    for r in range(rows):
        for c in range(cols - 1):
            links.append((r * cols + c, r * cols + c + 1, "b" if c % 2 == 0 else "g"))
    for r in range(rows - 1):
        for c in range(cols):
            if (r + c) % 2 == 0:
                links.append((r * cols + c, (r + 1) * cols + c, "r"))
    return HoneycombLattice(rows * cols, sub, links)


def single_link_lattice(color: str = "r") -> HoneycombLattice:
    return HoneycombLattice(2, ["A", "B"], [(0, 1, color)])
