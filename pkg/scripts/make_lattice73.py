#!/usr/bin/env python3
"""Build the 73-site honeycomb lattice shipped in data/honeycomb_73.json.

Starts from a 7x11 brick-wall patch (77 sites, 33 vertical r links, 70
horizontal links), deletes four row-0 sites that carry no vertical link, and
drops three more horizontal links, landing on 73 sites with 33 r and 59 b/g
links.  At eps = 0.9 the classical bound is then -2(33*1.9 + 59*0.05) = -131.3.

The published device geometry is pictorial only; this file is a consistent
stand-in with the same color multiplicities, not a reconstruction.
"""

from pathlib import Path

from bellsim.bell import HoneycombLattice, brick_wall_patch, honeycomb_classical_bound, save_lattice

ROWS, COLS = 7, 11
DELETE_SITES = [(0, 1), (0, 3), (0, 5), (0, 7)]
DELETE_LINKS = [((0, 8), (0, 9)), ((6, 1), (6, 2)), ((6, 5), (6, 6))]


def site(r, c):
    return r * COLS + c


def build() -> HoneycombLattice:
    base = brick_wall_patch(ROWS, COLS)
    dead = {site(r, c) for r, c in DELETE_SITES}
    dead_links = {frozenset((site(*p), site(*q))) for p, q in DELETE_LINKS}

    keep = [i for i in range(base.num_sites) if i not in dead]
    renum = {old: new for new, old in enumerate(keep)}
    links = []
    for a, b, color in base.links:
        if a in dead or b in dead or frozenset((a, b)) in dead_links:
            continue
        links.append((renum[a], renum[b], color))
    sub = [base.sublattice[i] for i in keep]
    return HoneycombLattice(len(keep), sub, links)


def check(lat: HoneycombLattice) -> None:
    counts = lat.color_counts()
    assert lat.num_sites == 73, lat.num_sites
    assert counts["r"] == 33 and counts["b"] + counts["g"] == 59, counts
    # connectivity
    adj = {i: set() for i in range(lat.num_sites)}
    for a, b, _ in lat.links:
        adj[a].add(b)
        adj[b].add(a)
    seen, stack = {0}, [0]
    while stack:
        for nb in adj[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    assert len(seen) == lat.num_sites, f"lattice disconnected: {len(seen)} reachable"
    bound = honeycomb_classical_bound(lat, 0.9)
    assert abs(bound - (-131.3)) < 1e-9, bound
    print(f"73-site lattice OK: {counts}, classical bound at eps=0.9: {bound:.4f}")


def main():
    lat = build()
    check(lat)
    out = Path(__file__).resolve().parent.parent / "data" / "honeycomb_73.json"
    save_lattice(lat, out)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
