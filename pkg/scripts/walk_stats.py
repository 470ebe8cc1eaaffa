"""Covering-walk statistics: order and per-vertex multiplicity on complete
hosts and seeded random ones, against the n^(2k) bound.

Usage: python scripts/walk_stats.py
"""

from __future__ import annotations

import random
from itertools import combinations

from spansphere.hypergraph import Hypergraph, covering_tight_walk, is_tightly_connected


def report(label: str, h: Hypergraph) -> None:
    walk = covering_tight_walk(h)
    mult = walk.multiplicities()
    bound = h.n ** (2 * h.k)
    print(
        f"{label:26s} edges={len(h.edges):5d} order={walk.order:5d} "
        f"max_mult={max(mult.values()):3d} bound={bound:.1e}"
    )


def main() -> None:
    for k, n in [(2, 6), (2, 10), (3, 5), (3, 6), (3, 7), (3, 8), (4, 8), (4, 9)]:
        report(f"K_{n}^({k})", Hypergraph.complete(k, n))
    for seed in range(4):
        rng = random.Random(seed)
        n = rng.randint(8, 12)
        edges = [e for e in combinations(range(n), 3) if rng.random() < 0.5]
        h = Hypergraph.from_edges(3, n, edges)
        if is_tightly_connected(h):
            report(f"random(3,{n},seed={seed})", h)


if __name__ == "__main__":
    main()
