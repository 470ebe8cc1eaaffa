"""Shared fixtures and independent brute-force oracles.

The oracles here are deliberately written against the definitions, not the
library's data structures, so they stay independent of the code paths they
check.
"""

from __future__ import annotations

import random
from itertools import combinations

import pytest

from spansphere.hypergraph import Hypergraph


def brute_degree(n: int, edges, subset) -> int:
    """Count edges containing the subset, straight from the definition."""
    s = set(subset)
    return sum(1 for e in edges if s <= set(e))


def brute_min_supported_codegree(k: int, n: int, edges) -> int:
    """Minimum degree over (k-1)-sets with positive degree; 0 if none."""
    best = None
    for sub in combinations(range(n), k - 1):
        d = brute_degree(n, edges, sub)
        if d > 0 and (best is None or d < best):
            best = d
    return best or 0


def brute_min_supported_d_degree(k: int, n: int, edges, d: int) -> int:
    best = None
    for sub in combinations(range(n), d):
        deg = brute_degree(n, edges, sub)
        if deg > 0 and (best is None or deg < best):
            best = deg
    return best or 0


def brute_max_matching_size(n: int, edges) -> int:
    """Maximum matching size by exhaustive branching (n <= ~14)."""
    edges = [tuple(e) for e in edges]

    def best(avail: frozenset) -> int:
        free = [v for v in avail]
        if not free:
            return 0
        v = free[0]
        # either v stays unmatched ...
        top = best(avail - {v})
        # ... or it is matched along one of its edges
        for e in edges:
            if v in e and set(e) <= avail:
                top = max(top, 1 + best(avail - set(e)))
        return top

    return best(frozenset(range(n)))


def random_hypergraph(k: int, n: int, p: float, seed: int) -> Hypergraph:
    """Seeded binomial k-graph; deterministic across runs."""
    rng = random.Random(seed)
    edges = [e for e in combinations(range(n), k) if rng.random() < p]
    return Hypergraph.from_edges(k, n, edges)


@pytest.fixture
def k5_3():
    return Hypergraph.complete(3, 5)


@pytest.fixture
def k6_3():
    return Hypergraph.complete(3, 6)
