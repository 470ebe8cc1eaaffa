"""Hypergraph core: degrees, line graph, tight connectivity, walks, lifting."""

from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spansphere.chain import lower_bound_codegree, lower_bound_vertex_degree
from spansphere.errors import (
    BadArity,
    InvalidVertex,
    NotTightlyConnected,
    PartTooSmall,
    PreconditionFailed,
)
from spansphere.hypergraph import (
    Hypergraph,
    TightWalk,
    covering_tight_walk,
    dirac_connectivity_witness,
    is_tightly_connected,
    lift_walk_to_path,
    line_graph,
    tight_components,
)

from conftest import (
    brute_degree,
    brute_min_supported_codegree,
    brute_min_supported_d_degree,
    random_hypergraph,
)


class FakeBlowup:
    def __init__(self, parts):
        self.parts = parts


def codegree_construction_host():
    """The T + X + Y host (k=3, n=12, |X|=|Y|=5), built straight from its
    definition as an oracle for the generator."""
    t, x, y = {0, 1}, set(range(2, 7)), set(range(7, 12))
    edges = [e for e in combinations(range(12), 3) if not (set(e) & x and set(e) & y)]
    return Hypergraph.from_edges(3, 12, edges)


class TestDegree:
    def test_complete_pair_degree(self, k5_3):
        assert k5_3.degree((0, 1)) == 3  # n - k + 1

    def test_full_edge_contains_only_itself(self, k5_3):
        assert k5_3.degree((0, 1, 2)) == 1

    def test_codegree_construction_pair(self):
        h = codegree_construction_host()
        oracle = brute_degree(12, h.edges, (0, 1))
        assert oracle == 10
        assert h.degree((0, 1)) == oracle
        gen = lower_bound_codegree(3, 12).host
        assert gen.degree((0, 1)) == 10

    def test_invalid_vertex(self, k5_3):
        with pytest.raises(InvalidVertex):
            k5_3.degree((0, 99))

    def test_oversized_subset(self, k5_3):
        with pytest.raises(BadArity):
            k5_3.degree((0, 1, 2, 3))


class TestSupportedDegrees:
    def test_complete(self, k5_3):
        assert k5_3.min_supported_codegree() == 3

    def test_empty(self):
        assert Hypergraph(3, 6, ()).min_supported_codegree() == 0
        assert Hypergraph(3, 6, ()).min_supported_d_degree(1).delta_star_d == 0

    def test_codegree_construction(self):
        h = lower_bound_codegree(3, 12).host
        oracle = brute_min_supported_codegree(3, 12, h.edges)
        assert oracle == 5
        assert h.min_supported_codegree() == oracle

    def test_top_d_matches_codegree(self, k6_3):
        assert k6_3.min_supported_d_degree(2).delta_star_d == k6_3.min_supported_codegree()

    def test_k4_vertex_degree(self):
        h = Hypergraph.complete(3, 4)
        assert h.min_supported_d_degree(1).delta_star_d == 3

    def test_random_oracle(self):
        for seed in range(8):
            h = random_hypergraph(3, 9, 0.4, seed)
            assert (
                h.min_supported_d_degree(1).delta_star_d
                == brute_min_supported_d_degree(3, 9, h.edges, 1)
            )

    def test_bad_arity(self, k5_3):
        with pytest.raises(BadArity):
            k5_3.min_supported_d_degree(3)

    def test_supported_degree_fact(self):
        # delta*_d >= delta*/(k-d) * delta*_{d+1}, spot-checked here and in
        # bulk in the acceptance suite
        for seed in range(10):
            h = random_hypergraph(4, 10, 0.5, seed + 100)
            if not h.edges:
                continue
            ds = h.min_supported_codegree()
            for d in range(1, 3):
                lhs = (4 - d) * h.min_supported_d_degree(d).delta_star_d
                rhs = ds * h.min_supported_d_degree(d + 1).delta_star_d
                assert lhs >= rhs


class TestLineGraph:
    def test_single_edge(self):
        h = Hypergraph.from_edges(3, 3, [(0, 1, 2)])
        lg = line_graph(h)
        assert lg.n == 1 and lg.edges == ()

    def test_tight_path_two_edges(self):
        h = Hypergraph.from_edges(3, 4, [(0, 1, 2), (1, 2, 3)])
        lg = line_graph(h)
        assert lg.edges == ((0, 1),)

    def test_k4_complete(self):
        h = Hypergraph.complete(3, 4)
        # oracle: any two triples of a 4-set share two vertices
        expected = {
            (i, j)
            for i, j in combinations(range(4), 2)
            if len(set(h.edges[i]) & set(h.edges[j])) == 2
        }
        assert len(expected) == 6
        assert set(line_graph(h).edges) == expected

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 10_000))
    def test_symmetric_antireflexive(self, seed):
        h = random_hypergraph(3, 8, 0.35, seed)
        lg = line_graph(h)
        for a, b in lg.edges:
            assert a != b
            assert len(set(h.edges[a]) & set(h.edges[b])) == 2


class TestTightComponents:
    def test_two_disjoint_cliques(self):
        edges = list(combinations(range(4), 3)) + list(combinations(range(4, 8), 3))
        h = Hypergraph.from_edges(3, 8, edges)
        comps, isolated = tight_components(h)
        assert len(comps) == 2 and isolated == ()

    def test_partition_property(self):
        for seed in range(6):
            h = random_hypergraph(3, 9, 0.3, seed)
            comps, _ = tight_components(h)
            flat = [e for c in comps for e in c]
            assert sorted(flat) == list(h.edges)

    def test_vertex_degree_construction_not_spanning(self):
        h = lower_bound_vertex_degree(9).host
        comps, _ = tight_components(h)
        assert len(comps) >= 2
        assert all(len(set().union(*c)) < 9 for c in comps)

    def test_k6_single_component(self, k6_3):
        comps, _ = tight_components(k6_3)
        assert len(comps) == 1


class TestTightlyConnected:
    def test_complete(self, k5_3):
        assert is_tightly_connected(k5_3)

    def test_isolated_vertex(self):
        h = Hypergraph.from_edges(3, 5, combinations(range(4), 3))
        assert not is_tightly_connected(h)

    def test_empty(self):
        assert not is_tightly_connected(Hypergraph(3, 4, ()))

    def test_codegree_construction_splits(self):
        host = lower_bound_codegree(3, 12).host
        assert is_tightly_connected(host)
        pruned = Hypergraph.from_edges(
            3, 12, [e for e in host.edges if not {0, 1} <= set(e)]
        )
        comps, _ = tight_components(pruned)
        assert len(comps) == 2
        assert not is_tightly_connected(pruned)


class TestDiracWitness:
    def test_same_edge(self, k6_3):
        assert dirac_connectivity_witness(k6_3, (0, 1, 2), (0, 1, 2)) == ((0, 1, 2),)

    def test_disjoint_in_k6(self, k6_3):
        seq = dirac_connectivity_witness(k6_3, (0, 1, 2), (3, 4, 5))
        assert seq[0] == (0, 1, 2) and seq[-1] == (3, 4, 5)
        assert len(seq) <= 2 * 3 - 1
        for a, b in zip(seq, seq[1:]):
            assert len(set(a) & set(b)) >= 2
            assert k6_3.has_edge(a) and k6_3.has_edge(b)

    def test_seeded_random_pairs(self):
        import random as rnd

        found = 0
        for seed in range(60):
            h = random_hypergraph(3, 9, 0.85, seed + 500)
            # 2*delta* > n-k: the size-robust form of the witness hypothesis
            if h.isolated_vertices or 2 * h.min_supported_codegree() <= 9 - 3:
                continue
            rng = rnd.Random(seed)
            for _ in range(5):
                e, f = rng.choice(h.edges), rng.choice(h.edges)
                seq = dirac_connectivity_witness(h, e, f)
                assert seq[0] == tuple(sorted(e)) and seq[-1] == tuple(sorted(f))
                for a, b in zip(seq, seq[1:]):
                    assert len(set(a) & set(b)) >= 2
                found += 1
        assert found >= 50

    def test_precondition(self):
        h = Hypergraph.from_edges(3, 8, [(0, 1, 2), (5, 6, 7)])
        with pytest.raises(PreconditionFailed):
            dirac_connectivity_witness(h, (0, 1, 2), (5, 6, 7))

    def test_floor_bound_parity_gap(self):
        # When n-k is even the floor bound admits disconnected hosts: this
        # 4-graph meets delta* = floor((n-k+1)/2) = 1 with no isolated
        # vertices, yet its two edges share only two vertices.  The robust
        # hypothesis 2*delta* > n-k correctly excludes it.
        h = Hypergraph.from_edges(4, 6, [(0, 1, 2, 3), (1, 3, 4, 5)])
        assert h.min_supported_codegree() == (6 - 4 + 1) // 2
        assert not h.isolated_vertices
        assert not is_tightly_connected(h)
        assert not 2 * h.min_supported_codegree() > 6 - 4


class TestCoveringWalk:
    def test_single_edge(self):
        h = Hypergraph.from_edges(3, 3, [(0, 1, 2)])
        w = covering_tight_walk(h)
        assert w.order == 3 and set(w.windows()) == {(0, 1, 2)}

    def test_k4(self):
        h = Hypergraph.complete(3, 4)
        w = covering_tight_walk(h)
        assert w.is_valid_in(h)
        assert set(w.windows()) == set(h.edges)
        assert w.order <= 4**6

    def test_tight_cycle_7(self):
        edges = [tuple(sorted((i, (i + 1) % 7, (i + 2) % 7))) for i in range(7)]
        h = Hypergraph.from_edges(3, 7, edges)
        w = covering_tight_walk(h)
        assert w.is_valid_in(h)
        assert set(w.windows()) == set(h.edges)

    def test_not_tightly_connected(self):
        h = Hypergraph.from_edges(3, 8, [(0, 1, 2), (5, 6, 7)])
        with pytest.raises(NotTightlyConnected):
            covering_tight_walk(h)

    def test_random_walks_in_bound(self):
        for seed in range(25):
            h = random_hypergraph(3, 8, 0.45, seed + 900)
            if not is_tightly_connected(h):
                continue
            w = covering_tight_walk(h)
            assert w.is_valid_in(h)
            assert set(w.windows()) == set(h.edges)
            assert w.order <= 8**6


class TestLiftWalk:
    def test_transversal_when_multiplicity_one(self):
        w = TightWalk(3, (0, 1, 2, 3))
        parts = ((10, 11), (20,), (30, 31), (40,))
        p = lift_walk_to_path(w, FakeBlowup(parts))
        assert p.vertices == (10, 20, 30, 40)

    def test_k4_blowup(self):
        h = Hypergraph.complete(3, 4)
        w = covering_tight_walk(h)
        parts = tuple(tuple(range(100 * x, 100 * x + 30)) for x in range(4))
        p = lift_walk_to_path(w, FakeBlowup(parts))
        assert len(set(p.vertices)) == len(p.vertices)
        phi = {v: x for x, part in enumerate(parts) for v in part}
        assert tuple(phi[v] for v in p.vertices) == w.vertices
        covered = {tuple(sorted(phi[v] for v in p.vertices[i : i + 3])) for i in range(p.order - 2)}
        assert covered == set(h.edges)

    def test_part_too_small(self):
        w = TightWalk(3, (0, 1, 2, 0, 1, 3))
        parts = ((10,), (20, 21), (30, 31), (40,))
        with pytest.raises(PartTooSmall):
            lift_walk_to_path(w, FakeBlowup(parts))


class TestWalkValidation:
    def test_invalid_walk_representable(self):
        w = TightWalk(3, (0, 1, 1, 2))
        assert not w.is_valid_in(Hypergraph.complete(3, 4))

    def test_too_short(self):
        assert not TightWalk(3, (0, 1)).is_valid_in(Hypergraph.complete(3, 4))


class TestFileFormat:
    def test_round_trip(self, tmp_path, k5_3):
        path = tmp_path / "h.hg"
        k5_3.save(path)
        assert Hypergraph.load(path) == k5_3

    def test_comments_and_unsorted(self, tmp_path):
        path = tmp_path / "h.hg"
        path.write_text("# comment\n3 5\n2 1 0\n# another\n4 3 2\n")
        h = Hypergraph.load(path)
        assert h.edges == ((0, 1, 2), (2, 3, 4))

    def test_parse_error_line_number(self, tmp_path):
        from spansphere.errors import ParseError

        path = tmp_path / "h.hg"
        path.write_text("3 5\n0 1\n")
        with pytest.raises(ParseError, match="line 2"):
            Hypergraph.load(path)
