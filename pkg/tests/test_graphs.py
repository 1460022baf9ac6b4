import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from herext.graphs import (
    Graph,
    are_isomorphic,
    canonical_form,
    canonical_graph,
    clique_number,
    complete_graph,
    complete_multipartite,
    contains_induced,
    cycle_graph,
    density,
    empty_graph,
    from_edge_list_text,
    from_graph6,
    graph_from_edges,
    maximum_clique,
    path_graph,
    to_edge_list_text,
    to_graph6,
    turan_graph,
)

from conftest import all_labeled_graphs, brute_clique_number, brute_contains_induced

nx = pytest.importorskip("networkx")


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    edges = [
        (u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p
    ]
    return graph_from_edges(n, edges)


graphs_st = st.builds(
    lambda seed, n, p: random_graph(random.Random(seed), n, p),
    st.integers(0, 2**31),
    st.integers(0, 9),
    st.sampled_from([0.15, 0.5, 0.85]),
)


class TestGraphBasics:
    def test_validation_rejects_self_loop(self):
        with pytest.raises(ValueError):
            Graph(2, (0b01, 0b10))

    def test_validation_rejects_asymmetry(self):
        with pytest.raises(ValueError):
            Graph(2, (0b10, 0b00))

    def test_validation_rejects_stray_bits(self):
        with pytest.raises(ValueError):
            Graph(2, (0b110, 0b001))

    def test_vertex_cap(self):
        with pytest.raises(ValueError):
            empty_graph(65)

    def test_edges_and_degrees(self):
        g = cycle_graph(5)
        assert g.edge_count() == 5
        assert sorted(g.degree(v) for v in range(5)) == [2] * 5
        assert sorted(g.edges()) == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]

    def test_complement_involution(self):
        g = path_graph(6)
        assert g.complement().complement() == g

    def test_components(self):
        g = graph_from_edges(6, [(0, 1), (1, 2), (3, 4)])
        assert g.connected_components() == ((0, 1, 2), (3, 4), (5,))

    def test_induced_subgraph_keeps_adjacency(self):
        g = cycle_graph(6)
        h = g.induced_subgraph((0, 1, 2, 3))
        assert h == path_graph(4)

    def test_turan_is_balanced_multipartite(self):
        t = turan_graph(3, 8)
        assert t == complete_multipartite((3, 3, 2))
        assert t.edge_count() == 3 * 3 + 3 * 2 + 3 * 2

    def test_density_fraction(self):
        from fractions import Fraction

        assert density(complete_graph(4)) == Fraction(1)
        assert density(cycle_graph(5)) == Fraction(5, 10)


class TestGraph6:
    def test_known_encodings(self):
        assert to_graph6(cycle_graph(5)) == "Dhc"
        assert from_graph6("Dhc") == cycle_graph(5)
        assert from_graph6("DhC") == path_graph(5)

    def test_header_prefix_accepted(self):
        assert from_graph6(">>graph6<<Dhc") == cycle_graph(5)

    @given(graphs_st)
    @settings(max_examples=60, deadline=None)
    def test_round_trip(self, g):
        assert from_graph6(to_graph6(g)) == g

    @given(graphs_st)
    @settings(max_examples=40, deadline=None)
    def test_agrees_with_networkx(self, g):
        ours = to_graph6(g)
        ng = nx.Graph()
        ng.add_nodes_from(range(g.n))
        ng.add_edges_from(g.edges())
        theirs = nx.to_graph6_bytes(ng, header=False).decode().strip()
        assert ours == theirs
        back = nx.from_graph6_bytes(ours.encode())
        assert set(back.edges()) == {tuple(e) for e in g.edges()}

    def test_rejects_truncation(self):
        with pytest.raises(ValueError):
            from_graph6("D?")  # C(5,2)=10 bits need 2 data bytes

    def test_rejects_nonzero_padding(self):
        with pytest.raises(ValueError):
            from_graph6("D?@")  # '@' sets a bit beyond the 10 data bits

    def test_rejects_out_of_range_bytes(self):
        with pytest.raises(ValueError):
            from_graph6("D\x1f?")


class TestCanonical:
    def test_four_vertex_classes(self):
        keys = {canonical_form(g).key for g in all_labeled_graphs(4)}
        assert len(keys) == 11

    @given(graphs_st, st.integers(0, 2**31))
    @settings(max_examples=60, deadline=None)
    def test_invariant_under_relabeling(self, g, seed):
        perm = list(range(g.n))
        random.Random(seed).shuffle(perm)
        assert canonical_form(g.relabel(tuple(perm))) == canonical_form(g)

    def test_canonical_graph_is_isomorphic(self):
        g = graph_from_edges(5, [(0, 2), (2, 4), (4, 1), (1, 3)])
        cg = canonical_graph(g)
        assert are_isomorphic(g, cg)
        assert canonical_form(cg) == canonical_form(g)

    def test_canonical_key_is_minimal_encoding(self):
        # the canonical key must coincide with the smallest graph6 string over
        # every relabeling
        g = graph_from_edges(4, [(0, 1), (1, 2), (2, 3)])
        keys = set()
        for perm in itertools.permutations(range(4)):
            keys.add(to_graph6(g.relabel(perm)))
        assert canonical_form(g).graph6 == min(keys)

    def test_distinguishes_c5_from_p5(self):
        assert canonical_form(cycle_graph(5)) != canonical_form(path_graph(5))

    def test_are_isomorphic(self):
        g = cycle_graph(4)
        h = graph_from_edges(4, [(0, 2), (2, 1), (1, 3), (3, 0)])
        assert are_isomorphic(g, h)
        assert not are_isomorphic(g, path_graph(4))


class TestClique:
    @given(graphs_st)
    @settings(max_examples=50, deadline=None)
    def test_matches_brute_force(self, g):
        assert clique_number(g) == brute_clique_number(g)

    @given(graphs_st)
    @settings(max_examples=30, deadline=None)
    def test_witness_is_clique(self, g):
        vs = maximum_clique(g)
        assert len(vs) == clique_number(g)
        assert all(g.has_edge(u, v) for u, v in itertools.combinations(vs, 2))

    def test_named_values(self):
        assert clique_number(complete_graph(6)) == 6
        assert clique_number(cycle_graph(5)) == 2
        assert clique_number(turan_graph(3, 9)) == 3
        assert clique_number(empty_graph(4)) == 1
        assert clique_number(empty_graph(0)) == 0


class TestInducedContainment:
    @given(graphs_st, st.integers(0, 2**31), st.integers(0, 4))
    @settings(max_examples=60, deadline=None)
    def test_matches_brute_force(self, g, seed, hn):
        h = random_graph(random.Random(seed), hn, 0.5)
        assert contains_induced(g, h) == brute_contains_induced(g, h)

    def test_forced_vertex_restricts_image(self):
        # path 0-1-2 plus isolated 3: a forced triangle through any vertex fails
        g = graph_from_edges(4, [(0, 1), (1, 2)])
        assert not contains_induced(g, complete_graph(3))
        # an induced P3 through vertex 3 does not exist, through 1 it does
        assert contains_induced(g, path_graph(3), forced=1)
        assert not contains_induced(g, path_graph(3), forced=3)

    def test_empty_pattern_always_contained(self):
        assert contains_induced(empty_graph(0), empty_graph(0))
        assert contains_induced(cycle_graph(4), empty_graph(0))

    def test_induced_not_subgraph(self):
        # K4 contains C4 as a subgraph but not induced
        assert not contains_induced(complete_graph(4), cycle_graph(4))
        assert contains_induced(complete_graph(4), path_graph(2))
        assert not contains_induced(complete_graph(4), path_graph(3))


class TestEdgeListText:
    def test_round_trip(self):
        g = graph_from_edges(5, [(0, 3), (1, 4), (2, 3)])
        assert from_edge_list_text(to_edge_list_text(g)) == g

    def test_comments_and_blanks_ignored(self):
        text = "# header\n4\n\n0 1\n# middle\n2 3\n"
        assert from_edge_list_text(text) == graph_from_edges(4, [(0, 1), (2, 3)])
