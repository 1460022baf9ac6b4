import itertools
import random
from fractions import Fraction

import pytest

from herext.families import (
    GraphFamily,
    admits,
    beta,
    classify,
    is_infinite_class,
    multipartite_part_count,
    omega_lower,
    parse_family,
    parse_graph,
)
from herext.graphs import (
    complete_graph,
    complete_multipartite,
    cycle_graph,
    empty_graph,
    graph_from_edges,
    path_graph,
    to_graph6,
)

from conftest import all_labeled_graphs


def brute_is_complete_multipartite(g) -> bool:
    """A graph is complete multipartite iff non-adjacency is transitive:
    no induced K2 + K1."""
    if g.n == 0:
        return False
    for a, b, c in itertools.permutations(range(g.n), 3):
        if g.has_edge(a, b) and not g.has_edge(a, c) and not g.has_edge(b, c):
            return False
    return True


class TestFamilyContainer:
    def test_dedups_isomorphic_members(self):
        g = graph_from_edges(3, [(0, 1), (1, 2), (0, 2)])
        fam = GraphFamily([g, complete_graph(3)])
        assert len(fam) == 1

    def test_rejects_zero_vertex_member(self):
        with pytest.raises(ValueError):
            GraphFamily([empty_graph(0)])

    def test_empty_family_allowed(self):
        fam = GraphFamily([])
        assert len(fam) == 0
        assert admits(fam, complete_graph(5))

    def test_equality_is_by_isomorphism_class(self):
        f1 = GraphFamily([path_graph(3), complete_graph(2)])
        relabeled = path_graph(3).relabel((2, 0, 1))
        f2 = GraphFamily([complete_graph(2), relabeled])
        assert f1 == f2
        assert hash(f1) == hash(f2)

    def test_admits(self):
        fam = GraphFamily([complete_graph(3)])
        assert admits(fam, cycle_graph(5))
        assert admits(fam, complete_multipartite((2, 3)))
        assert not admits(fam, complete_graph(4))


class TestStructureParameters:
    def test_omega_lower_picks_smallest_clique(self):
        fam = GraphFamily([complete_graph(4), complete_graph(3), cycle_graph(5)])
        assert omega_lower(fam) == 3

    def test_omega_lower_zero_without_cliques(self):
        assert omega_lower(GraphFamily([cycle_graph(4), path_graph(4)])) == 0
        assert omega_lower(GraphFamily([])) == 0

    def test_single_vertex_is_a_clique(self):
        assert omega_lower(GraphFamily([empty_graph(1)])) == 1

    def test_multipartite_part_count_against_brute_force(self):
        for n in range(1, 6):
            for g in all_labeled_graphs(n):
                expected = brute_is_complete_multipartite(g)
                count = multipartite_part_count(g)
                assert (count > 0) == expected, to_graph6(g)

    def test_part_count_values(self):
        assert multipartite_part_count(complete_multipartite((2, 3))) == 2
        assert multipartite_part_count(complete_multipartite((1, 1, 2))) == 3
        assert multipartite_part_count(complete_graph(4)) == 4
        assert multipartite_part_count(empty_graph(3)) == 1
        assert multipartite_part_count(path_graph(3)) == 2  # P3 is K_{1,2}
        assert multipartite_part_count(cycle_graph(5)) == 0
        assert multipartite_part_count(path_graph(4)) == 0

    def test_beta_picks_smallest_part_count(self):
        fam = GraphFamily([complete_graph(3), complete_multipartite((2, 2))])
        assert beta(fam) == 2

    def test_beta_zero_without_multipartite_members(self):
        assert beta(GraphFamily([path_graph(4), cycle_graph(5)])) == 0


BATTERY = {
    ("K3",): (3, 3, True, Fraction(1, 2), Fraction(1, 2)),
    ("K4",): (4, 4, True, Fraction(2, 3), Fraction(2, 3)),
    ("C4",): (0, 2, True, Fraction(1), Fraction(1)),
    ("K2",): (2, 2, True, Fraction(0), Fraction(0)),
    ("K2,2,2",): (0, 3, True, Fraction(1), Fraction(1)),
    ("K3", "K3,3"): (3, 2, True, Fraction(0), Fraction(1, 2)),
    ("P4",): (0, 0, True, Fraction(1), Fraction(1)),
}


class TestClassify:
    @pytest.mark.parametrize("names,expected", sorted(BATTERY.items()))
    def test_battery(self, names, expected):
        want_w, want_b, want_inf, want_pi, want_lam1 = expected
        cls = classify(parse_family(names))
        assert cls.omega_lower == want_w
        assert cls.beta == want_b
        assert cls.infinite is want_inf
        assert cls.pi == want_pi
        assert cls.lambda_one_limit == want_lam1
        if want_inf:
            if want_w == 0:
                assert cls.lambda_alpha_limit == Fraction(1)
            else:
                assert cls.lambda_alpha_limit == 1 - Fraction(1, want_b - 1)
        else:
            assert cls.lambda_alpha_limit is None

    def test_infinite_rule_matches_parameters(self):
        cases = [
            GraphFamily([]),
            GraphFamily([complete_graph(3)]),
            GraphFamily([complete_graph(2)]),
            GraphFamily([path_graph(4)]),
            GraphFamily([complete_graph(3), complete_multipartite((3, 3))]),
            GraphFamily([cycle_graph(4), complete_graph(5)]),
        ]
        for fam in cases:
            w, b = omega_lower(fam), beta(fam)
            assert is_infinite_class(fam) == (w == 0 or (w >= 2 and b >= 2))

    def test_forbidding_an_edge_leaves_edgeless_class(self):
        cls = classify(GraphFamily([complete_graph(2)]))
        assert cls.infinite
        assert cls.pi == 0
        assert cls.lambda_alpha_limit == 0
        assert cls.lambda_one_limit == 0

    def test_ramsey_pair_is_finite(self):
        # forbidding both an edge and a non-edge leaves only n <= 1
        cls = classify(GraphFamily([complete_graph(2), empty_graph(2)]))
        assert cls.omega_lower == 2
        assert cls.beta == 1
        assert not cls.infinite
        assert cls.pi is None
        assert cls.lambda_alpha_limit is None
        assert cls.lambda_one_limit is None

    def test_forbidding_a_vertex_leaves_nothing(self):
        cls = classify(GraphFamily([empty_graph(1)]))
        assert cls.omega_lower == 1
        assert not cls.infinite

    def test_json_dict_rationals(self):
        d = classify(parse_family(["K3"])).to_json_dict()
        assert d["omega_lower"] == 3
        assert d["beta"] == 3
        assert d["infinite"] is True
        assert d["pi"] == "1/2"
        assert d["lambda_one_limit"] == "1/2"

    def test_json_dict_finite(self):
        d = classify(parse_family(["K2", "E2"])).to_json_dict()
        assert d["infinite"] is False
        assert d["pi"] is None


class TestParsing:
    def test_named_graphs(self):
        assert parse_graph("K5") == complete_graph(5)
        assert parse_graph("C6") == cycle_graph(6)
        assert parse_graph("P2") == path_graph(2)
        assert parse_graph("E3") == empty_graph(3)
        assert parse_graph("K2,2,2") == complete_multipartite((2, 2, 2))
        assert parse_graph("K1,3") == complete_multipartite((1, 3))

    def test_graph6_fallback(self):
        assert parse_graph("Dhc") == cycle_graph(5)

    def test_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_graph("K")
        with pytest.raises(ValueError):
            parse_graph("\x01\x02")

    def test_parse_family(self):
        fam = parse_family(["K3", "K3,3"])
        assert len(fam) == 2
        assert omega_lower(fam) == 3
        assert beta(fam) == 2
