"""Shared helpers: brute-force oracles the fast code is checked against."""

from __future__ import annotations

import itertools

import pytest

from herext.graphs import Graph, canonical_form, graph_from_edges


def all_labeled_graphs(n: int):
    """Every labeled graph on n vertices, one per edge subset."""
    slots = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(slots)):
        edges = [slots[i] for i in range(len(slots)) if (bits >> i) & 1]
        yield graph_from_edges(n, edges)


def labeled_classes(n: int) -> dict[bytes, Graph]:
    """Isomorphism classes on n vertices by brute-force labeled dedup."""
    out: dict[bytes, Graph] = {}
    for g in all_labeled_graphs(n):
        key = canonical_form(g).key
        if key not in out:
            out[key] = g
    return out


def brute_contains_induced(g: Graph, h: Graph) -> bool:
    """Induced containment by trying every vertex subset and permutation."""
    if h.n == 0:
        return True
    for subset in itertools.combinations(range(g.n), h.n):
        for perm in itertools.permutations(subset):
            if all(
                g.has_edge(perm[u], perm[v]) == h.has_edge(u, v)
                for u in range(h.n)
                for v in range(u + 1, h.n)
            ):
                return True
    return False


def brute_clique_number(g: Graph) -> int:
    best = 0
    for size in range(g.n, 0, -1):
        for subset in itertools.combinations(range(g.n), size):
            if all(g.has_edge(u, v) for u, v in itertools.combinations(subset, 2)):
                return size
    return best


@pytest.fixture(scope="session")
def classes_by_n():
    """Isomorphism class representatives for n = 0..5, brute-forced once."""
    return {n: list(labeled_classes(n).values()) for n in range(6)}


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One line per acceptance criterion, visible regardless of capture."""
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
