"""Checks of the proved inequalities on finite corpora.

Every claim is oriented as ``lhs <= rhs`` and an instance is a violation when
``lhs - rhs`` exceeds the claim's budget.  Ascent values are feasible points,
so a computed parameter can only under-shoot the true maximum: upper-bound
claims cannot produce false violations, and near-tight passes are re-run with
ten times the restarts to make missed violations unlikely.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from herext.families import GraphFamily, classify, parse_family
from herext.graphs import (
    Graph,
    clique_number,
    complete_graph,
    to_graph6,
    turan_graph,
)
from herext.lambda_alpha import (
    DEFAULT_MAX_ITER,
    DEFAULT_RESTARTS,
    DEFAULT_SEED,
    lambda_alpha,
    lambda_lower_bound,
    lambda_one,
)
from herext.search import EmptyPropertyLevel, PropertyEnumerator, ex_value

CLAIMS = ("IN1", "IN2", "PRO10", "LOWER", "MS", "KNS")

NUMERIC_BUDGET = 1e-6
LOWER_BUDGET = 1e-9
MS_GAP = 1e-2
_NEAR_TIGHT = 1e-4


@dataclass(frozen=True)
class Counterexample:
    claim: str
    subject: str
    alpha: Optional[float]
    lhs: float
    rhs: float

    def trace(self) -> str:
        a = "" if self.alpha is None else f" at alpha={self.alpha:g}"
        return (
            f"{self.claim} violated by {self.subject}{a}: "
            f"{self.lhs!r} > {self.rhs!r} (excess {self.lhs - self.rhs:.3e})"
        )

    def to_json_dict(self) -> dict:
        return {
            "claim": self.claim,
            "subject": self.subject,
            "alpha": self.alpha,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "excess": self.lhs - self.rhs,
        }


@dataclass(frozen=True)
class VerificationOutcome:
    claim: str
    instances: int
    violations: tuple[Counterexample, ...]
    max_slack: Optional[float]

    def ok(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {
            "claim": self.claim,
            "instances": self.instances,
            "ok": self.ok(),
            "violations": [v.to_json_dict() for v in self.violations],
            "max_slack": self.max_slack,
        }


def suite_json_dict(outcomes: Iterable[VerificationOutcome]) -> dict:
    outs = list(outcomes)
    return {
        "schema_version": 1,
        "ok": all(o.ok() for o in outs),
        "claims": [o.to_json_dict() for o in outs],
    }


# -- single-instance checks ---------------------------------------------------


def _check_r(g: Graph, r: int) -> None:
    if clique_number(g) > r:
        raise ValueError(f"graph has a clique of order {clique_number(g)}, larger than r={r}")


def in1_bound(g: Graph, r: int, alpha: float) -> float:
    """(1 - 1/r)^(1/alpha) (2m)^(1 - 1/alpha), valid when g has no K_{r+1}."""
    _check_r(g, r)
    return (1.0 - 1.0 / r) ** (1.0 / alpha) * (2.0 * g.edge_count()) ** (1.0 - 1.0 / alpha)


def in2_bound(g: Graph, r: int, alpha: float) -> float:
    """(1 - 1/r) n^(2 - 2/alpha), valid when g has no K_{r+1}."""
    _check_r(g, r)
    return (1.0 - 1.0 / r) * g.n ** (2.0 - 2.0 / alpha)


def pro10_bound(g1: Graph, g2: Graph, alpha: float) -> float:
    """(2k)^(1 - 1/alpha) for k the size of the edge-set difference."""
    if g1.n != g2.n:
        raise ValueError("the two graphs must share a vertex set")
    if alpha <= 1.0 + 1e-9:
        raise ValueError("the perturbation bound is checked for alpha > 1 only")
    k = sum((a ^ b).bit_count() for a, b in zip(g1.rows, g2.rows)) // 2
    return (2.0 * k) ** (1.0 - 1.0 / alpha)


def check_in1(g: Graph, r: int, alpha: float, value: Optional[float] = None) -> bool:
    """Is the computed parameter within the edge-count bound (slack 1e-6)?"""
    rhs = in1_bound(g, r, alpha)
    lhs = lambda_alpha(g, alpha).value if value is None else value
    return lhs - rhs <= NUMERIC_BUDGET


def check_in2(g: Graph, r: int, alpha: float, value: Optional[float] = None) -> bool:
    """Is the computed parameter within the order bound (slack 1e-6)?"""
    rhs = in2_bound(g, r, alpha)
    lhs = lambda_alpha(g, alpha).value if value is None else value
    return lhs - rhs <= NUMERIC_BUDGET


def check_pro10(
    g1: Graph,
    g2: Graph,
    alpha: float,
    values: Optional[tuple[float, float]] = None,
) -> bool:
    """Do the two parameter values differ by at most the perturbation bound?"""
    rhs = pro10_bound(g1, g2, alpha)
    if values is None:
        values = (lambda_alpha(g1, alpha).value, lambda_alpha(g2, alpha).value)
    lhs = abs(values[0] - values[1])
    return lhs - rhs <= NUMERIC_BUDGET


# -- corpora ------------------------------------------------------------------


def all_graphs_up_to(n_max: int) -> tuple[Graph, ...]:
    """Canonical representatives of every graph on 1..n_max vertices."""
    enum = PropertyEnumerator(GraphFamily(), n_max)
    out: list[Graph] = []
    for n in range(1, n_max + 1):
        out.extend(enum.level(n))
    return tuple(out)


def random_graphs(n: int, count: int, seed: int, p: float = 0.5) -> tuple[Graph, ...]:
    """``count`` labelled graphs with independent edge probability p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be in [0, 1]")
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        rows = [0] * n
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < p:
                    rows[u] |= 1 << v
                    rows[v] |= 1 << u
        out.append(Graph(n, tuple(rows)))
    return tuple(out)


def perturbed_pairs(
    corpus: tuple[Graph, ...], seed: int, per_graph: int = 1
) -> list[tuple[Graph, Graph]]:
    """Seeded random edge toggles: each pair differs in 1..n vertex pairs."""
    rng = np.random.default_rng(seed)
    pairs = []
    for g in corpus:
        if g.n < 2:
            continue
        slots = [(u, v) for u in range(g.n) for v in range(u + 1, g.n)]
        for _ in range(per_graph):
            k = int(rng.integers(1, g.n + 1))
            picks = rng.choice(len(slots), size=min(k, len(slots)), replace=False)
            rows = list(g.rows)
            for i in picks:
                u, v = slots[int(i)]
                rows[u] ^= 1 << v
                rows[v] ^= 1 << u
            pairs.append((g, Graph(g.n, tuple(rows))))
    return pairs


# -- the suite ----------------------------------------------------------------

DEFAULT_KNS_FAMILIES: tuple[tuple[str, ...], ...] = (("K3",), ("K4",), ("C4",))


class _LambdaCache:
    def __init__(self, restarts: int, seed: int, max_iter: int, threads: int):
        self.restarts = restarts
        self.seed = seed
        self.max_iter = max_iter
        self.threads = threads
        self._store: dict[tuple, float] = {}

    def value(self, g: Graph, alpha: float, boost: int = 1) -> float:
        key = (alpha, g.n, g.rows, boost)
        got = self._store.get(key)
        if got is None:
            got = lambda_alpha(
                g,
                alpha,
                restarts=self.restarts * boost,
                seed=self.seed,
                max_iter=self.max_iter,
                threads=self.threads,
            ).value
            self._store[key] = got
        return got


def run_suite(
    graphs: Iterable[Graph],
    alphas: tuple[float, ...] = (2.0,),
    *,
    claims: tuple[str, ...] = CLAIMS,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = DEFAULT_SEED,
    max_iter: int = DEFAULT_MAX_ITER,
    threads: int = 1,
    kns_families: Optional[tuple[GraphFamily, ...]] = None,
    kns_n_max: int = 6,
) -> tuple[VerificationOutcome, ...]:
    """Check the requested claims over a corpus; violations come back as data
    so the caller can render them before deciding an exit status.

    The upper bounds instantiate r as each graph's exact clique number (the
    sharpest admissible case).  Perturbation pairs are seeded random edge
    toggles of corpus graphs.  MS compares the exact alpha = 1 value with the
    optimiser just above 1.  KNS checks each family's edge-ratio sequence for
    monotonicity and the density floor, in exact rationals.
    """
    unknown = set(claims) - set(CLAIMS)
    if unknown:
        raise ValueError(f"unknown claims: {sorted(unknown)}")
    if kns_families is None:
        kns_families = tuple(parse_family(spec) for spec in DEFAULT_KNS_FAMILIES)
    corpus = tuple(graphs)
    cache = _LambdaCache(restarts, seed, max_iter, threads)
    outcomes = []
    for claim in claims:
        if claim == "IN1":
            outcomes.append(_bound_claim(claim, corpus, alphas, cache, in1_bound))
        elif claim == "IN2":
            outcomes.append(_bound_claim(claim, corpus, alphas, cache, in2_bound))
        elif claim == "PRO10":
            outcomes.append(_pro10_claim(corpus, alphas, cache, seed))
        elif claim == "LOWER":
            outcomes.append(_lower_claim(corpus, alphas, cache))
        elif claim == "MS":
            outcomes.append(_ms_claim(corpus, cache))
        elif claim == "KNS":
            outcomes.append(_kns_claim(kns_families, kns_n_max))
    return tuple(outcomes)


def _finish(claim, instances, violations, max_slack) -> VerificationOutcome:
    ordered = tuple(sorted(violations, key=lambda v: (v.subject, v.alpha or 0.0)))
    return VerificationOutcome(claim, instances, ordered, max_slack)


def _bound_claim(claim, corpus, alphas, cache, bound_fn) -> VerificationOutcome:
    instances = 0
    violations = []
    max_slack: Optional[float] = None
    for g in corpus:
        r = clique_number(g)
        for a in alphas:
            rhs = bound_fn(g, r, a)
            lhs = cache.value(g, a)
            if -_NEAR_TIGHT <= lhs - rhs <= NUMERIC_BUDGET:
                lhs = max(lhs, cache.value(g, a, boost=10))
            slack = lhs - rhs
            instances += 1
            max_slack = slack if max_slack is None else max(max_slack, slack)
            if slack > NUMERIC_BUDGET:
                violations.append(Counterexample(claim, to_graph6(g), a, lhs, rhs))
    return _finish(claim, instances, violations, max_slack)


def _pro10_claim(corpus, alphas, cache, seed) -> VerificationOutcome:
    pairs = perturbed_pairs(corpus, seed)
    instances = 0
    violations = []
    max_slack: Optional[float] = None
    for a in alphas:
        if a <= 1.0 + 1e-9:
            continue
        for g1, g2 in pairs:
            rhs = pro10_bound(g1, g2, a)
            lhs = abs(cache.value(g1, a) - cache.value(g2, a))
            if -_NEAR_TIGHT <= lhs - rhs <= NUMERIC_BUDGET:
                lhs = abs(cache.value(g1, a, boost=10) - cache.value(g2, a, boost=10))
            slack = lhs - rhs
            instances += 1
            max_slack = slack if max_slack is None else max(max_slack, slack)
            if slack > NUMERIC_BUDGET:
                subject = f"{to_graph6(g1)} vs {to_graph6(g2)}"
                violations.append(Counterexample("PRO10", subject, a, lhs, rhs))
    return _finish("PRO10", instances, violations, max_slack)


def _lower_claim(corpus, alphas, cache) -> VerificationOutcome:
    instances = 0
    violations = []
    max_slack: Optional[float] = None
    for g in corpus:
        for a in alphas:
            lhs = lambda_lower_bound(g, a)
            rhs = cache.value(g, a)
            slack = lhs - rhs
            instances += 1
            max_slack = slack if max_slack is None else max(max_slack, slack)
            if slack > LOWER_BUDGET:
                violations.append(Counterexample("LOWER", to_graph6(g), a, lhs, rhs))
    return _finish("LOWER", instances, violations, max_slack)


def _ms_claim(corpus, cache) -> VerificationOutcome:
    instances = 0
    violations = []
    max_slack: Optional[float] = None
    for g in corpus:
        exact = float(lambda_one(g).value_exact)
        near = cache.value(g, 1.0 + 1e-4)
        lhs = abs(exact - near)
        slack = lhs - MS_GAP
        instances += 1
        max_slack = slack if max_slack is None else max(max_slack, slack)
        if slack > 0.0:
            violations.append(Counterexample("MS", to_graph6(g), 1.0 + 1e-4, lhs, MS_GAP))
    return _finish("MS", instances, violations, max_slack)


def _kns_claim(families: tuple[GraphFamily, ...], n_max: int) -> VerificationOutcome:
    instances = 0
    violations = []
    max_slack: Optional[float] = None
    for family in families:
        label = ",".join(family.graph6()) or "(empty)"
        cls = classify(family)
        enum = PropertyEnumerator(family, n_max)
        ratios: list[Fraction] = []
        for n in range(2, n_max + 1):
            try:
                ratios.append(ex_value(family, n, enumerator=enum).ratio())
            except EmptyPropertyLevel:
                break
        for k in range(1, len(ratios)):
            slack = float(ratios[k] - ratios[k - 1])
            instances += 1
            max_slack = slack if max_slack is None else max(max_slack, slack)
            if ratios[k] > ratios[k - 1]:
                violations.append(
                    Counterexample(
                        "KNS", f"{label} at n={k + 2}", None, float(ratios[k]), float(ratios[k - 1])
                    )
                )
        if cls.pi is not None:
            for k, ratio in enumerate(ratios):
                slack = float(cls.pi - ratio)
                instances += 1
                max_slack = slack if max_slack is None else max(max_slack, slack)
                if ratio < cls.pi:
                    violations.append(
                        Counterexample(
                            "KNS",
                            f"{label} density floor at n={k + 2}",
                            None,
                            float(cls.pi),
                            float(ratio),
                        )
                    )
    return _finish("KNS", instances, violations, max_slack)


# -- tightness witnesses ------------------------------------------------------


def tightness_instances(
    *,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = DEFAULT_SEED,
    threads: int = 1,
) -> list[tuple[str, str, float, float]]:
    """Instances where the upper bounds hold with equality at alpha = 2.

    Balanced complete multipartite graphs are regular, so they meet both
    bounds exactly; complete graphs are the all-parts-singleton case.
    Returns (claim, graph6, lhs, rhs) tuples whose sides should agree to
    within numerical tolerance.
    """
    witnesses = [
        complete_graph(2),
        complete_graph(3),
        complete_graph(4),
        complete_graph(6),
        turan_graph(2, 4),
        turan_graph(2, 6),
        turan_graph(3, 6),
    ]
    out = []
    for g in witnesses:
        lam = lambda_alpha(g, 2.0, restarts=restarts, seed=seed, threads=threads).value
        r = clique_number(g)
        out.append(("IN1", to_graph6(g), lam, in1_bound(g, r, 2.0)))
        out.append(("IN2", to_graph6(g), lam, in2_bound(g, r, 2.0)))
    return out
