"""Exhaustive search over a hereditary class, one vertex count at a time.

Level n holds one canonical representative per isomorphism class of n-vertex
graphs admitted by the forbidden family.  Levels are built by extending each
representative of level n-1 with a new vertex in every possible way; because
the class is hereditary, a candidate can only be rejected by a forbidden copy
through the new vertex, and every admitted class on n vertices arises from
some extension.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from herext.families import GraphFamily, PropertyClassification, classify
from herext.graphs import (
    Graph,
    canonical_graph,
    clique_number,
    contains_induced,
    empty_graph,
    to_graph6,
)
from herext.lambda_alpha import (
    DEFAULT_MAX_ITER,
    DEFAULT_RESTARTS,
    DEFAULT_SEED,
    LambdaResult,
    lambda_alpha,
)

DEFAULT_VERTEX_LIMIT = 8
HARD_VERTEX_LIMIT = 10

LIMIT_NOTE = (
    "Values at the largest searched n are finite-size trend evidence for the "
    "stated limits, not a verification of the limits themselves."
)


class EmptyPropertyLevel(Exception):
    """Raised when an extremal value is requested at an empty level."""

    def __init__(self, n: int):
        super().__init__(f"the class has no graphs on {n} vertices")
        self.n = n


class PropertyEnumerator:
    """Caches levels of one hereditary class up to a vertex limit."""

    def __init__(self, family: GraphFamily, limit: int = DEFAULT_VERTEX_LIMIT):
        if not 0 <= limit <= HARD_VERTEX_LIMIT:
            raise ValueError(f"vertex limit must be in 0..{HARD_VERTEX_LIMIT}, got {limit}")
        if limit > DEFAULT_VERTEX_LIMIT:
            warnings.warn(
                f"searching up to {limit} vertices may take a long time",
                RuntimeWarning,
                stacklevel=2,
            )
        self.family = family
        self.limit = limit
        self._levels: dict[int, tuple[Graph, ...]] = {}

    def level(self, n: int) -> tuple[Graph, ...]:
        """Canonical representatives on n vertices, sorted by canonical key."""
        if not 0 <= n <= self.limit:
            raise ValueError(f"level must be in 0..{self.limit}, got {n}")
        got = self._levels.get(n)
        if got is not None:
            return got
        if n == 0:
            reps: tuple[Graph, ...] = (empty_graph(0),)
        else:
            members = [m for m in self.family.members if m.n <= n]
            seen: dict[str, Graph] = {}
            for g in self.level(n - 1):
                for mask in range(1 << g.n):
                    h = g.with_vertex(mask)
                    # g is admitted, so a forbidden copy in h must use the
                    # new vertex; checking only those copies is sound.
                    if any(contains_induced(h, m, forced=g.n) for m in members):
                        continue
                    ch = canonical_graph(h)
                    seen.setdefault(to_graph6(ch), ch)
            reps = tuple(seen[k] for k in sorted(seen))
        self._levels[n] = reps
        return reps


def enumerate_property(
    family: GraphFamily, n: int, limit: Optional[int] = None
) -> tuple[Graph, ...]:
    """One-shot level query; reuse a PropertyEnumerator for several levels."""
    return PropertyEnumerator(family, limit if limit is not None else max(n, 0)).level(n)


@dataclass(frozen=True)
class ExtremalValue:
    """Maximum edge count at one level, with every attaining class."""

    n: int
    value: int
    witnesses: tuple[str, ...]
    level_count: int

    def ratio(self) -> Fraction:
        if self.n < 2:
            raise ValueError("edge ratio needs at least 2 vertices")
        return Fraction(self.value, self.n * (self.n - 1) // 2)


def ex_value(
    family: GraphFamily, n: int, *, enumerator: Optional[PropertyEnumerator] = None
) -> ExtremalValue:
    enum = enumerator if enumerator is not None else PropertyEnumerator(family, n)
    reps = enum.level(n)
    if not reps:
        raise EmptyPropertyLevel(n)
    best = max(g.edge_count() for g in reps)
    witnesses = tuple(to_graph6(g) for g in reps if g.edge_count() == best)
    return ExtremalValue(n, best, witnesses, len(reps))


@dataclass(frozen=True)
class LambdaSearchValue:
    """Maximum parameter value at one level and the graph attaining it."""

    n: int
    alpha: float
    value: float
    value_exact: Optional[Fraction]
    witness: str
    converged: bool

    def normalized(self) -> float:
        """Value over n^(2 - 2/alpha); constant-scale view across n."""
        if self.n < 1:
            raise ValueError("normalisation needs at least 1 vertex")
        return self.value * self.n ** (2.0 / self.alpha - 2.0)


def lambda_value(
    family: GraphFamily,
    n: int,
    alpha: float,
    *,
    enumerator: Optional[PropertyEnumerator] = None,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = DEFAULT_SEED,
    max_iter: int = DEFAULT_MAX_ITER,
    threads: int = 1,
) -> LambdaSearchValue:
    enum = enumerator if enumerator is not None else PropertyEnumerator(family, n)
    reps = enum.level(n)
    if not reps:
        raise EmptyPropertyLevel(n)
    if abs(alpha - 1.0) <= 1e-9:
        # Exact route: the level maximum is 1 - 1/r for the largest clique
        # order r present, attained by any representative reaching r.
        best_r = 0
        witness = reps[0]
        for g in reps:
            r = clique_number(g)
            if r > best_r:
                best_r = r
                witness = g
        exact = Fraction(best_r - 1, best_r) if best_r else Fraction(0)
        return LambdaSearchValue(n, 1.0, float(exact), exact, to_graph6(witness), True)
    best: Optional[LambdaResult] = None
    witness = reps[0]
    for g in reps:
        res = lambda_alpha(
            g, alpha, restarts=restarts, seed=seed, max_iter=max_iter, threads=threads
        )
        if best is None or res.value > best.value:
            best = res
            witness = g
    assert best is not None
    return LambdaSearchValue(n, alpha, best.value, None, to_graph6(witness), best.converged)


@dataclass(frozen=True)
class LambdaCell:
    alpha: float
    value: float
    value_exact: Optional[Fraction]
    normalized: float
    witness: str
    converged: bool


@dataclass(frozen=True)
class LevelRecord:
    n: int
    count: int
    ex: Optional[int]
    ex_ratio: Optional[Fraction]
    ex_witnesses: tuple[str, ...]
    lambda_by_alpha: tuple[LambdaCell, ...]


@dataclass(frozen=True)
class NormalizedLambdaSequence:
    """One alpha's normalised level maxima across the searched range."""

    alpha: float
    values: tuple[float, ...]
    nonincreasing: bool
    predicted_limit: Optional[Fraction]
    gap_to_limit: Optional[float]


@dataclass(frozen=True)
class SearchReport:
    family: tuple[str, ...]
    classification: PropertyClassification
    n_max: int
    alphas: tuple[float, ...]
    per_n: tuple[LevelRecord, ...]
    normalized_edge_sequence: tuple[Fraction, ...]
    edge_sequence_nonincreasing: Optional[bool]
    edge_sequence_at_least_pi: Optional[bool]
    edge_gap_to_pi: Optional[float]
    normalized_lambda_sequences: tuple[NormalizedLambdaSequence, ...]
    limit_note: str

    def to_json_dict(self) -> dict:
        return {
            "schema_version": 1,
            "family": list(self.family),
            "classification": self.classification.to_json_dict(),
            "n_max": self.n_max,
            "alphas": list(self.alphas),
            "per_n": [
                {
                    "n": rec.n,
                    "count": rec.count,
                    "ex": rec.ex,
                    "ex_ratio": _frac(rec.ex_ratio),
                    "ex_witnesses": list(rec.ex_witnesses),
                    "lambda_by_alpha": {
                        f"{c.alpha:g}": {
                            "value": c.value,
                            "value_exact": _frac(c.value_exact),
                            "normalized": c.normalized,
                            "witness": c.witness,
                            "converged": c.converged,
                        }
                        for c in rec.lambda_by_alpha
                    },
                }
                for rec in self.per_n
            ],
            "normalized_edge_sequence": {
                "values": [_frac(r) for r in self.normalized_edge_sequence],
                "nonincreasing": self.edge_sequence_nonincreasing,
                "at_least_pi": self.edge_sequence_at_least_pi,
                "gap_to_pi": self.edge_gap_to_pi,
            },
            "normalized_lambda_sequences": {
                f"{s.alpha:g}": {
                    "values": list(s.values),
                    "nonincreasing": s.nonincreasing,
                    "predicted_limit": _frac(s.predicted_limit),
                    "gap_to_limit": s.gap_to_limit,
                }
                for s in self.normalized_lambda_sequences
            },
            "limit_note": self.limit_note,
        }


def _frac(x: Optional[Fraction]) -> Optional[str]:
    return None if x is None else f"{x.numerator}/{x.denominator}"


def build_report(
    family: GraphFamily,
    n_max: int,
    alphas: tuple[float, ...] = (2.0,),
    *,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = DEFAULT_SEED,
    max_iter: int = DEFAULT_MAX_ITER,
    threads: int = 1,
) -> SearchReport:
    """Search levels 1..n_max and summarise extremal values and trends.

    The sequence verdicts are evidence about the searched range only; the
    ``limit_note`` field restates that in every serialized report.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    enum = PropertyEnumerator(family, n_max)
    cls = classify(family)
    per_n = []
    ratios: list[Fraction] = []
    normalized: dict[float, list[float]] = {a: [] for a in alphas}
    for n in range(1, n_max + 1):
        reps = enum.level(n)
        if not reps:
            per_n.append(LevelRecord(n, 0, None, None, (), ()))
            continue
        ev = ex_value(family, n, enumerator=enum)
        cells = []
        for a in alphas:
            lv = lambda_value(
                family,
                n,
                a,
                enumerator=enum,
                restarts=restarts,
                seed=seed,
                max_iter=max_iter,
                threads=threads,
            )
            cells.append(
                LambdaCell(a, lv.value, lv.value_exact, lv.normalized(), lv.witness, lv.converged)
            )
            normalized[a].append(lv.normalized())
        ratio = ev.ratio() if n >= 2 else None
        if ratio is not None:
            ratios.append(ratio)
        per_n.append(LevelRecord(n, ev.level_count, ev.value, ratio, ev.witnesses, tuple(cells)))
    nonincreasing = _nonincreasing_exact(ratios) if ratios else None
    at_least = None
    edge_gap = None
    if ratios and cls.pi is not None:
        at_least = all(r >= cls.pi for r in ratios)
        edge_gap = float(ratios[-1] - cls.pi)
    sequences = []
    for a in alphas:
        vals = tuple(normalized[a])
        limit = cls.lambda_one_limit if abs(a - 1.0) <= 1e-9 else cls.lambda_alpha_limit
        gap = float(vals[-1]) - float(limit) if vals and limit is not None else None
        sequences.append(
            NormalizedLambdaSequence(a, vals, _nonincreasing_float(vals), limit, gap)
        )
    return SearchReport(
        family=family.graph6(),
        classification=cls,
        n_max=n_max,
        alphas=tuple(alphas),
        per_n=tuple(per_n),
        normalized_edge_sequence=tuple(ratios),
        edge_sequence_nonincreasing=nonincreasing,
        edge_sequence_at_least_pi=at_least,
        edge_gap_to_pi=edge_gap,
        normalized_lambda_sequences=tuple(sequences),
        limit_note=LIMIT_NOTE,
    )


def _nonincreasing_exact(seq: list[Fraction]) -> bool:
    return all(b <= a for a, b in zip(seq, seq[1:]))


def _nonincreasing_float(seq: tuple[float, ...]) -> bool:
    tol = 1e-9
    return all(b <= a + tol for a, b in zip(seq, seq[1:]))


def report_csv_rows(report: SearchReport) -> list[list[str]]:
    """Flat table: one row per level, lambda columns per alpha."""
    header = ["n", "count", "ex", "ex_ratio", "ex_witnesses"]
    for a in report.alphas:
        header.extend([f"lambda_{_fmt_alpha(a)}", f"normalized_{_fmt_alpha(a)}"])
    rows = [header]
    for rec in report.per_n:
        row = [
            str(rec.n),
            str(rec.count),
            "" if rec.ex is None else str(rec.ex),
            "" if rec.ex_ratio is None else str(_frac(rec.ex_ratio)),
            ";".join(rec.ex_witnesses),
        ]
        by_alpha = {c.alpha: c for c in rec.lambda_by_alpha}
        for a in report.alphas:
            c = by_alpha.get(a)
            if c is None:
                row.extend(["", ""])
            else:
                row.extend([repr(c.value), repr(c.normalized)])
        rows.append(row)
    return rows


def _fmt_alpha(a: float) -> str:
    return f"{a:g}".replace(".", "_")


def turan_edge_count(r: int, n: int) -> int:
    """Edge count of the balanced complete r-partite graph on n vertices."""
    if r < 1 or n < 0:
        raise ValueError("need r >= 1 and n >= 0")
    if n < r:
        return math.comb(n, 2)
    q, rem = divmod(n, r)
    sizes = [q + 1] * rem + [q] * (r - rem)
    return (n * n - sum(s * s for s in sizes)) // 2
