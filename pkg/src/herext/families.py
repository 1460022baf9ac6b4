"""Forbidden-subgraph families and what they say about the hereditary class.

A family F of forbidden induced subgraphs defines the class of all graphs
containing no member of F.  Two integers control the asymptotics of that
class: the least clique order in F and the least number of parts of a
complete multipartite member of F.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from herext.graphs import (
    CanonicalForm,
    Graph,
    canonical_form,
    canonical_graph,
    complete_graph,
    complete_multipartite,
    contains_induced,
    cycle_graph,
    empty_graph,
    from_graph6,
    path_graph,
)


class GraphFamily:
    """A finite set of forbidden graphs, stored canonically.

    Members are deduplicated up to isomorphism and kept sorted by canonical
    key, so equal families compare equal regardless of input order or
    labelling.  The empty family is allowed (it forbids nothing); the
    0-vertex graph is not a valid member.
    """

    __slots__ = ("members", "_keys")

    members: tuple[Graph, ...]
    _keys: tuple[CanonicalForm, ...]

    def __init__(self, members: Iterable[Graph] = ()):
        seen: dict[CanonicalForm, Graph] = {}
        for g in members:
            if g.n == 0:
                raise ValueError("the 0-vertex graph cannot be forbidden")
            key = canonical_form(g)
            if key not in seen:
                seen[key] = canonical_graph(g)
        keys = tuple(sorted(seen))
        object.__setattr__(self, "members", tuple(seen[k] for k in keys))
        object.__setattr__(self, "_keys", keys)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("GraphFamily is immutable")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GraphFamily) and self._keys == other._keys

    def __hash__(self) -> int:
        return hash(self._keys)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __repr__(self) -> str:
        inner = ", ".join(k.graph6 for k in self._keys)
        return f"GraphFamily([{inner}])"

    def keys(self) -> tuple[CanonicalForm, ...]:
        return self._keys

    def graph6(self) -> tuple[str, ...]:
        return tuple(k.graph6 for k in self._keys)


def admits(family: GraphFamily, g: Graph) -> bool:
    """True when ``g`` contains no member of ``family`` as induced subgraph."""
    return not any(m.n <= g.n and contains_induced(g, m) for m in family.members)


def omega_lower(family: GraphFamily) -> int:
    """Least r with K_r in the family, or 0 when no member is complete."""
    orders = [m.n for m in family.members if m.is_clique()]
    return min(orders) if orders else 0


def multipartite_part_count(g: Graph) -> int:
    """Number of parts when g is complete multipartite, else 0.

    A graph is complete r-partite exactly when its complement is a disjoint
    union of r cliques (the parts).  Vertex count 0 is not multipartite.
    """
    if g.n == 0:
        return 0
    co = g.complement()
    comps = co.connected_components()
    for comp in comps:
        if not co.induced_subgraph(comp).is_clique():
            return 0
    return len(comps)


def beta(family: GraphFamily) -> int:
    """Least part count over complete multipartite members, or 0 if none."""
    counts = [c for c in (multipartite_part_count(m) for m in family.members) if c > 0]
    return min(counts) if counts else 0


def is_infinite_class(family: GraphFamily) -> bool:
    """Does the class defined by ``family`` contain arbitrarily large graphs?

    It does exactly when every complete graph avoids the family (no clique is
    forbidden) or every Turan-type graph does (the least forbidden clique has
    order >= 2 and the least forbidden multipartite member has >= 2 parts).
    Otherwise some single-vertex or edgeless obstruction caps the order.
    """
    w = omega_lower(family)
    return w == 0 or (w >= 2 and beta(family) >= 2)


@dataclass(frozen=True)
class PropertyClassification:
    """Asymptotic summary of the class defined by a forbidden family.

    ``pi`` is the limiting edge density ex/C(n,2); ``lambda_alpha_limit`` is
    the limit of the parameter normalised by n^(2-2/alpha) for alpha > 1 (it
    coincides with ``pi``); ``lambda_one_limit`` is the limit of the alpha = 1
    value.  All three are None when the class is finite.
    """

    omega_lower: int
    beta: int
    infinite: bool
    pi: Optional[Fraction]
    lambda_alpha_limit: Optional[Fraction]
    lambda_one_limit: Optional[Fraction]

    def to_json_dict(self) -> dict:
        return {
            "omega_lower": self.omega_lower,
            "beta": self.beta,
            "infinite": self.infinite,
            "pi": _frac_str(self.pi),
            "lambda_alpha_limit": _frac_str(self.lambda_alpha_limit),
            "lambda_one_limit": _frac_str(self.lambda_one_limit),
        }


def _frac_str(x: Optional[Fraction]) -> Optional[str]:
    return None if x is None else f"{x.numerator}/{x.denominator}"


def classify(family: GraphFamily) -> PropertyClassification:
    w = omega_lower(family)
    b = beta(family)
    infinite = w == 0 or (w >= 2 and b >= 2)
    if not infinite:
        return PropertyClassification(w, b, False, None, None, None)
    if w == 0:
        # No clique forbidden, so every complete graph stays in the class.
        pi = Fraction(1)
        lam1 = Fraction(1)
    else:
        # Infinite with w != 0 forces w >= 2 and b >= 2.  b == 2 means some
        # complete bipartite graph is forbidden and the density limit is 0.
        pi = 1 - Fraction(1, b - 1)
        lam1 = 1 - Fraction(1, w - 1)
    return PropertyClassification(w, b, True, pi, pi, lam1)


# -- family parsing ----------------------------------------------------------

_NAME_RE = re.compile(r"^([KCPE])(\d+(?:,\d+)*)$")


def parse_graph(spec: str) -> Graph:
    """Parse one graph: K/C/P/E names (``K4``, ``K2,2,2``, ``C5``, ``P4``,
    ``E3``) or a graph6 string."""
    s = spec.strip()
    m = _NAME_RE.match(s)
    if m:
        kind, nums = m.group(1), [int(t) for t in m.group(2).split(",")]
        if kind == "K":
            if len(nums) == 1:
                return complete_graph(nums[0])
            return complete_multipartite(nums)
        if len(nums) != 1:
            raise ValueError(f"{kind} names take a single number, got {s!r}")
        if kind == "C":
            return cycle_graph(nums[0])
        if kind == "P":
            return path_graph(nums[0])
        return empty_graph(nums[0])
    try:
        return from_graph6(s)
    except ValueError:
        raise ValueError(f"cannot parse graph spec {spec!r} as a name or graph6") from None


def parse_family(specs: Iterable[str]) -> GraphFamily:
    return GraphFamily(parse_graph(s) for s in specs)
