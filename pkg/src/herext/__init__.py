"""Extremal edge counts and alpha-spectral parameters of hereditary graph
classes, verified by exhaustive search on small orders."""

from herext.families import (
    GraphFamily,
    PropertyClassification,
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
    CanonicalForm,
    Graph,
    canonical_form,
    canonical_graph,
    clique_number,
    complete_graph,
    complete_multipartite,
    contains_induced,
    cycle_graph,
    empty_graph,
    from_graph6,
    graph_from_edges,
    path_graph,
    to_graph6,
    turan_graph,
)
from herext.lambda_alpha import (
    AlphaWeightVector,
    LambdaResult,
    lambda_alpha,
    lambda_lower_bound,
    lambda_one,
    spectral_radius,
)
from herext.search import (
    EmptyPropertyLevel,
    PropertyEnumerator,
    SearchReport,
    build_report,
    enumerate_property,
    ex_value,
    lambda_value,
)
from herext.verify import (
    VerificationOutcome,
    check_in1,
    check_in2,
    check_pro10,
    run_suite,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaWeightVector",
    "CanonicalForm",
    "EmptyPropertyLevel",
    "Graph",
    "GraphFamily",
    "LambdaResult",
    "PropertyClassification",
    "PropertyEnumerator",
    "SearchReport",
    "VerificationOutcome",
    "admits",
    "beta",
    "build_report",
    "canonical_form",
    "canonical_graph",
    "check_in1",
    "check_in2",
    "check_pro10",
    "classify",
    "clique_number",
    "complete_graph",
    "complete_multipartite",
    "contains_induced",
    "cycle_graph",
    "empty_graph",
    "enumerate_property",
    "ex_value",
    "from_graph6",
    "graph_from_edges",
    "is_infinite_class",
    "lambda_alpha",
    "lambda_lower_bound",
    "lambda_one",
    "lambda_value",
    "multipartite_part_count",
    "omega_lower",
    "parse_family",
    "parse_graph",
    "path_graph",
    "run_suite",
    "spectral_radius",
    "to_graph6",
    "turan_graph",
]
