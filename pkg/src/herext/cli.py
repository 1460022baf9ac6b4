"""Command-line front end.

Four subcommands: ``classify`` a forbidden family, ``lambda`` for a single
graph, ``extremal`` for the level-by-level search report, and ``verify`` for
the inequality suites.  Reports are JSON (extremal also does CSV); exact
rationals travel as "p/q" strings.  Exit status: 0 success, 1 verification
violation, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

from herext import kernels
from herext.families import classify, parse_family, parse_graph
from herext.graphs import to_graph6
from herext.lambda_alpha import (
    DEFAULT_MAX_ITER,
    DEFAULT_RESTARTS,
    DEFAULT_SEED,
    KKT_TOL,
    lambda_alpha,
)
from herext.search import HARD_VERTEX_LIMIT, build_report, report_csv_rows
from herext.verify import (
    CLAIMS,
    all_graphs_up_to,
    random_graphs,
    run_suite,
    suite_json_dict,
)

OUTPUT_DIR_ENV = "HEREXT_OUTPUT_DIR"


@dataclass(frozen=True)
class RunConfig:
    command: str
    family_spec: tuple[str, ...] = ()
    graph_spec: Optional[str] = None
    alphas: tuple[float, ...] = (2.0,)
    n_max: int = 6
    seed: int = DEFAULT_SEED
    restarts: int = DEFAULT_RESTARTS
    max_iter: int = DEFAULT_MAX_ITER
    tolerance: float = KKT_TOL
    threads: int = 1
    corpus: str = "all"
    count: int = 100
    claims: tuple[str, ...] = field(default=CLAIMS)
    output_path: Optional[str] = None
    output_format: str = "json"


def _alpha_arg(text: str) -> float:
    try:
        a = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--alpha expects a number, got {text!r}") from None
    if a < 1.0:
        raise argparse.ArgumentTypeError(f"--alpha must be >= 1, got {text}")
    return a


def _tolerance_arg(text: str) -> float:
    try:
        t = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--tolerance expects a number, got {text!r}") from None
    if not 0.0 < t <= 1e-2:
        raise argparse.ArgumentTypeError(f"--tolerance must be in (0, 1e-2], got {text}")
    return t


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def _n_arg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"-n expects an integer, got {text!r}") from None
    if not 1 <= v <= HARD_VERTEX_LIMIT:
        raise argparse.ArgumentTypeError(f"-n must be in 1..{HARD_VERTEX_LIMIT}, got {text}")
    return v


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="herext",
        description="Extremal edge counts and alpha-spectral parameters of "
        "hereditary graph classes, by exhaustive search.",
    )

    def common(sub: argparse.ArgumentParser, family: bool) -> None:
        if family:
            sub.add_argument(
                "-F",
                "--forbid",
                action="append",
                default=[],
                metavar="GRAPH",
                help="forbidden member: a name like K3, C5, P4, E3, K2,2,2 or "
                "a graph6 string; repeat for several members",
            )
        sub.add_argument("--seed", type=_nonneg_int, default=DEFAULT_SEED)
        sub.add_argument("--restarts", type=_nonneg_int, default=DEFAULT_RESTARTS)
        sub.add_argument("--max-iter", type=_positive_int, default=DEFAULT_MAX_ITER)
        sub.add_argument("--threads", type=_positive_int, default=1)
        sub.add_argument("-o", "--output", metavar="PATH", help="write the report here "
                         f"(relative paths resolve under ${OUTPUT_DIR_ENV} when set)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="family parameters and limit predictions")
    common(p, family=True)

    p = sub.add_parser("lambda", help="the parameter of a single graph")
    p.add_argument("-g", "--graph", required=True, metavar="GRAPH",
                   help="a name like K4 or a graph6 string")
    p.add_argument("--alpha", action="append", type=_alpha_arg, default=[], metavar="A")
    p.add_argument("--tolerance", type=_tolerance_arg, default=KKT_TOL,
                   help="stationarity residual required for convergence")
    common(p, family=False)

    p = sub.add_parser("extremal", help="exhaustive level-by-level search report")
    p.add_argument("-n", "--n", "--n-max", dest="n_max", type=_n_arg, default=6,
                   help=f"largest vertex count to search (1..{HARD_VERTEX_LIMIT})")
    p.add_argument("--alpha", action="append", type=_alpha_arg, default=[], metavar="A")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    common(p, family=True)

    p = sub.add_parser("verify", help="run the inequality suites over a corpus")
    p.add_argument("-n", "--n", "--n-max", dest="n_max", type=_n_arg, default=6,
                   help="corpus order: all graphs up to n, or random graphs on n vertices")
    p.add_argument("--alpha", action="append", type=_alpha_arg, default=[], metavar="A")
    p.add_argument("--corpus", choices=("all", "random"), default="all")
    p.add_argument("--count", type=_positive_int, default=100,
                   help="number of random graphs when --corpus random")
    p.add_argument("--claims", default=",".join(CLAIMS),
                   help="comma-separated subset of " + ",".join(CLAIMS))
    common(p, family=True)

    return parser


def parse_args(argv: Optional[list[str]] = None) -> RunConfig:
    parser = _build_parser()
    args = parser.parse_args(argv)
    family_spec = tuple(getattr(args, "forbid", ()) or ())
    graph_spec = getattr(args, "graph", None)
    try:
        parse_family(family_spec)
        if graph_spec is not None:
            parse_graph(graph_spec)
    except ValueError as exc:
        parser.error(str(exc))
    alphas = tuple(getattr(args, "alpha", ()) or ()) or (2.0,)
    claims_raw = getattr(args, "claims", None)
    if claims_raw is None:
        claims = CLAIMS
    else:
        claims = tuple(c.strip().upper() for c in claims_raw.split(",") if c.strip())
        bad = [c for c in claims if c not in CLAIMS]
        if bad:
            parser.error(f"unknown claims: {', '.join(bad)} (choose from {', '.join(CLAIMS)})")
        if not claims:
            parser.error("--claims must name at least one claim")
    return RunConfig(
        command=args.command,
        family_spec=family_spec,
        graph_spec=graph_spec,
        alphas=alphas,
        n_max=getattr(args, "n_max", 6),
        seed=args.seed,
        restarts=args.restarts,
        max_iter=args.max_iter,
        tolerance=getattr(args, "tolerance", KKT_TOL),
        threads=args.threads,
        corpus=getattr(args, "corpus", "all"),
        count=getattr(args, "count", 100),
        claims=claims,
        output_path=args.output,
        output_format=getattr(args, "format", "json"),
    )


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    if not os.path.isabs(path):
        base = os.environ.get(OUTPUT_DIR_ENV)
        if base:
            path = os.path.join(base, path)
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _json_text(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def run(config: RunConfig) -> int:
    """Dispatch one parsed invocation; returns the process exit status."""
    if config.command == "classify":
        family = parse_family(config.family_spec)
        report = {
            "schema_version": 1,
            "family": list(family.graph6()),
            "classification": classify(family).to_json_dict(),
        }
        _emit(_json_text(report), config.output_path)
        return 0

    if config.command == "lambda":
        g = parse_graph(config.graph_spec or "")
        results = [
            lambda_alpha(
                g,
                a,
                restarts=config.restarts,
                seed=config.seed,
                max_iter=config.max_iter,
                kkt_tol=config.tolerance,
                threads=config.threads,
            ).to_json_dict()
            for a in config.alphas
        ]
        report = {
            "schema_version": 1,
            "graph": to_graph6(g),
            "backend": kernels.BACKEND,
            "results": results,
        }
        _emit(_json_text(report), config.output_path)
        return 0

    if config.command == "extremal":
        family = parse_family(config.family_spec)
        report = build_report(
            family,
            config.n_max,
            config.alphas,
            restarts=config.restarts,
            seed=config.seed,
            max_iter=config.max_iter,
            threads=config.threads,
        )
        if config.output_format == "csv":
            buf = io.StringIO()
            csv.writer(buf, lineterminator="\n").writerows(report_csv_rows(report))
            _emit(buf.getvalue(), config.output_path)
        else:
            _emit(_json_text(report.to_json_dict()), config.output_path)
        return 0

    if config.command == "verify":
        if config.corpus == "all":
            corpus = all_graphs_up_to(config.n_max)
        else:
            corpus = random_graphs(config.n_max, config.count, config.seed)
        kns_families = None
        if config.family_spec:
            kns_families = (parse_family(config.family_spec),)
        outcomes = run_suite(
            corpus,
            config.alphas,
            claims=config.claims,
            restarts=config.restarts,
            seed=config.seed,
            max_iter=config.max_iter,
            threads=config.threads,
            kns_families=kns_families,
            kns_n_max=min(config.n_max, 6),
        )
        _emit(_json_text(suite_json_dict(outcomes)), config.output_path)
        ok = all(o.ok() for o in outcomes)
        if not ok:
            for outcome in outcomes:
                for v in outcome.violations:
                    print(v.trace(), file=sys.stderr)
        return 0 if ok else 1

    raise AssertionError(f"unhandled command {config.command!r}")


def main(argv: Optional[list[str]] = None) -> int:
    return run(parse_args(argv))
