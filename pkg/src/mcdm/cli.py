"""Batch front end: derive weights, rank a catalog, compare ranking methods.

Exit codes are a contract: 0 success, 1 error, 2 weight derivation finished
but the consistency ratio exceeds 0.1, 3 empty candidate set, 64 usage error.
JSON output is deterministic: sorted keys, versioned schema, no timestamps.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path
from typing import Sequence

from . import __version__
from .ahp import AhpError, derive_weights, load_matrix, weights_payload
from .catalog import (
    CatalogError,
    EmptyCategoryError,
    LocalCatalogProvider,
    load_catalog,
)
from .scoring import (
    METHODS,
    ScoringConfig,
    ScoringError,
    method_weights,
    rank,
    ranked_result_payload,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONSISTENT = 2
EXIT_NO_CANDIDATES = 3
EXIT_USAGE = 64

SCHEMA_VERSION = "1"

_METHOD_ALIASES = {
    "ahp": "ahp",
    "equal": "equal_weights",
    "equal_weights": "equal_weights",
    "similarity": "similarity_only",
    "similarity_only": "similarity_only",
}


class _Parser(argparse.ArgumentParser):
    # usage problems exit 64, keeping 2 free for the inconsistency signal
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _envelope(effective_config: dict, results: object) -> str:
    payload = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "effective_config": effective_config,
        "results": results,
    }
    return json.dumps(payload, sort_keys=True)


def _load_json_config(path: str | None) -> dict:
    if not path:
        return {}
    return json.loads(Path(path).read_text(encoding="utf-8"))


def _scoring_config(args: argparse.Namespace) -> ScoringConfig:
    # precedence: flags > config file > defaults
    config = ScoringConfig()
    file_values = _load_json_config(getattr(args, "config", None))
    allowed = set(config.as_dict())
    unknown = set(file_values) - allowed
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    if "price_percentiles" in file_values:
        file_values["price_percentiles"] = tuple(file_values["price_percentiles"])
    config = replace(config, **file_values)
    overrides = {}
    for name in ("rating_max", "nr_threshold", "nvr_threshold", "nvp_threshold"):
        value = getattr(args, name, None)
        if value is not None:
            overrides[name] = value
    if getattr(args, "top", None) is not None:
        overrides["top_n"] = args.top
    return replace(config, **overrides)


def cmd_ahp(args: argparse.Namespace) -> int:
    matrix = load_matrix(args.matrix)
    weights, report = derive_weights(matrix)
    payload = weights_payload(weights, report)
    if args.json:
        print(_envelope({"matrix_file": str(args.matrix)}, payload))
    else:
        width = max(len("criterion"), *(len(label) for label in weights.labels))
        print(f"{'criterion':<{width}}  weight")
        for label, weight in zip(weights.labels, weights.weights):
            print(f"{label:<{width}}  {weight:.4f}")
        print(
            f"lambda_max {report.lambda_max:.4f}  ci {report.ci:.4f}  "
            f"cr {report.cr:.4f}  acceptable {'yes' if report.acceptable else 'no'}"
        )
    return EXIT_OK if report.acceptable else EXIT_INCONSISTENT


def _rank_one(provider: LocalCatalogProvider, reference_key: str, method: str,
              matrix_path: str | None, config: ScoringConfig, limit: int):
    reference = provider.find_reference(reference_key)
    candidates = provider.related_products(reference, limit=limit)
    matrix = load_matrix(matrix_path) if matrix_path else None
    weights, report = method_weights(method, matrix)
    results = rank(reference, candidates, weights, config)
    return ranked_result_payload(
        reference, results, weights, consistency=report, config=config, method=method
    )


def cmd_rank(args: argparse.Namespace, parser: _Parser) -> int:
    method = _METHOD_ALIASES[args.method]
    if method == "ahp" and not args.matrix:
        parser.error("--matrix is required when --method is 'ahp'")
    config = _scoring_config(args)
    provider = LocalCatalogProvider(load_catalog(args.catalog))
    try:
        payload = _rank_one(provider, args.reference, method, args.matrix, config, args.limit)
    except EmptyCategoryError as exc:
        print(f"mcdm rank: {exc}", file=sys.stderr)
        return EXIT_NO_CANDIDATES
    if args.json:
        print(_envelope(config.as_dict(), payload))
    else:
        _print_rank_table(payload)
    return EXIT_OK


def _print_rank_table(payload: dict) -> None:
    reference = payload["reference"]
    print(f"reference: {reference['id']}  {reference['title']}  (price {reference['price']})")
    print(f"method: {payload['method']}  weights: "
          + "  ".join(f"{k}={v:.4f}" for k, v in payload["weights"].items()))
    header = f"{'rank':>4}  {'id':<8} {'score':>7}  {'SI':>6} {'NR':>6} {'RA':>6} {'NVR':>6} {'NVP':>6}  title"
    print(header)
    for row in payload["results"]:
        display = row["display"]
        scores = display["scores"]
        print(
            f"{row['rank']:>4}  {row['id']:<8} {display['comprehensive']:>7.2f}  "
            f"{scores['si']:>6.2f} {scores['nr']:>6.2f} {scores['ra']:>6.2f} "
            f"{scores['nvr']:>6.2f} {scores['nvp']:>6.2f}  {row['title']}"
        )


def kendall_tau_distance(a: Sequence[str], b: Sequence[str]) -> dict:
    """Normalized Kendall tau distance between two rankings.

    Computed over the ids common to both lists (truncation can differ), as
    discordant pairs over all pairs; 0 means identical relative order,
    1 means fully reversed.
    """
    common = [item for item in a if item in set(b)]
    position_b = {item: i for i, item in enumerate(b)}
    discordant = 0
    n = len(common)
    for i in range(n):
        for j in range(i + 1, n):
            if position_b[common[i]] > position_b[common[j]]:
                discordant += 1
    total = n * (n - 1) // 2
    return {
        "distance": discordant / total if total else 0.0,
        "discordant_pairs": discordant,
        "common_items": n,
        "lengths": [len(a), len(b)],
    }


def cmd_experiment(args: argparse.Namespace) -> int:
    config = _scoring_config(args)
    # compare full orderings: every candidate in the category is ranked
    config = replace(config, top_n=30)
    catalog = load_catalog(args.catalog)
    provider = LocalCatalogProvider(catalog)
    matrix = load_matrix(args.matrix)

    raw = json.loads(Path(args.references).read_text(encoding="utf-8"))
    reference_keys = raw.get("references") if isinstance(raw, dict) else raw
    if not isinstance(reference_keys, list) or not reference_keys:
        raise ValueError(
            f"{args.references}: expected a non-empty JSON array of reference ids "
            "(bare or under a 'references' key)"
        )

    results = []
    for key in reference_keys:
        reference = provider.find_reference(str(key))
        try:
            candidates = provider.related_products(reference, limit=30)
        except EmptyCategoryError as exc:
            print(f"mcdm experiment: {exc}", file=sys.stderr)
            return EXIT_NO_CANDIDATES
        orderings: dict[str, list[str]] = {}
        for method in METHODS:
            weights, _ = method_weights(method, matrix if method == "ahp" else None)
            ranked = rank(reference, candidates, weights, config)
            orderings[method] = [item.product.id for item in ranked]
        tau = {}
        for i, first in enumerate(METHODS):
            for second in METHODS[i + 1:]:
                tau[f"{first}_vs_{second}"] = kendall_tau_distance(
                    orderings[first], orderings[second]
                )
        results.append(
            {
                "reference": reference.id,
                "category": provider.category_of(reference.id),
                "candidates": len(candidates),
                "orderings": orderings,
                "tau": tau,
            }
        )

    if args.json:
        print(_envelope(config.as_dict(), results))
    else:
        for entry in results:
            print(f"== {entry['category']}  (reference {entry['reference']}, "
                  f"{entry['candidates']} candidates)")
            for method in METHODS:
                ids = entry["orderings"][method]
                print(f"  {method:<16} {' '.join(ids)}")
            for pair, stats in entry["tau"].items():
                print(f"  tau {pair}: {stats['distance']:.4f} "
                      f"({stats['discordant_pairs']} discordant of {stats['common_items']} common)")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="mcdm", description="Multi-criteria product ranking tools")
    parser.add_argument("--version", action="version", version=f"mcdm {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_ahp = sub.add_parser("ahp", help="derive criterion weights from a pairwise matrix file")
    p_ahp.add_argument("--matrix", required=True, help="matrix JSON file")
    p_ahp.add_argument("--json", action="store_true", help="emit a JSON envelope")

    p_rank = sub.add_parser("rank", help="rank a catalog against a reference product")
    p_rank.add_argument("--catalog", required=True, help="catalog JSON file")
    p_rank.add_argument("--reference", required=True, help="product id or URL")
    p_rank.add_argument("--matrix", help="matrix JSON file (required for --method ahp)")
    p_rank.add_argument("--method", choices=sorted(_METHOD_ALIASES), default="ahp")
    p_rank.add_argument("--top", type=int, help="number of results (1-30)")
    p_rank.add_argument("--limit", type=int, default=30, help="candidate fetch limit (1-30)")
    p_rank.add_argument("--config", help="JSON file with scoring-config values")
    p_rank.add_argument("--rating-max", dest="rating_max", type=float)
    p_rank.add_argument("--nr-threshold", dest="nr_threshold", type=int)
    p_rank.add_argument("--nvr-threshold", dest="nvr_threshold", type=int)
    p_rank.add_argument("--nvp-threshold", dest="nvp_threshold", type=int)
    p_rank.add_argument("--json", action="store_true", help="emit a JSON envelope")

    p_exp = sub.add_parser("experiment", help="compare the three ranking methods per reference")
    p_exp.add_argument("--catalog", required=True, help="catalog JSON file")
    p_exp.add_argument("--references", required=True, help="JSON file listing reference ids")
    p_exp.add_argument("--matrix", required=True, help="matrix JSON file for the ahp method")
    p_exp.add_argument("--config", help="JSON file with scoring-config values")
    p_exp.add_argument("--rating-max", dest="rating_max", type=float)
    p_exp.add_argument("--nr-threshold", dest="nr_threshold", type=int)
    p_exp.add_argument("--nvr-threshold", dest="nvr_threshold", type=int)
    p_exp.add_argument("--nvp-threshold", dest="nvp_threshold", type=int)
    p_exp.add_argument("--json", action="store_true", help="emit a JSON envelope")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "ahp":
            return cmd_ahp(args)
        if args.command == "rank":
            return cmd_rank(args, parser)
        if args.command == "experiment":
            return cmd_experiment(args)
        parser.error(f"unknown command {args.command!r}")
    except (AhpError, CatalogError, ScoringError, OSError, ValueError, KeyError,
            json.JSONDecodeError) as exc:
        print(f"mcdm: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_ERROR  # unreachable; parser.error exits


if __name__ == "__main__":
    raise SystemExit(main())
