"""Command line front end: search a profile, emit interchange JSON."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .search import SearchConfig, config_from_json_dict, search


def _parse_dims(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"bad dims list: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sdpsearch",
        description="Iterative SDP search for maximally entangled states.",
    )
    parser.add_argument("--dims", metavar="D1,D2,...", help="site dimensions")
    parser.add_argument("--out", metavar="STATE_JSON", help="write the best state here")
    parser.add_argument("--config", metavar="CONFIG_JSON", help="SearchConfig JSON file")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--restarts", type=int, default=None)
    parser.add_argument("--max-iterations", type=int, default=None)
    parser.add_argument("--tol", type=float, default=None)
    return parser


def _load_config(args) -> SearchConfig:
    doc = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
        if not isinstance(doc, dict):
            raise ValueError("config JSON must be an object")
    if args.dims:
        doc["dims"] = list(_parse_dims(args.dims))
    if "dims" not in doc:
        raise ValueError("need --dims or a config file with dims")
    for key, value in (
        ("seed", args.seed),
        ("restarts", args.restarts),
        ("max_iterations", args.max_iterations),
        ("tol", args.tol),
    ):
        if value is not None:
            doc[key] = value
    return config_from_json_dict(doc)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args)
        result = search(config)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as handle:
                json.dump(result.state, handle)
                handle.write("\n")
    except json.JSONDecodeError as exc:
        print(
            f"error: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
            file=sys.stderr,
        )
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    print(json.dumps(result.report_dict(), indent=2))
    return 0


def entry() -> None:
    sys.exit(main())
