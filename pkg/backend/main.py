"""
Wiring Min-Sets - Command Line Runner

Reverse-engineers the minimal wiring diagrams of an unknown function from
input-output data, certifies when they are unique, and suggests experiments.

Usage:
    python main.py minsets data.json [--format text|json|dot]
    python main.py certify inputs.csv [--max-type-points N]
    python main.py suggest inputs.json [--k N]
    python main.py oracle data.json
    python main.py bench --n 5 --q 2 --vsize 8 --trials 100 --seed 42
    python main.py random --n 3 --q 2 --vsize 5 --seed 7
"""
import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from src.config import Settings
from src.errors import WiringError, exit_code_for
from src.orchestration.commands import RunConfig, run


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Minimal wiring diagrams from input-output data")
    parser.add_argument("--log-level", default=None, help="overrides WIRING_LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    minsets = sub.add_parser("minsets", help="unsigned and signed min-sets of a data set")
    minsets.add_argument("input")
    minsets.add_argument("--format", dest="output_format", choices=["text", "json", "dot"], default="text")
    minsets.add_argument("--q", type=int, default=None, help="number of states for CSV input")

    certify = sub.add_parser("certify", help="uniqueness certificate for an input set")
    certify.add_argument("input")
    certify.add_argument("--format", dest="output_format", choices=["text", "json"], default="text")
    certify.add_argument("--q", type=int, default=None)
    certify.add_argument("--max-type-points", type=int, default=None)

    suggest = sub.add_parser("suggest", help="experiments that guarantee uniqueness")
    suggest.add_argument("input")
    suggest.add_argument("--format", dest="output_format", choices=["text", "json"], default="text")
    suggest.add_argument("--q", type=int, default=None)
    suggest.add_argument("--k", type=int, default=1)

    oracle = sub.add_parser("oracle", help="compare min-sets with brute-force enumeration")
    oracle.add_argument("input")
    oracle.add_argument("--format", dest="output_format", choices=["text", "json"], default="text")
    oracle.add_argument("--q", type=int, default=None)
    oracle.add_argument("--max-completions", dest="oracle_max_completions", type=int, default=None)
    oracle.add_argument("--max-grid", dest="oracle_max_grid", type=int, default=None)
    oracle.add_argument("--max-cells", dest="oracle_max_cells", type=int, default=None)

    bench = sub.add_parser("bench", help="time the extended pipeline against the baseline")
    bench.add_argument("--n", type=int, default=5)
    bench.add_argument("--q", dest="bench_q", type=int, default=2)
    bench.add_argument("--vsize", type=int, default=8)
    bench.add_argument("--trials", type=int, default=100)
    bench.add_argument("--seed", type=int, required=True)
    bench.add_argument("--max-choices", dest="baseline_max_choices", type=int, default=None)
    bench.add_argument("--format", dest="output_format", choices=["text", "json"], default="json")

    random = sub.add_parser("random", help="write a seeded random data set as JSON")
    random.add_argument("--n", type=int, default=3)
    random.add_argument("--q", dest="bench_q", type=int, default=2)
    random.add_argument("--vsize", type=int, default=5)
    random.add_argument("--seed", type=int, required=True)
    random.add_argument("--no-outputs", dest="with_outputs", action="store_false")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = Settings.from_env()
    except WiringError as exc:
        print(f"❌ Configuration error: {exc}", file=sys.stderr)
        return exit_code_for(exc)
    logging.basicConfig(
        level=(args.log_level or settings.log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    options = {k: v for k, v in vars(args).items() if k != "log_level" and v is not None}
    try:
        cfg = RunConfig(**options)
        result = run(cfg)
    except (WiringError, ValidationError, ValueError) as exc:
        print(f"❌ Error: {exc}", file=sys.stderr)
        return exit_code_for(exc)

    print(result.output)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
