"""
Command Runner Module

One function per CLI command. Each takes a validated RunConfig and returns a
CommandResult holding the rendered output and the exit code; library errors
propagate to the caller, which maps them to exit codes.
"""
from pathlib import Path
from typing import Callable, Dict, Literal, Optional, Union
import json
import logging

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..algebra.decompose import minsets
from ..analysis.design import suggest_extensions
from ..analysis.oracle import count_model_space, oracle_minsets
from ..analysis.uniqueness import build_certificate
from ..config import Settings, get_settings
from ..datamodel import DataSet, FieldSpec, InputSet, MinSetKind
from ..errors import EXIT_OK, EXIT_ORACLE_MISMATCH, DataValidationError
from . import reports
from .benchmark import random_dataset, random_inputs, run_bench
from .inputs import dump_json, parse_input

logger = logging.getLogger(__name__)


Command = Literal["minsets", "certify", "suggest", "oracle", "bench", "random"]
OutputFormat = Literal["text", "json", "dot"]


class RunConfig(BaseModel):
    """Everything a command needs; caps left as None fall back to Settings."""

    model_config = ConfigDict(frozen=True)

    command: Command
    input: Optional[Path] = None
    output_format: OutputFormat = "text"
    q: Optional[int] = Field(default=None, ge=2)
    seed: Optional[int] = Field(default=None, ge=0, lt=2**64)

    k: int = Field(default=1, gt=0)
    max_type_points: Optional[int] = Field(default=None, gt=0)
    oracle_max_completions: Optional[int] = Field(default=None, gt=0)
    oracle_max_grid: Optional[int] = Field(default=None, gt=0)
    oracle_max_cells: Optional[int] = Field(default=None, gt=0)
    baseline_max_choices: Optional[int] = Field(default=None, gt=0)

    n: int = Field(default=5, ge=1)
    bench_q: int = Field(default=2, ge=2)
    vsize: int = Field(default=8, ge=0)
    trials: int = Field(default=100, ge=0)
    with_outputs: bool = True

    @model_validator(mode="after")
    def _check_command(self) -> "RunConfig":
        if self.command in ("bench", "random") and self.seed is None:
            raise ValueError(f"{self.command} needs a seed")
        if self.command not in ("bench", "random") and self.input is None:
            raise ValueError(f"{self.command} needs an input file")
        if self.output_format == "dot" and self.command != "minsets":
            raise ValueError("dot output is only available for minsets")
        return self

    def resolved(self, settings: Optional[Settings] = None) -> "RunConfig":
        """Fill unset caps from the environment settings."""
        settings = settings or get_settings()
        updates = {
            name: getattr(settings, name)
            for name in (
                "max_type_points", "oracle_max_completions", "oracle_max_grid", "oracle_max_cells",
                "baseline_max_choices",
            )
            if getattr(self, name) is None
        }
        return self.model_copy(update=updates)


class CommandResult(BaseModel):
    status: str
    exit_code: int
    output: str


def _load(cfg: RunConfig) -> Union[DataSet, InputSet]:
    return parse_input(cfg.input, q=cfg.q)


def _require_dataset(cfg: RunConfig) -> DataSet:
    data = _load(cfg)
    if not isinstance(data, DataSet):
        raise DataValidationError(f"{cfg.command} needs a data file with outputs", kind="format")
    return data


def _input_set(cfg: RunConfig) -> InputSet:
    data = _load(cfg)
    if isinstance(data, DataSet):
        logger.warning("%s ignores the outputs in %s", cfg.command, cfg.input)
        return data.input_set()
    return data


def run_minsets(cfg: RunConfig) -> CommandResult:
    dataset = _require_dataset(cfg)
    report = minsets(dataset)
    if cfg.output_format == "json":
        output = reports.MinSetsOutput.from_report(report, dataset.spec.q, dataset.spec.n).model_dump_json(indent=2)
    elif cfg.output_format == "dot":
        output = reports.render_minsets_dot(report)
    else:
        output = reports.render_minsets_text(report)
    return CommandResult(status="success", exit_code=EXIT_OK, output=output)


def run_certify(cfg: RunConfig) -> CommandResult:
    cfg = cfg.resolved()
    certificate = build_certificate(_input_set(cfg), max_points=cfg.max_type_points)
    if cfg.output_format == "json":
        output = certificate.model_dump_json(indent=2)
    else:
        output = reports.render_certificate_text(certificate)
    return CommandResult(status="success", exit_code=EXIT_OK, output=output)


def run_suggest(cfg: RunConfig) -> CommandResult:
    report = suggest_extensions(_input_set(cfg), k=cfg.k)
    if cfg.output_format == "json":
        output = report.model_dump_json(indent=2)
    else:
        output = reports.render_design_text(report)
    return CommandResult(status=report.status, exit_code=EXIT_OK, output=output)


def _sorted_tokens(components) -> list:
    return [c.tokens() for c in components]


def run_oracle(cfg: RunConfig) -> CommandResult:
    """
    Compare the algebraic min-sets with the brute-force oracle for both kinds.

    Exit code 4 when any kind disagrees; capacity refusals propagate.
    """
    cfg = cfg.resolved()
    dataset = _require_dataset(cfg)
    report = minsets(dataset)
    algebraic = {MinSetKind.UNSIGNED: report.unsigned_minsets, MinSetKind.SIGNED: report.signed_minsets}

    checks = []
    for kind in (MinSetKind.UNSIGNED, MinSetKind.SIGNED):
        result = oracle_minsets(
            dataset,
            kind,
            max_completions=cfg.oracle_max_completions,
            max_grid=cfg.oracle_max_grid,
            max_cells=cfg.oracle_max_cells,
        )
        mine = {c.mask: c for c in algebraic[kind]}
        theirs = {c.mask: c for c in result.minsets}
        check = reports.OracleCheck(
            kind=kind.value,
            status="PASS",
            strategy=result.strategy,
            model_count=result.model_count,
            algebraic=_sorted_tokens(algebraic[kind]),
            oracle=_sorted_tokens(result.minsets),
            only_algebraic=[mine[m].tokens() for m in mine if m not in theirs],
            only_oracle=[theirs[m].tokens() for m in theirs if m not in mine],
        )
        if kind is MinSetKind.SIGNED:
            check.consistent_algebraic = report.signed_consistent
            check.consistent_oracle = result.consistent
        if check.only_algebraic or check.only_oracle or check.consistent_algebraic != check.consistent_oracle:
            check.status = "FAIL"
        checks.append(check)

    space = count_model_space(dataset)
    model_space = {"count": space} if isinstance(space, int) else {"base": space[0], "exponent": space[1]}
    comparison = reports.OracleComparison(
        q=dataset.spec.q, n=dataset.spec.n, m=dataset.m, checks=checks, model_space=model_space
    )
    if cfg.output_format == "json":
        output = comparison.model_dump_json(indent=2)
    else:
        output = reports.render_oracle_text(comparison)
    if comparison.passed:
        return CommandResult(status="success", exit_code=EXIT_OK, output=output)
    return CommandResult(status="mismatch", exit_code=EXIT_ORACLE_MISMATCH, output=output)


def run_bench_command(cfg: RunConfig) -> CommandResult:
    cfg = cfg.resolved()
    report = run_bench(
        n=cfg.n, q=cfg.bench_q, vsize=cfg.vsize, trials=cfg.trials, seed=cfg.seed,
        baseline_max_choices=cfg.baseline_max_choices,
    )
    if cfg.output_format == "json":
        output = report.model_dump_json(indent=2)
    else:
        summary = report.summary
        mark = "✅" if summary.all_agree else "❌"
        output = "\n".join([
            f"{mark} {summary.trials} trial(s), n={report.n}, q={report.q}, |V|={report.vsize}, seed={report.seed}",
            f"   baseline refused: {summary.refused}",
            f"   median extended pipeline: {summary.median_extended_seconds}",
            f"   median baseline:          {summary.median_baseline_seconds}",
            f"   log10-second histogram edges {summary.histogram_edges}",
            f"   extended {summary.extended_histogram}",
            f"   baseline {summary.baseline_histogram}",
        ])
    status = "success" if report.summary.all_agree else "mismatch"
    code = EXIT_OK if report.summary.all_agree else EXIT_ORACLE_MISMATCH
    return CommandResult(status=status, exit_code=code, output=output)


def run_random(cfg: RunConfig) -> CommandResult:
    """A seeded random data set (or input set) as JSON."""
    spec = FieldSpec(q=cfg.bench_q, n=cfg.n)
    rng = np.random.default_rng(cfg.seed)
    if cfg.with_outputs:
        data = random_dataset(rng, spec, cfg.vsize)
    else:
        data = random_inputs(rng, spec, cfg.vsize)
    return CommandResult(status="success", exit_code=EXIT_OK, output=dump_json(data))


HANDLERS: Dict[str, Callable[[RunConfig], CommandResult]] = {
    "minsets": run_minsets,
    "certify": run_certify,
    "suggest": run_suggest,
    "oracle": run_oracle,
    "bench": run_bench_command,
    "random": run_random,
}


def run(cfg: RunConfig) -> CommandResult:
    """Dispatch a RunConfig to its command."""
    logger.debug("running %s with %s", cfg.command, json.dumps(cfg.model_dump(mode="json")))
    return HANDLERS[cfg.command](cfg)
