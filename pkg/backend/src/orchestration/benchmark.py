"""
Benchmark Module

Times the extended-ideal pipeline against the multiply-out baseline on
seeded random data sets, checks that both give the same signed min-sets and
summarizes the timings (medians and a log-scale histogram).
"""
from typing import List, Optional
import logging
import time

import numpy as np
import pandas as pd
from pydantic import BaseModel

from ..algebra.decompose import baseline_signed_decomposition, minimal_transversals, project_signed
from ..algebra.ideals import build_ideal
from ..datamodel import Alphabet, Component, DataSet, FieldSpec, InputSet
from ..errors import CapacityError, DataValidationError

logger = logging.getLogger(__name__)


# decade edges for the log10(seconds) histogram
HISTOGRAM_EDGES = tuple(range(-7, 3))

TIMING_FIELDS = {"extended_seconds", "baseline_seconds"}


def random_inputs(rng: np.random.Generator, spec: FieldSpec, size: int) -> InputSet:
    """size distinct grid points, uniform without replacement."""
    if size > spec.domain_size:
        raise DataValidationError(f"cannot draw {size} distinct points from a grid of {spec.domain_size}", kind="range")
    indices = rng.choice(spec.domain_size, size=size, replace=False)
    points = [spec.point_at(int(i)) for i in indices]
    return InputSet.from_points(spec, points)


def random_dataset(rng: np.random.Generator, spec: FieldSpec, size: int) -> DataSet:
    """Random distinct inputs with uniform outputs, drawn from one generator stream."""
    inputs = random_inputs(rng, spec, size)
    outputs = rng.integers(0, spec.q, size=size)
    return inputs.with_outputs([int(t) for t in outputs])


def extended_signed_minsets(dataset: DataSet) -> List[Component]:
    """The fast path: build I^ext, decompose, keep the unconflicted components."""
    components = minimal_transversals(build_ideal(dataset, Alphabet.EXTENDED, minimize=True))
    return project_signed(components)[0]


class TrialResult(BaseModel):
    trial: int
    signed_minsets: List[List[str]]
    extended_seconds: float
    baseline_seconds: Optional[float] = None
    baseline_refused: bool = False
    agree: Optional[bool] = None


class BenchSummary(BaseModel):
    trials: int
    all_agree: bool
    refused: int
    median_extended_seconds: Optional[float] = None
    median_baseline_seconds: Optional[float] = None
    histogram_edges: List[int]
    extended_histogram: List[int]
    baseline_histogram: List[int]
    soft_expectation_met: Optional[bool] = None


class BenchReport(BaseModel):
    n: int
    q: int
    vsize: int
    trials: int
    seed: int
    results: List[TrialResult]
    summary: BenchSummary

    def deterministic_dump(self) -> dict:
        """The report without wall-clock fields."""
        data = self.model_dump(
            exclude={
                "results": {"__all__": TIMING_FIELDS},
                "summary": {
                    "median_extended_seconds", "median_baseline_seconds",
                    "extended_histogram", "baseline_histogram", "soft_expectation_met",
                },
            }
        )
        return data


def _timed(fn, *args):
    start = time.perf_counter()
    result = fn(*args)
    return result, time.perf_counter() - start


def _histogram(seconds: pd.Series) -> List[int]:
    values = seconds.dropna().to_numpy(dtype=float)
    if values.size == 0:
        return [0] * (len(HISTOGRAM_EDGES) - 1)
    logs = np.clip(np.log10(np.maximum(values, 1e-12)), HISTOGRAM_EDGES[0], HISTOGRAM_EDGES[-1])
    counts, _ = np.histogram(logs, bins=np.array(HISTOGRAM_EDGES, dtype=float))
    return [int(c) for c in counts]


def run_bench(
    n: int,
    q: int,
    vsize: int,
    trials: int,
    seed: int,
    baseline_max_choices: Optional[int] = None,
) -> BenchReport:
    """
    Time both signed decompositions on `trials` random data sets.

    Every data set is drawn first from one numpy generator seeded with
    `seed`, so the instances do not depend on timing. One untimed warm-up
    run precedes the measurements. A refused baseline is recorded, not
    raised.

    Returns:
        BenchReport: per-trial results and the aggregate summary
    """
    spec = FieldSpec(q=q, n=n)
    rng = np.random.default_rng(seed)
    datasets = [random_dataset(rng, spec, vsize) for _ in range(trials)]
    if datasets:
        extended_signed_minsets(datasets[0])

    results = []
    for index, dataset in enumerate(datasets):
        fast, fast_seconds = _timed(extended_signed_minsets, dataset)
        trial = TrialResult(
            trial=index,
            signed_minsets=[c.tokens() for c in fast],
            extended_seconds=fast_seconds,
        )
        try:
            slow, slow_seconds = _timed(baseline_signed_decomposition, dataset, baseline_max_choices)
            trial.baseline_seconds = slow_seconds
            trial.agree = [c.mask for c in slow] == [c.mask for c in fast]
        except CapacityError as exc:
            logger.info("trial %d: %s", index, exc)
            trial.baseline_refused = True
        results.append(trial)

    frame = pd.DataFrame([r.model_dump() for r in results], columns=list(TrialResult.model_fields))
    baseline = frame["baseline_seconds"].astype(float)
    median_fast = float(frame["extended_seconds"].median()) if len(frame) else None
    median_slow = float(baseline.median()) if baseline.notna().any() else None

    soft = None
    if n >= 6 and vsize >= 10 and trials >= 100 and median_fast is not None and median_slow is not None:
        soft = median_fast < median_slow
        if not soft:
            logger.warning(
                "extended pipeline median %.3gs is not below the baseline median %.3gs", median_fast, median_slow
            )

    summary = BenchSummary(
        trials=trials,
        all_agree=all(r.agree is not False for r in results),
        refused=sum(r.baseline_refused for r in results),
        median_extended_seconds=median_fast,
        median_baseline_seconds=median_slow,
        histogram_edges=list(HISTOGRAM_EDGES),
        extended_histogram=_histogram(frame["extended_seconds"]),
        baseline_histogram=_histogram(baseline),
        soft_expectation_met=soft,
    )
    return BenchReport(n=n, q=q, vsize=vsize, trials=trials, seed=seed, results=results, summary=summary)
