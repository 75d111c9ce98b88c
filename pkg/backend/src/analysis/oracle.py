"""
Oracle Module

Ground truth for the algebraic pipeline. Functions are explicit lookup tables
over the grid {0..q-1}^n; supports and signed supports are read off adjacent
differences along each axis, and min-sets are taken straight from the
definition: the inclusion-minimal supports over all fitting functions.

Two exact strategies are offered:

- completion: enumerate every way of filling in the q^n - m unobserved
  outputs (numpy-vectorized, in chunks);
- witness: for every candidate support with signs, build one explicit
  function fitting the data when such a function exists, and read its
  support. Used when completions exceed the cap but the grid is small.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union
import itertools
import logging

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from ..algebra import bitsets
from ..config import get_settings
from ..datamodel import Component, DataSet, FieldSpec, MinSetKind, Point, require_valid
from ..errors import CapacityError, DimensionError

logger = logging.getLogger(__name__)


class SupportMarker(str, Enum):
    NOT_UNATE = "not-unate"


NOT_UNATE = SupportMarker.NOT_UNATE


def point_index(spec: FieldSpec, point: Sequence[int]) -> int:
    """Position of a point in lexicographic grid order."""
    index = 0
    for c in point:
        index = index * spec.q + int(c)
    return index


def grid_array(spec: FieldSpec) -> np.ndarray:
    """All grid points as an array of shape (q^n, n), lexicographic order."""
    return np.array(list(spec.grid()), dtype=np.int64).reshape(spec.domain_size, spec.n)


class FunctionTable(BaseModel):
    """One coordinate function f: {0..q-1}^n -> {0..q-1} as a full value table."""

    model_config = ConfigDict(frozen=True)

    spec: FieldSpec
    values: Tuple[int, ...]

    @field_validator("values", mode="before")
    @classmethod
    def _as_ints(cls, values):
        return tuple(int(v) for v in values)

    @model_validator(mode="after")
    def _check_table(self) -> "FunctionTable":
        if len(self.values) != self.spec.domain_size:
            raise ValueError(f"table has {len(self.values)} entries, expected {self.spec.domain_size}")
        if any(not 0 <= v < self.spec.q for v in self.values):
            raise ValueError(f"table entries must lie in [0, {self.spec.q - 1}]")
        return self

    @classmethod
    def from_callable(cls, spec: FieldSpec, fn: Callable[[Point], int]) -> "FunctionTable":
        """Tabulate fn over the grid in lexicographic order."""
        return cls(spec=spec, values=tuple(fn(p) for p in spec.grid()))

    def value(self, point: Sequence[int]) -> int:
        return self.values[point_index(self.spec, self.spec.check_point(point))]

    def as_array(self) -> np.ndarray:
        """Values reshaped to (q,)*n so that axis k is variable x_{k+1}."""
        return np.asarray(self.values, dtype=np.int64).reshape((self.spec.q,) * self.spec.n)

    def fits(self, dataset: DataSet) -> bool:
        return all(self.value(s) == t for s, t in dataset.rows)


def function_from_callable(spec: FieldSpec, fn: Callable[[Point], int]) -> FunctionTable:
    return FunctionTable.from_callable(spec, fn)


def network_from_callables(spec: FieldSpec, fns: Sequence[Callable[[Point], int]]) -> List[FunctionTable]:
    """Tabulate the coordinate functions of a network F = (f_1, ..., f_n)."""
    if len(fns) != spec.n:
        raise DimensionError(f"a network on {spec.n} variables needs {spec.n} functions, got {len(fns)}")
    return [FunctionTable.from_callable(spec, fn) for fn in fns]


def evaluate_network(network: Sequence[FunctionTable], point: Sequence[int]) -> Point:
    """One synchronous update F(x)."""
    return tuple(f.value(point) for f in network)


def _axis_changes(tables: np.ndarray, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Per-table, per-variable flags for "some fiber increases" and "some fiber decreases".

    Args:
        tables: array of shape (K,) + (q,)*n

    Returns:
        two bool arrays of shape (K, n)
    """
    k = tables.shape[0]
    inc = np.zeros((k, n), dtype=bool)
    dec = np.zeros((k, n), dtype=bool)
    for axis in range(n):
        diff = np.diff(tables, axis=axis + 1).reshape(k, -1)
        inc[:, axis] = (diff > 0).any(axis=1)
        dec[:, axis] = (diff < 0).any(axis=1)
    return inc, dec


def _support_masks(tables: np.ndarray, n: int, kind: MinSetKind) -> np.ndarray:
    """
    Support of every table as a literal bit mask; -1 marks a table that is not unate.
    """
    inc, dec = _axis_changes(tables, n)
    plain_bits = np.left_shift(np.int64(1), 2 * np.arange(n, dtype=np.int64))
    if kind is MinSetKind.UNSIGNED:
        return ((inc | dec) * plain_bits).sum(axis=1)
    masks = (inc * plain_bits).sum(axis=1) + (dec * (plain_bits << 1)).sum(axis=1)
    masks[(inc & dec).any(axis=1)] = -1
    return masks


def support(f: FunctionTable) -> Tuple[int, ...]:
    """Variables (1-based) that f depends on."""
    mask = int(_support_masks(f.as_array()[None, ...], f.spec.n, MinSetKind.UNSIGNED)[0])
    return Component(mask).variables


def signed_support(f: FunctionTable) -> Union[Component, SupportMarker]:
    """
    Signed support of f, or NOT_UNATE.

    x_k is listed when f is non-decreasing along coordinate k in every fiber
    (and not constant), x̄_k when non-increasing in every fiber. A coordinate
    that rises in one fiber and falls in another makes f not unate.
    """
    mask = int(_support_masks(f.as_array()[None, ...], f.spec.n, MinSetKind.SIGNED)[0])
    if mask < 0:
        return NOT_UNATE
    return Component(mask)


def count_model_space(dataset: DataSet) -> Union[int, Tuple[int, int]]:
    """
    |Mod(D)| = q^(q^n - m).

    Returns:
        int when the count is below 2^63, else the pair (q, exponent)
    """
    dataset = DataSet.from_rows(dataset.spec, dataset.rows)
    exponent = dataset.spec.domain_size - dataset.m
    if exponent < 64 and dataset.spec.q ** exponent < 2**63:
        return dataset.spec.q ** exponent
    return (dataset.spec.q, exponent)


@dataclass(frozen=True)
class OracleResult:
    """Min-sets computed from first principles."""

    kind: MinSetKind
    minsets: Tuple[Component, ...]
    strategy: str
    model_count: Optional[int] = None

    @property
    def consistent(self) -> bool:
        return bool(self.minsets)


def _completion_chunks(total: int, free: int, q: int, chunk: int) -> Iterator[np.ndarray]:
    """Digits (base q, free places) of every completion index, chunk rows at a time."""
    powers = q ** np.arange(free - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        yield (idx[:, None] // powers[None, :]) % q


def _completion_minsets(dataset: DataSet, kind: MinSetKind, total: int) -> OracleResult:
    spec = dataset.spec
    grid = spec.domain_size
    base = np.zeros(grid, dtype=np.int64)
    observed = np.zeros(grid, dtype=bool)
    for s, t in dataset.rows:
        index = point_index(spec, s)
        base[index] = t
        observed[index] = True
    free_positions = np.flatnonzero(~observed)

    chunk = max(1, min(1 << 16, (1 << 22) // grid))
    seen = set()
    models = 0
    for digits in _completion_chunks(total, len(free_positions), spec.q, chunk):
        tables = np.tile(base, (digits.shape[0], 1))
        tables[:, free_positions] = digits
        masks = _support_masks(tables.reshape((-1,) + (spec.q,) * spec.n), spec.n, kind)
        masks = masks[masks >= 0]
        models += int(masks.size)
        seen.update(int(m) for m in np.unique(masks))

    logger.debug("completion oracle: %d completions, %d models, %d distinct supports", total, models, len(seen))
    minimal = bitsets.minimal_masks(seen)
    return OracleResult(kind, tuple(Component(m) for m in minimal), "completion", models)


def _unsigned_witness(dataset: DataSet, points: np.ndarray) -> List[int]:
    """Per variable subset S with a functional projection of D onto S, the support of a fitting table."""
    spec = dataset.spec
    inputs = np.array(dataset.inputs, dtype=np.int64).reshape(dataset.m, spec.n)
    outputs = np.array(dataset.outputs, dtype=np.int64)
    found = []
    for pattern in itertools.product((False, True), repeat=spec.n):
        keep = np.array(pattern, dtype=bool)
        radix = spec.q ** np.arange(int(keep.sum()), dtype=np.int64)
        data_keys = inputs[:, keep] @ radix
        lookup = {}
        if any(lookup.setdefault(int(k), int(t)) != int(t) for k, t in zip(data_keys, outputs)):
            continue
        grid_keys = points[:, keep] @ radix
        table = np.array([lookup.get(int(k), 0) for k in grid_keys], dtype=np.int64)
        found.append(table)
    if not found:
        return []
    tables = np.stack(found).reshape((-1,) + (spec.q,) * spec.n)
    return [int(m) for m in _support_masks(tables, spec.n, MinSetKind.UNSIGNED)]


def _signed_witness(dataset: DataSet, points: np.ndarray) -> List[int]:
    """
    Per sign pattern, the least function monotone in that pattern fitting D.

    For a pattern sigma in {0, +, -}^n, f(x) = max{t_i : s_i <=_sigma x} (or the
    smallest observed output) is monotone in sigma; it fits D exactly when
    some sigma-monotone function does.
    """
    spec = dataset.spec
    if dataset.m == 0:
        return [0]
    inputs = np.array(dataset.inputs, dtype=np.int64).reshape(dataset.m, spec.n)
    outputs = np.array(dataset.outputs, dtype=np.int64)
    floor = int(outputs.min())
    data_index = np.array([point_index(spec, s) for s in dataset.inputs], dtype=np.int64)
    order = np.sign(points[None, :, :] - inputs[:, None, :]).astype(np.int8)

    found = []
    for pattern in itertools.product((0, 1, -1), repeat=spec.n):
        sign = np.array(pattern, dtype=np.int8)
        below = ((order * sign[None, None, :]) >= 0).all(axis=2)
        table = np.where(below, outputs[:, None], floor).max(axis=0)
        if np.array_equal(table[data_index], outputs):
            found.append(table)
    if not found:
        return []
    tables = np.stack(found).reshape((-1,) + (spec.q,) * spec.n)
    masks = _support_masks(tables, spec.n, MinSetKind.SIGNED)
    return [int(m) for m in masks if m >= 0]


def oracle_minsets(
    dataset: DataSet,
    kind: MinSetKind,
    max_completions: Optional[int] = None,
    max_grid: Optional[int] = None,
    max_cells: Optional[int] = None,
) -> OracleResult:
    """
    Exact min-sets from the definition.

    Completions are enumerated only while both their number and the number
    of table cells they fill (completions times q^n) are within the caps;
    otherwise the witness strategy is tried.

    Args:
        dataset (DataSet): observations
        kind (MinSetKind): UNSIGNED ranges over Mod(D), SIGNED over Mod^sgn(D)
        max_completions (Optional[int]): cap on enumerated completions
        max_grid (Optional[int]): cap on q^n for any strategy
        max_cells (Optional[int]): cap on completions times q^n

    Returns:
        OracleResult: the antichain of minimal supports; for SIGNED an empty
        result means no unate function fits

    Raises:
        CapacityError: the grid or the work of both strategies exceeds the caps
    """
    settings = get_settings()
    completion_cap = max_completions if max_completions is not None else settings.oracle_max_completions
    grid_cap = max_grid if max_grid is not None else settings.oracle_max_grid
    cell_cap = max_cells if max_cells is not None else settings.oracle_max_cells

    dataset = DataSet.from_rows(dataset.spec, require_valid(dataset).rows)
    spec = dataset.spec
    if spec.domain_size > grid_cap:
        raise CapacityError("oracle refused: grid size q^n", spec.domain_size, grid_cap)

    free = spec.domain_size - dataset.m
    total = spec.q ** free
    if total <= completion_cap and total * spec.domain_size <= cell_cap:
        return _completion_minsets(dataset, kind, total)

    patterns = (3 if kind is MinSetKind.SIGNED else 2) ** spec.n
    work = patterns * spec.domain_size
    bound = min(completion_cap, cell_cap)
    if work > bound:
        raise CapacityError("oracle refused: witness tables times grid size", work, bound)

    points = grid_array(spec)
    if kind is MinSetKind.SIGNED:
        masks = _signed_witness(dataset, points)
    else:
        masks = _unsigned_witness(dataset, points)
    logger.debug("witness oracle: %d sign patterns, %d fitting witnesses", patterns, len(masks))
    minimal = bitsets.minimal_masks(masks)
    return OracleResult(kind, tuple(Component(m) for m in minimal), "witness")


class WiringEdge(NamedTuple):
    source: int
    target: int
    sign: str


def wiring_diagram(network: Sequence[FunctionTable]) -> List[WiringEdge]:
    """
    Edges x_i -> x_j for every x_i in the support of f_j.

    Signs are "+" for activators and "-" for inhibitors. When f_j is not
    unate its edges are reported as "unsigned" and a warning is logged.
    """
    edges = []
    specs = {f.spec for f in network}
    if len(specs) > 1:
        raise DimensionError("all coordinate functions must share one FieldSpec")
    for target, f in enumerate(network, start=1):
        signed = signed_support(f)
        if signed is NOT_UNATE:
            logger.warning("f%d is not unate; its incoming edges are unsigned", target)
            edges.extend(WiringEdge(source, target, "unsigned") for source in support(f))
            continue
        for lit in signed.literals:
            edges.append(WiringEdge(lit.var, target, "-" if lit.polarity else "+"))
    return sorted(edges, key=lambda e: (e.target, e.source))
