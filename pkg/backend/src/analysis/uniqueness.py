"""
Uniqueness Certificates Module

Decides, for an input set V, whether every output assignment on V leads to a
single min-set. The tools are:

- cylinders and cylindrical connectivity (exact for unsigned min-sets on any
  grid, and for signed min-sets on Boolean grids);
- diagonals, points far from every other point of V, which force several
  min-sets for a suitable assignment;
- the Type 1/2/3a/3b classification of the all-pairs multiset of V;
- bounded exhaustive search over output partitions and weak orders.
"""
from enum import Enum
from itertools import permutations
from math import comb
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union
import logging

import networkx as nx
from pydantic import BaseModel, ConfigDict

from ..algebra import bitsets
from ..algebra.decompose import signed_minset_count, unsigned_minset_count
from ..algebra.ideals import candidate_multiset, extended_generator
from ..config import get_settings
from ..datamodel import (
    DataSet,
    InputSet,
    MinSetKind,
    Monomial,
    Point,
    hamming_distance,
    negation_maps,
    transform_dataset,
)
from ..errors import CapacityError, DiagonalUndefinedError, DimensionError

logger = logging.getLogger(__name__)


class Cylinder(NamedTuple):
    """
    {s : s_i = u_i for i in fixed}, with 1-based coordinate keys.

    The empty map is the whole grid.
    """

    fixed: Tuple[Tuple[int, int], ...]

    def contains(self, point: Sequence[int]) -> bool:
        return all(point[i - 1] == u for i, u in self.fixed)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.fixed)

    def __str__(self) -> str:
        if not self.fixed:
            return "{whole grid}"
        return "{" + ", ".join(f"s{i}={u}" for i, u in self.fixed) + "}"


def cylinder_of(p: Sequence[int], r: Sequence[int]) -> Cylinder:
    """C(p, r): fix the coordinates where p and r agree, let the others vary."""
    if len(p) != len(r):
        raise DimensionError(f"cannot compare points of lengths {len(p)} and {len(r)}")
    return Cylinder(tuple((i, a) for i, (a, b) in enumerate(zip(p, r), start=1) if a == b))


def _adjacency_graph(points: Sequence[Point]) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(points)
    for i, p in enumerate(points):
        for r in points[i + 1:]:
            if hamming_distance(p, r) == 1:
                graph.add_edge(p, r)
    return graph


def is_connected(points: Sequence[Sequence[int]]) -> bool:
    """Connectivity under unit Hamming steps; empty sets and singletons are connected."""
    unique = sorted({tuple(p) for p in points})
    if len(unique) <= 1:
        return True
    return nx.is_connected(_adjacency_graph(unique))


class CylinderCheck(NamedTuple):
    connected: bool
    witness: Optional[Tuple[Cylinder, Point, Point]] = None


def is_cylindrically_connected(inputs: InputSet) -> CylinderCheck:
    """
    Check C(p, r) ∩ V for every pair p, r of V.

    Any cylinder holding p and r contains C(p, r), so a path inside every
    pairwise cylinder is a path inside every cylinder.

    Returns:
        CylinderCheck: connected, or the first (cylinder, p, r) in
        lexicographic pair order where p cannot reach r
    """
    points = inputs.points
    graph = _adjacency_graph(points)
    for i, p in enumerate(points):
        for r in points[i + 1:]:
            cylinder = cylinder_of(p, r)
            inside = [v for v in points if cylinder.contains(v)]
            if not nx.has_path(graph.subgraph(inside), p, r):
                logger.debug("cylinder %s separates %s and %s", cylinder, p, r)
                return CylinderCheck(False, (cylinder, p, r))
    return CylinderCheck(True)


class Diagonal(NamedTuple):
    length: int
    witness: Optional[Point]
    corner: bool


def diagonal_length(inputs: InputSet) -> Diagonal:
    """
    The largest distance from a point of V to its nearest neighbour in V.

    A diagonal exists when this is at least 2; the witness is then the first
    point (lexicographically) attaining it.

    Raises:
        DiagonalUndefinedError: |V| < 2
    """
    points = inputs.points
    if len(points) < 2:
        raise DiagonalUndefinedError(f"diagonals need at least two points, V has {len(points)}")
    best, witness = -1, None
    for p in points:
        nearest = min(hamming_distance(p, r) for r in points if r != p)
        if nearest > best:
            best, witness = nearest, p
    if best < 2:
        return Diagonal(best, None, False)
    return Diagonal(best, witness, inputs.spec.is_corner(witness))


class DiagonalAssignment(NamedTuple):
    dataset: DataSet
    maps: List[Tuple[int, ...]]
    normalized: DataSet
    length: int


def diagonal_assignment(inputs: InputSet) -> DiagonalAssignment:
    """
    The assignment witness -> 0, everything else -> 1, for a V with a diagonal.

    Also returns the coordinate bijections that move the witness to the
    origin and the data set they produce. The bijections are monotone
    negations when the witness is a corner point, so signs flip but counts
    of signed min-sets are kept.

    Raises:
        DiagonalUndefinedError: V has no diagonal (length below 2)
    """
    diagonal = diagonal_length(inputs)
    if diagonal.witness is None:
        raise DiagonalUndefinedError(f"V has no diagonal (longest nearest-neighbour distance {diagonal.length})")
    witness = diagonal.witness
    outputs = [0 if p == witness else 1 for p in inputs.points]
    dataset = inputs.with_outputs(outputs)

    spec = inputs.spec
    if diagonal.corner:
        maps = negation_maps(spec, [k for k, c in enumerate(witness, start=1) if c == spec.q - 1])
    else:
        maps = []
        for c in witness:
            # transposition c <-> 0
            mapping = list(range(spec.q))
            mapping[0], mapping[c] = c, 0
            maps.append(tuple(mapping))
    return DiagonalAssignment(dataset, maps, transform_dataset(dataset, maps), diagonal.length)


class OutputClasses(str, Enum):
    PARTITION = "partition"
    WEAK_ORDER = "weak_order"


def bell_number(m: int) -> int:
    """Number of set partitions of m elements."""
    row = [1]
    for _ in range(m):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[0]


def ordered_bell_number(m: int) -> int:
    """Number of weak orders (ordered set partitions) on m elements."""
    counts = [1]
    for size in range(1, m + 1):
        counts.append(sum(comb(size, k) * counts[size - k] for k in range(1, size + 1)))
    return counts[m]


def _restricted_growth_strings(m: int, max_blocks: int) -> Iterator[Tuple[int, ...]]:
    if m == 0:
        yield ()
        return

    def extend(prefix: List[int], blocks: int):
        if len(prefix) == m:
            yield tuple(prefix)
            return
        for label in range(min(blocks + 1, max_blocks)):
            prefix.append(label)
            yield from extend(prefix, max(blocks, label + 1))
            prefix.pop()

    yield from extend([0], 1)


def enumerate_output_classes(
    m: int, kind: OutputClasses, cap: Optional[int] = None, max_classes: Optional[int] = None
) -> Iterator[Tuple[int, ...]]:
    """
    Every output assignment on m inputs up to relabelling.

    PARTITION yields one labelling per set partition (only equality of
    outputs matters); WEAK_ORDER one per ordered set partition (the order of
    outputs matters too). Labels run over 0..(number of classes - 1); with
    max_classes only assignments using at most that many distinct outputs
    are produced.

    Raises:
        CapacityError: m exceeds the enumeration cap
    """
    bound = cap if cap is not None else get_settings().enumeration_cap
    if m > bound:
        count = bell_number(m) if kind is OutputClasses.PARTITION else ordered_bell_number(m)
        label = "partitions" if kind is OutputClasses.PARTITION else "weak orders"
        raise CapacityError(f"enumerating {count} {label} refused, number of inputs", m, bound)
    for labels in _restricted_growth_strings(m, max_classes if max_classes is not None else max(m, 1)):
        if kind is OutputClasses.PARTITION:
            yield labels
            continue
        blocks = max(labels, default=-1) + 1
        for order in permutations(range(blocks)):
            yield tuple(order[label] for label in labels)


class TypeClass(str, Enum):
    TYPE1 = "1"
    TYPE2 = "2"
    TYPE3A = "3a"
    TYPE3B = "3b"


class TypeClassification(NamedTuple):
    type_class: TypeClass
    monomial: Optional[Monomial] = None
    weak_order: Optional[Tuple[int, ...]] = None


def _pair_masks(points: Sequence[Point]) -> List[List[int]]:
    return [[extended_generator(a, b).mask if a != b else 0 for b in points] for a in points]


def _extended_masks(pair_masks: List[List[int]], outputs: Sequence[int]) -> List[int]:
    r = len(outputs)
    return [pair_masks[i][j] for i in range(r) for j in range(r) if outputs[i] < outputs[j]]


def _is_prime_masks(masks: Sequence[int]) -> bool:
    univariate = 0
    for mask in masks:
        if mask.bit_count() == 1:
            univariate |= mask
    return all(mask & univariate for mask in masks)


def classify_type(inputs: InputSet, max_points: Optional[int] = None) -> TypeClassification:
    """
    Classify the all-pairs multiset M of V.

    - Type 1: every entry of M is univariate.
    - Type 2: some multivariate entry has no univariate entry of M dividing it.
    - Type 3a: neither, and I^ext is prime for every weak order of outputs.
    - Type 3b: neither, and some weak order makes I^ext non-prime.

    Args:
        inputs (InputSet): V
        max_points (Optional[int]): largest |V| for which weak orders are enumerated

    Returns:
        TypeClassification: the class with its evidence (the multivariate
        monomial for Type 2, the weak order for Type 3b)

    Raises:
        CapacityError: the weak-order enumeration is needed and |V| > max_points
    """
    bound = max_points if max_points is not None else get_settings().max_type_points
    multiset = candidate_multiset(inputs)
    univariate = 0
    for m in multiset.univariate():
        univariate |= m.mask
    multivariate = multiset.multivariate()
    if not multivariate:
        return TypeClassification(TypeClass.TYPE1)
    for m in multivariate:
        if not m.mask & univariate:
            return TypeClassification(TypeClass.TYPE2, monomial=m)

    r = inputs.size
    if r > bound:
        raise CapacityError(
            f"type classification needs {ordered_bell_number(r)} weak orders, number of points", r, bound
        )
    pair_masks = _pair_masks(inputs.points)
    checked = 0
    for order in enumerate_output_classes(r, OutputClasses.WEAK_ORDER, cap=bound):
        checked += 1
        if not _is_prime_masks(_extended_masks(pair_masks, order)):
            return TypeClassification(TypeClass.TYPE3B, weak_order=order)
    logger.debug("all %d weak orders give a prime extended ideal", checked)
    return TypeClassification(TypeClass.TYPE3A)


class ExhaustiveResult(NamedTuple):
    kind: MinSetKind
    assignments: int
    min_count: int
    max_count: int
    witness: Tuple[int, ...]

    @property
    def at_most_one(self) -> bool:
        return self.max_count <= 1

    @property
    def exactly_one(self) -> bool:
        return self.min_count == 1 and self.max_count == 1


def exhaustive_uniqueness(inputs: InputSet, kind: MinSetKind, cap: Optional[int] = None) -> ExhaustiveResult:
    """
    Count min-sets for every output assignment on V.

    Unsigned min-sets only depend on which outputs are equal, so partitions
    are enumerated; signed ones also depend on their order, so weak orders
    are. Assignments never use more than q distinct outputs.

    Returns:
        ExhaustiveResult: smallest and largest count, and an assignment
        reaching the largest

    Raises:
        CapacityError: |V| exceeds the enumeration cap
    """
    points = inputs.points
    pair_masks = _pair_masks(points)
    classes = OutputClasses.PARTITION if kind is MinSetKind.UNSIGNED else OutputClasses.WEAK_ORDER
    lowest, highest, witness, total = None, -1, (), 0
    for outputs in enumerate_output_classes(len(points), classes, cap=cap, max_classes=inputs.spec.q):
        total += 1
        masks = _extended_masks(pair_masks, outputs)
        if kind is MinSetKind.UNSIGNED:
            count = unsigned_minset_count(bitsets.drop_bars(mask) for mask in masks)
        else:
            count = signed_minset_count(masks)
        if count > highest:
            highest, witness = count, outputs
        lowest = count if lowest is None else min(lowest, count)
    return ExhaustiveResult(kind, total, lowest, highest, witness)


def unsigned_unique_all_outputs(inputs: InputSet) -> bool:
    """Exactly one unsigned min-set for every output assignment iff V is cylindrically connected."""
    return is_cylindrically_connected(inputs).connected


class SignedVerdict(NamedTuple):
    verdict: Optional[bool]
    exhaustive: Optional[bool] = None


def signed_unique_all_outputs(inputs: InputSet, cap: Optional[int] = None) -> SignedVerdict:
    """
    At most one signed min-set for every output assignment?

    Decided by cylindrical connectivity on Boolean grids. For q > 2 the
    verdict is None (undecided) and, when |V| is within the cap, the
    exhaustive weak-order answer is attached.
    """
    if inputs.spec.is_boolean:
        return SignedVerdict(is_cylindrically_connected(inputs).connected)
    bound = cap if cap is not None else get_settings().enumeration_cap
    if inputs.size > bound:
        return SignedVerdict(None)
    return SignedVerdict(None, exhaustive_uniqueness(inputs, MinSetKind.SIGNED, cap=bound).at_most_one)


UNKNOWN_NON_BOOLEAN = "unknown (non-Boolean)"
TYPE_SKIPPED = "skipped (cap)"


class CylinderWitness(BaseModel):
    model_config = ConfigDict(frozen=True)

    cylinder: Dict[int, int]
    points: Tuple[Point, Point]


class DiagonalInfo(BaseModel):
    model_config = ConfigDict(frozen=True)

    length: int
    witness: Optional[Point] = None
    corner_point: bool = False


class Certificate(BaseModel):
    """Uniqueness verdicts for an input set with the evidence behind them."""

    model_config = ConfigDict(frozen=True)

    q: int
    n: int
    points: Tuple[Point, ...]
    cylindrically_connected: bool
    connectivity_witness: Optional[CylinderWitness] = None
    diagonal: Optional[DiagonalInfo] = None
    type_class: str
    type_monomial: Optional[List[str]] = None
    type_weak_order: Optional[Tuple[int, ...]] = None
    unsigned_unique_for_all_outputs: bool
    signed_at_most_one_for_all_outputs: Union[bool, str]


def build_certificate(inputs: InputSet, max_points: Optional[int] = None) -> Certificate:
    """
    Assemble every uniqueness check for V.

    A type classification that would exceed max_points is reported as
    "skipped (cap)" instead of failing. On grids with q > 2 the signed
    verdict is True when V is of Type 1 or 3a and unknown otherwise.
    """
    check = is_cylindrically_connected(inputs)
    witness = None
    if check.witness is not None:
        cylinder, p, r = check.witness
        witness = CylinderWitness(cylinder=cylinder.as_dict(), points=(p, r))

    diagonal = None
    if inputs.size >= 2:
        found = diagonal_length(inputs)
        diagonal = DiagonalInfo(length=found.length, witness=found.witness, corner_point=found.corner)

    monomial, weak_order = None, None
    try:
        classification = classify_type(inputs, max_points=max_points)
        type_class = classification.type_class.value
        if classification.monomial is not None:
            monomial = classification.monomial.tokens()
        weak_order = classification.weak_order
    except CapacityError as exc:
        logger.warning("type classification skipped: %s", exc)
        type_class = TYPE_SKIPPED

    if inputs.spec.is_boolean:
        signed: Union[bool, str] = check.connected
    elif type_class in (TypeClass.TYPE1.value, TypeClass.TYPE3A.value):
        signed = True
    else:
        signed = UNKNOWN_NON_BOOLEAN

    return Certificate(
        q=inputs.spec.q,
        n=inputs.spec.n,
        points=inputs.points,
        cylindrically_connected=check.connected,
        connectivity_witness=witness,
        diagonal=diagonal,
        type_class=type_class,
        type_monomial=monomial,
        type_weak_order=weak_order,
        unsigned_unique_for_all_outputs=check.connected,
        signed_at_most_one_for_all_outputs=signed,
    )
