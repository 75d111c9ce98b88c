"""
Data Model Module for the wiring-diagram reverse-engineering toolkit

Value types shared by every other module: the state grid (FieldSpec), input
points, input-output data sets, literals over the plain or extended alphabet
{x_1..x_n, x̄_1..x̄_n}, squarefree monomials, ideals given by generators,
decomposition components and the min-set report.

All types are immutable after construction. Variable indices are 1-based in
every human-facing rendering.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .algebra import bitsets
from .errors import DataValidationError, DimensionError


Point = Tuple[int, ...]

# q**n must stay an exact machine-sized integer for grid enumeration guards
MAX_DOMAIN_SIZE = 2**62

# combining overline used for barred literals in text output
MACRON = "\u0304"


class FieldSpec(BaseModel):
    """Number of states q per variable and number of variables n."""

    model_config = ConfigDict(frozen=True)

    q: int = Field(ge=2)
    n: int = Field(ge=1)

    @model_validator(mode="after")
    def _domain_is_representable(self) -> "FieldSpec":
        if self.q ** self.n > MAX_DOMAIN_SIZE:
            raise ValueError(f"domain size {self.q}^{self.n} is too large")
        return self

    @property
    def domain_size(self) -> int:
        return self.q ** self.n

    @property
    def is_boolean(self) -> bool:
        return self.q == 2

    def check_point(self, point: Sequence[int], row: Optional[int] = None) -> Point:
        """
        Validate a point against this spec.

        Returns:
            Point: the point as a tuple of ints

        Raises:
            DimensionError: wrong number of coordinates
            DataValidationError: an entry outside [0, q-1] (kind "range")
        """
        coords = tuple(int(c) for c in point)
        if len(coords) != self.n:
            raise DimensionError(f"point {coords} has {len(coords)} coordinates, expected {self.n}", row=row)
        for c in coords:
            if not 0 <= c < self.q:
                raise DataValidationError(f"entry {c} of {coords} is outside [0, {self.q - 1}]", kind="range", row=row)
        return coords

    def grid(self) -> Iterator[Point]:
        """All points of {0..q-1}^n in lexicographic order."""
        return itertools.product(range(self.q), repeat=self.n)

    def point_at(self, index: int) -> Point:
        """The point at a lexicographic grid position; base-q digits, most significant first."""
        if not 0 <= index < self.domain_size:
            raise DataValidationError(f"grid index {index} is outside [0, {self.domain_size - 1}]", kind="range")
        digits = []
        for _ in range(self.n):
            index, digit = divmod(index, self.q)
            digits.append(digit)
        return tuple(reversed(digits))

    def is_corner(self, point: Point) -> bool:
        return all(c in (0, self.q - 1) for c in point)


class DatasetDiagnostic(BaseModel):
    """Result of validate_dataset: ok, or the first offending row."""

    ok: bool
    kind: Optional[str] = None
    row: Optional[int] = None
    message: str = "ok"


class DataSet(BaseModel):
    """
    Input-output observations D = {(s_1, t_1), ..., (s_m, t_m)}.

    The model itself only fixes shapes; cross-row checks live in
    validate_dataset and are applied by DataSet.from_rows.
    """

    model_config = ConfigDict(frozen=True)

    spec: FieldSpec
    rows: Tuple[Tuple[Point, int], ...] = ()

    @field_validator("rows", mode="before")
    @classmethod
    def _rows_as_tuples(cls, rows):
        return tuple((tuple(int(c) for c in inp), int(out)) for inp, out in rows)

    @classmethod
    def from_rows(cls, spec: FieldSpec, rows: Iterable[Tuple[Sequence[int], int]]) -> "DataSet":
        """
        Build a validated data set.

        Duplicate inputs with equal outputs are merged; with different
        outputs they are rejected.

        Raises:
            DataValidationError: on the first offending row
        """
        dataset = require_valid(cls(spec=spec, rows=tuple(rows)))
        merged: Dict[Point, int] = {}
        for inp, out in dataset.rows:
            merged.setdefault(inp, out)
        return cls(spec=spec, rows=tuple(merged.items()))

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def inputs(self) -> Tuple[Point, ...]:
        return tuple(inp for inp, _ in self.rows)

    @property
    def outputs(self) -> Tuple[int, ...]:
        return tuple(out for _, out in self.rows)

    def input_set(self) -> "InputSet":
        return InputSet.from_points(self.spec, self.inputs)

    def sorted_rows(self) -> Tuple[Tuple[Point, int], ...]:
        """Rows ordered by (output, input); canonical order for ideal construction."""
        return tuple(sorted(self.rows, key=lambda row: (row[1], row[0])))

    def with_rows(self, rows: Iterable[Tuple[Sequence[int], int]]) -> "DataSet":
        return DataSet.from_rows(self.spec, list(self.rows) + list(rows))


class InputSet(BaseModel):
    """A set V of distinct input points (a data set with outputs stripped)."""

    model_config = ConfigDict(frozen=True)

    spec: FieldSpec
    points: Tuple[Point, ...] = ()

    @field_validator("points", mode="after")
    @classmethod
    def _canonical_points(cls, points, info):
        spec = info.data.get("spec")
        if spec is None:
            return points
        return tuple(sorted({spec.check_point(p, row=i) for i, p in enumerate(points)}))

    @classmethod
    def from_points(cls, spec: FieldSpec, points: Iterable[Sequence[int]]) -> "InputSet":
        """
        Build a canonical (sorted, deduplicated) input set.

        Raises:
            DataValidationError: a point has the wrong length or an entry out of range
        """
        checked = {spec.check_point(p, row=i) for i, p in enumerate(points)}
        return cls(spec=spec, points=tuple(sorted(checked)))

    @property
    def size(self) -> int:
        return len(self.points)

    def contains(self, point: Sequence[int]) -> bool:
        return tuple(point) in set(self.points)

    def union(self, points: Iterable[Sequence[int]]) -> "InputSet":
        return InputSet.from_points(self.spec, list(self.points) + [tuple(p) for p in points])

    def with_outputs(self, outputs: Sequence[int]) -> DataSet:
        """Attach one output per point (in canonical point order)."""
        if len(outputs) != len(self.points):
            raise DataValidationError(f"expected {len(self.points)} outputs, got {len(outputs)}", kind="format")
        return DataSet.from_rows(self.spec, zip(self.points, outputs))


def validate_dataset(dataset: DataSet) -> DatasetDiagnostic:
    """
    Check ranges and contradictions row by row.

    Returns:
        DatasetDiagnostic: ok, or the first offending row with kind
        "dimension", "range" or "contradictory"
    """
    spec = dataset.spec
    seen: Dict[Point, Tuple[int, int]] = {}
    for index, (inp, out) in enumerate(dataset.rows):
        try:
            spec.check_point(inp, row=index)
        except DataValidationError as exc:
            return DatasetDiagnostic(ok=False, kind=exc.kind, row=index, message=f"range error: {exc}" if exc.kind == "range" else str(exc))
        if not 0 <= out < spec.q:
            return DatasetDiagnostic(
                ok=False, kind="range", row=index,
                message=f"range error: output {out} of row {index} is outside [0, {spec.q - 1}]",
            )
        if inp in seen and seen[inp][1] != out:
            first, previous = seen[inp]
            return DatasetDiagnostic(
                ok=False, kind="contradictory", row=index,
                message=f"contradictory data: input {inp} has outputs {previous} (row {first}) and {out} (row {index})",
            )
        seen.setdefault(inp, (index, out))
    return DatasetDiagnostic(ok=True)


def require_valid(dataset: DataSet) -> DataSet:
    """Raise the diagnostic of validate_dataset as an exception; return the data set otherwise."""
    diagnostic = validate_dataset(dataset)
    if diagnostic.ok:
        return dataset
    if diagnostic.kind == "dimension":
        raise DimensionError(diagnostic.message, row=diagnostic.row)
    raise DataValidationError(diagnostic.message, kind=diagnostic.kind, row=diagnostic.row)


def hamming_distance(p: Sequence[int], r: Sequence[int]) -> int:
    """Number of coordinates where p and r differ."""
    if len(p) != len(r):
        raise DimensionError(f"cannot compare points of lengths {len(p)} and {len(r)}")
    return sum(1 for a, b in zip(p, r) if a != b)


def _check_bijections(spec: FieldSpec, maps: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    if len(maps) != spec.n:
        raise DimensionError(f"expected {spec.n} coordinate maps, got {len(maps)}")
    checked = []
    for index, mapping in enumerate(maps, start=1):
        mapping = tuple(int(v) for v in mapping)
        if sorted(mapping) != list(range(spec.q)):
            raise DataValidationError(f"map for x{index} is not a bijection on 0..{spec.q - 1}: {mapping}", kind="bijection")
        checked.append(mapping)
    return checked


def apply_coordinate_maps(inputs: InputSet, maps: Sequence[Sequence[int]]) -> InputSet:
    """
    Transform every point coordinatewise, maps[i][z] being the image of state z
    on coordinate i+1.

    Raises:
        DataValidationError: a map is not a bijection of the state set
    """
    checked = _check_bijections(inputs.spec, maps)
    return InputSet.from_points(inputs.spec, (tuple(checked[i][c] for i, c in enumerate(p)) for p in inputs.points))


def transform_dataset(dataset: DataSet, maps: Sequence[Sequence[int]]) -> DataSet:
    """Same as apply_coordinate_maps, keeping each point's output."""
    checked = _check_bijections(dataset.spec, maps)
    return DataSet.from_rows(
        dataset.spec, ((tuple(checked[i][c] for i, c in enumerate(inp)), out) for inp, out in dataset.rows)
    )


def negation_maps(spec: FieldSpec, coordinates: Iterable[int]) -> List[Tuple[int, ...]]:
    """
    Coordinate maps applying the decreasing bijection z -> (q-1) - z on the
    given 1-based coordinates and the identity elsewhere.
    """
    flipped = set(coordinates)
    identity = tuple(range(spec.q))
    negation = tuple(spec.q - 1 - z for z in range(spec.q))
    return [negation if i in flipped else identity for i in range(1, spec.n + 1)]


def negate_coordinates(dataset: DataSet, coordinates: Iterable[int]) -> DataSet:
    """Apply the monotone negation z -> (q-1) - z to the given 1-based coordinates of every input."""
    return transform_dataset(dataset, negation_maps(dataset.spec, coordinates))


class Polarity(IntEnum):
    PLAIN = 0
    BARRED = 1


class Alphabet(str, Enum):
    """Plain alphabet {x_i} (unsigned ideal I) or extended {x_i, x̄_i} (I^ext)."""

    PLAIN = "plain"
    EXTENDED = "extended"


class MinSetKind(str, Enum):
    UNSIGNED = "unsigned"
    SIGNED = "signed"


@dataclass(frozen=True, order=True)
class Literal:
    """Variable x_var (PLAIN) or its bar x̄_var (BARRED)."""

    var: int
    polarity: Polarity = Polarity.PLAIN

    def __post_init__(self):
        if self.var < 1:
            raise DataValidationError(f"variable index must be >= 1, got {self.var}", kind="range")

    @property
    def bit(self) -> int:
        return 2 * (self.var - 1) + int(self.polarity)

    @classmethod
    def from_bit(cls, bit: int) -> "Literal":
        return cls(var=bit // 2 + 1, polarity=Polarity(bit % 2))

    @classmethod
    def parse(cls, token: str) -> "Literal":
        """Parse "x3", "!x3" or "x̄3"."""
        text = token.strip()
        barred = text.startswith("!")
        if barred:
            text = text[1:]
        if MACRON in text:
            barred = True
            text = text.replace(MACRON, "")
        if not text.startswith("x") or not text[1:].isdigit():
            raise DataValidationError(f"cannot parse literal {token!r}", kind="format")
        return cls(var=int(text[1:]), polarity=Polarity.BARRED if barred else Polarity.PLAIN)

    def conjugate(self) -> "Literal":
        return Literal(self.var, Polarity(1 - int(self.polarity)))

    def token(self) -> str:
        """ASCII encoding used in JSON: x3 or !x3."""
        return f"!x{self.var}" if self.polarity is Polarity.BARRED else f"x{self.var}"

    def __str__(self) -> str:
        return f"x{MACRON}{self.var}" if self.polarity is Polarity.BARRED else f"x{self.var}"


@dataclass(frozen=True)
class LiteralSet:
    """A set of literals stored as a bit mask (see algebra.bitsets)."""

    mask: int = 0

    @classmethod
    def from_literals(cls, literals: Iterable[Literal]):
        mask = 0
        for lit in literals:
            mask |= 1 << lit.bit
        return cls(mask)

    @classmethod
    def from_tokens(cls, tokens: Iterable[str]):
        return cls.from_literals(Literal.parse(t) for t in tokens)

    @classmethod
    def from_variables(cls, variables: Iterable[int]):
        return cls.from_literals(Literal(v) for v in variables)

    @property
    def literals(self) -> Tuple[Literal, ...]:
        return tuple(Literal.from_bit(b) for b in bitsets.iter_bits(self.mask))

    @property
    def variables(self) -> Tuple[int, ...]:
        return tuple(sorted({lit.var for lit in self.literals}))

    @property
    def degree(self) -> int:
        return self.mask.bit_count()

    @property
    def is_conflicted(self) -> bool:
        return bitsets.is_conflicted(self.mask)

    @property
    def has_barred(self) -> bool:
        return (self.mask >> 1) & bitsets.EVEN_BITS != 0

    @property
    def sort_key(self) -> tuple:
        return bitsets.bit_key(self.mask)

    def drop_bars(self):
        return type(self)(bitsets.drop_bars(self.mask))

    def bar_flip(self):
        return type(self)(bitsets.bar_flip(self.mask))

    def flip_variable(self, var: int):
        """Swap the polarity of one variable's literals."""
        plain = 1 << (2 * (var - 1))
        barred = plain << 1
        mask = self.mask & ~(plain | barred)
        if self.mask & plain:
            mask |= barred
        if self.mask & barred:
            mask |= plain
        return type(self)(mask)

    def issubset(self, other: "LiteralSet") -> bool:
        return self.mask & ~other.mask == 0

    def intersects(self, other: "LiteralSet") -> bool:
        return self.mask & other.mask != 0

    def tokens(self) -> List[str]:
        return [lit.token() for lit in self.literals]

    def __len__(self) -> int:
        return self.degree

    def __str__(self) -> str:
        return "{" + ", ".join(str(lit) for lit in self.literals) + "}"


class Monomial(LiteralSet):
    """Squarefree monomial; the empty monomial is the unit."""

    def divides(self, other: "Monomial") -> bool:
        return self.issubset(other)

    def __str__(self) -> str:
        return "".join(str(lit) for lit in self.literals) or "1"


class Component(LiteralSet):
    """
    Prime component of a decomposition, given by its generating literals.

    The zero ideal has the single trivial (empty) component; every other
    component is non-empty.
    """


def canonical(sets: Iterable[LiteralSet]) -> Tuple[LiteralSet, ...]:
    """Deduplicate and sort literal sets lexicographically by (variable, polarity)."""
    unique = {s.mask: s for s in sets}
    return tuple(unique[m] for m in sorted(unique, key=bitsets.bit_key))


@dataclass(frozen=True)
class Ideal:
    """Squarefree monomial ideal given by a generator list."""

    alphabet: Alphabet
    n: int
    generators: Tuple[Monomial, ...] = ()

    def __post_init__(self):
        limit = 1 << (2 * self.n)
        for gen in self.generators:
            if gen.mask >= limit:
                raise DataValidationError(f"generator {gen} uses a variable beyond x{self.n}", kind="range")
            if self.alphabet is Alphabet.PLAIN and gen.has_barred:
                raise DataValidationError(f"generator {gen} is not over the plain alphabet", kind="range")

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def masks(self) -> List[int]:
        return [gen.mask for gen in self.generators]

    def __str__(self) -> str:
        return "<" + ", ".join(str(g) for g in self.generators) + ">"


@dataclass(frozen=True)
class MinSetReport:
    """
    Unsigned and signed min-sets of a data set.

    signed_consistent is False exactly when no unate function fits the data,
    in which case signed_minsets is empty.
    """

    unsigned_minsets: Tuple[Component, ...]
    signed_minsets: Tuple[Component, ...]
    signed_consistent: bool
    extended_components: Tuple[Component, ...] = field(default=())

    def __post_init__(self):
        if not self.signed_consistent and self.signed_minsets:
            raise DataValidationError("an inconsistent report cannot list signed min-sets", kind="format")
        for family in (self.unsigned_minsets, self.signed_minsets):
            for a, b in itertools.permutations(family, 2):
                if a.issubset(b):
                    raise DataValidationError(f"min-sets {a} and {b} are not an antichain", kind="format")

    @property
    def unsigned_variable_sets(self) -> List[Tuple[int, ...]]:
        return [c.variables for c in self.unsigned_minsets]
