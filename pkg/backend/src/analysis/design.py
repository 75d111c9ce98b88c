"""
Experiment Design Module

Recommends additional inputs to measure so that V becomes cylindrically
connected, which guarantees a unique unsigned min-set whatever the unknown
function is (and a unique signed min-set on Boolean grids).
"""
from itertools import combinations
from typing import List, Optional, Sequence, Tuple
import logging

from pydantic import BaseModel, ConfigDict

from ..config import get_settings
from ..datamodel import InputSet, Point
from ..errors import CapacityError, DataValidationError
from .uniqueness import diagonal_length, is_cylindrically_connected

logger = logging.getLogger(__name__)


STATUS_ALREADY_UNIQUE = "already_unique"
STATUS_FOUND = "found"
STATUS_NONE = "none_within_budget"


class Suggestion(BaseModel):
    """A set of new inputs and what measuring them guarantees."""

    model_config = ConfigDict(frozen=True)

    added_points: Tuple[Point, ...]
    resulting_unique: bool
    diagonal_length: Optional[int] = None

    @property
    def rank_key(self) -> Tuple[int, Tuple[Point, ...]]:
        return (len(self.added_points), self.added_points)


class DesignReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    status: str
    k: int
    suggestions: Tuple[Suggestion, ...] = ()
    signed_certified: bool
    note: str = ""


def verify_extension(inputs: InputSet, points: Sequence[Sequence[int]]) -> bool:
    """
    True when V ∪ P is cylindrically connected.

    Raises:
        DataValidationError: P shares a point with V (kind "overlap") or a
            point of P is outside the grid
    """
    added = [inputs.spec.check_point(p, row=i) for i, p in enumerate(points)]
    overlap = sorted(set(added) & set(inputs.points))
    if overlap:
        raise DataValidationError(f"points {overlap} are already in V", kind="overlap")
    return is_cylindrically_connected(inputs.union(added)).connected


def suggest_extensions(inputs: InputSet, k: int = 1, max_grid: Optional[int] = None) -> DesignReport:
    """
    Enumerate the smallest sets of new inputs that make V cylindrically connected.

    Subsets of up to k grid points outside V are tried by size, and within a
    size in lexicographic order. A subset containing an earlier successful
    subset is not reported.

    Args:
        inputs (InputSet): the current experiments V
        k (int): largest number of new experiments per suggestion
        max_grid (Optional[int]): cap on q^n

    Returns:
        DesignReport: status "already_unique", "found" or "none_within_budget"

    Raises:
        DataValidationError: k < 1
        CapacityError: q^n above the cap
    """
    if k < 1:
        raise DataValidationError(f"k must be at least 1, got {k}", kind="range")
    bound = max_grid if max_grid is not None else get_settings().design_max_grid
    spec = inputs.spec
    if spec.domain_size > bound:
        raise CapacityError("design search refused: grid size q^n", spec.domain_size, bound)

    signed_certified = spec.is_boolean
    note = "" if signed_certified else "unsigned-unique; signed uniqueness open for q > 2"
    if is_cylindrically_connected(inputs).connected:
        return DesignReport(status=STATUS_ALREADY_UNIQUE, k=k, signed_certified=signed_certified, note=note)

    taken = set(inputs.points)
    candidates = [p for p in spec.grid() if p not in taken]
    found: List[Suggestion] = []
    for size in range(1, k + 1):
        tried = 0
        for subset in combinations(candidates, size):
            if any(set(s.added_points) <= set(subset) for s in found):
                continue
            tried += 1
            extended = inputs.union(subset)
            if is_cylindrically_connected(extended).connected:
                found.append(Suggestion(
                    added_points=tuple(subset),
                    resulting_unique=True,
                    diagonal_length=diagonal_length(extended).length,
                ))
        logger.debug("design search: %d subsets of size %d tried, %d suggestions so far", tried, size, len(found))

    status = STATUS_FOUND if found else STATUS_NONE
    return DesignReport(
        status=status, k=k, suggestions=tuple(found), signed_certified=signed_certified, note=note
    )
