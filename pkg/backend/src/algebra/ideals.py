"""
Ideal Construction Module

Encodes coordinate changes between inputs as squarefree monomials and
collects them into the unsigned ideal I (plain alphabet), the extended ideal
I^ext (literals x_k and x̄_k) and the all-pairs candidate multiset used by the
uniqueness classifier.

Sign convention: a plain literal x_k renders as the pseudomonomial factor
(x_k - 1) and marks an activator; a barred literal x̄_k renders as (x_k + 1)
and marks an inhibitor.
"""
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple
import logging

from ..datamodel import Alphabet, DataSet, Ideal, InputSet, Monomial, Point, canonical
from ..errors import DimensionError, EmptyMonomialError
from . import bitsets

logger = logging.getLogger(__name__)


def _check_pair(s: Sequence[int], s2: Sequence[int]) -> None:
    if len(s) != len(s2):
        raise DimensionError(f"cannot compare points of lengths {len(s)} and {len(s2)}")
    if tuple(s) == tuple(s2):
        raise EmptyMonomialError(f"identical inputs {tuple(s)} give the empty monomial")


def unsigned_generator(s: Sequence[int], s2: Sequence[int]) -> Monomial:
    """
    m(s, s') = product of x_i over the coordinates where s and s' differ.

    Raises:
        EmptyMonomialError: if s == s2
    """
    _check_pair(s, s2)
    mask = 0
    for k, (a, b) in enumerate(zip(s, s2)):
        if a != b:
            mask |= 1 << (2 * k)
    return Monomial(mask)


def extended_generator(s_low: Sequence[int], s_high: Sequence[int]) -> Monomial:
    """
    m^ext(s_low, s_high): x_k where s_low_k < s_high_k, x̄_k where s_low_k > s_high_k.

    The caller orders the arguments so that the output of s_low is smaller.

    Raises:
        EmptyMonomialError: if the points are equal
    """
    _check_pair(s_low, s_high)
    mask = 0
    for k, (a, b) in enumerate(zip(s_low, s_high)):
        if a < b:
            mask |= 1 << (2 * k)
        elif a > b:
            mask |= 1 << (2 * k + 1)
    return Monomial(mask)


def render_pseudomonomial(monomial: Monomial) -> str:
    """Render an extended monomial as its pseudomonomial, e.g. x1x̄3 -> "(x1-1)(x3+1)"."""
    factors = [f"(x{lit.var}+1)" if lit.polarity else f"(x{lit.var}-1)" for lit in monomial.literals]
    return "".join(factors) or "1"


def signed_rendering(ideal: Ideal) -> str:
    """Render an extended ideal as the pseudomonomial ideal I^sgn."""
    return "<" + ", ".join(render_pseudomonomial(g) for g in ideal.generators) + ">"


def drop_bars(ideal: Ideal) -> Ideal:
    """Project an extended ideal onto the plain alphabet by replacing x̄_k with x_k."""
    gens = canonical(g.drop_bars() for g in ideal.generators)
    return Ideal(Alphabet.PLAIN, ideal.n, gens)


def build_ideal(dataset: DataSet, kind: Alphabet, minimize: bool = False) -> Ideal:
    """
    Build I (kind PLAIN) or I^ext (kind EXTENDED) from a validated data set.

    Rows are first sorted by output, which only fixes the order in which
    pairs are visited. PLAIN takes one generator per unordered pair with
    different outputs; EXTENDED one per pair with t_i < t_j, arguments
    ordered (lower output, higher output).

    Args:
        dataset (DataSet): validated observations
        kind (Alphabet): which ideal to build
        minimize (bool): drop generators divisible by another generator

    Returns:
        Ideal: deduplicated generators in canonical order; no generators means
        the zero ideal
    """
    rows = dataset.sorted_rows()
    masks: List[int] = []
    for i, (s_i, t_i) in enumerate(rows):
        for s_j, t_j in rows[i + 1:]:
            if t_i == t_j:
                continue
            if kind is Alphabet.PLAIN:
                masks.append(unsigned_generator(s_i, s_j).mask)
            else:
                masks.append(extended_generator(s_i, s_j).mask)

    if minimize:
        unique = bitsets.minimal_masks(masks)
    else:
        unique = sorted(set(masks), key=bitsets.bit_key)
    logger.debug("built %s ideal: %d pairs, %d generators", kind.value, len(masks), len(unique))
    return Ideal(kind, dataset.spec.n, tuple(Monomial(m) for m in unique))


@dataclass(frozen=True)
class CandidateMultiset:
    """
    Every m^ext(a, b) for ordered pairs of distinct inputs, with multiplicity.

    Reversing a pair bar-flips its monomial, so both orderings are stored.
    """

    entries: Tuple[Tuple[Point, Point, Monomial], ...]

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def monomials(self) -> List[Monomial]:
        return [m for _, _, m in self.entries]

    def multiplicities(self) -> Dict[Monomial, int]:
        counts: Dict[Monomial, int] = {}
        for m in self.monomials:
            counts[m] = counts.get(m, 0) + 1
        return counts

    def univariate(self) -> List[Monomial]:
        return [m for m in self.monomials if m.degree == 1]

    def multivariate(self) -> List[Monomial]:
        return [m for m in self.monomials if m.degree > 1]


def candidate_multiset(inputs: InputSet) -> CandidateMultiset:
    """All-pairs multiset M_Omega of V, computed as if every output were different."""
    points = inputs.points
    entries = [
        (a, b, extended_generator(a, b))
        for a in points
        for b in points
        if a != b
    ]
    return CandidateMultiset(tuple(entries))
