"""
Decomposition Module

Primary decomposition of squarefree monomial ideals as minimal hypergraph
transversals, and the projection of the extended decomposition onto the
unsigned and signed min-sets.

The prime components of a squarefree monomial ideal are generated by the
minimal sets of literals that meet every generator. Over the extended
alphabet, dropping bars gives the components of I (after removing
components that contain another one) and discarding components that hold
both x_k and x̄_k gives the components of I^sgn.
"""
from typing import Iterable, List, Optional, Sequence, Tuple
import logging

from ..config import get_settings
from ..datamodel import (
    Alphabet,
    Component,
    DataSet,
    Ideal,
    MinSetReport,
    Monomial,
    require_valid,
)
from ..errors import CapacityError, InvariantError, UnitIdealError
from . import bitsets
from .ideals import build_ideal

logger = logging.getLogger(__name__)


def minimize_generators(ideal: Ideal) -> Ideal:
    """Drop every generator divisible by another generator. Idempotent."""
    masks = bitsets.minimal_masks(ideal.masks)
    return Ideal(ideal.alphabet, ideal.n, tuple(Monomial(m) for m in masks))


def is_prime(ideal: Ideal) -> bool:
    """
    True iff every multivariate generator is divisible by a univariate generator.

    The check holds for any generating set, minimized or not. The zero ideal
    is prime (its single component is trivial); an ideal holding the empty
    monomial is the whole ring and is not.
    """
    univariate = 0
    for gen in ideal.generators:
        if gen.degree == 0:
            return False
        if gen.degree == 1:
            univariate |= gen.mask
    return all(gen.mask & univariate for gen in ideal.generators)


def minimal_transversals(ideal: Ideal) -> List[Component]:
    """
    Prime components of a squarefree monomial ideal.

    Returns:
        List[Component]: the inclusion-minimal literal sets meeting every
        generator, canonically sorted; [Component()] for the zero ideal

    Raises:
        UnitIdealError: if a generator is the empty monomial
    """
    if any(gen.degree == 0 for gen in ideal.generators):
        raise UnitIdealError("the ideal contains the empty monomial and has no prime components")
    masks = bitsets.transversal_masks(ideal.masks)
    logger.debug("decomposed %d generators into %d components", len(ideal.generators), len(masks))
    return [Component(m) for m in masks]


def project_unsigned(components: Iterable[Component]) -> List[Component]:
    """Replace x̄_k by x_k in every component and keep the inclusion-minimal results."""
    masks = bitsets.minimal_masks(bitsets.drop_bars(c.mask) for c in components)
    return [Component(m) for m in masks]


def project_signed(components: Sequence[Component]) -> Tuple[List[Component], bool]:
    """
    Keep the components without a conflicted variable.

    A component holding both x_k and x̄_k corresponds to a prime containing
    (x_k - 1) and (x_k + 1), i.e. the whole ring, and is dropped.

    Returns:
        Tuple[List[Component], bool]: the signed min-sets and whether any
        unate function fits (False exactly when every component was dropped)
    """
    kept = [c.mask for c in components if not bitsets.is_conflicted(c.mask)]
    masks = bitsets.minimal_masks(kept)
    consistent = bool(masks) or not components
    return [Component(m) for m in masks], consistent


def _check_shadows(unsigned: Sequence[Component], signed: Sequence[Component]) -> None:
    for w in signed:
        shadow = w.drop_bars()
        if not any(u.issubset(shadow) for u in unsigned):
            raise InvariantError(f"signed min-set {w} has no unsigned min-set inside its shadow {shadow}")


def minsets(dataset: DataSet) -> MinSetReport:
    """
    Compute the unsigned and signed min-sets of a data set from one decomposition of I^ext.

    Args:
        dataset (DataSet): observations; re-validated here

    Returns:
        MinSetReport: min-sets plus the extended components they came from

    Raises:
        DataValidationError: contradictory or out-of-range data
        InvariantError: a signed min-set whose shadow holds no unsigned min-set
    """
    require_valid(dataset)
    ideal = build_ideal(dataset, Alphabet.EXTENDED, minimize=True)
    components = minimal_transversals(ideal)
    unsigned = project_unsigned(components)
    signed, consistent = project_signed(components)
    _check_shadows(unsigned, signed)
    logger.debug(
        "min-sets: %d extended components, %d unsigned, %d signed (consistent=%s)",
        len(components), len(unsigned), len(signed), consistent,
    )
    return MinSetReport(
        unsigned_minsets=tuple(unsigned),
        signed_minsets=tuple(signed),
        signed_consistent=consistent,
        extended_components=tuple(components),
    )


def baseline_signed_decomposition(dataset: DataSet, max_choices: Optional[int] = None) -> List[Component]:
    """
    Signed min-sets by multiplying out the pseudomonomial generators.

    Every generator of I^ext (not minimized) contributes one literal to each
    choice set. The product is formed generator by generator; equal partial
    choice sets are merged and conflicted ones are dropped, but no absorption
    is done until the end. This is the slow comparator for the benchmark.

    The cap is applied to the distinct partial choice sets alive after each
    generator, not to the product of the generator degrees. The product only
    bounds that count from above and would refuse instances whose merged
    product stays small.

    Args:
        dataset (DataSet): observations
        max_choices (Optional[int]): refuse once more distinct partial choice
            sets than this are alive (defaults to the configured cap)

    Returns:
        List[Component]: the signed min-sets; [] when no unate function fits

    Raises:
        CapacityError: the partial product outgrew max_choices
    """
    bound = max_choices if max_choices is not None else get_settings().baseline_max_choices
    ideal = build_ideal(dataset, Alphabet.EXTENDED)
    choices = {0}
    for gen in ideal.generators:
        grown = set()
        for choice in choices:
            for bit in bitsets.iter_bits(gen.mask):
                candidate = choice | (1 << bit)
                if not bitsets.is_conflicted(candidate):
                    grown.add(candidate)
        if len(grown) > bound:
            raise CapacityError("baseline decomposition refused: partial choice sets", len(grown), bound)
        choices = grown
    return [Component(m) for m in bitsets.minimal_masks(choices)]


def contains_monomial(ideal: Ideal, monomial: Monomial) -> bool:
    """Ideal membership for a squarefree monomial: some generator divides it."""
    return any(gen.divides(monomial) for gen in ideal.generators)


def unsigned_minset_count(masks: Iterable[int]) -> int:
    """Number of unsigned min-sets for raw generator masks over either alphabet."""
    return len(bitsets.minimal_masks(bitsets.drop_bars(t) for t in bitsets.transversal_masks(masks)))


def signed_minset_count(masks: Iterable[int]) -> int:
    """Number of signed min-sets for raw extended generator masks."""
    return sum(1 for t in bitsets.transversal_masks(masks) if not bitsets.is_conflicted(t))

