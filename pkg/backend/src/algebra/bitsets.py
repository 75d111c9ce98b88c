"""
Bit-mask helpers for literal sets.

A literal set over n variables is an int: plain x_i sits at bit 2(i-1) and
barred x_i at bit 2(i-1)+1. Sorting bit indices therefore sorts literals by
(variable, polarity).
"""
from typing import Iterable, Iterator, List


# even positions hold plain literals; supports up to 256 variables
EVEN_BITS = int("01" * 256, 2)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bit_key(mask: int) -> tuple:
    """Lexicographic sort key for a literal set."""
    return tuple(iter_bits(mask))


def drop_bars(mask: int) -> int:
    """Move every barred literal onto its plain counterpart."""
    return (mask & EVEN_BITS) | ((mask >> 1) & EVEN_BITS)


def bar_flip(mask: int) -> int:
    """Swap the polarity of every literal."""
    return ((mask & EVEN_BITS) << 1) | ((mask >> 1) & EVEN_BITS)


def is_conflicted(mask: int) -> bool:
    """True when some variable appears with both polarities."""
    return (mask & (mask >> 1) & EVEN_BITS) != 0


def minimal_masks(masks: Iterable[int]) -> List[int]:
    """
    Keep the inclusion-minimal masks, dropping duplicates.

    Removing generators divisible by another generator and removing
    components that contain another component are the same operation.
    Output is sorted by bit_key.
    """
    kept: List[int] = []
    for mask in sorted(set(masks), key=lambda m: (m.bit_count(), m)):
        if not any(k & ~mask == 0 for k in kept):
            kept.append(mask)
    return sorted(kept, key=bit_key)


def transversal_masks(generators: Iterable[int]) -> List[int]:
    """
    Minimal hitting sets of a family of non-empty masks.

    Berge-style expansion: generators are absorbed one at a time while the
    current family of partial transversals is kept an antichain.

    Returns:
        List[int]: the minimal transversals sorted by bit_key; [0] when the
        family is empty
    """
    edges = minimal_masks(generators)
    edges.sort(key=lambda m: (m.bit_count(), m))
    current: List[int] = [0]
    for edge in edges:
        hit = [t for t in current if t & edge]
        expanded = [t | (1 << b) for t in current if not t & edge for b in iter_bits(edge)]
        if expanded:
            current = minimal_masks(hit + expanded)
    return sorted(current, key=bit_key)
