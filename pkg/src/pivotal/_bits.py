"""Bitmask helpers for coalitions (bit i-1 encodes player i)."""

from __future__ import annotations

from typing import Iterator


def iter_submasks(mask: int) -> Iterator[int]:
    """Yield every submask of ``mask``, starting at 0 and ending at ``mask``.

    The order is ascending in the compacted bit representation, i.e. the
    k-th submask yielded is the one whose bits, squeezed onto the bits of
    ``mask``, spell the integer k.
    """
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def iter_supermasks(mask: int, n: int) -> Iterator[int]:
    """Yield every supermask of ``mask`` within an n-bit universe, ascending."""
    full = (1 << n) - 1
    sup = mask
    while True:
        yield sup
        if sup == full:
            return
        sup = (sup + 1) | mask


def bit_positions(mask: int) -> list[int]:
    """0-based positions of the set bits, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def compact_mask(mask: int, ground: int) -> int:
    """Squeeze the bits of ``mask`` (a submask of ``ground``) onto dense positions.

    Bit k of the result corresponds to the k-th lowest set bit of ``ground``.
    """
    out = 0
    pos = 0
    while ground:
        low = ground & -ground
        if mask & low:
            out |= 1 << pos
        pos += 1
        ground ^= low
    return out


def expand_mask(dense: int, ground: int) -> int:
    """Inverse of :func:`compact_mask`: spread dense bits back onto ``ground``."""
    out = 0
    pos = 0
    while ground:
        low = ground & -ground
        if dense & (1 << pos):
            out |= low
        pos += 1
        ground ^= low
    return out


def swap_bits(mask: int, a: int, b: int) -> int:
    """Exchange bits ``a`` and ``b`` (0-based) of ``mask``."""
    bit_a = (mask >> a) & 1
    bit_b = (mask >> b) & 1
    if bit_a != bit_b:
        mask ^= (1 << a) | (1 << b)
    return mask
