"""Bitmask element sets.

Subsets of a group's elements are plain Python ints used as bitmasks: bit i is
set when element index i belongs to the set.  Ints give O(1) hashing and the
whole boolean algebra (&, |, ^, subset tests) for free, at any group order.
"""

from __future__ import annotations

import numpy as np


def mask_from_indices(indices, /) -> int:
    """Bitmask with exactly the given element indices set."""
    mask = 0
    for i in indices:
        mask |= 1 << int(i)
    return mask


def indices_from_mask(mask: int) -> np.ndarray:
    """Sorted int64 array of the indices set in ``mask``."""
    if mask == 0:
        return np.empty(0, dtype=np.int64)
    nbytes = (mask.bit_length() + 7) // 8
    raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
    bits = np.unpackbits(raw, bitorder="little")
    return np.flatnonzero(bits).astype(np.int64)


def mask_from_bool(flags: np.ndarray) -> int:
    """Bitmask from a boolean numpy vector."""
    packed = np.packbits(flags.astype(np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def cardinality(mask: int) -> int:
    return mask.bit_count()


def is_subset(a: int, b: int) -> bool:
    """True iff every index of ``a`` is also in ``b``."""
    return a & ~b == 0


def full_mask(n: int) -> int:
    """All indices 0..n-1."""
    return (1 << n) - 1
