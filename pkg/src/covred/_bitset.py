"""Dense bitset helpers.

Every object set and attribute set in this package is a plain Python int
used as a bit vector: bit ``k`` set means index ``k`` is a member.
Arbitrary-precision ints give word-parallel intersections, unions and
subset tests with no extra machinery; the helpers below cover the few
conversions the rest of the code needs, including packing masks into
little-endian uint64 arrays for the compiled kernels.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence

import numpy as np


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set-bit indices of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def indices_of(mask: int) -> tuple[int, ...]:
    return tuple(iter_bits(mask))


def full_mask(n: int) -> int:
    return (1 << n) - 1


def is_subset(a: int, b: int) -> bool:
    """True iff every bit set in ``a`` is also set in ``b``."""
    return a & ~b == 0


def is_proper_subset(a: int, b: int) -> bool:
    return a != b and a & ~b == 0


def word_count(nbits: int) -> int:
    """Number of 64-bit words needed for ``nbits`` bits (at least one)."""
    return max(1, (nbits + 63) // 64)


def pack_masks(masks: Sequence[int], nbits: int) -> np.ndarray:
    """Pack masks into a C-contiguous ``(len(masks), words)`` uint64 array.

    Word layout is little-endian (bit ``k`` lives in word ``k // 64``),
    matching what the compiled kernels expect on the little-endian hosts
    this package targets.
    """
    nw = word_count(nbits)
    buf = b"".join(m.to_bytes(nw * 8, "little") for m in masks)
    arr = np.frombuffer(buf, dtype=np.uint64).reshape(len(masks), nw)
    return np.ascontiguousarray(arr)


def unpack_words(words: np.ndarray) -> int:
    """Rebuild the int mask from one packed row (inverse of pack_masks)."""
    return int.from_bytes(np.ascontiguousarray(words).tobytes(), "little")
