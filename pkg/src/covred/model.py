"""Universe, covers and cover families.

Labels are resolved to indices once at construction; every object set held
by these types is an int bitmask over indices ``0..n-1`` (see _bitset).
All types are immutable after construction and safe to share between
threads.
"""

from __future__ import annotations

import warnings
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

from ._bitset import full_mask, indices_of, is_subset, mask_of
from .errors import (
    DuplicateNameError,
    EmptyBlockError,
    NotACoverError,
    UniverseError,
    UnknownCoverError,
    UnknownLabelError,
)


@dataclass(frozen=True)
class Universe:
    """Ordered finite set of distinct object labels."""

    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if not self.labels:
            raise UniverseError("universe must contain at least one object")
        if len(set(self.labels)) != len(self.labels):
            dupes = sorted({l for l in self.labels if self.labels.count(l) > 1})
            raise UniverseError(f"duplicate object labels: {dupes}")

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def full(self) -> int:
        return full_mask(self.n)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def index_of(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabelError(f"unknown object label {label!r}") from None

    def mask_of_labels(self, labels: Iterable[str]) -> int:
        return mask_of(self.index_of(label) for label in labels)

    def labels_of_mask(self, mask: int) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in indices_of(mask))


@dataclass(frozen=True)
class Cover:
    """Named family of nonempty blocks whose union is the universe.

    Blocks are bitmasks in the order given; duplicate blocks are dropped
    (keeping the first occurrence) with a warning, since they cannot change
    any object's granule.
    """

    universe: Universe
    name: str
    blocks: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        seen: set[int] = set()
        kept = []
        for pos, block in enumerate(self.blocks):
            if block == 0:
                raise EmptyBlockError(f"cover {self.name!r}: block {pos} is empty")
            if not is_subset(block, self.universe.full):
                raise UnknownLabelError(
                    f"cover {self.name!r}: block {pos} uses indices outside the universe"
                )
            if block in seen:
                continue
            seen.add(block)
            kept.append(block)
        if len(kept) < len(self.blocks):
            warnings.warn(
                f"cover {self.name!r}: dropped {len(self.blocks) - len(kept)} duplicate block(s)",
                stacklevel=2,
            )
            object.__setattr__(self, "blocks", tuple(kept))
        union = 0
        for block in self.blocks:
            union |= block
        if union != self.universe.full:
            uncovered = self.universe.labels_of_mask(self.universe.full & ~union)
            raise NotACoverError(
                f"cover {self.name!r}: union of blocks misses {list(uncovered)}",
                uncovered,
            )

    def block_labels(self) -> list[list[str]]:
        return [list(self.universe.labels_of_mask(b)) for b in self.blocks]


def validate_cover(
    universe: Universe, blocks: Sequence[Iterable[str]], name: str = "C"
) -> Cover:
    """Resolve label blocks against the universe and build a valid Cover.

    Raises UnknownLabelError, EmptyBlockError or NotACoverError with the
    offending cover name and block position in the message.
    """
    masks = []
    for pos, block in enumerate(blocks):
        try:
            mask = universe.mask_of_labels(block)
        except UnknownLabelError as exc:
            raise UnknownLabelError(f"cover {name!r}, block {pos}: {exc}") from None
        masks.append(mask)
    return Cover(universe, name, tuple(masks))


def is_partition(cover: Cover) -> bool:
    """True iff the blocks are pairwise disjoint (union is already U)."""
    total = 0
    for block in cover.blocks:
        total += block.bit_count()
    return total == cover.universe.n


@dataclass(frozen=True)
class CoverFamily:
    """Covers over one shared universe, with distinct names."""

    universe: Universe
    covers: tuple[Cover, ...]

    def __post_init__(self):
        object.__setattr__(self, "covers", tuple(self.covers))
        if not self.covers:
            raise DuplicateNameError("a cover family needs at least one cover")
        names = [c.name for c in self.covers]
        if len(set(names)) != len(names):
            dupes = sorted({x for x in names if names.count(x) > 1})
            raise DuplicateNameError(f"duplicate cover names: {dupes}")
        for cover in self.covers:
            if cover.universe != self.universe:
                raise UniverseError(
                    f"cover {cover.name!r} was validated against a different universe"
                )

    @property
    def m(self) -> int:
        return len(self.covers)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.covers)

    @cached_property
    def _by_name(self) -> dict[str, int]:
        return {c.name: i for i, c in enumerate(self.covers)}

    def cover_index(self, name: str) -> int:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownCoverError(f"unknown cover name {name!r}") from None

    def cover(self, name: str) -> Cover:
        return self.covers[self.cover_index(name)]
