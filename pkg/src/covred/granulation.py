"""Information granules and covering approximations.

The granule of an object under one cover is the intersection of all blocks
containing it (its minimal description); under a cover family it is the
intersection of the per-cover granules. Granule maps are computed once and
cached; everything downstream (matrices, reduction) consumes the maps.

The lower/upper approximation operators accept *any* granule map. For a
single cover this is the standard granule-based pair; applying them to a
family-level map is a natural extension offered for convenience.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ._bitset import is_subset, pack_masks
from .errors import CovredError
from .model import Cover, CoverFamily, Universe


@dataclass(frozen=True)
class NeighborhoodMap:
    """Per-object granules for one cover (or a whole family).

    Granule maps are reflexive (``x`` is in its own granule) and nested
    (``y`` in granule(x) implies granule(y) is contained in granule(x)).
    """

    source: str
    universe: Universe
    granules: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.granules)

    def granule(self, x: int) -> int:
        return self.granules[x]

    def granule_labels(self, x: int) -> tuple[str, ...]:
        return self.universe.labels_of_mask(self.granules[x])

    @cached_property
    def words(self) -> np.ndarray:
        """Granules packed as an (n, words) uint64 array for the kernels."""
        return pack_masks(self.granules, self.universe.n)


def minimal_description(cover: Cover, x: int) -> int:
    """Intersection of all blocks of the cover containing object ``x``."""
    granule = cover.universe.full
    hit = False
    for block in cover.blocks:
        if block >> x & 1:
            granule &= block
            hit = True
    if not hit:  # unreachable for a validated cover
        raise CovredError(f"object index {x} is not covered by {cover.name!r}")
    return granule


def induced_cover(cover: Cover) -> NeighborhoodMap:
    """Granule map of a single cover: granule(x) = minimal_description(x)."""
    n = cover.universe.n
    return NeighborhoodMap(
        source=cover.name,
        universe=cover.universe,
        granules=tuple(minimal_description(cover, x) for x in range(n)),
    )


def cover_maps(family: CoverFamily) -> list[NeighborhoodMap]:
    """Granule maps for every cover of the family, in family order."""
    return [induced_cover(c) for c in family.covers]


def family_granule(family: CoverFamily, x: int) -> int:
    """Intersection over all covers of the per-cover granule of ``x``."""
    granule = family.universe.full
    for cover in family.covers:
        granule &= minimal_description(cover, x)
    return granule


def induced_cover_family(
    family: CoverFamily, maps: list[NeighborhoodMap] | None = None
) -> NeighborhoodMap:
    """Family-level granule map: granule(x) intersects all per-cover maps."""
    if maps is None:
        maps = cover_maps(family)
    n = family.universe.n
    granules = []
    for x in range(n):
        g = family.universe.full
        for nmap in maps:
            g &= nmap.granules[x]
        granules.append(g)
    return NeighborhoodMap(source="family", universe=family.universe, granules=tuple(granules))


def _check_target(nmap: NeighborhoodMap, target: int) -> None:
    if not is_subset(target, nmap.universe.full):
        raise CovredError("target set uses indices outside the universe")


def lower_approx(nmap: NeighborhoodMap, target: int) -> int:
    """Union of all granules contained in the target set."""
    _check_target(nmap, target)
    out = 0
    for g in nmap.granules:
        if is_subset(g, target):
            out |= g
    return out


def upper_approx(nmap: NeighborhoodMap, target: int) -> int:
    """Union of all granules meeting the target set."""
    _check_target(nmap, target)
    out = 0
    for g in nmap.granules:
        if g & target:
            out |= g
    return out
