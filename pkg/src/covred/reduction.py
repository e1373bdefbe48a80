"""Attribute core, reduct verification and all-reducts enumeration.

A subset of covers preserves the family when it induces the same granule
for every object. Reducts are the inclusion-minimal preserving subsets;
equivalently (and this is how the fast path works) the minimal hitting
sets of the nonempty discernibility cells. The brute-force enumerator is
the independent oracle: it never looks at a matrix.

Degenerate families — every cell empty, i.e. every granule is the whole
universe — have no discerning constraints at all. All routes return the
single empty reduct flagged ``degenerate`` rather than erroring, keeping
the algebra total.

Output is canonical: members in family order inside each reduct, reducts
ordered by (cardinality, member indices), independent of clause order and
worker count.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from ._bitset import iter_bits, mask_of
from .errors import (
    EmptySubsetError,
    LastCoverError,
    TooManyCoversError,
    UnknownCoverError,
)
from .discernibility import DiscernibilityMatrix, LegacyMatrix
from .granulation import cover_maps, induced_cover_family
from .hitting import minimal_hitting_sets, minimal_models
from .model import CoverFamily

BRUTE_FORCE_LIMIT = 20  # 2^m subsets; refuse beyond this


@dataclass(frozen=True)
class ReductSet:
    """All reducts of a family plus their intersection, the core."""

    reducts: tuple[tuple[str, ...], ...]
    core: tuple[str, ...]
    method: str
    degenerate: bool = False

    def to_payload(self) -> dict:
        payload = {
            "reducts": [list(r) for r in self.reducts],
            "core": list(self.core),
            "method": self.method,
        }
        if self.degenerate:
            payload["degenerate"] = True
        return payload

    def key(self) -> frozenset[frozenset[str]]:
        """Order-insensitive identity, for cross-method comparison."""
        return frozenset(frozenset(r) for r in self.reducts)


def _subset_mask(family: CoverFamily, subset: Iterable[str] | int) -> int:
    if isinstance(subset, int):
        if subset >> family.m:
            raise UnknownCoverError(
                f"attribute mask {subset:#x} uses bits beyond the {family.m} covers"
            )
        return subset
    return mask_of(family.cover_index(name) for name in subset)


def _granules_over(family: CoverFamily, maps, mask: int) -> list[int]:
    full = family.universe.full
    chosen = [maps[c].granules for c in iter_bits(mask)]
    out = []
    for x in range(family.universe.n):
        g = full
        for granules in chosen:
            g &= granules[x]
        out.append(g)
    return out


def is_covering_preserving(family: CoverFamily, subset: Iterable[str] | int) -> bool:
    """True iff the subset induces the same granule as the whole family
    for every object."""
    mask = _subset_mask(family, subset)
    if mask == 0:
        raise EmptySubsetError("granulation over the empty attribute subset is undefined")
    maps = cover_maps(family)
    fam = induced_cover_family(family, maps).granules
    return _granules_over(family, maps, mask) == list(fam)


def is_indispensable(family: CoverFamily, name: str) -> bool:
    """True iff dropping the cover changes some object's family granule."""
    idx = family.cover_index(name)
    if family.m == 1:
        raise LastCoverError("cannot remove the only cover of a family")
    rest = ((1 << family.m) - 1) & ~(1 << idx)
    return not is_covering_preserving(family, rest)


def core_from_matrix(matrix: DiscernibilityMatrix) -> tuple[str, ...]:
    """Covers occurring as a singleton cell; equals the intersection of all
    reducts."""
    singles = 0
    for mask in matrix.distinct_cells():
        if mask.bit_count() == 1:
            singles |= mask
    return tuple(matrix.names[c] for c in iter_bits(singles))


def reduct_check(matrix: DiscernibilityMatrix, subset: Iterable[str] | int) -> bool:
    """True iff the subset hits every nonempty cell — equivalent to
    is_covering_preserving on the same family."""
    mask = _subset_mask(matrix.family, subset)
    return all(cell & mask for cell in matrix.distinct_cells())


def _canonical(family: CoverFamily, masks: Iterable[int], method: str,
               degenerate: bool = False) -> ReductSet:
    masks = list(masks)
    names = family.names
    reducts = sorted(
        (tuple(names[c] for c in iter_bits(mask)) for mask in masks),
        key=lambda r: (len(r), tuple(family.cover_index(x) for x in r)),
    )
    core_mask = None
    for mask in masks:
        core_mask = mask if core_mask is None else core_mask & mask
    core = tuple(names[c] for c in iter_bits(core_mask or 0))
    return ReductSet(tuple(reducts), core, method, degenerate)


def all_reducts(matrix: DiscernibilityMatrix) -> ReductSet:
    """Every minimal hitting set of the deduplicated nonempty cells."""
    clauses = matrix.distinct_cells()
    if not clauses:
        return ReductSet(((),), (), "matrix", degenerate=True)
    return _canonical(matrix.family, minimal_hitting_sets(clauses), "matrix")


def all_reducts_legacy(matrix: LegacyMatrix) -> ReductSet:
    """Minimal subsets satisfying every nonempty legacy cell.

    A subset satisfies a cell when it contains a single item, or both
    members of a pair item. Pair items are conjunctions, so cells are
    monotone term-disjunctions and reducts are their minimal models.
    """
    n = matrix.n
    cells = set()
    for i in range(n):
        for j in range(n):
            if i == j or matrix.cell_is_empty(i, j):
                continue
            cells.add(tuple(sorted(matrix.cell_terms(i, j))))
    if not cells:
        return ReductSet(((),), (), "legacy", degenerate=True)
    models = minimal_models(sorted(cells))
    return _canonical(matrix.family, models, "legacy")


def brute_force_reducts(family: CoverFamily) -> ReductSet:
    """Oracle: enumerate every nonempty subset, keep the preserving ones,
    retain the inclusion-minimal. Exponential in m, guarded."""
    m = family.m
    if m > BRUTE_FORCE_LIMIT:
        raise TooManyCoversError(
            f"brute-force enumeration refused for m={m} > {BRUTE_FORCE_LIMIT}"
        )
    maps = cover_maps(family)
    fam = induced_cover_family(family, maps).granules
    full = family.universe.full
    if all(g == full for g in fam):
        return ReductSet(((),), (), "brute", degenerate=True)
    target = list(fam)
    minimal: list[int] = []
    for mask in sorted(range(1, 1 << m), key=lambda v: (v.bit_count(), v)):
        if any(r & mask == r for r in minimal):
            continue  # superset of an accepted reduct
        if _granules_over(family, maps, mask) == target:
            minimal.append(mask)
    return _canonical(family, minimal, "brute")
