"""Discernibility matrices.

Two constructions over the same cover family:

* the single-membership matrix: cell (i, j) lists the covers whose granule
  of object i does not contain object j. One membership test per
  (cover, i, j) triple, so construction is proportional to m * n^2.
* the legacy pairwise-inclusion matrix: cells are derived by comparing
  granules by inclusion, case-split on how the family-level granules of i
  and j relate, and in the incomparable case every conjunctive pair
  (s, t) with granule_s(i) strictly inside granule_s(j) and granule_t(j)
  strictly inside granule_t(i) is enumerated — up to m^2/4 pairs per cell.

Inclusion reading for the legacy cells: strict inclusion means proper
subset; the "incomparable" tests mean "not a subset or equal" on both
sides. Negating proper inclusion instead would emit covers with *equal*
granules as discerning items, which contradicts the fact that equal
granules cannot distinguish the pair.

Matrices are asymmetric: cell (i, j) need not equal cell (j, i), so the
full ordered grid is materialized.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from ._bitset import is_subset, iter_bits, unpack_words
from .granulation import NeighborhoodMap, cover_maps, induced_cover_family
from .model import CoverFamily


class DiscernibilityMatrix:
    """n x n grid of cover sets from the single-membership construction.

    Cells are stored packed ((n, n, mwords) uint64); ``cell(i, j)`` returns
    the cover-index bitmask. ``ops`` is the membership-test count when the
    matrix was built in counting mode, else None.
    """

    def __init__(self, family: CoverFamily, words: np.ndarray, ops: int | None = None):
        self.family = family
        self.names = family.names
        self.n = family.universe.n
        self.m = family.m
        self.words = words
        self.ops = ops

    def cell(self, i: int, j: int) -> int:
        return unpack_words(self.words[i, j])

    def cell_names(self, i: int, j: int) -> tuple[str, ...]:
        return tuple(self.names[c] for c in iter_bits(self.cell(i, j)))

    def row_masks(self, i: int) -> list[int]:
        return [unpack_words(self.words[i, j]) for j in range(self.n)]

    def all_masks(self) -> list[list[int]]:
        return [self.row_masks(i) for i in range(self.n)]

    def distinct_cells(self) -> tuple[int, ...]:
        """Unique nonempty cell masks, canonically ordered.

        Deduplication shrinks the hitting-set instance without changing its
        solutions, since repeated clauses are redundant in a conjunction.
        """
        flat = np.unique(self.words.reshape(self.n * self.n, -1), axis=0)
        masks = sorted(
            (mask for row in flat if (mask := unpack_words(row))),
            key=lambda v: (v.bit_count(), v),
        )
        return tuple(masks)

    def is_all_empty(self) -> bool:
        return not self.words.any()

    def to_payload(self) -> list[list[list[str]]]:
        """JSON form: array of rows, each an array of cover-name arrays."""
        return [
            [list(self.cell_names(i, j)) for j in range(self.n)]
            for i in range(self.n)
        ]

    def to_grid(self) -> str:
        return _grid(self.family, lambda i, j: _cell_text(self.cell_names(i, j)))


class LegacyMatrix:
    """n x n grid from the pairwise-inclusion construction.

    Each cell holds single cover items plus conjunctive pair items. Singles
    are packed like DiscernibilityMatrix cells; pairs are flat uint32 codes
    (s * m + t) sliced per cell through ``offsets``. ``ops`` counts granule
    comparisons plus emitted pairs. When built with retain_pairs=False the
    pairs were enumerated (and counted) but not kept, and pair accessors
    refuse to run.
    """

    def __init__(self, family: CoverFamily, singles: np.ndarray,
                 offsets: np.ndarray, pair_codes: np.ndarray | None, ops: int):
        self.family = family
        self.names = family.names
        self.n = family.universe.n
        self.m = family.m
        self.singles = singles
        self.offsets = offsets
        self.pair_codes = pair_codes
        self.ops = ops

    @property
    def retained_pairs(self) -> bool:
        return self.pair_codes is not None

    def cell_singles(self, i: int, j: int) -> int:
        return unpack_words(self.singles[i, j])

    def pair_count(self, i: int, j: int) -> int:
        k = i * self.n + j
        return int(self.offsets[k + 1] - self.offsets[k])

    def cell_pairs(self, i: int, j: int) -> tuple[tuple[int, int], ...]:
        if self.pair_codes is None:
            raise ValueError("matrix was built without retaining pair items")
        k = i * self.n + j
        codes = self.pair_codes[self.offsets[k]:self.offsets[k + 1]]
        return tuple((int(c) // self.m, int(c) % self.m) for c in codes)

    def cell_is_empty(self, i: int, j: int) -> bool:
        return self.cell_singles(i, j) == 0 and self.pair_count(i, j) == 0

    def cell_terms(self, i: int, j: int) -> tuple[int, ...]:
        """The cell as monotone terms: each single is a one-cover term and
        each pair a two-cover term (a subset satisfies the cell when it
        includes all covers of at least one term)."""
        terms = [1 << c for c in iter_bits(self.cell_singles(i, j))]
        terms.extend((1 << s) | (1 << t) for s, t in self.cell_pairs(i, j))
        return tuple(terms)

    def to_payload(self) -> list[list[dict]]:
        out = []
        for i in range(self.n):
            row = []
            for j in range(self.n):
                singles = [self.names[c] for c in iter_bits(self.cell_singles(i, j))]
                pairs = [[self.names[s], self.names[t]] for s, t in self.cell_pairs(i, j)]
                row.append({"singles": singles, "pairs": pairs})
            out.append(row)
        return out

    def to_grid(self) -> str:
        def fmt(i: int, j: int) -> str:
            names = [self.names[c] for c in iter_bits(self.cell_singles(i, j))]
            names += [f"{self.names[s]}^{self.names[t]}" for s, t in self.cell_pairs(i, j)]
            return _cell_text(names)

        return _grid(self.family, fmt)


def _cell_text(names) -> str:
    return "{" + ",".join(names) + "}" if names else "-"


def _grid(family: CoverFamily, fmt) -> str:
    labels = family.universe.labels
    n = len(labels)
    cells = [[fmt(i, j) for j in range(n)] for i in range(n)]
    widths = [max(len(labels[j]), *(len(cells[i][j]) for i in range(n))) for j in range(n)]
    head = " " * (max(len(l) for l in labels) + 2)
    head += "  ".join(labels[j].ljust(widths[j]) for j in range(n))
    lines = [head]
    lw = max(len(l) for l in labels)
    for i in range(n):
        row = labels[i].ljust(lw) + "  "
        row += "  ".join(cells[i][j].ljust(widths[j]) for j in range(n))
        lines.append(row.rstrip())
    return "\n".join(lines) + "\n"


def build_matrix(family: CoverFamily, maps: list[NeighborhoodMap] | None = None, *,
                 threads: int = 1, count_ops: bool = False,
                 backend_name: str | None = None) -> DiscernibilityMatrix:
    """Build the single-membership matrix.

    ``maps`` must be the per-cover granule maps in family order; they are
    computed when omitted. In counting mode the builder runs one literal
    membership test per (cover, i, j != i) triple and records the count.
    """
    if maps is None:
        maps = cover_maps(family)
    words, ops = backend.new_cells(
        maps, family.universe.n, family.m,
        count=count_ops, threads=threads, backend=backend_name,
    )
    return DiscernibilityMatrix(family, words, ops)


def build_legacy_matrix(family: CoverFamily, maps: list[NeighborhoodMap] | None = None,
                        family_map: NeighborhoodMap | None = None, *,
                        threads: int = 1, retain_pairs: bool = True,
                        backend_name: str | None = None) -> LegacyMatrix:
    """Build the pairwise-inclusion matrix (see module docstring)."""
    if maps is None:
        maps = cover_maps(family)
    if family_map is None:
        family_map = induced_cover_family(family, maps)
    singles, offsets, codes, ops = backend.legacy_cells(
        maps, family_map, family.universe.n, family.m,
        threads=threads, retain_pairs=retain_pairs, backend=backend_name,
    )
    return LegacyMatrix(family, singles, offsets, codes, ops)


@dataclass
class MatrixLawReport:
    """Violations of the three structural matrix laws (expected none).

    * membership: cover in cell(i,j) iff granule_cover(i) misses j;
    * diagonal: cell(i,i) is empty;
    * triangle: cell(i,j) is contained in cell(i,t) union cell(t,j) —
      the contrapositive of granule transitivity: if t is in granule(i)
      and j is in granule(t) then j is in granule(i).
    """

    membership: list[tuple[int, int, int]]
    diagonal: list[int]
    triangle: list[tuple[int, int, int]]

    @property
    def ok(self) -> bool:
        return not (self.membership or self.diagonal or self.triangle)

    def summary(self) -> str:
        return (f"membership violations: {len(self.membership)}, "
                f"diagonal violations: {len(self.diagonal)}, "
                f"triangle violations: {len(self.triangle)}")


def check_matrix_laws(matrix: DiscernibilityMatrix,
                      maps: list[NeighborhoodMap] | None = None) -> MatrixLawReport:
    """Exhaustively verify the matrix laws (O(n^3) for the triangle law)."""
    if maps is None:
        maps = cover_maps(matrix.family)
    n = matrix.n
    grid = matrix.all_masks()

    membership = []
    for i in range(n):
        for j in range(n):
            expected = 0
            for c, nmap in enumerate(maps):
                if not nmap.granules[i] >> j & 1:
                    expected |= 1 << c
            if grid[i][j] != expected:
                membership.append((i, j, grid[i][j] ^ expected))

    diagonal = [i for i in range(n) if grid[i][i]]

    triangle = []
    for i in range(n):
        row_i = grid[i]
        for j in range(n):
            cij = row_i[j]
            if not cij:
                continue
            for t in range(n):
                if not is_subset(cij, row_i[t] | grid[t][j]):
                    triangle.append((i, j, t))
    return MatrixLawReport(membership, diagonal, triangle)
