"""Pure-Python discernibility kernels.

Fallback used when the compiled extension is unavailable (and in the
backend-comparison benchmark). Must produce bit-identical output to the
compiled kernels; the test suite enforces this. The ``threads`` argument
accepted by the dispatcher is ignored here: the fallback runs
single-threaded, which trivially keeps output independent of worker count.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from ._bitset import full_mask, pack_masks


def new_cells(
    granules: Sequence[Sequence[int]], n: int, *, count: bool = False
) -> tuple[np.ndarray, int | None]:
    """Cells of the single-membership matrix: cell(i,j) = covers whose
    granule of i misses j. Returns (packed (n,n,words) uint64 array, ops).

    With ``count=True`` the cells are produced by one literal membership
    test per (cover, i, j != i) triple and ``ops`` is the exact number of
    tests, m*n*(n-1). The default path is word-parallel and returns
    ops=None; both paths yield identical cells.
    """
    m = len(granules)
    cells = [0] * (n * n)
    if count:
        ops = 0
        for i in range(n):
            base = i * n
            for j in range(n):
                if j == i:
                    continue
                acc = 0
                for c in range(m):
                    ops += 1
                    if not granules[c][i] >> j & 1:
                        acc |= 1 << c
                cells[base + j] = acc
        return pack_masks(cells, m).reshape(n, n, -1), ops

    full = full_mask(n)
    for c in range(m):
        bit = 1 << c
        gr = granules[c]
        for i in range(n):
            inv = ~gr[i] & full
            base = i * n
            while inv:
                low = inv & -inv
                cells[base + low.bit_length() - 1] |= bit
                inv ^= low
    return pack_masks(cells, m).reshape(n, n, -1), None


def legacy_cells(
    granules: Sequence[Sequence[int]],
    fam: Sequence[int],
    n: int,
    *,
    retain_pairs: bool = True,
) -> tuple[np.ndarray, np.ndarray, np.ndarray | None, int]:
    """Cells of the pairwise-inclusion matrix.

    Returns (singles (n,n,words) uint64, pair_offsets (n*n+1) int64,
    pair_codes uint32 or None, ops). A pair (s, t) is stored as the code
    ``s * m + t``. ``ops`` counts granule comparisons plus emitted pairs;
    with ``retain_pairs=False`` every pair is still enumerated and counted
    but the codes are not kept.
    """
    m = len(granules)
    singles = [0] * (n * n)
    counts = [0] * (n * n)
    codes: list[int] = []
    ops = 0
    a_buf = [0] * m
    b_buf = [0] * m
    for i in range(n):
        base = i * n
        fam_i = fam[i]
        for j in range(n):
            if j == i:
                continue
            fam_j = fam[j]
            sub_ij = fam_i & ~fam_j == 0
            sub_ji = fam_j & ~fam_i == 0
            ops += 2
            if sub_ij and sub_ji:
                continue
            acc = 0
            if sub_ij:
                for c in range(m):
                    ops += 1
                    gi, gj = granules[c][i], granules[c][j]
                    if gi != gj and gi & ~gj == 0:
                        acc |= 1 << c
            elif sub_ji:
                for c in range(m):
                    ops += 1
                    gi, gj = granules[c][i], granules[c][j]
                    if gi != gj and gj & ~gi == 0:
                        acc |= 1 << c
            else:
                na = nb = 0
                for c in range(m):
                    gi, gj = granules[c][i], granules[c][j]
                    s1 = gi & ~gj == 0
                    s2 = gj & ~gi == 0
                    ops += 2
                    if s1 and s2:
                        continue
                    if s1:
                        a_buf[na] = c
                        na += 1
                    elif s2:
                        b_buf[nb] = c
                        nb += 1
                    else:
                        acc |= 1 << c
                if na and nb:
                    ops += na * nb
                    counts[base + j] = na * nb
                    if retain_pairs:
                        for ai in range(na):
                            code = a_buf[ai] * m
                            for bi in range(nb):
                                codes.append(code + b_buf[bi])
            singles[base + j] = acc

    offsets = np.zeros(n * n + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    singles_words = pack_masks(singles, m).reshape(n, n, -1)
    pair_codes = np.asarray(codes, dtype=np.uint32) if retain_pairs else None
    return singles_words, offsets, pair_codes, ops
