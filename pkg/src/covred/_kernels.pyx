# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled discernibility kernels over packed uint64 bitset arrays.

Row layout matches _bitset.pack_masks: bit k of a mask lives in word k>>6.
All loops run without the GIL so the dispatcher can spread disjoint row
ranges over threads.
"""

from libc.stdint cimport int64_t, uint32_t, uint64_t
from libc.stdlib cimport free, malloc

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef inline bint _subset(const uint64_t* a, const uint64_t* b, Py_ssize_t nw) nogil:
    cdef Py_ssize_t w
    for w in range(nw):
        if a[w] & ~b[w]:
            return 0
    return 1


cdef inline bint _equal(const uint64_t* a, const uint64_t* b, Py_ssize_t nw) nogil:
    cdef Py_ssize_t w
    for w in range(nw):
        if a[w] != b[w]:
            return 0
    return 1


def new_cells_rows(const uint64_t[:, :, ::1] granules, uint64_t[:, :, ::1] cells,
                   Py_ssize_t n, Py_ssize_t row_start, Py_ssize_t row_end):
    """Fill rows [row_start, row_end) of the single-membership matrix.

    Word-parallel: complements each granule and walks its set bits. The
    diagonal is skipped implicitly (every granule contains its own object).
    """
    cdef Py_ssize_t m = granules.shape[0]
    cdef Py_ssize_t nw = granules.shape[2]
    cdef Py_ssize_t i, c, w, j, cword
    cdef uint64_t inv, cbit, last_mask
    cdef Py_ssize_t rem = n - (nw - 1) * 64
    if rem == 64:
        last_mask = ~(<uint64_t>0)
    else:
        last_mask = ((<uint64_t>1) << rem) - 1
    with nogil:
        for i in range(row_start, row_end):
            for c in range(m):
                cword = c >> 6
                cbit = (<uint64_t>1) << (c & 63)
                for w in range(nw):
                    inv = ~granules[c, i, w]
                    if w == nw - 1:
                        inv &= last_mask
                    while inv:
                        j = (w << 6) + __builtin_ctzll(inv)
                        cells[i, j, cword] |= cbit
                        inv &= inv - 1
    return None


def new_cells_rows_count(const uint64_t[:, :, ::1] granules, uint64_t[:, :, ::1] cells,
                         Py_ssize_t n, Py_ssize_t row_start, Py_ssize_t row_end):
    """Literal-loop variant: one membership test per (cover, i, j != i).

    Returns the exact number of tests performed, m * rows * (n - 1).
    Produces the same cells as new_cells_rows.
    """
    cdef Py_ssize_t m = granules.shape[0]
    cdef Py_ssize_t i, c, j, jw
    cdef uint64_t jbit
    cdef int64_t ops = 0
    with nogil:
        for i in range(row_start, row_end):
            for j in range(n):
                if j == i:
                    continue
                jw = j >> 6
                jbit = (<uint64_t>1) << (j & 63)
                for c in range(m):
                    ops += 1
                    if not (granules[c, i, jw] & jbit):
                        cells[i, j, c >> 6] |= (<uint64_t>1) << (c & 63)
    return ops


def legacy_row(const uint64_t[:, :, ::1] granules, const uint64_t[:, ::1] fam,
               Py_ssize_t n, Py_ssize_t i,
               uint64_t[:, ::1] singles_row, uint32_t[::1] pair_buf,
               int64_t[::1] pair_counts):
    """Fill row i of the pairwise-inclusion matrix.

    singles_row is the (n, mwords) slice for this row (pre-zeroed);
    pair_buf is scratch for emitted pair codes s*m+t, cell by cell in j
    order; pair_counts[j] receives the number of pairs of cell (i, j).
    Returns (ops, pairs_written) where ops counts granule comparisons plus
    emitted pairs.
    """
    cdef Py_ssize_t m = granules.shape[0]
    cdef Py_ssize_t nw = granules.shape[2]
    cdef int64_t ops = 0
    cdef Py_ssize_t pos = 0
    cdef Py_ssize_t j, c, na, nb, ai, bi
    cdef int code
    cdef bint sij, sji, s1, s2
    cdef const uint64_t* fi
    cdef const uint64_t* fj
    cdef const uint64_t* gi
    cdef const uint64_t* gj
    cdef int* a_idx = <int*>malloc(m * sizeof(int))
    cdef int* b_idx = <int*>malloc(m * sizeof(int))
    if a_idx == NULL or b_idx == NULL:
        free(a_idx)
        free(b_idx)
        raise MemoryError()
    with nogil:
        fi = &fam[i, 0]
        for j in range(n):
            pair_counts[j] = 0
            if j == i:
                continue
            fj = &fam[j, 0]
            sij = _subset(fi, fj, nw)
            sji = _subset(fj, fi, nw)
            ops += 2
            if sij and sji:
                continue
            if sij:
                for c in range(m):
                    ops += 1
                    gi = &granules[c, i, 0]
                    gj = &granules[c, j, 0]
                    if _subset(gi, gj, nw) and not _equal(gi, gj, nw):
                        singles_row[j, c >> 6] |= (<uint64_t>1) << (c & 63)
            elif sji:
                for c in range(m):
                    ops += 1
                    gi = &granules[c, i, 0]
                    gj = &granules[c, j, 0]
                    if _subset(gj, gi, nw) and not _equal(gi, gj, nw):
                        singles_row[j, c >> 6] |= (<uint64_t>1) << (c & 63)
            else:
                na = 0
                nb = 0
                for c in range(m):
                    gi = &granules[c, i, 0]
                    gj = &granules[c, j, 0]
                    s1 = _subset(gi, gj, nw)
                    s2 = _subset(gj, gi, nw)
                    ops += 2
                    if s1 and s2:
                        continue
                    if s1:
                        a_idx[na] = <int>c
                        na += 1
                    elif s2:
                        b_idx[nb] = <int>c
                        nb += 1
                    else:
                        singles_row[j, c >> 6] |= (<uint64_t>1) << (c & 63)
                if na and nb:
                    ops += <int64_t>(na * nb)
                    pair_counts[j] = na * nb
                    for ai in range(na):
                        code = a_idx[ai] * <int>m
                        for bi in range(nb):
                            pair_buf[pos] = <uint32_t>(code + b_idx[bi])
                            pos += 1
    free(a_idx)
    free(b_idx)
    return ops, pos
