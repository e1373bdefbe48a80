"""Kernel backend selection and dispatch.

The matrix builders run on a compiled Cython core when the extension is
importable and fall back to pure-Python kernels otherwise; the choice is
made once at import. COVRED_BACKEND=python|compiled forces it, and every
dispatcher accepts a per-call ``backend=`` override so the benchmark can
compare both in one process.

Both backends return identical packed arrays: matrices are bit-identical
regardless of backend and thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _pykernels
from ._bitset import word_count
from .errors import CovredError

try:
    from . import _kernels
except ImportError:  # extension not built; pure-Python fallback takes over
    _kernels = None


def _default_backend() -> str:
    env = os.environ.get("COVRED_BACKEND", "auto")
    if env in ("", "auto"):
        return "compiled" if _kernels is not None else "python"
    if env == "python":
        return "python"
    if env == "compiled":
        if _kernels is None:
            raise CovredError("COVRED_BACKEND=compiled but the compiled core is not built")
        return "compiled"
    raise CovredError(f"unknown COVRED_BACKEND value {env!r}")


DEFAULT_BACKEND = _default_backend()

# Below this many rows the thread fan-out costs more than it saves.
_MIN_ROWS_PER_THREAD = 32


def active_backend() -> str:
    return DEFAULT_BACKEND


def resolve_backend(backend: str | None) -> str:
    if backend is None:
        return DEFAULT_BACKEND
    if backend == "python":
        return "python"
    if backend == "compiled":
        if _kernels is None:
            raise CovredError("compiled backend requested but the extension is not built")
        return "compiled"
    raise CovredError(f"unknown backend {backend!r}")


def _row_chunks(n: int, threads: int) -> list[tuple[int, int]]:
    threads = max(1, min(threads, n // _MIN_ROWS_PER_THREAD or 1))
    step = -(-n // threads)
    return [(a, min(a + step, n)) for a in range(0, n, step)]


def new_cells(maps, n: int, m: int, *, count: bool = False, threads: int = 1,
              backend: str | None = None) -> tuple[np.ndarray, int | None]:
    """Dispatch the single-membership cell builder.

    ``maps`` are the per-cover granule maps in family order. Returns the
    packed (n, n, mwords) uint64 cell array and, in counting mode, the
    exact number of membership tests.
    """
    if resolve_backend(backend) == "python":
        return _pykernels.new_cells([mp.granules for mp in maps], n, count=count)

    granules = np.stack([mp.words for mp in maps])
    cells = np.zeros((n, n, word_count(m)), dtype=np.uint64)
    kernel = _kernels.new_cells_rows_count if count else _kernels.new_cells_rows
    chunks = _row_chunks(n, threads)
    if len(chunks) == 1:
        ops = kernel(granules, cells, n, 0, n)
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            futures = [pool.submit(kernel, granules, cells, n, a, b) for a, b in chunks]
            results = [f.result() for f in futures]
        ops = sum(results) if count else None
    return cells, (ops if count else None)


def legacy_cells(maps, family_map, n: int, m: int, *, threads: int = 1,
                 retain_pairs: bool = True, backend: str | None = None,
                 ) -> tuple[np.ndarray, np.ndarray, np.ndarray | None, int]:
    """Dispatch the pairwise-inclusion cell builder.

    Returns (singles (n,n,mwords) uint64, pair_offsets (n*n+1) int64,
    pair_codes uint32 or None, ops). Pair codes are ``s * m + t`` in cell
    order; with retain_pairs=False they are enumerated but not kept.
    """
    if resolve_backend(backend) == "python":
        return _pykernels.legacy_cells(
            [mp.granules for mp in maps], family_map.granules, n,
            retain_pairs=retain_pairs,
        )

    granules = np.stack([mp.words for mp in maps])
    fam = family_map.words
    singles = np.zeros((n, n, word_count(m)), dtype=np.uint64)
    counts = np.zeros((n, n), dtype=np.int64)
    row_codes: list[np.ndarray | None] = [None] * n
    max_pairs = max(1, (m * m) // 4)
    total_ops = [0] * n

    def run_rows(rows: range) -> None:
        scratch = np.empty(n * max_pairs, dtype=np.uint32)
        count_buf = np.zeros(n, dtype=np.int64)
        for i in rows:
            ops, pos = _kernels.legacy_row(granules, fam, n, i, singles[i], scratch, count_buf)
            total_ops[i] = ops
            counts[i, :] = count_buf
            if retain_pairs:
                row_codes[i] = scratch[:pos].copy()

    chunks = _row_chunks(n, threads)
    if len(chunks) == 1:
        run_rows(range(n))
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            futures = [pool.submit(run_rows, range(a, b)) for a, b in chunks]
            for f in futures:
                f.result()

    offsets = np.zeros(n * n + 1, dtype=np.int64)
    np.cumsum(counts.reshape(-1), out=offsets[1:])
    pair_codes = np.concatenate(row_codes) if retain_pairs else None
    return singles, offsets, pair_codes, sum(total_ops)
