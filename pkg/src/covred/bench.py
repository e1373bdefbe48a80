"""Synthetic cover families and the matrix-construction benchmark.

The benchmark substantiates the construction-cost gap between the two
matrix builders on two axes:

* operation counts (machine-independent): the single-membership builder
  performs exactly m*n*(n-1) granule-membership tests; the pairwise
  builder's comparison count grows at least quadratically in m whenever
  family granules are incomparable and per-cover granules nest.
* wall-clock medians: for fixed n, the legacy/new time ratio as m grows.

Instance styles:

* "bernoulli" (default for general use): every block samples each object
  independently with probability ``density``; empty blocks get one random
  object; uncovered objects are patched into a random block.
* "nested": blocks are prefixes of a random object order, so per-cover
  granules form chains. Across independently permuted covers this
  maximizes the incomparable case with many strict inclusions — the
  regime where the pairwise builder must enumerate ~m^2/4 pairs per cell.
  Bernoulli families at realistic n almost never produce granule
  inclusions, which would leave that term invisible; ratio benchmarks
  therefore default to this style.
* "partition": random partition per cover (for the classical special
  case).

Generation is deterministic in the seed (CPython's Mersenne Twister via
``random.Random``, stable across platforms).
"""

from __future__ import annotations

import gc
import platform
import statistics
import sys
import time
from dataclasses import dataclass, field
from random import Random

import numpy as np

from . import backend
from .discernibility import build_legacy_matrix, build_matrix
from .errors import CovredError
from .granulation import cover_maps, induced_cover_family
from .model import Cover, CoverFamily, Universe

STYLES = ("bernoulli", "nested", "partition")


@dataclass(frozen=True)
class SyntheticSpec:
    """Parameters of one generated family."""

    n: int
    m: int
    blocks_range: tuple[int, int] = (2, 4)
    density: float = 0.5
    seed: int | str = 0
    style: str = "bernoulli"

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("n and m must be at least 1")
        lo, hi = self.blocks_range
        if not 1 <= lo <= hi:
            raise ValueError("blocks_range must satisfy 1 <= lo <= hi")
        if not 0.0 < self.density <= 1.0:
            raise ValueError("density must be in (0, 1]")
        if self.style not in STYLES:
            raise ValueError(f"unknown style {self.style!r}")


def _bernoulli_blocks(rng: Random, n: int, k: int, density: float) -> list[int]:
    blocks = []
    for _ in range(k):
        mask = 0
        for i in range(n):
            if rng.random() < density:
                mask |= 1 << i
        if mask == 0:
            mask = 1 << rng.randrange(n)
        blocks.append(mask)
    union = 0
    for b in blocks:
        union |= b
    for i in range(n):
        if not union >> i & 1:
            blocks[rng.randrange(len(blocks))] |= 1 << i
    return blocks


def _segment_masks(perm: list[int], cuts: list[int], nested: bool) -> list[int]:
    masks = []
    prev = 0
    acc = 0
    for cut in cuts:
        seg = 0
        for i in perm[prev:cut]:
            seg |= 1 << i
        acc |= seg
        masks.append(acc if nested else seg)
        prev = cut
    return masks


def _chain_or_partition(rng: Random, n: int, k: int, nested: bool) -> list[int]:
    perm = list(range(n))
    rng.shuffle(perm)
    k = max(1, min(k, n))
    if nested:
        # Evenly spaced prefix levels keep the granule-size distribution
        # identical across covers and instances, which stabilizes timing
        # comparisons across the (n, m) grid.
        cuts = [round((level + 1) * n / k) for level in range(k)]
        cuts = sorted(set(cuts) | {n})
    else:
        cuts = (sorted(rng.sample(range(1, n), k - 1)) if k > 1 else []) + [n]
    return _segment_masks(perm, cuts, nested)


def generate_family(spec: SyntheticSpec) -> CoverFamily:
    """Deterministic-in-seed valid family (see module docstring)."""
    rng = Random(spec.seed)
    universe = Universe(tuple(f"x{i + 1}" for i in range(spec.n)))
    covers = []
    for ci in range(spec.m):
        k = rng.randint(*spec.blocks_range)
        if spec.style == "bernoulli":
            blocks = _bernoulli_blocks(rng, spec.n, k, spec.density)
        elif spec.style == "nested":
            blocks = _chain_or_partition(rng, spec.n, k, nested=True)
        else:
            blocks = _chain_or_partition(rng, spec.n, k, nested=False)
        seen: set[int] = set()
        deduped = [b for b in blocks if not (b in seen or seen.add(b))]
        covers.append(Cover(universe, f"C{ci + 1}", tuple(deduped)))
    return CoverFamily(universe, tuple(covers))


def instance_seed(master_seed: int, n: int, m: int, k: int = 0) -> str:
    """Stable derived seed for the (n, m, k)-th benchmark instance."""
    return f"{master_seed}:{n}:{m}:{k}"


def cross_check(count: int, *, seed: int = 0, n_range: tuple[int, int] = (1, 8),
                m_range: tuple[int, int] = (1, 5)) -> dict:
    """Run random families through all three reduct routes and compare.

    Returns {"instances", "agreements": {per-pair counts},
    "counterexamples": [...]} where each counterexample carries the
    serialized family and all three reduct sets. Disagreements are
    findings, not failures.
    """
    from .ingestion import family_to_document
    from .reduction import all_reducts, all_reducts_legacy, brute_force_reducts

    if count < 0:
        raise ValueError("count must be nonnegative")
    rng = Random(f"crosscheck:{seed}")
    agreements = {"matrix_vs_brute": 0, "legacy_vs_brute": 0}
    counterexamples = []
    for k in range(count):
        spec = SyntheticSpec(
            n=rng.randint(*n_range),
            m=rng.randint(*m_range),
            blocks_range=(1, 4),
            density=rng.uniform(0.2, 0.8),
            seed=f"crosscheck:{seed}:{k}",
            style=rng.choice(("bernoulli", "bernoulli", "nested", "partition")),
        )
        family = generate_family(spec)
        maps = cover_maps(family)
        family_map = induced_cover_family(family, maps)
        via_matrix = all_reducts(build_matrix(family, maps))
        via_legacy = all_reducts_legacy(build_legacy_matrix(family, maps, family_map))
        via_brute = brute_force_reducts(family)
        matrix_ok = via_matrix.key() == via_brute.key()
        legacy_ok = via_legacy.key() == via_brute.key()
        agreements["matrix_vs_brute"] += matrix_ok
        agreements["legacy_vs_brute"] += legacy_ok
        if not (matrix_ok and legacy_ok):
            counterexamples.append({
                "family": family_to_document(family),
                "matrix": via_matrix.to_payload(),
                "legacy": via_legacy.to_payload(),
                "brute": via_brute.to_payload(),
            })
    return {
        "instances": count,
        "agreements": agreements,
        "counterexamples": counterexamples,
    }


@dataclass
class BenchRow:
    n: int
    m: int
    method: str
    median_ns: int
    ops: int


@dataclass
class BenchReport:
    rows: list[BenchRow] = field(default_factory=list)
    ratios: list[dict] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def to_csv(self) -> str:
        lines = ["n,m,method,median_ns,ops_count"]
        lines += [f"{r.n},{r.m},{r.method},{r.median_ns},{r.ops}" for r in self.rows]
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> dict:
        return {
            "meta": self.meta,
            "rows": [vars(r) for r in self.rows],
            "ratios": self.ratios,
        }


def _timed(build) -> tuple[int, object]:
    gc.collect()
    gc.disable()  # keep collector pauses out of the measurement
    try:
        t0 = time.perf_counter_ns()
        result = build()
        elapsed = time.perf_counter_ns() - t0
    finally:
        gc.enable()
    return elapsed, result


def _interleaved(build_new, build_legacy, repetitions: int):
    """Alternate the two builds repetition by repetition.

    Thermal and scheduling drift then hits both sides of each repetition
    pair equally, so the per-repetition ratio is far more stable than the
    quotient of independently measured medians. Returns median times, the
    median per-repetition legacy/new ratio, and the last legacy matrix.
    """
    build_new()
    legacy = build_legacy()  # warmup pass, untimed
    new_times, legacy_times, ratios = [], [], []
    for _ in range(repetitions):
        legacy = None  # free the previous (large) matrix before rebuilding
        t_new, _ = _timed(build_new)
        t_legacy, legacy = _timed(build_legacy)
        new_times.append(t_new)
        legacy_times.append(t_legacy)
        ratios.append(t_legacy / t_new)
    return (int(statistics.median(new_times)), int(statistics.median(legacy_times)),
            statistics.median(ratios), legacy)


def run_bench(n_values, m_values, *, repetitions: int = 5, seed: int = 0,
              style: str = "nested", density: float = 0.5,
              blocks_range: tuple[int, int] = (5, 5),
              backend_name: str | None = None,
              compare_backends: bool = False,
              verify_threads: int = 1) -> BenchReport:
    """Time both builders over the (n, m) grid; median of ``repetitions``.

    The timed legacy build retains its pair items — the pairwise matrix
    holds its cell content, and that materialization is exactly where its
    quadratic-in-m cost lives. Expect on the order of n^2 * m^2 / 4 pair
    slots at the top of the grid (about 160 MB at n=500, m=32 with the
    default nested instances); each matrix is freed before the next build.

    Timing runs single-threaded with the builds interleaved repetition by
    repetition and the garbage collector held off during timed regions;
    the reported ratio per (n, m) is the median of the per-repetition
    legacy/new ratios (drift cancels within a pair). ``verify_threads`` > 1
    additionally runs one threaded build per instance (outside the timed
    region) and checks bit-identical output. ``compare_backends`` adds
    rows for the other backend, method-tagged ``new@<backend>``.

    Operation counts are machine-independent: the ``new`` count comes from
    one untimed literal-loop pass and always equals m*n*(n-1); the
    ``legacy`` count is recorded by its builder.
    """
    n_values = list(n_values)
    m_values = list(m_values)
    if not n_values or not m_values:
        raise ValueError("n and m value lists must be nonempty")
    if repetitions < 3:
        raise ValueError("need at least 3 repetitions for a stable median")

    active = backend.resolve_backend(backend_name)
    report = BenchReport(meta={
        "machine": platform.platform(),
        "python": sys.version.split()[0],
        "backend": active,
        "seed": seed,
        "repetitions": repetitions,
        "style": style,
        "density": density,
        "blocks_range": list(blocks_range),
    })

    for n in n_values:
        for m in m_values:
            spec = SyntheticSpec(n=n, m=m, blocks_range=blocks_range,
                                 density=density, seed=instance_seed(seed, n, m),
                                 style=style)
            family = generate_family(spec)
            maps = cover_maps(family)
            family_map = induced_cover_family(family, maps)
            for nmap in (*maps, family_map):
                _ = nmap.words  # populate the cached packing outside the timed region

            new_ns, legacy_ns, ratio, legacy_matrix = _interleaved(
                lambda: build_matrix(family, maps, backend_name=active),
                lambda: build_legacy_matrix(family, maps, family_map,
                                            backend_name=active),
                repetitions)
            _, ops_new = backend.new_cells(maps, n, m, count=True, backend=active)

            if verify_threads > 1:
                single = build_matrix(family, maps, backend_name=active)
                threaded = build_matrix(family, maps, threads=verify_threads,
                                        backend_name=active)
                if not np.array_equal(threaded.words, single.words):
                    raise AssertionError("threaded build diverged from single-threaded")

            report.rows.append(BenchRow(n, m, "new", new_ns, ops_new))
            report.rows.append(BenchRow(n, m, "legacy", legacy_ns, legacy_matrix.ops))
            report.ratios.append({"n": n, "m": m, "ratio": ratio})

            if compare_backends:
                other = "python" if active == "compiled" else "compiled"
                try:
                    backend.resolve_backend(other)
                except CovredError:
                    continue  # other backend not available in this build
                o_new_ns, o_leg_ns, _, o_leg = _interleaved(
                    lambda: build_matrix(family, maps, backend_name=other),
                    lambda: build_legacy_matrix(family, maps, family_map,
                                                backend_name=other),
                    repetitions)
                report.rows.append(BenchRow(n, m, f"new@{other}", o_new_ns, ops_new))
                report.rows.append(BenchRow(n, m, f"legacy@{other}", o_leg_ns, o_leg.ops))

    return report
