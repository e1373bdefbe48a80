import pytest

import covred.backend as backend_mod
from covred.bench import SyntheticSpec, generate_family, instance_seed, run_bench
from covred.discernibility import build_legacy_matrix, build_matrix, check_matrix_laws
from covred.model import CoverFamily, Universe, is_partition, validate_cover
from covred.reduction import all_reducts, brute_force_reducts

BACKENDS = ["python"] + (["compiled"] if backend_mod._kernels is not None else [])


# --- generator ---------------------------------------------------------------


def test_generator_deterministic_in_seed():
    spec = SyntheticSpec(n=8, m=4, seed=42)
    assert generate_family(spec) == generate_family(spec)
    other = SyntheticSpec(n=8, m=4, seed=43)
    assert generate_family(other) != generate_family(spec)


def test_generator_single_object_single_cover():
    family = generate_family(SyntheticSpec(n=1, m=1, seed=5))
    assert family.universe.n == 1
    assert family.covers[0].blocks == (1,)


def test_generator_always_valid():
    # Cover/CoverFamily constructors enforce the invariants, so surviving
    # construction is the check; exercise all styles and edge sizes.
    for style in ("bernoulli", "nested", "partition"):
        for k in range(30):
            spec = SyntheticSpec(
                n=(k % 9) + 1, m=(k % 5) + 1, blocks_range=(1, 5),
                density=0.2 + 0.15 * (k % 5), seed=f"valid:{style}:{k}", style=style,
            )
            family = generate_family(spec)
            full = family.universe.full
            for cover in family.covers:
                union = 0
                for b in cover.blocks:
                    assert b != 0
                    union |= b
                assert union == full


def test_generator_partition_style():
    for k in range(10):
        spec = SyntheticSpec(n=7, m=3, blocks_range=(1, 4), seed=k, style="partition")
        family = generate_family(spec)
        assert all(is_partition(c) for c in family.covers)


def test_generator_nested_style_blocks_form_chain():
    spec = SyntheticSpec(n=12, m=3, blocks_range=(4, 4), seed=9, style="nested")
    family = generate_family(spec)
    for cover in family.covers:
        for a, b in zip(cover.blocks, cover.blocks[1:]):
            assert a & ~b == 0  # each block contained in the next
        assert cover.blocks[-1] == family.universe.full


def test_generator_spec_validation():
    with pytest.raises(ValueError):
        SyntheticSpec(n=0, m=1)
    with pytest.raises(ValueError):
        SyntheticSpec(n=1, m=1, blocks_range=(3, 2))
    with pytest.raises(ValueError):
        SyntheticSpec(n=1, m=1, density=0.0)
    with pytest.raises(ValueError):
        SyntheticSpec(n=1, m=1, style="weird")


def test_generated_instance_runs_whole_pipeline():
    family = generate_family(SyntheticSpec(n=8, m=4, seed=42))
    matrix = build_matrix(family)
    assert check_matrix_laws(matrix).ok
    result = all_reducts(matrix)
    assert result.key() == brute_force_reducts(family).key()


# --- operation counts -----------------------------------------------------------


@pytest.mark.parametrize("backend", BACKENDS)
def test_new_builder_count_formula_exact(backend):
    # includes the 64-bit word boundaries for the object masks
    for n, m in [(1, 1), (5, 2), (17, 5), (40, 9), (63, 2), (64, 2), (65, 3), (128, 3)]:
        family = generate_family(SyntheticSpec(n=n, m=m, seed=f"{n}:{m}"))
        matrix = build_matrix(family, count_ops=True, backend_name=backend)
        assert matrix.ops == m * n * (n - 1)


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled backend not built")
@pytest.mark.parametrize("n", [63, 64, 65, 128])
def test_backends_agree_at_word_boundaries(n):
    family = generate_family(SyntheticSpec(n=n, m=3, seed=f"boundary:{n}"))
    from covred.granulation import cover_maps, induced_cover_family
    import covred.backend as bk
    import numpy as np

    maps = cover_maps(family)
    fmap = induced_cover_family(family, maps)
    a, _ = bk.new_cells(maps, n, 3, backend="compiled")
    b, _ = bk.new_cells(maps, n, 3, backend="python")
    assert np.array_equal(a, b)
    sa, oa, ca, opsa = bk.legacy_cells(maps, fmap, n, 3, backend="compiled")
    sb, ob, cb, opsb = bk.legacy_cells(maps, fmap, n, 3, backend="python")
    assert np.array_equal(sa, sb) and np.array_equal(oa, ob)
    assert np.array_equal(ca, cb) and opsa == opsb


def _crossed_chains(m: int) -> CoverFamily:
    """All family granules singletons, per-cover granules chained: every
    off-diagonal legacy cell is incomparable with |A| = |B| = m/2."""
    u = Universe(("x1", "x2", "x3"))
    covers = []
    for k in range(m // 2):
        covers.append(validate_cover(u, [["x1"], ["x1", "x2"], ["x1", "x2", "x3"]], f"A{k}"))
    for k in range(m // 2):
        covers.append(validate_cover(u, [["x3"], ["x2", "x3"], ["x1", "x2", "x3"]], f"B{k}"))
    return CoverFamily(u, tuple(covers))


@pytest.mark.parametrize("backend", BACKENDS)
def test_legacy_pair_count_quadratic_in_m(backend):
    pair_totals = {}
    ops_totals = {}
    for m in (4, 8, 16, 32):
        legacy = build_legacy_matrix(_crossed_chains(m), backend_name=backend)
        pair_totals[m] = int(legacy.offsets[-1])
        ops_totals[m] = legacy.ops
        assert pair_totals[m] == 6 * (m // 2) ** 2  # six cells, m^2/4 pairs each
    for m in (4, 8, 16):
        assert pair_totals[2 * m] == 4 * pair_totals[m]
        assert ops_totals[2 * m] / ops_totals[m] > 2  # superlinear overall


def test_legacy_ops_grow_superlinearly_on_nested_instances():
    ops = {}
    for m in (4, 8, 16):
        spec = SyntheticSpec(n=60, m=m, blocks_range=(5, 5),
                             seed=instance_seed(0, 60, m), style="nested")
        family = generate_family(spec)
        ops[m] = build_legacy_matrix(family).ops
    assert ops[8] / ops[4] > 2
    assert ops[16] / ops[8] > 2


# --- run_bench --------------------------------------------------------------------


def test_run_bench_report_shape_and_ratio_rows():
    report = run_bench([30], [2, 4], repetitions=3, seed=1)
    assert {r.method for r in report.rows} == {"new", "legacy"}
    assert all(r.median_ns > 0 for r in report.rows)
    assert [x["m"] for x in report.ratios] == [2, 4]
    assert report.meta["repetitions"] == 3
    csv_text = report.to_csv()
    assert csv_text.startswith("n,m,method,median_ns,ops_count\n")
    new_rows = [r for r in report.rows if r.method == "new"]
    assert [r.ops for r in new_rows] == [2 * 30 * 29, 4 * 30 * 29]


def test_run_bench_validation():
    with pytest.raises(ValueError):
        run_bench([10], [2], repetitions=2)
    with pytest.raises(ValueError):
        run_bench([], [2], repetitions=3)


def test_run_bench_verify_threads_checks_equality():
    report = run_bench([64], [3], repetitions=3, seed=2, verify_threads=4)
    assert report.rows


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled backend not built")
def test_run_bench_compare_backends_adds_rows():
    report = run_bench([30], [3], repetitions=3, seed=3, compare_backends=True)
    methods = {r.method for r in report.rows}
    other = "python" if report.meta["backend"] == "compiled" else "compiled"
    assert f"new@{other}" in methods and f"legacy@{other}" in methods
    # ops are backend-independent
    by_method = {r.method: r.ops for r in report.rows}
    assert by_method["new"] == by_method[f"new@{other}"]
    assert by_method["legacy"] == by_method[f"legacy@{other}"]


def test_bench_instances_satisfy_matrix_and_reduct_invariants():
    # the bench generator doubles as a fuzzer for the whole pipeline
    for k in range(12):
        style = ("bernoulli", "nested", "partition")[k % 3]
        spec = SyntheticSpec(n=6 + k, m=1 + k % 4, blocks_range=(2, 4),
                             seed=f"fuzz:{k}", style=style)
        family = generate_family(spec)
        matrix = build_matrix(family)
        assert check_matrix_laws(matrix).ok
        result = all_reducts(matrix)
        if not result.degenerate:
            from covred.reduction import reduct_check

            for reduct in result.reducts:
                assert reduct_check(matrix, reduct)
