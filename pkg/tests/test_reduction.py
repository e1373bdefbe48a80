from random import Random

import pytest

from covred.discernibility import build_legacy_matrix, build_matrix
from covred.errors import EmptySubsetError, LastCoverError, TooManyCoversError
from covred.model import CoverFamily, Universe, validate_cover
from covred.reduction import (
    all_reducts,
    all_reducts_legacy,
    brute_force_reducts,
    core_from_matrix,
    is_covering_preserving,
    is_indispensable,
    reduct_check,
)

from conftest import sample_families
from oracles import brute_reducts, family_as_sets

HOUSE_REDUCTS = {frozenset({"C3", "C4"}), frozenset({"C1", "C2", "C3"})}


# --- covering preservation -------------------------------------------------


def test_preserving_house_examples(house):
    assert is_covering_preserving(house, ["C3", "C4"])
    assert not is_covering_preserving(house, ["C1", "C2"])
    assert is_covering_preserving(house, list(house.names))


def test_preserving_rejects_empty_subset(house):
    with pytest.raises(EmptySubsetError):
        is_covering_preserving(house, [])


def test_preserving_matches_set_oracle_random():
    rng = Random("preserve-oracle")
    for family in sample_families("preserve", 40):
        labels, covers = family_as_sets(family)
        names = list(family.names)
        for _ in range(4):
            subset = [nm for nm in names if rng.random() < 0.5] or [rng.choice(names)]
            from oracles import preserving

            assert is_covering_preserving(family, subset) == preserving(covers, labels, subset)


def test_indispensable_house(house):
    assert is_indispensable(house, "C3")
    assert not is_indispensable(house, "C1")


def test_indispensable_duplicate_covers(house):
    c = house.cover("C2")
    twin = validate_cover(house.universe, c.block_labels(), "C2twin")
    fam = CoverFamily(house.universe, (c, twin))
    assert not is_indispensable(fam, "C2")
    assert not is_indispensable(fam, "C2twin")


def test_indispensable_last_cover_guard(house):
    solo = CoverFamily(house.universe, (house.cover("C1"),))
    with pytest.raises(LastCoverError):
        is_indispensable(solo, "C1")


# --- matrix-based checks -----------------------------------------------------


def test_core_from_matrix_house(house):
    assert core_from_matrix(build_matrix(house)) == ("C3",)


def test_core_empty_when_all_cells_empty():
    u = Universe(("x1", "x2"))
    cover = validate_cover(u, [["x1", "x2"]], "C1")
    fam = CoverFamily(u, (cover,))
    matrix = build_matrix(fam)
    assert matrix.is_all_empty()
    assert core_from_matrix(matrix) == ()


def test_reduct_check_house(house):
    matrix = build_matrix(house)
    assert reduct_check(matrix, ["C1", "C2", "C3"])
    assert not reduct_check(matrix, ["C3"])
    assert reduct_check(matrix, list(house.names))


def test_reduct_check_agrees_with_preserving_random():
    rng = Random("bridge")
    mismatches = 0
    for family in sample_families("bridge", 60, n_max=10, m_max=6):
        matrix = build_matrix(family)
        names = list(family.names)
        for _ in range(4):
            subset = [nm for nm in names if rng.random() < 0.5] or [rng.choice(names)]
            if reduct_check(matrix, subset) != is_covering_preserving(family, subset):
                mismatches += 1
    assert mismatches == 0


def test_hitting_subset_never_coarsens_granules_random():
    # if a subset hits every nonempty cell, objects separated by the family
    # stay separated by the subset
    rng = Random("separation")
    for family in sample_families("separation", 30):
        from covred.granulation import cover_maps, induced_cover_family
        from covred.reduction import _granules_over, _subset_mask

        matrix = build_matrix(family)
        names = list(family.names)
        subset = [nm for nm in names if rng.random() < 0.6] or [rng.choice(names)]
        if not reduct_check(matrix, subset):
            continue
        maps = cover_maps(family)
        fam = induced_cover_family(family, maps).granules
        sub = _granules_over(family, maps, _subset_mask(family, subset))
        for x in range(family.universe.n):
            # y not in family granule of x  =>  y not in subset granule of x
            assert sub[x] & ~fam[x] == 0


# --- all-reducts routes ------------------------------------------------------


def test_all_reducts_house(house):
    result = all_reducts(build_matrix(house))
    assert result.key() == HOUSE_REDUCTS
    assert result.core == ("C3",)
    assert not result.degenerate
    assert result.to_payload() == {
        "reducts": [["C3", "C4"], ["C1", "C2", "C3"]],
        "core": ["C3"],
        "method": "matrix",
    }


def test_all_reducts_legacy_house(house):
    result = all_reducts_legacy(build_legacy_matrix(house))
    assert result.key() == HOUSE_REDUCTS
    assert result.core == ("C3",)


def test_brute_force_house(house):
    result = brute_force_reducts(house)
    assert result.key() == HOUSE_REDUCTS
    assert result.core == ("C3",)


def test_single_cover_family_reducts(house):
    solo = CoverFamily(house.universe, (house.cover("C1"),))
    assert brute_force_reducts(solo).to_payload()["reducts"] == [["C1"]]
    assert all_reducts(build_matrix(solo)).to_payload()["reducts"] == [["C1"]]


def test_two_identical_covers_reducts(house):
    c = house.cover("C2")
    twin = validate_cover(house.universe, c.block_labels(), "C2twin")
    fam = CoverFamily(house.universe, (c, twin))
    expected = {frozenset({"C2"}), frozenset({"C2twin"})}
    assert brute_force_reducts(fam).key() == expected
    assert all_reducts(build_matrix(fam)).key() == expected


def test_degenerate_all_empty_matrix():
    u = Universe(("x1", "x2"))
    c1 = validate_cover(u, [["x1", "x2"]], "C1")
    c2 = validate_cover(u, [["x1", "x2"]], "C2")
    fam = CoverFamily(u, (c1, c2))
    for result in (
        all_reducts(build_matrix(fam)),
        all_reducts_legacy(build_legacy_matrix(fam)),
        brute_force_reducts(fam),
    ):
        assert result.degenerate
        assert result.reducts == ((),)
        assert result.core == ()
        assert result.to_payload()["degenerate"] is True


def test_brute_force_guard():
    u = Universe(("x1", "x2"))
    cover = [validate_cover(u, [["x1"], ["x2"]], f"C{k}") for k in range(21)]
    fam = CoverFamily(u, tuple(cover))
    with pytest.raises(TooManyCoversError):
        brute_force_reducts(fam)


def test_matrix_equals_brute_random_200():
    for family in sample_families("oracle-eq", 200):
        via_matrix = all_reducts(build_matrix(family))
        via_brute = brute_force_reducts(family)
        assert via_matrix.key() == via_brute.key()
        assert via_matrix.core == via_brute.core
        assert via_matrix.degenerate == via_brute.degenerate


def test_legacy_equals_brute_random():
    for family in sample_families("legacy-eq", 80):
        via_legacy = all_reducts_legacy(build_legacy_matrix(family))
        via_brute = brute_force_reducts(family)
        assert via_legacy.key() == via_brute.key()


def test_reducts_match_label_oracle_random():
    for family in sample_families("label-oracle", 25, n_max=6, m_max=4):
        labels, covers = family_as_sets(family)
        result = all_reducts(build_matrix(family))
        if result.degenerate:
            continue
        assert result.key() == brute_reducts(covers, labels)


def test_minimality_antichain_core_random():
    for family in sample_families("minimality", 60):
        matrix = build_matrix(family)
        result = all_reducts(matrix)
        if result.degenerate:
            continue
        reducts = [frozenset(r) for r in result.reducts]
        for r in result.reducts:
            assert reduct_check(matrix, r)
            for name in r:
                assert not reduct_check(matrix, [x for x in r if x != name])
        for a in reducts:
            for b in reducts:
                assert a == b or not a <= b
        # three-way core agreement
        assert set(result.core) == set(core_from_matrix(matrix))
        if family.m >= 2:
            indispensables = {nm for nm in family.names if is_indispensable(family, nm)}
            assert set(result.core) == indispensables


def test_reduct_output_deterministic(house):
    payloads = {str(all_reducts(build_matrix(house)).to_payload()) for _ in range(5)}
    assert len(payloads) == 1


def test_half_matrix_compatibility_note(house):
    # Half-matrix evaluation is unsound in general because cells are
    # asymmetric. On the house data the i < j half happens to reproduce the
    # full ordered result, while the j < i half loses the {C2, C4} cells
    # (they only occur above the diagonal) and yields different reducts —
    # which is exactly why the enumerator uses all ordered pairs.
    from covred.hitting import minimal_hitting_sets

    matrix = build_matrix(house)
    full_result = all_reducts(matrix)

    def half_reducts(cells):
        return {
            frozenset(matrix.names[b] for b in range(matrix.m) if mask >> b & 1)
            for mask in minimal_hitting_sets([c for c in cells if c])
        }

    upper = [matrix.cell(i, j) for i in range(9) for j in range(i + 1, 9)]
    lower = [matrix.cell(i, j) for i in range(9) for j in range(i)]
    assert half_reducts(upper) == full_result.key()
    assert half_reducts(lower) != full_result.key()


def test_out_of_range_mask_rejected(house):
    from covred.errors import UnknownCoverError

    with pytest.raises(UnknownCoverError):
        is_covering_preserving(house, 1 << 10)
