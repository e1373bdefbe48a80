"""Independent set-based oracles.

Everything here recomputes expected values from first principles using
plain frozensets of labels — no bitmasks, no package internals — so the
fast paths are checked against a genuinely different computation route.
"""

from __future__ import annotations

from itertools import combinations


def cover_granule(blocks: list[frozenset], x) -> frozenset:
    """Intersection of all blocks containing x."""
    out = None
    for b in blocks:
        if x in b:
            out = b if out is None else out & b
    assert out is not None, f"{x} not covered"
    return out


def cover_granules(blocks: list[frozenset], universe) -> dict:
    return {x: cover_granule(blocks, x) for x in universe}


def family_granules(covers: dict[str, list[frozenset]], universe) -> dict:
    out = {}
    for x in universe:
        g = frozenset(universe)
        for blocks in covers.values():
            g &= cover_granule(blocks, x)
        out[x] = g
    return out


def matrix_cell(covers: dict[str, list[frozenset]], xi, xj) -> frozenset:
    """Covers whose granule of xi misses xj (definitional evaluation)."""
    return frozenset(
        name for name, blocks in covers.items() if xj not in cover_granule(blocks, xi)
    )


def legacy_cell(covers: dict[str, list[frozenset]], universe, xi, xj):
    """Literal three-case evaluation of the pairwise-inclusion cell.

    Returns (singles frozenset, pairs frozenset of (s, t) name tuples).
    Strict inclusion is proper subset; the incomparable tests negate
    subset-or-equal.
    """
    fam = family_granules(covers, universe)
    di, dj = fam[xi], fam[xj]
    gr = {name: (cover_granule(b, xi), cover_granule(b, xj)) for name, b in covers.items()}
    if di == dj:
        return frozenset(), frozenset()
    if di < dj:
        return frozenset(n for n, (gi, gj) in gr.items() if gi < gj), frozenset()
    if dj < di:
        return frozenset(n for n, (gi, gj) in gr.items() if gj < gi), frozenset()
    singles = frozenset(
        n for n, (gi, gj) in gr.items() if not gi <= gj and not gj <= gi
    )
    pairs = frozenset(
        (s, t)
        for s, (si, sj) in gr.items()
        for t, (ti, tj) in gr.items()
        if si < sj and tj < ti
    )
    return singles, pairs


def lower_upper(granules: dict, target: frozenset) -> tuple[frozenset, frozenset]:
    lower, upper = frozenset(), frozenset()
    for g in granules.values():
        if g <= target:
            lower |= g
        if g & target:
            upper |= g
    return lower, upper


def pawlak_classes(covers: dict[str, list[frozenset]], universe) -> list[frozenset]:
    """Equivalence classes of "same block in every partition cover"."""
    def signature(x):
        return tuple(
            tuple(sorted(b)) for blocks in covers.values() for b in blocks if x in b
        )

    groups: dict = {}
    for x in universe:
        groups.setdefault(signature(x), set()).add(x)
    return [frozenset(g) for g in groups.values()]


def pawlak_lower_upper(classes: list[frozenset], target: frozenset):
    lower, upper = frozenset(), frozenset()
    for cls in classes:
        if cls <= target:
            lower |= cls
        if cls & target:
            upper |= cls
    return lower, upper


def preserving(covers: dict[str, list[frozenset]], universe, subset) -> bool:
    chosen = {name: covers[name] for name in subset}
    return family_granules(chosen, universe) == family_granules(covers, universe)


def brute_minimal_hitting_sets(clauses: list[frozenset]) -> set[frozenset]:
    """Subset enumeration over the clause alphabet, smallest first."""
    alphabet = sorted(set().union(*clauses)) if clauses else []
    if not clauses:
        return {frozenset()}
    found: set[frozenset] = set()
    for size in range(len(alphabet) + 1):
        for combo in combinations(alphabet, size):
            cand = frozenset(combo)
            if any(h <= cand for h in found):
                continue
            if all(cand & cl for cl in clauses):
                found.add(cand)
    return found


def brute_reducts(covers: dict[str, list[frozenset]], universe) -> set[frozenset]:
    """Minimal preserving subsets by enumeration (label-set route)."""
    names = sorted(covers)
    found: set[frozenset] = set()
    for size in range(1, len(names) + 1):
        for combo in combinations(names, size):
            cand = frozenset(combo)
            if any(h <= cand for h in found):
                continue
            if preserving(covers, universe, cand):
                found.add(cand)
    return found


def family_as_sets(family) -> tuple[list, dict]:
    """Convert a CoverFamily into (universe labels, {name: [frozenset blocks]})."""
    labels = list(family.universe.labels)
    covers = {
        c.name: [frozenset(family.universe.labels_of_mask(b)) for b in c.blocks]
        for c in family.covers
    }
    return labels, covers
