"""Exact enumeration of minimal hitting sets and minimal monotone models.

Clauses and models are int bitmasks over attribute indices. Clause sets
are absorption-reduced first (a clause containing another clause is
redundant in a conjunction); enumeration is exact depth-first branching on
the live shortest open clause with two prunes:

* sibling bans make every minimal hitting set reachable exactly once;
* a criticality check — every chosen element must still own a clause in
  which it is the only chosen member — cuts branches that can no longer
  lead to a minimal set, and guarantees emitted sets are minimal.

No heuristics, no approximation: output is the full antichain of minimal
hitting sets, canonically ordered by (cardinality, mask value).
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from ._bitset import iter_bits


def absorb(clauses: Iterable[int]) -> tuple[int, ...]:
    """Deduplicate and drop every clause that contains another clause.

    Result is the unique minimal antichain, ordered by (popcount, value).
    """
    uniq = sorted(set(clauses), key=lambda c: (c.bit_count(), c))
    kept: list[int] = []
    for c in uniq:
        if not any(k & c == k for k in kept):
            kept.append(c)
    return tuple(kept)


def minimal_hitting_sets(clauses: Iterable[int]) -> tuple[int, ...]:
    """All inclusion-minimal sets intersecting every clause.

    An empty clause set has the empty set as its unique (degenerate)
    minimal hitting set. A clause equal to zero cannot be hit and raises
    ValueError.
    """
    cls = absorb(clauses)
    if cls and cls[0] == 0:
        raise ValueError("empty clause cannot be hit")
    if not cls:
        return (0,)

    results: list[int] = []

    def dfs(chosen: int, cand: int) -> None:
        best = -1
        best_size = -1
        for cl in cls:
            if cl & chosen:
                continue
            avail = cl & cand
            if not avail:
                return  # open clause with no allowed element left
            size = avail.bit_count()
            if best < 0 or size < best_size:
                best, best_size = avail, size
        if best < 0:
            results.append(chosen)
            return
        cand &= ~best
        for b in iter_bits(best):
            bit = 1 << b
            nxt = chosen | bit
            if all(
                any(cl & nxt == 1 << e for cl in cls)
                for e in iter_bits(nxt)
            ):
                dfs(nxt, cand)
            cand |= bit
    universe = 0
    for cl in cls:
        universe |= cl
    dfs(0, universe)
    return tuple(sorted(results, key=lambda r: (r.bit_count(), r)))


def minimal_models(cells: Iterable[Sequence[int]]) -> tuple[int, ...]:
    """Minimal models of a conjunction of monotone term-disjunctions.

    Each cell is a collection of term masks; a model satisfies a cell when
    it contains every element of at least one term. Implemented as the
    classic product expansion with absorption after every step — exact for
    monotone formulas. A cell with no terms cannot be satisfied and raises
    ValueError.
    """
    implicants: set[int] = {0}
    for terms in cells:
        terms = absorb(terms)
        if not terms:
            raise ValueError("cell with no terms cannot be satisfied")
        if terms[0] == 0:
            continue  # a zero term is satisfied by anything
        grown: set[int] = set()
        for imp in implicants:
            if any(t & imp == t for t in terms):
                grown.add(imp)
            else:
                for t in terms:
                    grown.add(imp | t)
        implicants = set(absorb(grown))
    return tuple(sorted(implicants, key=lambda r: (r.bit_count(), r)))
