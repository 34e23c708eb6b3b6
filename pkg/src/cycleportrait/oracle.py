"""Brute-force decomposition by exhaustive subset enumeration.

This is the independent check on the interval-rule decomposition: for a
small dimension t it enumerates every one of the 2**(2t) subsets of the
cycle's vertex sequence, finds for each target vertex the smallest subset
summing to it, and verifies both that no second subset of that size works
and that every larger subset summing to the target strictly contains the
minimal one.  Nothing here touches the production decomposition path;
even the cycle vertices are rebuilt locally from their run definition.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .cycle import CycleIndexSet, SignVector, _check_dimension

__all__ = ["MAX_ORACLE_DIMENSION", "brute_force_decompose"]

# 2**(2t) subsets; 10 keeps the enumeration around a million subsets.
MAX_ORACLE_DIMENSION = 10


def _cycle_rows(t: int) -> np.ndarray:
    """All 2t cycle vertices as +1/-1 rows, from the run definition."""
    rows = np.ones((2 * t, t), dtype=np.int8)
    for s in range(1, t):
        rows[s, :s] = -1
    rows[t:] = -rows[:t]
    return rows


def _popcount(masks: np.ndarray) -> np.ndarray:
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(masks)
    bytes_view = masks.astype("<u8").view(np.uint8).reshape(masks.size, 8)
    return np.unpackbits(bytes_view, axis=1).sum(axis=1).astype(np.uint64)


@lru_cache(maxsize=None)
def _minimal_subset_table(t: int) -> dict[int, tuple[int, ...]]:
    """Map each vertex (bit e-1 set iff coordinate e is -1) to its subset.

    Builds the sums of all subsets of the 2t cycle vertices by doubling,
    then checks, per target vertex, minimality, uniqueness at the minimal
    cardinality, and that every other subset summing to the target
    contains the minimal one.
    """
    n = 2 * t
    rows = _cycle_rows(t)
    sums = np.zeros((1 << n, t), dtype=np.int8)
    for j in range(n):
        lo = 1 << j
        sums[lo : 2 * lo] = sums[:lo] + rows[j]
    hit = np.all(np.abs(sums) == 1, axis=1)
    masks = np.flatnonzero(hit).astype(np.uint64)
    negatives = sums[hit] < 0
    del sums
    weights = np.uint64(1) << np.arange(t, dtype=np.uint64)
    targets = negatives.astype(np.uint64) @ weights
    cards = _popcount(masks)
    order = np.lexsort((cards, targets))
    masks, targets, cards = masks[order], targets[order], cards[order]
    bounds = np.searchsorted(targets, np.arange(1 << t, dtype=np.uint64))
    bounds = np.append(bounds, masks.size)
    table: dict[int, tuple[int, ...]] = {}
    for target in range(1 << t):
        lo, hi = int(bounds[target]), int(bounds[target + 1])
        if hi == lo:
            raise RuntimeError(
                f"internal consistency failure: no subset sums to vertex {target} at t={t}"
            )
        best = int(masks[lo])
        if hi > lo + 1 and cards[lo + 1] == cards[lo]:
            raise RuntimeError(
                f"minimal subset for vertex {target} at t={t} is not unique"
            )
        if not np.all((masks[lo:hi] & np.uint64(best)) == np.uint64(best)):
            raise RuntimeError(
                f"a subset summing to vertex {target} at t={t} does not "
                "contain the minimal one"
            )
        table[target] = tuple(k for k in range(n) if (best >> k) & 1)
    return table


def brute_force_decompose(v: SignVector) -> CycleIndexSet:
    """Decompose by exhaustive search; only for t <= MAX_ORACLE_DIMENSION."""
    t = _check_dimension(v.t)
    if t > MAX_ORACLE_DIMENSION:
        raise ValueError(
            f"brute force enumeration is capped at t <= {MAX_ORACLE_DIMENSION}, got {t}"
        )
    key = int.from_bytes(
        np.packbits(v.bits(), bitorder="little").tobytes(), "little"
    )
    return CycleIndexSet(t, _minimal_subset_table(t)[key])
