"""Shared test helpers: independent little oracles the tests check against."""

from fractions import Fraction

import numpy as np

# Primes with p**2 < 2**63 so modular elimination stays inside int64.
_PRIMES = (2_147_483_647, 2_147_483_629)


def naive_negative_intervals(signs):
    """Direct scan for maximal runs of -1; the reference for interval tests."""
    runs, start = [], None
    for i, s in enumerate(signs, 1):
        if s == -1 and start is None:
            start = i
        elif s == 1 and start is not None:
            runs.append((start, i - 1))
            start = None
    if start is not None:
        runs.append((start, len(signs)))
    return runs


def _rank_mod_p(matrix, p):
    m = np.array(matrix, dtype=np.int64) % p
    rows, cols = m.shape
    rank = 0
    for c in range(cols):
        pivot = None
        for r in range(rank, rows):
            if m[r, c] % p:
                pivot = r
                break
        if pivot is None:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        inv = pow(int(m[rank, c]), -1, p)
        m[rank] = (m[rank] * inv) % p
        for r in range(rows):
            if r != rank and m[r, c]:
                m[r] = (m[r] - m[r, c] * m[rank]) % p
        rank += 1
        if rank == rows:
            break
    return rank


def _rank_exact(matrix):
    m = [[Fraction(x) for x in row] for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    rank = 0
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if m[r][c]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        lead = m[rank][c]
        m[rank] = [x / lead for x in m[rank]]
        for r in range(rows):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def has_full_row_rank(matrix):
    """Exact full-row-rank certificate for an integer matrix.

    Rank over a prime field never exceeds the rational rank, so full rank
    modulo any prime proves full rational rank.  Only if every probe
    prime degenerates (it never does for these matrices) does the slow
    exact elimination over Fractions decide.
    """
    matrix = [list(map(int, row)) for row in matrix]
    rows = len(matrix)
    if rows == 0:
        return True
    for p in _PRIMES:
        if _rank_mod_p(matrix, p) == rows:
            return True
    return _rank_exact(matrix) == rows
