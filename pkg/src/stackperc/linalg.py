"""Exact rank and determinant routines over Z and prime fields.

Matrices are plain lists of rows of Python ints, so nothing here ever
rounds. Bareiss elimination is used up to ``BAREISS_MAX_COLS`` columns;
past that, ranks are computed modulo two independent 61-bit primes and
must agree.
"""

from __future__ import annotations

from typing import Sequence

# Two primes just below 2**61 (2**61 - 1 is a Mersenne prime).
PRIME_A = 2305843009213693951
PRIME_B = 2305843009213693921

BAREISS_MAX_COLS = 2000

Matrix = list[list[int]]


class RankDisagreement(ArithmeticError):
    """Modular ranks over two primes differ (an unlucky prime divided a minor)."""


def _copy(rows: Sequence[Sequence[int]]) -> Matrix:
    return [list(map(int, r)) for r in rows]


def rank_bareiss(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    m = _copy(rows)
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        a = pr[c]
        for i in range(r + 1, nrows):
            row = m[i]
            b = row[c]
            if b == 0:
                if a != prev:
                    for j in range(c + 1, ncols):
                        row[j] = (a * row[j]) // prev
                continue
            for j in range(c + 1, ncols):
                row[j] = (a * row[j] - b * pr[j]) // prev
            row[c] = 0
        prev = a
        r += 1
    return r


def rank_mod(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank over GF(p)."""
    m = [[x % p for x in r] for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        pr = [(x * inv) % p for x in m[r]]
        m[r] = pr
        for i in range(r + 1, nrows):
            f = m[i][c]
            if f:
                row = m[i]
                for j in range(c, ncols):
                    row[j] = (row[j] - f * pr[j]) % p
        r += 1
    return r


def rank_two_primes(rows: Sequence[Sequence[int]]) -> int:
    ra = rank_mod(rows, PRIME_A)
    rb = rank_mod(rows, PRIME_B)
    if ra != rb:
        raise RankDisagreement(f"rank mod PRIME_A = {ra}, mod PRIME_B = {rb}")
    return ra


def rank_exact(rows: Sequence[Sequence[int]]) -> int:
    """Exact rank of an integer matrix, choosing the method by size."""
    if not rows:
        return 0
    if len(rows[0]) <= BAREISS_MAX_COLS or len(rows) <= BAREISS_MAX_COLS:
        return rank_bareiss(rows)
    return rank_two_primes(rows)


def det_int(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss, exact)."""
    m = _copy(rows)
    n = len(m)
    if n == 0:
        return 1
    if any(len(r) != n for r in m):
        raise ValueError("det_int needs a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        a = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (a * m[i][j] - m[i][k] * m[k][j]) // prev
        prev = a
    return sign * m[n - 1][n - 1]


def det_mod(rows: Sequence[Sequence[int]], p: int) -> int:
    """Determinant over GF(p)."""
    m = [[x % p for x in r] for r in rows]
    n = len(m)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        a = m[c][c]
        det = (det * a) % p
        inv = pow(a, -1, p)
        for i in range(c + 1, n):
            f = (m[i][c] * inv) % p
            if f:
                for j in range(c, n):
                    m[i][j] = (m[i][j] - f * m[c][j]) % p
    return det % p


def transpose(rows: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*rows)]
