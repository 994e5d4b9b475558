"""Integer matrix normal forms and sublattices of Z^n.

Matrices are lists of integer rows. Everything is exact; pivots are chosen by
smallest nonzero magnitude, which keeps entries small on the tiny matrices
used here.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Matrix = list[list[int]]


def _copy(M: Sequence[Sequence[int]]) -> Matrix:
    return [[int(v) for v in row] for row in M]


def smith_invariants(M: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix."""
    A = _copy(M)
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        A[t], A[pi] = A[pi], A[t]
        for row in A:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    done = False
            if done:
                # the pivot must divide the rest of the block
                bad = next(
                    (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None
                )
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad])]
                continue
            # a remainder is now smaller than the pivot; move it into place
            _, pi, pj = min(
                (abs(A[i][j]), i, j)
                for i, j in [(i, t) for i in range(t, m)] + [(t, j) for j in range(t, n)]
                if A[i][j]
            )
            A[t], A[pi] = A[pi], A[t]
            for row in A:
                row[t], row[pj] = row[pj], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def torsion_order(M: Sequence[Sequence[int]]) -> int:
    """Order of the torsion subgroup of Z^n / (row span of M)."""
    out = 1
    for d in smith_invariants(M):
        out *= d
    return out


def hermite_normal_form(M: Sequence[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form with zero rows dropped.

    Pivots are positive and entries above a pivot lie in [0, pivot). Two
    matrices have the same row lattice exactly when their forms agree.
    """
    A = [row for row in _copy(M) if any(row)]
    if not A:
        return []
    n = len(A[0])
    r = 0
    for c in range(n):
        while True:
            rows = [i for i in range(r, len(A)) if A[i][c]]
            if not rows:
                break
            piv = min(rows, key=lambda i: abs(A[i][c]))
            A[r], A[piv] = A[piv], A[r]
            if A[r][c] < 0:
                A[r] = [-v for v in A[r]]
            clean = True
            for i in range(r + 1, len(A)):
                q = A[i][c] // A[r][c]
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                if A[i][c]:
                    clean = False
            if clean:
                break
        if r < len(A) and A[r][c]:
            for i in range(r):
                q = A[i][c] // A[r][c]
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
            r += 1
            if r == len(A):
                break
    return [row for row in A if any(row)]


def integer_kernel(M: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis of {x in Z^n : M x = 0}; the lattice it spans is saturated."""
    rows = _copy(M)
    # Row-reduce [M^T | I]; rows whose M^T part vanishes carry the kernel.
    aug = [[rows[i][j] for i in range(len(rows))] + [int(j == k) for k in range(ncols)]
           for j in range(ncols)]
    m = len(rows)
    r = 0
    for c in range(m):
        while True:
            nz = [i for i in range(r, ncols) if aug[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(aug[i][c]))
            aug[r], aug[piv] = aug[piv], aug[r]
            clean = True
            for i in range(r + 1, ncols):
                q = aug[i][c] // aug[r][c]
                if q:
                    aug[i] = [a - q * b for a, b in zip(aug[i], aug[r])]
                if aug[i][c]:
                    clean = False
            if clean:
                r += 1
                break
    return [row[m:] for row in aug[r:]]


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Exact determinant (fraction-free Bareiss elimination)."""
    A = _copy(M)
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


def clear_denominators(vec: Sequence) -> list[int]:
    """Smallest positive multiple of a rational vector that is integral and
    primitive."""
    fr = [Fraction(v) for v in vec]
    den = 1
    for v in fr:
        den = lcm(den, v.denominator)
    ints = [int(v * den) for v in fr]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [v // g for v in ints] if g else ints
