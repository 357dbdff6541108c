"""Slow reference computations that share no code with the main algorithms.

The suites compare every fast answer against one of these.
"""

from fractions import Fraction
from itertools import combinations, permutations

import numpy as np


def laplace_det(m, zero=0):
    """Determinant by cofactor expansion along the first row.

    Works over any commutative ring whose elements support +, -, *.
    """
    rows = [list(r) for r in m]
    n = len(rows)
    if n == 0:
        return zero + 1
    if n == 1:
        return rows[0][0]
    total = zero
    for j in range(n):
        a = rows[0][j]
        if not a:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * laplace_det(minor, zero)
        total = total + term if j % 2 == 0 else total - term
    return total


def leibniz_det(m):
    n = len(m)
    total = Fraction(0)
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        prod = Fraction(1)
        for i in range(n):
            prod *= m[i][p[i]]
            if not prod:
                break
        total += -prod if inv % 2 else prod
    return total


def minors_rank(m):
    """Largest k with a nonzero k x k minor."""
    m = [list(r) for r in m]
    rows, cols = len(m), len(m[0]) if m else 0
    for k in range(min(rows, cols), 0, -1):
        for ri in combinations(range(rows), k):
            for ci in combinations(range(cols), k):
                if laplace_det([[m[i][j] for j in ci] for i in ri], Fraction(0)):
                    return k
    return 0


def is_nilpotent_by_powers(A, exponent):
    """A^exponent == 0 by repeated multiplication."""
    P = np.array(A, dtype=object)
    for _ in range(exponent - 1):
        P = P @ A
    return all(x == 0 for x in P.flat)


def sylvester_resultant(a, b):
    """Resultant of two coefficient lists (ascending) as a Sylvester determinant."""
    da, db = len(a) - 1, len(b) - 1
    if da < 0 or db < 0:
        return Fraction(0)
    size = da + db
    if size == 0:
        return Fraction(1)
    ra = list(reversed(a))
    rb = list(reversed(b))
    S = []
    for i in range(db):
        S.append([Fraction(0)] * i + ra + [Fraction(0)] * (size - da - 1 - i))
    for i in range(da):
        S.append([Fraction(0)] * i + rb + [Fraction(0)] * (size - db - 1 - i))
    return laplace_det(S, Fraction(0)) if size <= 7 else _gauss_det(S)


def _gauss_det(S):
    S = [[Fraction(x) for x in r] for r in S]
    n = len(S)
    sign = 1
    out = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if S[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            S[c], S[p] = S[p], S[c]
            sign = -sign
        out *= S[c][c]
        for r in range(c + 1, n):
            f = S[r][c] / S[c][c]
            if f:
                S[r] = [x - f * y for x, y in zip(S[r], S[c])]
    return sign * out
