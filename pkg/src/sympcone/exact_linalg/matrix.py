"""Dense matrices over Q.

Matrices are numpy arrays of ``dtype=object`` holding ``Fraction`` entries,
so ``@``, ``+``, ``.T`` and ``.trace()`` all stay exact.  Nothing here
mutates its arguments.
"""

from fractions import Fraction

import numpy as np


def to_fraction(x):
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point entries are not accepted")
    return Fraction(x)


def mat(rows):
    """Build an exact matrix from a nested sequence."""
    a = np.array([[to_fraction(x) for x in row] for row in rows], dtype=object)
    if a.ndim != 2:
        a = a.reshape(len(rows), -1)
    return a


def zeros(r, c=None):
    c = r if c is None else c
    a = np.empty((r, c), dtype=object)
    a.fill(Fraction(0))
    return a


def identity(n):
    a = zeros(n)
    for i in range(n):
        a[i, i] = Fraction(1)
    return a


def diag(entries):
    a = zeros(len(entries))
    for i, x in enumerate(entries):
        a[i, i] = to_fraction(x)
    return a


def block(blocks):
    """Assemble a matrix from a 2-D list of blocks."""
    return np.block([[np.asarray(b, dtype=object) for b in row] for row in blocks])


def is_zero(m):
    return all(x == 0 for x in np.asarray(m).flat)


def mat_equal(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def mat_power(m, k):
    if k < 0:
        raise ValueError("negative power")
    result = identity(m.shape[0])
    base = m
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def trace(m):
    return sum((m[i, i] for i in range(m.shape[0])), Fraction(0))


def flatten(m):
    """Row-major vector of a matrix, as a tuple."""
    return tuple(np.asarray(m).flat)


def unflatten(v, rows, cols=None):
    cols = rows if cols is None else cols
    return np.array(list(v), dtype=object).reshape(rows, cols)


def _rows(m):
    return [[to_fraction(x) for x in row] for row in np.asarray(m)]


def _rref_rows(rows, ncols):
    """In-place Gauss-Jordan on a list of Fraction rows."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pivot_row = rows[r]
        inv = 1 / pivot_row[c]
        if inv != 1:
            pivot_row = rows[r] = [x * inv for x in pivot_row]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    row = rows[i]
                    rows[i] = [x - f * y for x, y in zip(row, pivot_row)]
        pivots.append(c)
        r += 1
    return pivots


def rref(m):
    """Reduced row echelon form.

    Returns ``(R, rank, pivot_cols)``.  ``R`` keeps the shape of ``m``, with
    the zero rows at the bottom.  Elimination is exact, so the result does not
    depend on the order of the input rows.
    """
    m = np.asarray(m)
    nrows, ncols = m.shape
    rows = _rows(m)
    pivots = _rref_rows(rows, ncols)
    out = np.array(rows, dtype=object).reshape(nrows, ncols) if nrows else zeros(0, ncols)
    return out, len(pivots), pivots


def rank(m):
    m = np.asarray(m)
    if m.size == 0:
        return 0
    rows = _rows(m)
    return len(_rref_rows(rows, m.shape[1]))


def nullspace_vectors(m, ncols=None):
    """Basis of {v : m v = 0} as a list of tuples (one per free column)."""
    m = np.asarray(m)
    if ncols is None:
        ncols = m.shape[1]
    rows = _rows(m) if m.size else []
    pivots = _rref_rows(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -rows[i][f]
        basis.append(tuple(v))
    return basis


def det(m):
    """Determinant by exact elimination."""
    m = np.asarray(m)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("determinant of a non-square matrix")
    rows = _rows(m)
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            result = -result
        pv = rows[c][c]
        result *= pv
        for i in range(c + 1, n):
            f = rows[i][c] / pv
            if f != 0:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return result


def inverse(m):
    m = np.asarray(m)
    n = m.shape[0]
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(_rows(m))]
    pivots = _rref_rows(aug, n)
    if len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return np.array([row[n:] for row in aug], dtype=object)


def solve_in_span(vectors, target):
    """Coefficients c with sum c_i vectors[i] == target, or None."""
    k = len(vectors)
    if k == 0:
        return () if all(x == 0 for x in target) else None
    dim = len(target)
    aug = [[to_fraction(vectors[j][i]) for j in range(k)] + [to_fraction(target[i])]
           for i in range(dim)]
    pivots = _rref_rows(aug, k + 1)
    if pivots and pivots[-1] == k:
        return None
    coeffs = [Fraction(0)] * k
    for i, p in enumerate(pivots):
        coeffs[p] = aug[i][k]
    return tuple(coeffs)


def charpoly_coeffs(m, one=Fraction(1)):
    """Faddeev-LeVerrier over any commutative Q-algebra.

    Returns ``[c_0, ..., c_N]`` with ``det(t I - m) = sum_k c_k t^(N-k)`` and
    ``c_0 = one``.  Entries only need ``+``, ``*`` and division by a positive
    integer, so this runs unchanged on matrices of polynomials.
    """
    m = np.asarray(m, dtype=object)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("characteristic polynomial of a non-square matrix")
    zero = one * 0
    eye = np.empty((n, n), dtype=object)
    eye.fill(zero)
    for i in range(n):
        eye[i, i] = one
    coeffs = [one]
    aux = eye
    for k in range(1, n + 1):
        am = m @ aux
        c = -sum((am[i, i] for i in range(n)), zero) / k
        coeffs.append(c)
        aux = am + c * eye
    return coeffs
