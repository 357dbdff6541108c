"""Exact dense linear algebra and univariate polynomials over Q."""

from fractions import Fraction

from .matrix import (
    block,
    charpoly_coeffs,
    det,
    diag,
    flatten,
    identity,
    inverse,
    is_zero,
    mat,
    mat_equal,
    mat_power,
    nullspace_vectors,
    rank,
    rref,
    solve_in_span,
    to_fraction,
    trace,
    unflatten,
    zeros,
)
from .poly import (
    Poly,
    poly_gcd,
    prem,
    rational_roots,
    resultant,
    squarefree_part,
    subresultant_last,
    xgcd,
)
from .subspace import Subspace


def kernel(m):
    """Null space of ``m`` as a Subspace of Q^cols."""
    return Subspace.kernel_of(m)


def charpoly(m):
    """Monic characteristic polynomial det(t I - m) as a Poly in t."""
    coeffs = charpoly_coeffs(m)
    return Poly(list(reversed(coeffs)), var="t")


def ext_trace(m, k):
    """Trace of the k-th exterior power of ``m``.

    This is the k-th elementary symmetric function of the eigenvalues, read
    off the characteristic polynomial: ``charpoly = sum_k (-1)^k ext_trace(m, k) t^(N-k)``.
    """
    n = m.shape[0]
    if not 0 <= k <= n:
        raise ValueError(f"exterior power {k} out of range for a {n}x{n} matrix")
    c = charpoly_coeffs(m)[k]
    return c if k % 2 == 0 else -c


def poly_derivative(p):
    return p.derivative()


def poly_resultant(a, b):
    return resultant(a, b)


__all__ = [
    "Fraction",
    "Poly",
    "Subspace",
    "block",
    "charpoly",
    "charpoly_coeffs",
    "det",
    "diag",
    "ext_trace",
    "flatten",
    "identity",
    "inverse",
    "is_zero",
    "kernel",
    "mat",
    "mat_equal",
    "mat_power",
    "nullspace_vectors",
    "poly_derivative",
    "poly_gcd",
    "poly_resultant",
    "prem",
    "rank",
    "rational_roots",
    "resultant",
    "rref",
    "solve_in_span",
    "squarefree_part",
    "subresultant_last",
    "to_fraction",
    "trace",
    "unflatten",
    "xgcd",
    "zeros",
]
