"""Linear subspaces of Q^d in canonical (RREF) form."""

from fractions import Fraction

import numpy as np

from .matrix import _rref_rows, nullspace_vectors, to_fraction


class Subspace:
    """A subspace of Q^ambient_dim.

    The basis is always the nonzero rows of the reduced row echelon form of
    any spanning set, so two subspaces are equal exactly when their bases
    are identical tuples.
    """

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim, vectors=()):
        rows = [[to_fraction(x) for x in v] for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise ValueError(f"vector of length {len(r)} in ambient dimension {ambient_dim}")
        pivots = _rref_rows(rows, ambient_dim)
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(r) for r in rows[:len(pivots)])
        self.pivots = tuple(pivots)

    @classmethod
    def zero(cls, d):
        return cls(d)

    @classmethod
    def full(cls, d):
        return cls(d, [[int(i == j) for j in range(d)] for i in range(d)])

    @classmethod
    def kernel_of(cls, m):
        m = np.asarray(m)
        return cls(m.shape[1], nullspace_vectors(m))

    @property
    def dim(self):
        return len(self.basis)

    @property
    def codim(self):
        return self.ambient_dim - len(self.basis)

    def basis_matrix(self):
        if not self.basis:
            return np.empty((0, self.ambient_dim), dtype=object)
        return np.array(self.basis, dtype=object)

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def _check(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}")

    def reduce(self, v):
        """Remainder of ``v`` after eliminating the pivot coordinates."""
        r = [to_fraction(x) for x in v]
        if len(r) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        for row, p in zip(self.basis, self.pivots):
            f = r[p]
            if f:
                r = [x - f * y for x, y in zip(r, row)]
        return r

    def contains(self, v):
        return not any(self.reduce(v))

    __contains__ = contains

    def coordinates(self, v):
        """Coefficients of ``v`` in the canonical basis; None if v is outside."""
        if not self.contains(v):
            return None
        return tuple(to_fraction(v[p]) for p in self.pivots)

    def is_subspace_of(self, other):
        self._check(other)
        return all(other.contains(b) for b in self.basis)

    def __add__(self, other):
        self._check(other)
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def complement(self):
        """Orthogonal complement for the standard dot product."""
        if not self.basis:
            return Subspace.full(self.ambient_dim)
        return Subspace(self.ambient_dim, nullspace_vectors(self.basis_matrix()))

    def intersection(self, other):
        self._check(other)
        return (self.complement() + other.complement()).complement()

    __and__ = intersection

    def annihilator_under(self, form):
        """{v : v^T form w = 0 for all w in self}."""
        form = np.asarray(form, dtype=object)
        if form.shape != (self.ambient_dim, self.ambient_dim):
            raise ValueError("bilinear form has the wrong shape")
        if not self.basis:
            return Subspace.full(self.ambient_dim)
        rows = (form @ self.basis_matrix().T).T
        return Subspace(self.ambient_dim, nullspace_vectors(rows))

    def random_element(self, rng, bound=3):
        coeffs = [rng.randint(-bound, bound) for _ in self.basis]
        return self.combine(coeffs)

    def combine(self, coeffs):
        out = [Fraction(0)] * self.ambient_dim
        for c, row in zip(coeffs, self.basis):
            if c:
                out = [x + c * y for x, y in zip(out, row)]
        return tuple(out)
