"""The standard symplectic structure on Q^{2n}.

Conventions: ``omega(u, v) = u^T J v`` with ``J = [[0, I], [-I, 0]]``;
matrices act on column vectors.  ``End_Sp`` is the set of A with JA
symmetric, i.e. ``omega(u, A v) = -omega(A u, v)``.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .exact_linalg import (
    Subspace,
    block,
    det,
    flatten,
    identity,
    inverse,
    mat,
    mat_equal,
    unflatten,
    zeros,
)


class NotInGp(ValueError):
    """The matrix does not satisfy A^T J A = c J for any nonzero c."""


class InvalidFlag(ValueError):
    """An adapted basis that does not produce an isotropic flag."""

    def __init__(self, step, message):
        super().__init__(f"step {step}: {message}")
        self.step = step


@dataclass(frozen=True)
class SymplecticSpace:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("half-dimension must be at least 1")

    @property
    def dim(self):
        return 2 * self.n

    @cached_property
    def J(self):
        n = self.n
        return block([[zeros(n), identity(n)], [-identity(n), zeros(n)]])

    def omega(self, u, v):
        u = np.asarray(u, dtype=object)
        v = np.asarray(v, dtype=object)
        return u @ self.J @ v

    def basis_vector(self, i):
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return tuple(v)

    def check_square(self, A):
        A = np.asarray(A)
        if A.shape != (self.dim, self.dim):
            raise ValueError(f"expected a {self.dim}x{self.dim} matrix, got shape {A.shape}")
        return A


def gp_multiplier(space, A):
    """The c with A^T J A = c J; raises NotInGp if there is none."""
    A = space.check_square(A)
    J = space.J
    M = A.T @ J @ A
    c = M[0, space.n]  # J[0, n] == 1
    if c == 0 or not mat_equal(M, c * J):
        raise NotInGp("A^T J A is not a nonzero multiple of J")
    return c


def is_sp(space, A):
    try:
        return gp_multiplier(space, A) == 1
    except NotInGp:
        return False


def check_det_identity(space, A):
    """det A == q(A)^n."""
    c = gp_multiplier(space, A)
    return det(A) == c ** space.n


def is_end_sp(space, A):
    JA = space.J @ space.check_square(A)
    return mat_equal(JA, JA.T)


def is_end_ant(space, A):
    JA = space.J @ space.check_square(A)
    return mat_equal(JA.T, -JA)


def end_sp_matrices(space):
    """A basis of End_Sp: -J E for E running over the elementary symmetric matrices."""
    d = space.dim
    out = []
    for i in range(d):
        for j in range(i, d):
            S = zeros(d)
            S[i, j] = S[j, i] = Fraction(1)
            out.append(-space.J @ S)
    return out


def end_sp_basis(space):
    """End_Sp as a Subspace of flattened (2n)^2 matrices; dimension n(2n+1)."""
    return Subspace(space.dim ** 2, [flatten(B) for B in end_sp_matrices(space)])


def subspace_matrices(space, W):
    """The canonical basis of a Subspace of flattened matrices, reshaped."""
    return [unflatten(v, space.dim) for v in W.basis]


def omega_annihilator(space, W):
    """{v : omega(v, w) = 0 for all w in W}."""
    if W.ambient_dim != space.dim:
        raise ValueError("subspace is not in the symplectic space")
    return W.annihilator_under(space.J)


# -- Sp(2n, Z) generators --------------------------------------------------

def _random_symmetric(rng, n, bound):
    S = zeros(n)
    for i in range(n):
        for j in range(i, n):
            S[i, j] = S[j, i] = Fraction(rng.randint(-bound, bound))
    return S


def _random_unimodular(rng, n, bound, steps=None):
    U = identity(n)
    if n == 1:
        return U * rng.choice((1, -1))
    for _ in range(steps or 2 * n):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-bound, bound)
        E = identity(n)
        E[i, j] = Fraction(c)
        U = U @ E
    return U


def sp_upper(space, S):
    n = space.n
    return block([[identity(n), mat(S)], [zeros(n), identity(n)]])


def sp_lower(space, S):
    n = space.n
    return block([[identity(n), zeros(n)], [mat(S), identity(n)]])


def sp_block_diag(space, U):
    U = mat(U)
    n = space.n
    return block([[U, zeros(n)], [zeros(n), inverse(U.T)]])


def random_sp(space, seed, num_factors=6, bound=3):
    """A deterministic pseudo-random element of Sp(2n, Z).

    Product of ``num_factors`` generators chosen among ``[[I, S], [0, I]]``,
    ``[[I, 0], [S, I]]`` (S symmetric, entries in [-bound, bound]) and
    ``[[U, 0], [0, U^-T]]`` with U unimodular.  ``seed`` may be an int or a
    ``random.Random``.
    """
    if num_factors < 1:
        raise ValueError("num_factors must be at least 1")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    n = space.n
    P = identity(space.dim)
    for _ in range(num_factors):
        kind = rng.randrange(3)
        if kind == 0:
            G = sp_upper(space, _random_symmetric(rng, n, bound))
        elif kind == 1:
            G = sp_lower(space, _random_symmetric(rng, n, bound))
        else:
            G = sp_block_diag(space, _random_unimodular(rng, n, bound))
        P = P @ G
    return P


def sp_inverse(space, P):
    """Inverse of P in Sp(2n): -J P^T J."""
    return -space.J @ P.T @ space.J


# -- isotropic flags ---------------------------------------------------------

class IsotropicFlag:
    """Full isotropic flag V_1 < ... < V_{2n-1} given by an adapted basis.

    ``V_i`` is the span of the first i adapted vectors.  Construction checks
    that each V_i has dimension i and that V_i is the omega-annihilator of
    V_{2n-i}; equality compares the subspaces, not the chosen basis.
    """

    __slots__ = ("space", "vectors", "steps")

    def __init__(self, space, vectors):
        d = space.dim
        vecs = [tuple(Fraction(x) for x in v) for v in vectors]
        if len(vecs) != d:
            raise InvalidFlag(0, f"expected {d} adapted vectors, got {len(vecs)}")
        for i, v in enumerate(vecs, 1):
            if len(v) != d:
                raise InvalidFlag(i, f"vector has length {len(v)}, expected {d}")
        steps = []
        for i in range(1, d + 1):
            V = Subspace(d, vecs[:i])
            if V.dim != i:
                raise InvalidFlag(i, "adapted vectors are linearly dependent")
            steps.append(V)
        steps.pop()  # V_{2n} is the whole space
        for i in range(1, d):
            ann = omega_annihilator(space, steps[i - 1])
            if ann != steps[d - i - 1]:
                raise InvalidFlag(i, f"omega-annihilator of V_{i} is not V_{d - i}")
        self.space = space
        self.vectors = tuple(vecs)
        self.steps = tuple(steps)

    def step(self, i):
        """V_i with the conventions V_i = 0 for i <= 0 and V_i = V for i >= 2n."""
        d = self.space.dim
        if i <= 0:
            return Subspace.zero(d)
        if i >= d:
            return Subspace.full(d)
        return self.steps[i - 1]

    def basis_matrix(self):
        """Matrix whose columns are the adapted vectors."""
        return np.array(self.vectors, dtype=object).T

    def __eq__(self, other):
        if not isinstance(other, IsotropicFlag):
            return NotImplemented
        return self.space == other.space and self.steps == other.steps

    def __hash__(self):
        return hash(self.steps)

    def __repr__(self):
        return f"IsotropicFlag(n={self.space.n}, dims={[s.dim for s in self.steps]})"

    def to_json(self):
        return [[str(x) for x in v] for v in self.vectors]

    @classmethod
    def from_json(cls, space, data):
        return cls(space, [[Fraction(x) for x in v] for v in data])


def flag_from_adapted_basis(space, vectors):
    return IsotropicFlag(space, vectors)


def standard_flag(space):
    """<e_n> < <e_{n-1}, e_n> < ... < <e_1..e_n> < <e_1..e_{n+1}> < ..."""
    n = space.n
    order = list(range(n - 1, -1, -1)) + list(range(n, 2 * n))
    return IsotropicFlag(space, [space.basis_vector(i) for i in order])


def transport_flag(P, F):
    """The flag P.F; P must be symplectic."""
    space = F.space
    if not is_sp(space, P):
        raise ValueError("transport_flag needs a symplectic matrix")
    return IsotropicFlag(space, [tuple(P @ np.array(v, dtype=object)) for v in F.vectors])


def symplectic_adapted_basis(F):
    """Q in Sp(2n) with Q . standard_flag == F.

    Columns f_1..f_{2n} form a symplectic basis (omega(f_i, f_{n+j}) = delta_ij,
    all other pairings zero) laid out like the standard flag: f_n spans V_1,
    f_{n-1} extends it to V_2, ..., f_{n+k} extends V_{n+k-1} to V_{n+k}.
    """
    space = F.space
    n = space.n
    steps = [F.step(i) for i in range(2 * n + 1)]

    def new_vector(i):
        # some vector of V_i outside V_{i-1}
        for b in steps[i].basis:
            if not steps[i - 1].contains(b):
                return np.array(b, dtype=object)
        raise AssertionError("flag steps are not strictly increasing")

    f = [None] * (2 * n)
    for k in range(1, n + 1):
        f[n - k] = new_vector(k)
    for k in range(1, n + 1):
        w = new_vector(n + k)
        w = w / space.omega(f[k - 1], w)
        for i in range(k - 1):
            c = space.omega(f[i], w)
            if c:
                w = w - c * f[n + i]
        for j in range(k - 1):
            c = space.omega(f[n + j], w)
            if c:
                w = w + c * f[j]
        f[n + k - 1] = w
    Q = np.array(f, dtype=object).T
    if not is_sp(space, Q):
        raise AssertionError("adapted basis construction is not symplectic")
    return Q


def conjugate(P, A, P_inv=None):
    if P_inv is None:
        P_inv = inverse(P)
    return P @ A @ P_inv

