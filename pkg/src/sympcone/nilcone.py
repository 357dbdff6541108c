"""The symplectic nilpotent cone, its smooth locus and flag recovery.

The cone is ``N = {A in End_Sp : A^{2n} = 0}``.  A smooth point (rank 2n-1)
determines the full isotropic flag ``ker A < ker A^2 < ... < ker A^{2n-1}``,
and each flag F determines the n^2-dimensional linear space ``U_F`` of
End_Sp elements that push every V_i into V_{i-1}.  ``recover_flag`` goes the
other way: given an n^2-dimensional subspace of the cone it finds the unique
F with L = U_F, guessing F from the kernels of a smooth element and then
certifying the guess by exact subspace equality.
"""

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from .exact_linalg import (
    Subspace,
    block,
    det,
    flatten,
    inverse,
    kernel,
    mat,
    rank,
    trace,
    unflatten,
    zeros,
)
from .symplectic import (
    IsotropicFlag,
    end_sp_basis,
    end_sp_matrices,
    is_end_sp,
    random_sp,
    sp_inverse,
    standard_flag,
    subspace_matrices,
    symplectic_adapted_basis,
    transport_flag,
)


class NotEndSp(ValueError):
    """Input is not a symmetric-symplectic endomorphism."""


class NotSmooth(ValueError):
    """The cone point has rank below 2n-1, so its kernel flag jumps."""


class RecoveryError(Exception):
    pass


class NoSmoothPoint(RecoveryError):
    """Randomized search found no rank 2n-1 element within the budget."""


class NotAFlagSubspace(RecoveryError):
    """L is not of the form U_F; ``reason`` names the failed hypothesis."""

    def __init__(self, reason, message):
        super().__init__(f"{reason}: {message}")
        self.reason = reason


class BudgetExhausted(RuntimeError):
    """A randomized witness search ran out of draws."""


def _require_end_sp(space, A):
    if not is_end_sp(space, A):
        raise NotEndSp("matrix is not symmetric-symplectic")


# -- cone membership and smoothness ------------------------------------------

def in_cone(space, A):
    """tr(A^2) = tr(A^4) = ... = tr(A^{2n}) = 0."""
    _require_end_sp(space, A)
    A2 = A @ A
    P = A2
    for r in range(1, space.n + 1):
        if trace(P) != 0:
            return False
        if r < space.n:
            P = P @ A2
    return True


def is_smooth_point(space, A):
    if not in_cone(space, A):
        raise ValueError("not a point of the nilpotent cone")
    return rank(A) == space.dim - 1


def tangent_conditions(space, A):
    """Rows [tr(A^{2r-1} E_k)]_k over the End_Sp basis E_k, r = 1..n."""
    basis = end_sp_matrices(space)
    A2 = A @ A
    P = A
    rows = []
    for r in range(1, space.n + 1):
        rows.append([np.sum(P * E.T) for E in basis])
        P = P @ A2
    return basis, rows


def tangent_space(space, A):
    """{B in End_Sp : tr(A^{2r-1} B) = 0, r = 1..n}, as flattened matrices."""
    if not in_cone(space, A):
        raise ValueError("not a point of the nilpotent cone")
    basis, rows = tangent_conditions(space, A)
    coeff_space = kernel(mat(rows))
    vecs = []
    for c in coeff_space.basis:
        M = sum((ci * E for ci, E in zip(c, basis) if ci), zeros(space.dim))
        vecs.append(flatten(M))
    return Subspace(space.dim ** 2, vecs)


def tangent_codim(space, A):
    """Codimension of the tangent space inside End_Sp."""
    return space.n * (2 * space.n + 1) - tangent_space(space, A).dim


# -- normal forms --------------------------------------------------------------

def normal_form_block(lower, sym):
    """[[A, B], [0, -A^T]] from the strictly lower n x n block A and symmetric B."""
    A = mat(lower)
    B = mat(sym)
    n = A.shape[0]
    return block([[A, B], [zeros(n), -A.T]])


def regular_nilpotent(space):
    """Normal form with a_{i+1,i} = 1 and B = E_11."""
    n = space.n
    A = zeros(n)
    for i in range(n - 1):
        A[i + 1, i] = Fraction(1)
    B = zeros(n)
    B[0, 0] = Fraction(1)
    return normal_form_block(A, B)


def fiber_parameter_count(n):
    """(entries constrained nonzero, free entries) of the normal form."""
    constrained = (n - 1) + 1  # a_{i+1,i} and b_11
    free = (n - 1) * (n - 2) // 2 + n * (n + 1) // 2 - 1
    return constrained, free


def random_normal_form_params(n, rng, bound=3):
    def nonzero():
        v = 0
        while v == 0:
            v = rng.randint(-bound, bound)
        return v

    A = zeros(n)
    for i in range(n):
        for j in range(i):
            A[i, j] = Fraction(nonzero() if i == j + 1 else rng.randint(-bound, bound))
    B = zeros(n)
    for i in range(n):
        for j in range(i, n):
            B[i, j] = B[j, i] = Fraction(nonzero() if i == j == 0 else rng.randint(-bound, bound))
    return A, B


def normal_form_fiber(space, F, lower, sym):
    """The smooth cone point over F with the given normal-form parameters."""
    n = space.n
    A, B = mat(lower), mat(sym)
    if A.shape != (n, n) or B.shape != (n, n):
        raise ValueError(f"normal-form blocks must be {n}x{n}")
    for i in range(n):
        for j in range(i, n):
            if A[i, j] != 0:
                raise ValueError("lower block must be strictly lower triangular")
            if B[i, j] != B[j, i]:
                raise ValueError("B must be symmetric")
    for i in range(n - 1):
        if A[i + 1, i] == 0:
            raise ValueError(f"a_{{{i + 2},{i + 1}}} = 0 leaves the smooth locus")
    if B[0, 0] == 0:
        raise ValueError("b_11 = 0 leaves the smooth locus")
    Q = symplectic_adapted_basis(F)
    return Q @ normal_form_block(A, B) @ sp_inverse(space, Q)


# -- flags from cone points -------------------------------------------------

def kernel_flag_dims(A):
    d = A.shape[0]
    P = A
    dims = []
    for _ in range(1, d):
        dims.append(d - rank(P))
        P = P @ A
    return dims


def extract_flag(space, A):
    """The flag ker A < ker A^2 < ... < ker A^{2n-1} of a smooth cone point."""
    if not in_cone(space, A):
        raise NotSmooth("not a point of the nilpotent cone")
    d = space.dim
    kernels = []
    P = A
    for _ in range(1, d):
        kernels.append(kernel(P))
        P = P @ A
    dims = [K.dim for K in kernels]
    if dims != list(range(1, d)):
        raise NotSmooth(f"kernel dimensions {dims} of A^i are not 1..{d - 1}; rank A = {d - dims[0]}")
    steps = kernels + [Subspace.full(d)]
    vectors = []
    prev = Subspace.zero(d)
    for V in steps:
        v = next(b for b in V.basis if not prev.contains(b))
        vectors.append(v)
        prev = V
    return IsotropicFlag(space, vectors)


# -- U_F and the triple decomposition ---------------------------------------

@dataclass(frozen=True)
class FlagSubspace:
    flag: IsotropicFlag
    subspace: Subspace

    def matrices(self):
        return subspace_matrices(self.flag.space, self.subspace)


def flag_subspace(space, F):
    """U_F = {A in End_Sp : A V_i subset V_{i-1} for all i}."""
    basis = end_sp_matrices(space)
    d = space.dim
    rows = []
    for i, v in enumerate(F.vectors, 1):
        v = np.array(v, dtype=object)
        images = [E @ v for E in basis]
        for phi in F.step(i - 1).complement().basis:
            phi = np.array(phi, dtype=object)
            rows.append([phi @ w for w in images])
    coeff_space = kernel(mat(rows))
    vecs = []
    for c in coeff_space.basis:
        M = sum((ci * E for ci, E in zip(c, basis) if ci), zeros(d))
        vecs.append(flatten(M))
    U = Subspace(d * d, vecs)
    if U.dim != space.n ** 2:
        raise AssertionError(f"U_F has dimension {U.dim}, expected {space.n ** 2}")
    return FlagSubspace(F, U)


def standard_blocks(space):
    """Bases of U, D and U^T for the standard flag."""
    n = space.n
    U, D, UT = [], [], []
    for i in range(n):
        for j in range(i):
            A = zeros(n)
            A[i, j] = Fraction(1)
            M = normal_form_block(A, zeros(n))
            U.append(M)
            UT.append(M.T)
    for i in range(n):
        for j in range(i, n):
            B = zeros(n)
            B[i, j] = B[j, i] = Fraction(1)
            M = normal_form_block(zeros(n), B)
            U.append(M)
            UT.append(M.T)
    for i in range(n):
        Dm = zeros(2 * n)
        Dm[i, i] = Fraction(1)
        Dm[n + i, n + i] = Fraction(-1)
        D.append(Dm)
    return U, D, UT


@dataclass(frozen=True)
class TriplePart:
    U: Subspace
    D: Subspace
    UT: Subspace

    def is_direct_sum_of(self, total):
        parts = (self.U, self.D, self.UT)
        s = self.U + self.D + self.UT
        return s == total and sum(p.dim for p in parts) == total.dim


def triple_decomposition(space, F):
    """End_Sp = U + D + U^T relative to a symplectic basis adapted to F."""
    Q = symplectic_adapted_basis(F)
    Qi = sp_inverse(space, Q)
    d = space.dim
    U0, D0, UT0 = standard_blocks(space)

    def conj(ms):
        return Subspace(d * d, [flatten(Q @ M @ Qi) for M in ms])

    part = TriplePart(conj(U0), conj(D0), conj(UT0))
    if not part.is_direct_sum_of(end_sp_basis(space)):
        raise AssertionError("U + D + U^T is not a direct sum decomposition of End_Sp")
    return part


def trace_pairing(space, B1, B2):
    """q(B1, B2) = tr(B1 B2)."""
    return np.sum(space.check_square(B1) * space.check_square(B2).T)


def gram_matrix(space, matrices=None):
    ms = end_sp_matrices(space) if matrices is None else matrices
    return mat([[trace_pairing(space, a, b) for b in ms] for a in ms])


def q_annihilator(space, W):
    """{X in End_Sp : tr(X B) = 0 for all B in W}, flattened."""
    d = space.dim
    # tr(X B) = vec(X) . vec(B^T)
    transposed = Subspace(d * d, [flatten(unflatten(b, d).T) for b in W.basis])
    return end_sp_basis(space) & transposed.complement()


def filtration_degree(space, F, B):
    """Least r with B V_i subset V_{i+r} for all i; -2n for B = 0."""
    B = space.check_square(B)
    Qf = F.basis_matrix()
    M = inverse(Qf) @ B @ Qf
    d = space.dim
    r = None
    for k in range(d):
        for j in range(d):
            if M[k, j] != 0:
                r = k - j if r is None else max(r, k - j)
    return -d if r is None else r


# -- certification of L inside the cone -----------------------------------

def _integral_rows(W):
    out = []
    for v in W.basis:
        den = lcm(*(x.denominator for x in v))
        out.append([int(x * den) for x in v])
    return out


def certify_in_cone(space, L):
    """Decide exactly whether every element of L is nilpotent.

    Returns ``(True, None)`` or ``(False, coefficients)`` with a lattice
    point whose combination is not nilpotent.  With C(lam) = sum lam_k B_k,
    each tr(C^{2r}) is a homogeneous polynomial of degree 2r <= 2n in the
    lam's; such a polynomial vanishes identically iff it vanishes on
    {a in N^m : |a| = 2n}, a unisolvent set for that degree.  The check runs
    on integer multiples of the basis, in Python integers.
    """
    d = space.dim
    m = L.dim
    if m == 0:
        return True, None
    B = np.array(_integral_rows(L), dtype=object).reshape(m, d, d)
    deg = 2 * space.n
    points = []
    for combo in itertools.combinations_with_replacement(range(m), deg):
        a = [0] * m
        for k in combo:
            a[k] += 1
        points.append(a)
    pts = np.array(points, dtype=object)
    C = np.tensordot(pts, B, axes=1)
    C2 = np.matmul(C, C)
    P = C2
    for r in range(1, space.n + 1):
        traces = np.trace(P, axis1=1, axis2=2)
        bad = next((i for i, t in enumerate(traces) if t != 0), None)
        if bad is not None:
            return False, tuple(points[bad])
        if r < space.n:
            P = np.matmul(P, C2)
    return True, None


# -- flag recovery -----------------------------------------------------------

@dataclass
class RecoveryReport:
    flag: IsotropicFlag
    certified: bool
    smooth_witness: object
    draws_used: int

    def to_json(self):
        return {
            "flag": self.flag.to_json(),
            "certified": self.certified,
            "smooth_witness": [[str(x) for x in row] for row in self.smooth_witness],
            "draws_used": self.draws_used,
        }


def _combine(matrices, coeffs, d):
    out = zeros(d)
    for c, M in zip(coeffs, matrices):
        if c:
            out = out + c * M
    return out


def recover_flag(space, L, seed=0, budget=10000, bound=3, prechecks=8):
    """The unique flag F with L = U_F.

    Samples integer combinations of the basis of L (coefficients in
    [-bound, bound]) until one has rank 2n-1, reads the flag off its kernels,
    and returns only after checking ``flag_subspace(F) == L`` exactly.
    """
    d = space.dim
    if L.ambient_dim != d * d:
        raise ValueError(f"L must live in the {d * d}-dimensional space of flattened matrices")
    if L.dim != space.n ** 2:
        raise NotAFlagSubspace("dimension", f"dim L = {L.dim}, expected n^2 = {space.n ** 2}")
    mats = subspace_matrices(space, L)
    for k, M in enumerate(mats):
        if not is_end_sp(space, M):
            raise NotAFlagSubspace("end_sp", f"basis element {k} is not symmetric-symplectic")
        if not in_cone(space, M):
            raise NotAFlagSubspace("nilpotent", f"basis element {k} is not nilpotent")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    for _ in range(prechecks):
        c = [rng.randint(-bound, bound) for _ in mats]
        if not in_cone(space, _combine(mats, c, d)):
            raise NotAFlagSubspace("nilpotent", f"combination {c} is not nilpotent")

    witness = None
    draws = 0
    while draws < budget:
        draws += 1
        c = [rng.randint(-bound, bound) for _ in mats]
        if not any(c):
            continue
        A = _combine(mats, c, d)
        if not in_cone(space, A):
            raise NotAFlagSubspace("nilpotent", f"combination {c} is not nilpotent")
        if rank(A) == d - 1:
            witness = A
            break
    if witness is None:
        raise NoSmoothPoint(f"no rank {d - 1} element among {draws} draws")

    F = extract_flag(space, witness)
    if flag_subspace(space, F).subspace != L:
        raise NotAFlagSubspace("equality", "L differs from U_F for the flag of its smooth element")
    return RecoveryReport(F, True, witness, draws)


@dataclass
class StepReport:
    violations: list = field(default_factory=list)
    pairs_checked: int = 0
    cone_certified: object = None

    @property
    def ok(self):
        return not self.violations

    def to_json(self):
        return {
            "ok": self.ok,
            "pairs_checked": self.pairs_checked,
            "cone_certified": self.cone_certified,
            "violations": self.violations,
        }


def check_step_identities(space, L, seed=0, random_pairs=20, bound=3, certify=False):
    """Check tr(A^i B) = 0 (i <= 2n), A^{2i-1} in L and A^2B + BA^2 + ABA in L.

    Runs over every ordered pair of basis elements of L and ``random_pairs``
    random integer combinations.  Failures are collected, each with a
    witness; nothing is raised.  All identities are homogeneous, so the work
    is done on integer multiples of the basis.
    """
    d = space.dim
    m = L.dim
    mats = [np.array(r, dtype=object).reshape(d, d) for r in _integral_rows(L)]
    normals = np.array(_integral_rows(L.complement()) or [[0] * (d * d)], dtype=object)
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    report = StepReport()
    eye = np.array([[int(i == j) for j in range(d)] for i in range(d)], dtype=object)

    def member(M):
        return not any(normals @ M.reshape(-1))

    def show(M):
        return [[str(x) for x in row] for row in M]

    def combo(cs):
        return sum((c * M for c, M in zip(cs, mats) if c), np.zeros((d, d), dtype=int).astype(object))

    elements = [(M, f"basis[{k}]") for k, M in enumerate(mats)]
    pairs = [(i, j) for i in range(m) for j in range(m)]
    for t in range(random_pairs):
        elements.append((combo([rng.randint(-bound, bound) for _ in range(m)]), f"random{t}.A"))
        elements.append((combo([rng.randint(-bound, bound) for _ in range(m)]), f"random{t}.B"))
        pairs.append((len(elements) - 2, len(elements) - 1))

    powers = {}

    def power_list(idx):
        if idx not in powers:
            A = elements[idx][0]
            ps = [eye]
            for _ in range(d):
                ps.append(ps[-1] @ A)
            powers[idx] = ps
        return powers[idx]

    odd_checked = set()
    for ia, ib in pairs:
        (A, na), (B, nb) = elements[ia], elements[ib]
        report.pairs_checked += 1
        ps = power_list(ia)
        BT = B.T
        failing = {}
        for i in range(d + 1):
            t = np.sum(ps[i] * BT)
            if t != 0:
                failing[i] = t
        if failing:
            report.violations.append({
                "identity": "trace", "A": na, "B": nb,
                "powers": sorted(failing), "values": [str(failing[i]) for i in sorted(failing)]})
        if ia not in odd_checked:
            odd_checked.add(ia)
            for i in range(1, space.n + 1):
                if not member(ps[2 * i - 1]):
                    report.violations.append({
                        "identity": "odd_power", "power": 2 * i - 1, "A": na, "witness": show(ps[2 * i - 1])})
                    break
        A2 = ps[2]
        C = A2 @ B + B @ A2 + A @ B @ A
        if not member(C):
            report.violations.append({"identity": "cubic", "A": na, "B": nb, "witness": show(C)})
    if certify:
        ok, pt = certify_in_cone(space, L)
        report.cone_certified = ok
        if not ok:
            report.violations.append({"identity": "cone", "lattice_point": list(pt)})
    return report


# -- perturbation witnesses -----------------------------------------------------

def _random_singular_end_sp(space, rng, bound=2):
    d = space.dim
    S = zeros(d)
    for _ in range(d - 1):
        u = mat([[rng.randint(-bound, bound)] for _ in range(d)])
        c = rng.choice((1, -1, 2, -2))
        S = S + c * (u @ u.T)
    return -space.J @ S


def perturbation_nondegeneracy(space, A, seed=0, budget=1000):
    """A singular C in End_Sp with det(A + C) != 0, or None when A = 0.

    For A = 0 no witness exists since det(0 + C) = det C = 0.  Raises
    BudgetExhausted if ``budget`` draws all fail for a nonzero A.
    """
    A = space.check_square(A)
    _require_end_sp(space, A)
    if all(x == 0 for x in A.flat):
        return None
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    for _ in range(budget):
        C = _random_singular_end_sp(space, rng)
        if det(C) == 0 and det(A + C) != 0:
            return C
    raise BudgetExhausted(f"no singular C with det(A + C) != 0 in {budget} draws")


# -- random sampling helpers used by the suites ----------------------------------

def random_end_sp(space, rng, bound=3):
    d = space.dim
    S = zeros(d)
    for i in range(d):
        for j in range(i, d):
            S[i, j] = S[j, i] = Fraction(rng.randint(-bound, bound))
    return -space.J @ S


def random_flag(space, rng):
    return transport_flag(random_sp(space, rng), standard_flag(space))


def conjugate_subspace(space, P, W):
    """P W P^{-1} for a Subspace of flattened matrices; P symplectic."""
    d = space.dim
    Pi = sp_inverse(space, P)
    return Subspace(d * d, [flatten(P @ unflatten(v, d) @ Pi) for v in W.basis])
