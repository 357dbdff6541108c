"""Named property suites.

Each suite draws seeded samples, runs the library operation and compares it
with an independent oracle from :mod:`sympcone.oracles` or with a value
known by construction.  A suite returns ``{suite, n, samples, failures}``
where every failure is a JSON-ready witness; an empty list means pass.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from .exact_linalg import Poly, Subspace, det, identity, kernel, mat, poly_gcd, rank, zeros
from .nilcone import (
    BudgetExhausted,
    check_step_identities,
    conjugate_subspace,
    extract_flag,
    fiber_parameter_count,
    flag_subspace,
    gram_matrix,
    in_cone,
    normal_form_fiber,
    perturbation_nondegeneracy,
    q_annihilator,
    random_end_sp,
    random_flag,
    random_normal_form_params,
    recover_flag,
    regular_nilpotent,
    tangent_codim,
    tangent_conditions,
    triple_decomposition,
)
from .oracles import is_nilpotent_by_powers, laplace_det
from .spectral import (
    SpectralData,
    classify_discriminant,
    cstar_scale,
    hitchin,
    random_poly_higgs,
    random_spectral_data,
    spectral_curve,
    specialize_x,
    trace_surjectivity_check,
    vanishing_subspace,
)
from .symplectic import (
    SymplecticSpace,
    end_sp_basis,
    end_sp_matrices,
    gp_multiplier,
    is_end_sp,
    omega_annihilator,
    random_sp,
    standard_flag,
    transport_flag,
)


@dataclass(frozen=True)
class Suite:
    name: str
    run: object
    default_samples: int
    description: str


SUITES = {}


def _register(name, default_samples, description):
    def wrap(fn):
        SUITES[name] = Suite(name, fn, default_samples, description)
        return fn
    return wrap


def _show(M):
    return [[str(x) for x in row] for row in M]


def _rng(name, n, seed):
    return random.Random(f"{name}:{n}:{seed}")


def run_suite(name, n, seed=0, samples=None):
    if name not in SUITES:
        raise KeyError(name)
    suite = SUITES[name]
    count = suite.default_samples if samples is None else samples
    failures = suite.run(SymplecticSpace(n), _rng(name, n, seed), count)
    return {"suite": name, "n": n, "samples": count, "failures": failures}


def _smooth_point(space, rng):
    F = random_flag(space, rng)
    A, B = random_normal_form_params(space.n, rng)
    return F, normal_form_fiber(space, F, A, B)


@_register("nilpotency-equivalence", 500, "in_cone agrees with A^{2n} = 0")
def nilpotency_equivalence(space, rng, samples):
    failures = []
    for i in range(samples):
        if i % 2 == 0:
            _, A = _smooth_point(space, rng)
            kind = "normal-form"
        else:
            A = random_end_sp(space, rng)
            kind = "random"
        got = in_cone(space, A)
        want = is_nilpotent_by_powers(A, space.dim)
        if got != want:
            failures.append({"sample": i, "kind": kind, "in_cone": got, "oracle": want, "matrix": _show(A)})
    return failures


@_register("dimension-bookkeeping", 20, "dim End_Sp and tangent codimensions")
def dimension_bookkeeping(space, rng, samples):
    n = space.n
    failures = []
    dim = end_sp_basis(space).dim
    if dim != n * (2 * n + 1):
        failures.append({"check": "dim End_Sp", "got": dim, "expected": n * (2 * n + 1)})
    N = regular_nilpotent(space)
    if tangent_codim(space, N) != n:
        failures.append({"check": "codim at regular nilpotent", "got": tangent_codim(space, N)})
    # A^2 lies outside End_Sp, so its trace conditions only make sense formally:
    # every odd power of A^2 is self-adjoint and pairs to zero with End_Sp
    _, rows = tangent_conditions(space, N @ N)
    c2 = rank(mat(rows))
    if not c2 < n:
        failures.append({"check": "condition rank at square of regular nilpotent", "got": c2})
    # A^3 is a genuine non-regular point of the cone
    N3 = N @ N @ N
    c3 = tangent_codim(space, N3)
    if not c3 < n:
        failures.append({"check": "codim at cube of regular nilpotent", "got": c3})
    for i in range(samples):
        _, A = _smooth_point(space, rng)
        c = tangent_codim(space, A)
        if c != n:
            failures.append({"sample": i, "check": "codim at smooth point", "got": c, "matrix": _show(A)})
    return failures


@_register("flag-structure", 200, "kernel flag of smooth points is a full isotropic flag")
def flag_structure(space, rng, samples):
    d = space.dim
    n = space.n
    failures = []
    for i in range(samples):
        _, A = _smooth_point(space, rng)
        kernels = [None]
        P = identity(d)
        for _ in range(1, d + 1):
            P = P @ A
            kernels.append(kernel(P))
        bad = [k for k in range(1, d + 1) if kernels[k].dim != k]
        if bad:
            failures.append({"sample": i, "check": "dim ker A^i", "steps": bad, "matrix": _show(A)})
            continue
        for k in range(1, d):
            if omega_annihilator(space, kernels[k]) != kernels[d - k]:
                failures.append({"sample": i, "check": "duality", "step": k, "matrix": _show(A)})
        L = kernels[n]
        if any(space.omega(u, v) for u in L.basis for v in L.basis):
            failures.append({"sample": i, "check": "ker A^n Lagrangian", "matrix": _show(A)})
    return failures


@_register("normal-form-fiber", 100, "parameter count and extract_flag round trip")
def normal_form_round_trip(space, rng, samples):
    n = space.n
    failures = []
    constrained, free = fiber_parameter_count(n)
    if (constrained, free) != (n, n * n - n):
        failures.append({"check": "parameter count", "got": [constrained, free]})
    for i in range(samples):
        F = random_flag(space, rng)
        A, B = random_normal_form_params(n, rng)
        M = normal_form_fiber(space, F, A, B)
        if extract_flag(space, M) != F:
            failures.append({"sample": i, "check": "round trip", "flag": F.to_json(), "matrix": _show(M)})
    return failures


def _recovery_instance(space, rng):
    F = random_flag(space, rng)
    P = random_sp(space, rng)
    L = conjugate_subspace(space, P, flag_subspace(space, F).subspace)
    return F, P, L


@_register("flag-recovery", 100, "recover_flag(P U_F P^-1) = P F")
def flag_recovery(space, rng, samples):
    failures = []
    for i in range(samples):
        F, P, L = _recovery_instance(space, rng)
        expected = transport_flag(P, F)
        report = recover_flag(space, L, seed=rng.randrange(2 ** 32))
        if report.flag != expected or not report.certified:
            failures.append({"sample": i, "certified": report.certified,
                             "got": report.flag.to_json(), "expected": expected.to_json()})
    return failures


@_register("step-identities", 100, "trace, odd-power and cubic identities on recovered L")
def step_identities(space, rng, samples):
    failures = []
    for i in range(samples):
        F, P, L = _recovery_instance(space, rng)
        # recovery certifies L = U_F for the returned flag
        recover_flag(space, L, seed=rng.randrange(2 ** 32))
        report = check_step_identities(space, L, seed=rng.randrange(2 ** 32), random_pairs=20)
        if not report.ok:
            failures.append({"sample": i, "violations": report.violations[:3]})
    return failures


@_register("trace-duality", 10, "Gram determinant, q-dual of U and End_Sp = U + D + U^T")
def trace_duality(space, rng, samples):
    n = space.n
    failures = []
    if det(gram_matrix(space)) == 0:
        failures.append({"check": "Gram determinant"})
    for i in range(samples + 1):
        F = random_flag(space, rng) if i else standard_flag(space)
        part = triple_decomposition(space, F)
        dims = (part.U.dim, part.D.dim, part.UT.dim)
        if dims != (n * n, n, n * n):
            failures.append({"sample": i, "check": "dims", "got": list(dims)})
        if not part.is_direct_sum_of(end_sp_basis(space)):
            failures.append({"sample": i, "check": "direct sum"})
        if part.U != flag_subspace(space, F).subspace:
            failures.append({"sample": i, "check": "U = U_F"})
        if q_annihilator(space, part.U) != part.U + part.D:
            failures.append({"sample": i, "check": "q-dual of U"})
    return failures


def _random_gp(space, rng):
    """lam * P1 * diag(I, c I) * P2 with multiplier lam^2 c."""
    n = space.n
    lam = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
    c = Fraction(rng.choice([-4, -3, -2, -1, 1, 2, 3, 4]), rng.randint(1, 3))
    scale = identity(space.dim)
    for i in range(n, 2 * n):
        scale[i, i] = c
    A = lam * (random_sp(space, rng, num_factors=3) @ scale @ random_sp(space, rng, num_factors=3))
    return A, lam * lam * c, lam ** (2 * n) * c ** n


@_register("group-identities", 200, "q multiplicativity and det A = q(A)^n on Gp elements")
def group_identities(space, rng, samples):
    n = space.n
    failures = []
    for i in range(samples):
        A, qa, deta = _random_gp(space, rng)
        B, qb, _ = _random_gp(space, rng)
        if gp_multiplier(space, A) != qa:
            failures.append({"sample": i, "check": "multiplier", "got": str(gp_multiplier(space, A)), "expected": str(qa)})
        if gp_multiplier(space, A @ B) != qa * qb:
            failures.append({"sample": i, "check": "multiplicativity"})
        dA = det(A)
        if dA != deta or dA != gp_multiplier(space, A) ** n:
            failures.append({"sample": i, "check": "det identity", "det": str(dA), "expected": str(deta)})
    return failures


def _laplace_char_poly(theta):
    """det(y I - theta(x)) by cofactor expansion, as a Poly in y over Q[x]."""
    d = theta.entries.shape[0]
    zero = Poly([], var="y")
    M = [[Poly([-theta.entries[i, j]] + ([Poly([1])] if i == j else []), var="y")
          for j in range(d)] for i in range(d)]
    return laplace_det(M, zero)


@_register("hitchin-consistency", 100, "char poly identity, odd traces and the C*-law")
def hitchin_consistency(space, rng, samples):
    failures = []
    for i in range(samples):
        theta = random_poly_higgs(space, rng, degree=4)
        data = hitchin(space, theta)
        charp = _laplace_char_poly(theta)
        if charp != spectral_curve(data):
            failures.append({"sample": i, "check": "char poly identity", "theta": theta.to_json()})
        odd = [k for k in range(1, space.dim, 2) if charp.coeff(k)]
        if odd:
            failures.append({"sample": i, "check": "odd coefficients", "degrees": odd})
        for lam in (Fraction(2), Fraction(-1), Fraction(1, 3)):
            if hitchin(space, theta.scaled(lam)) != cstar_scale(data, lam):
                failures.append({"sample": i, "check": "C*-law", "lambda": str(lam)})
    return failures


def discriminant_fixtures():
    """(label, SpectralData, expected class)."""
    x = Poly([0, 1])
    one = Poly([1])
    return [
        ("double root of s2", SpectralData(1, (x * x,)), "D1"),
        ("s2 = x", SpectralData(1, (x,)), "Smooth"),
        ("(t - x)^2 - 1", SpectralData(2, (Poly([0, -2]), x * x - one)), "Smooth"),
        ("(t - 1)^2 - x^2", SpectralData(2, (Poly([-2]), one - x * x)), "D2"),
        ("(t - x)^2", SpectralData(2, (Poly([0, -2]), x * x)), "Both"),
    ]


def is_squarefree(p):
    if p.degree <= 0:
        return True
    return poly_gcd(p, p.derivative()).degree == 0


@_register("discriminant", 100, "fixture classes and squarefree fibres over Smooth verdicts")
def discriminant(space, rng, samples):
    failures = []
    for label, data, expected in discriminant_fixtures():
        got = classify_discriminant(data).kind
        if got != expected:
            failures.append({"fixture": label, "got": got, "expected": expected})
    for i in range(samples):
        data = random_spectral_data(space.n, rng)
        verdict = classify_discriminant(data)
        if verdict.kind != "Smooth":
            continue
        P = spectral_curve(data)
        for _ in range(10):
            x0 = Fraction(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 10 ** 3))
            if not is_squarefree(specialize_x(P, x0)):
                failures.append({"sample": i, "x0": str(x0), "data": data.to_json()})
    return failures


@_register("perturbation", 200, "singular C with det(A + C) != 0 for every nonzero A")
def perturbation(space, rng, samples):
    d = space.dim
    failures = []
    if perturbation_nondegeneracy(space, zeros(d)) is not None:
        failures.append({"check": "zero matrix"})
    for i in range(samples):
        if i % 2 == 0:
            A = random_end_sp(space, rng)
            if all(x == 0 for x in A.flat):
                A = regular_nilpotent(space)
        else:
            _, A = _smooth_point(space, rng)
        try:
            C = perturbation_nondegeneracy(space, A, seed=rng.randrange(2 ** 32), budget=1000)
        except BudgetExhausted:
            failures.append({"sample": i, "check": "budget", "matrix": _show(A)})
            continue
        rows = [list(r) for r in C]
        shifted = [list(r) for r in A + C]
        if not is_end_sp(space, C) or laplace_det(rows, Fraction(0)) != 0 or laplace_det(shifted, Fraction(0)) == 0:
            failures.append({"sample": i, "check": "witness", "A": _show(A), "C": _show(C)})
    return failures


@_register("vanishing-subspaces", 50, "codimension law and trace surjectivity")
def vanishing_subspaces(space, rng, samples):
    failures = []
    for i in range(samples):
        d = rng.randint(0, 12)
        m = rng.randint(0, d + 1)
        x0 = Fraction(rng.randint(-20, 20), rng.randint(1, 5))
        W = vanishing_subspace(d, x0, m)
        # oracle: multiples (x - x0)^m x^j span the same space
        base = Poly([-x0, 1]) ** m
        gens = [tuple((base * Poly([0] * j + [1])).coeff(k) for k in range(d + 1)) for j in range(d + 1 - m)]
        if W.codim != m or W != Subspace(d + 1, gens):
            failures.append({"sample": i, "d": d, "x0": str(x0), "m": m, "codim": W.codim})
    cases = [(1, 1), (2, 1), (2, 2)]
    for n, k in cases:
        sp = SymplecticSpace(n)
        if not trace_surjectivity_check(sp, end_sp_matrices(sp), k):
            failures.append({"check": "full span", "n": n, "k": k})
    if trace_surjectivity_check(space, [regular_nilpotent(space)], 1):
        failures.append({"check": "single nilpotent", "n": space.n})
    return failures


CRITERIA = [
    ("nilpotency-equivalence", (1, 2, 3)),
    ("dimension-bookkeeping", (1, 2, 3)),
    ("flag-structure", (1, 2, 3)),
    ("normal-form-fiber", (1, 2, 3)),
    ("flag-recovery", (1, 2, 3)),
    ("step-identities", (1, 2, 3)),
    ("trace-duality", (1, 2, 3)),
    ("group-identities", (1, 2, 3)),
    ("hitchin-consistency", (1, 2)),
    ("discriminant", (2,)),
    ("perturbation", (1, 2)),
    ("vanishing-subspaces", (2,)),
]
