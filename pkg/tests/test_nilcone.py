import random

import numpy as np
import pytest

from sympcone.exact_linalg import Subspace, det, flatten, identity, mat, mat_equal, rank, zeros
from sympcone.nilcone import (
    BudgetExhausted,
    NoSmoothPoint,
    NotAFlagSubspace,
    NotEndSp,
    NotSmooth,
    certify_in_cone,
    check_step_identities,
    conjugate_subspace,
    extract_flag,
    filtration_degree,
    fiber_parameter_count,
    flag_subspace,
    gram_matrix,
    in_cone,
    is_smooth_point,
    normal_form_fiber,
    perturbation_nondegeneracy,
    q_annihilator,
    random_end_sp,
    random_flag,
    random_normal_form_params,
    recover_flag,
    regular_nilpotent,
    standard_blocks,
    tangent_codim,
    tangent_space,
    trace_pairing,
    triple_decomposition,
)
from sympcone.oracles import is_nilpotent_by_powers, minors_rank
from sympcone.symplectic import (
    SymplecticSpace,
    end_sp_basis,
    is_end_sp,
    omega_annihilator,
    random_sp,
    standard_flag,
    transport_flag,
)

S1, S2, S3 = SymplecticSpace(1), SymplecticSpace(2), SymplecticSpace(3)
SPACES = [S1, S2, S3]
E12 = mat([[0, 1], [0, 0]])


class TestCone:
    def test_jordan_block(self):
        assert in_cone(S1, E12)

    def test_hyperbolic(self):
        assert not in_cone(S1, mat([[1, 0], [0, -1]]))

    def test_rejects_non_end_sp(self):
        with pytest.raises(NotEndSp):
            in_cone(S1, identity(2))

    @pytest.mark.parametrize("space", [S2, S3], ids=["n2", "n3"])
    def test_agrees_with_power_oracle(self, space):
        rng = random.Random(space.n)
        for _ in range(60):
            F = random_flag(space, rng)
            A = normal_form_fiber(space, F, *random_normal_form_params(space.n, rng))
            assert in_cone(space, A) and is_nilpotent_by_powers(A, space.dim)
            B = random_end_sp(space, rng)
            assert in_cone(space, B) == is_nilpotent_by_powers(B, space.dim)


class TestSmoothness:
    def test_examples(self):
        assert is_smooth_point(S1, E12)
        assert not is_smooth_point(S1, zeros(2))

    def test_regular_nilpotent_rank(self):
        N = regular_nilpotent(S3)
        assert is_smooth_point(S3, N)
        assert minors_rank(N.tolist()) == 5


class TestTangent:
    def test_zero_matrix(self):
        assert tangent_codim(S2, zeros(4)) == 0
        assert tangent_space(S2, zeros(4)) == end_sp_basis(S2)

    def test_regular_n2(self):
        assert tangent_space(S2, regular_nilpotent(S2)).dim == 8

    @pytest.mark.parametrize("space,codim", [(S1, 0), (S2, 1), (S3, 1)], ids=["n1", "n2", "n3"])
    def test_cube_of_regular(self, space, codim):
        N = regular_nilpotent(space)
        A3 = N @ N @ N
        assert is_end_sp(space, A3) and in_cone(space, A3)
        assert tangent_codim(space, A3) == codim < space.n

    def test_square_is_not_symmetric_symplectic(self):
        N = regular_nilpotent(S2)
        assert not is_end_sp(S2, N @ N)

    def test_codim_n_iff_smooth(self):
        rng = random.Random(31)
        N = regular_nilpotent(S3)
        for A in [N, N @ N @ N, N @ N @ N @ N @ N, zeros(6)]:
            assert (tangent_codim(S3, A) == 3) == (rank(A) == 5)
        for _ in range(5):
            A = normal_form_fiber(S3, random_flag(S3, rng), *random_normal_form_params(3, rng))
            assert tangent_codim(S3, A) == 3


class TestFlagExtraction:
    def test_n1(self):
        assert extract_flag(S1, E12).step(1) == Subspace(2, [[1, 0]])

    @pytest.mark.parametrize("space", SPACES, ids=["n1", "n2", "n3"])
    def test_regular_gives_standard(self, space):
        assert extract_flag(space, regular_nilpotent(space)) == standard_flag(space)

    def test_equivariance(self):
        rng = random.Random(41)
        for _ in range(100):
            space = rng.choice([S2, S3])
            A = normal_form_fiber(space, standard_flag(space), *random_normal_form_params(space.n, rng))
            P = random_sp(space, rng)
            PAP = P @ A @ _sp_inv(space, P)
            assert extract_flag(space, PAP) == transport_flag(P, extract_flag(space, A))

    def test_not_smooth(self):
        with pytest.raises(NotSmooth):
            extract_flag(S2, zeros(4))

    def test_lagrangian_middle(self):
        rng = random.Random(2)
        A = normal_form_fiber(S3, random_flag(S3, rng), *random_normal_form_params(3, rng))
        F = extract_flag(S3, A)
        assert omega_annihilator(S3, F.step(3)) == F.step(3)


def _sp_inv(space, P):
    return -space.J @ P.T @ space.J


class TestNormalForm:
    def test_n1(self):
        M = normal_form_fiber(S1, standard_flag(S1), [[0]], [[5]])
        assert mat_equal(M, mat([[0, 5], [0, 0]]))

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_parameter_count(self, n):
        assert fiber_parameter_count(n) == (n, n * n - n)
        assert sum(fiber_parameter_count(n)) == n * n

    def test_rejects_degenerate_parameters(self):
        with pytest.raises(ValueError):
            normal_form_fiber(S2, standard_flag(S2), [[0, 0], [0, 0]], [[1, 0], [0, 0]])
        with pytest.raises(ValueError):
            normal_form_fiber(S2, standard_flag(S2), [[0, 0], [1, 0]], [[0, 0], [0, 1]])

    def test_round_trip(self):
        rng = random.Random(5)
        for _ in range(100):
            space = rng.choice(SPACES)
            F = random_flag(space, rng)
            M = normal_form_fiber(space, F, *random_normal_form_params(space.n, rng))
            assert is_smooth_point(space, M)
            assert extract_flag(space, M) == F


class TestFlagSubspace:
    def test_n1(self):
        U = flag_subspace(S1, standard_flag(S1))
        assert U.subspace == Subspace(4, [flatten(E12)])

    @pytest.mark.parametrize("space", SPACES, ids=["n1", "n2", "n3"])
    def test_dim_and_nilpotent(self, space):
        U = flag_subspace(space, random_flag(space, random.Random(space.n)))
        assert U.subspace.dim == space.n ** 2
        assert all(in_cone(space, M) and is_nilpotent_by_powers(M, space.dim) for M in U.matrices())
        assert certify_in_cone(space, U.subspace) == (True, None)

    def test_strictly_decreasing(self):
        F = random_flag(S2, random.Random(9))
        for M in flag_subspace(S2, F).matrices():
            for i in range(1, 4):
                for v in F.step(i).basis:
                    assert F.step(i - 1).contains(tuple(M @ np.array(v, dtype=object)))


class TestTriple:
    @pytest.mark.parametrize("space,dims", [(S1, (1, 1, 1)), (S2, (4, 2, 4)), (S3, (9, 3, 9))], ids=["n1", "n2", "n3"])
    def test_dims(self, space, dims):
        part = triple_decomposition(space, random_flag(space, random.Random(0)))
        assert (part.U.dim, part.D.dim, part.UT.dim) == dims
        assert sum(dims) == space.n * (2 * space.n + 1)

    @pytest.mark.parametrize("space", SPACES, ids=["n1", "n2", "n3"])
    def test_q_dual(self, space):
        F = random_flag(space, random.Random(7))
        part = triple_decomposition(space, F)
        assert part.U == flag_subspace(space, F).subspace
        assert q_annihilator(space, part.U) == part.U + part.D

    def test_pairwise_trivial_intersections(self):
        part = triple_decomposition(S2, standard_flag(S2))
        assert (part.U & part.D).dim == (part.U & part.UT).dim == (part.D & part.UT).dim == 0


class TestTracePairing:
    def test_examples(self):
        assert trace_pairing(S1, E12, E12) == 0
        assert trace_pairing(S3, S3.J, S3.J) == -6

    @pytest.mark.parametrize("space", SPACES, ids=["n1", "n2", "n3"])
    def test_gram_nondegenerate(self, space):
        G = gram_matrix(space)
        assert mat_equal(G, G.T)
        assert det(G) != 0


class TestFiltration:
    def test_flag_subspace_negative(self):
        F = random_flag(S2, random.Random(1))
        for M in flag_subspace(S2, F).matrices():
            assert filtration_degree(S2, F, M) <= -1

    def test_identity_and_zero(self):
        F = standard_flag(S3)
        assert filtration_degree(S3, F, identity(6)) == 0
        assert filtration_degree(S3, F, zeros(6)) == -6

    def test_transpose_of_regular(self):
        for space in SPACES[1:]:
            N = regular_nilpotent(space)
            assert filtration_degree(space, standard_flag(space), N.T) == 1

    def test_even_degree_element_rejected(self):
        # U^T element with r = 2 mixed into U_F
        U, _, UT = standard_blocks(S2)
        bad = UT[2]
        assert filtration_degree(S2, standard_flag(S2), bad) == 2 and in_cone(S2, bad)
        for drop in range(4):
            mats = [M for i, M in enumerate(U) if i != drop] + [bad]
            L = Subspace(16, [flatten(M) for M in mats])
            report = check_step_identities(S2, L, certify=True)
            assert not report.ok and report.cone_certified is False
            with pytest.raises(NotAFlagSubspace):
                recover_flag(S2, L)


class TestRecovery:
    def test_standard(self):
        for space in SPACES:
            F = standard_flag(space)
            assert recover_flag(space, flag_subspace(space, F).subspace).flag == F

    def test_n1_span(self):
        report = recover_flag(S1, Subspace(4, [flatten(E12)]))
        assert report.flag.step(1) == Subspace(2, [[1, 0]])
        assert report.certified and rank(report.smooth_witness) == 1

    def test_conjugated(self):
        rng = random.Random(77)
        for _ in range(20):
            space = rng.choice(SPACES)
            F = random_flag(space, rng)
            P = random_sp(space, rng)
            L = conjugate_subspace(space, P, flag_subspace(space, F).subspace)
            assert recover_flag(space, L, seed=rng.randrange(1000)).flag == transport_flag(P, F)

    def test_wrong_dimension(self):
        with pytest.raises(NotAFlagSubspace) as info:
            recover_flag(S2, Subspace(16, [flatten(regular_nilpotent(S2))]))
        assert info.value.reason == "dimension"

    def test_identity_span(self):
        with pytest.raises(NotAFlagSubspace) as info:
            recover_flag(S1, Subspace(4, [flatten(identity(2))]))
        assert info.value.reason == "end_sp"

    def test_budget_exhaustion(self):
        L = flag_subspace(S2, standard_flag(S2)).subspace
        assert recover_flag(S2, L, budget=50).certified
        with pytest.raises(NoSmoothPoint):
            recover_flag(S2, L, budget=1, prechecks=0, seed=_unlucky_seed(L))

    def test_report_json(self):
        out = recover_flag(S1, Subspace(4, [flatten(E12)])).to_json()
        assert set(out) == {"flag", "certified", "smooth_witness", "draws_used"}


def _unlucky_seed(L):
    # first seed whose single draw is not smooth
    from sympcone.nilcone import _combine
    from sympcone.symplectic import subspace_matrices
    mats = subspace_matrices(S2, L)
    for seed in range(1000):
        rng = random.Random(seed)
        c = [rng.randint(-3, 3) for _ in mats]
        if rank(_combine(mats, c, 4)) != 3:
            return seed
    raise AssertionError("no unlucky seed")


class TestStepIdentities:
    @pytest.mark.parametrize("space", SPACES, ids=["n1", "n2", "n3"])
    def test_flag_subspace_passes(self, space):
        L = flag_subspace(space, random_flag(space, random.Random(3))).subspace
        report = check_step_identities(space, L, certify=True)
        assert report.ok and report.cone_certified

    def test_identity_span_fails_trace(self):
        report = check_step_identities(S2, Subspace(16, [flatten(identity(4))]))
        trace = [v for v in report.violations if v["identity"] == "trace"]
        assert trace and 0 in trace[0]["powers"]

    def test_conjugated(self):
        rng = random.Random(4)
        for _ in range(50):
            space = rng.choice([S1, S2])
            L = flag_subspace(space, random_flag(space, rng)).subspace
            L = conjugate_subspace(space, random_sp(space, rng), L)
            assert check_step_identities(space, L, seed=rng.randrange(100)).ok


class TestPerturbation:
    def test_zero(self):
        assert perturbation_nondegeneracy(S2, zeros(4)) is None

    def test_jordan_block(self):
        C = perturbation_nondegeneracy(S1, E12)
        assert is_end_sp(S1, C) and det(C) == 0 and det(E12 + C) != 0
        # the hand example from the n = 1 discussion
        C0 = mat([[0, 0], [1, 0]])
        assert det(C0) == 0 and det(E12 + C0) == -1

    def test_random_nonzero(self):
        rng = random.Random(8)
        for _ in range(30):
            A = random_end_sp(S2, rng)
            if not any(A.flat):
                continue
            C = perturbation_nondegeneracy(S2, A, seed=rng.randrange(1000))
            assert det(C) == 0 and det(A + C) != 0

    def test_budget_exhausted(self):
        with pytest.raises(BudgetExhausted):
            perturbation_nondegeneracy(S2, regular_nilpotent(S2), budget=0)

    def test_rejects_non_end_sp(self):
        with pytest.raises(NotEndSp):
            perturbation_nondegeneracy(S1, identity(2))
