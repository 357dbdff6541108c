import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sympcone.exact_linalg import (
    Poly,
    Subspace,
    charpoly,
    det,
    diag,
    ext_trace,
    identity,
    inverse,
    kernel,
    mat,
    poly_gcd,
    rank,
    rational_roots,
    resultant,
    rref,
    squarefree_part,
    subresultant_last,
    to_fraction,
    xgcd,
)
from sympcone.oracles import laplace_det, leibniz_det, minors_rank, sylvester_resultant
from sympcone.symplectic import SymplecticSpace, random_sp
from sympcone.nilcone import random_end_sp, regular_nilpotent

F = Fraction
x = Poly([0, 1])

# 6x6 of rank 4; rank frozen from the all-minors oracle
RANK4 = [
    ["4", "8", "-3", "3", "-4", "4"],
    ["9", "-1", "-9", "10", "-9", "-1"],
    ["2", "29/2", "-11", "6", "-15/2", "-9"],
    ["-3", "13/2", "-19/2", "11/2", "-17/2", "0"],
    ["15/2", "9/2", "0", "5/2", "-2", "11/2"],
    ["0", "-6", "4", "-2", "3", "2"],
]

# (a, b, resultant) frozen from Sylvester determinants
RESULTANTS = [
    ([1, 0, 1], [-2, 1], 5),
    ([3, -1, 0, 2], [1, 4, -2], -584),
    ([-5, 0, 0, 1], [2, 7, 1, 1, -1], 198),
    ([0, 1], [1, 0, 0, 1], 1),
]


def rationals(max_den=4, bound=6):
    return st.builds(F, st.integers(-bound, bound), st.integers(1, max_den))


def matrices(rows, cols):
    return st.lists(st.lists(rationals(), min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def polys(max_deg=5):
    return st.lists(st.integers(-5, 5), max_size=max_deg + 1).map(Poly)


class TestScalars:
    def test_fraction_lowest_terms(self):
        r = to_fraction("6/4")
        assert (r.numerator, r.denominator) == (3, 2)

    def test_float_rejected(self):
        with pytest.raises(TypeError):
            to_fraction(0.5)


class TestRref:
    def test_identity(self):
        R, r, piv = rref(identity(2))
        assert r == 2 and piv == [0, 1]

    def test_single_pivot(self):
        _, r, piv = rref(mat([[0, 1], [0, 0]]))
        assert r == 1 and piv == [1]

    def test_rank_matches_minor_oracle(self):
        M = mat(RANK4)
        assert rank(M) == 4

    def test_rank_matches_minors_random(self):
        rng = random.Random(3)
        for _ in range(15):
            M = [[F(rng.randint(-2, 2)) for _ in range(4)] for _ in range(4)]
            if rng.random() < 0.5:
                M[3] = [a + b for a, b in zip(M[0], M[1])]
            assert rank(mat(M)) == minors_rank(M)

    @given(matrices(3, 4))
    @settings(max_examples=60, deadline=None)
    def test_idempotent_and_row_order(self, rows):
        R, r, _ = rref(mat(rows))
        R2, _, _ = rref(R)
        assert (R == R2).all()
        R3, _, _ = rref(mat(list(reversed(rows))))
        assert (R == R3).all()

    @given(matrices(3, 5))
    @settings(max_examples=60, deadline=None)
    def test_rank_nullity(self, rows):
        M = mat(rows)
        assert rank(M) + kernel(M).dim == 5


class TestKernel:
    def test_nilpotent_jordan_block(self):
        assert kernel(mat([[0, 1], [0, 0]])) == Subspace(2, [[1, 0]])

    def test_identity_kernel_zero(self):
        assert kernel(identity(3)).dim == 0

    def test_regular_nilpotent_kernel_dims(self):
        N = regular_nilpotent(SymplecticSpace(2))
        P = identity(4)
        for i in range(1, 5):
            P = P @ N
            assert kernel(P).dim == i
            assert 4 - minors_rank(P.tolist()) == i


class TestCharpoly:
    def test_identity(self):
        assert charpoly(identity(3)) == Poly([-1, 1], var="t") ** 3

    def test_rotation(self):
        assert charpoly(mat([[0, 1], [-1, 0]])) == Poly([1, 0, 1], var="t")

    def test_symplectic_symmetric_has_even_terms_only(self):
        space = SymplecticSpace(2)
        rng = random.Random(5)
        for _ in range(10):
            A = random_end_sp(space, rng)
            p = charpoly(A)
            assert p.coeff(3) == 0 and p.coeff(1) == 0
            # Laplace expansion of det(tI - A) as the oracle
            t = Poly([0, 1], var="t")
            M = [[(t if i == j else Poly([], var="t")) - A[i, j] for j in range(4)] for i in range(4)]
            assert laplace_det(M, Poly([], var="t")) == p

    def test_conjugation_invariance(self):
        rng = random.Random(8)
        for _ in range(5):
            A = mat([[rng.randint(-3, 3) for _ in range(4)] for _ in range(4)])
            P = random_sp(SymplecticSpace(2), rng)
            assert charpoly(P @ A @ inverse(P)) == charpoly(A)

    def test_matches_ext_traces(self):
        rng = random.Random(9)
        A = mat([[rng.randint(-3, 3) for _ in range(5)] for _ in range(5)])
        p = charpoly(A)
        for k in range(6):
            assert p.coeff(5 - k) == (-1) ** k * ext_trace(A, k)


class TestExtTrace:
    def test_binomial(self):
        assert ext_trace(identity(4), 2) == 6

    def test_zeroth(self):
        assert ext_trace(mat([[2, 7], [1, 3]]), 0) == 1

    def test_principal_minors(self):
        assert ext_trace(diag([1, 2, 3, 4]), 2) == 35

    def test_top_is_det(self):
        G = [[3, 4, 3, 3, 4], [-1, -2, 4, 3, -2], [-3, 3, 0, -2, -3], [4, -4, 2, 3, -2], [-4, 4, -3, -4, -4]]
        assert ext_trace(mat(G), 5) == det(mat(G)) == -680

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            ext_trace(identity(2), 3)


class TestDet:
    @given(matrices(4, 4))
    @settings(max_examples=40, deadline=None)
    def test_against_leibniz(self, rows):
        assert det(mat(rows)) == leibniz_det(rows)

    def test_inverse_singular(self):
        with pytest.raises(ZeroDivisionError):
            inverse(mat([[1, 2], [2, 4]]))


class TestPoly:
    def test_gcd_examples(self):
        assert poly_gcd(x * x - 1, x - 1) == x - 1
        assert poly_gcd(x ** 2, x ** 3) == x ** 2

    def test_gcd_monic(self):
        assert poly_gcd(2 * x + 4, 3 * x + 6) == x + 2

    @pytest.mark.parametrize("a,b,expected", RESULTANTS)
    def test_resultant_frozen(self, a, b, expected):
        assert resultant(Poly(a), Poly(b)) == expected

    def test_resultant_two_zero_rejected(self):
        with pytest.raises(ValueError):
            resultant(Poly([]), Poly([]))

    @given(polys(4), polys(4))
    @settings(max_examples=80, deadline=None)
    def test_resultant_sylvester(self, a, b):
        if not a and not b:
            return
        r = resultant(a, b)
        assert r == sylvester_resultant(list(a.coeffs), list(b.coeffs))

    @given(polys(5), polys(5))
    @settings(max_examples=80, deadline=None)
    def test_gcd_divides_and_resultant_zero(self, a, b):
        g = poly_gcd(a, b)
        if not a and not b:
            assert not g
            return
        assert not (a % g) and not (b % g)
        if a.degree > 0 and b.degree > 0:
            assert (resultant(a, b) == 0) == (g.degree > 0)

    @given(polys(5), polys(5))
    @settings(max_examples=50, deadline=None)
    def test_xgcd_bezout(self, a, b):
        if not a and not b:
            return
        g, s, t = xgcd(a, b)
        assert s * a + t * b == g

    def test_squarefree_part(self):
        b = (x - 1) ** 2 * (x + 2)
        assert squarefree_part(b) == (x - 1) * (x + 2)

    def test_rational_roots(self):
        assert rational_roots((2 * x - 1) * (x + 3) * (x * x + 1)) == [F(-3), F(1, 2)]

    def test_subresultant_last_of_square(self):
        t = Poly([0, 1], var="t")
        q = (t - 1) ** 2
        last = subresultant_last(q, q.derivative())
        assert last.degree == 1 and not (q % last.monic())

    def test_nested_coefficients(self):
        # Res_t(t^2 - x, 2t) = -4x over Q[x]
        t2 = Poly([-x, 0, 1], var="t")
        assert resultant(t2, t2.derivative()) == -4 * x

    def test_json_round_trip(self):
        p = Poly([F(1, 2), 0, -3])
        assert p.to_json() == ["1/2", "0", "-3"]
        assert Poly.from_json(p.to_json()) == p


class TestSubspace:
    def test_sum(self):
        assert Subspace(3, [[1, 0, 0]]) + Subspace(3, [[0, 1, 0]]) == Subspace(3, [[1, 0, 0], [0, 1, 0]])

    def test_self_intersection(self):
        W = Subspace(4, [[1, 2, 0, 1], [0, 1, 1, 1]])
        assert W & W == W

    def test_dimension_formula(self):
        rng = random.Random(21)
        for _ in range(50):
            a = [[rng.randint(-2, 2) for _ in range(5)] for _ in range(rng.randint(0, 4))]
            b = [[rng.randint(-2, 2) for _ in range(5)] for _ in range(rng.randint(0, 4))]
            W1, W2 = Subspace(5, a), Subspace(5, b)
            assert (W1 + W2).dim + (W1 & W2).dim == W1.dim + W2.dim

    def test_canonical_basis(self):
        W1 = Subspace(3, [[1, 1, 0], [0, 1, 1]])
        W2 = Subspace(3, [[2, 3, 1], [1, 0, -1]])
        assert W1 == W2 and W1.basis == W2.basis
        for row, p in zip(W1.basis, W1.pivots):
            assert row[p] == 1

    def test_annihilator_under_form(self):
        J = SymplecticSpace(1).J
        assert Subspace(2, [[1, 0]]).annihilator_under(J) == Subspace(2, [[1, 0]])

    def test_ambient_mismatch(self):
        with pytest.raises(ValueError):
            Subspace(2, [[1, 0]]) + Subspace(3, [[1, 0, 0]])

    def test_contains(self):
        W = Subspace(3, [[1, 2, 3]])
        assert W.contains((2, 4, 6)) and (1, 0, 0) not in W
