# Vanishing subspaces and trace surjectivity

# Polynomials of degree <= d vanishing to order m at x0 form a subspace of
# codimension m, cut out by Taylor conditions.

from fractions import Fraction

from sympcone.exact_linalg import Poly
from sympcone.nilcone import regular_nilpotent
from sympcone.spectral import d1_as_union_check, trace_surjectivity_check, vanishing_subspace
from sympcone.symplectic import SymplecticSpace, end_sp_matrices

for m in range(5):
    W = vanishing_subspace(4, Fraction(1, 2), m)
    print(m, W.dim, W.codim)

# A repeated rational root puts the polynomial in one of these subspaces.

x = Poly([0, 1])
b = (3 * x - 2) ** 2 * (x + 1)
print(d1_as_union_check(b))
print(d1_as_union_check((x * x - 2) ** 2))

# Products of End_Sp matrices pair surjectively with End_Sp under the trace,
# while one nilpotent alone does not.

space = SymplecticSpace(2)
print(trace_surjectivity_check(space, end_sp_matrices(space), 2))
print(trace_surjectivity_check(space, [regular_nilpotent(space)], 1))
