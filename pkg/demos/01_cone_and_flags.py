# Nilpotent symmetric-symplectic matrices and their flags

# Everything is exact: matrices are numpy object arrays of Fractions.

import random

from sympcone.exact_linalg import rank
from sympcone.nilcone import extract_flag, in_cone, is_smooth_point, kernel_flag_dims, random_end_sp, regular_nilpotent, tangent_codim
from sympcone.symplectic import SymplecticSpace, is_end_sp, random_sp, sp_inverse, standard_flag

space = SymplecticSpace(2)
print(space.J)

# The regular nilpotent lives in End_Sp (J A symmetric), has rank 2n - 1,
# and its kernels build the standard isotropic flag.

N = regular_nilpotent(space)
print(N)
print("End_Sp:", is_end_sp(space, N), "nilpotent:", in_cone(space, N), "rank:", rank(N))
print("kernel dims:", kernel_flag_dims(N))
print(extract_flag(space, N) == standard_flag(space))

# Conjugating by a symplectic matrix moves the flag with it.

P = random_sp(space, 7)
A = P @ N @ sp_inverse(space, P)
print("smooth:", is_smooth_point(space, A), "tangent codim:", tangent_codim(space, A))
for v in extract_flag(space, A).vectors:
    print([str(x) for x in v])

# A random element of End_Sp is almost never nilpotent, and a cube of the
# regular nilpotent is in the cone but singular.

B = random_end_sp(space, random.Random(1))
print("random element nilpotent:", in_cone(space, B))
N3 = N @ N @ N
print("N^3 nilpotent:", in_cone(space, N3), "smooth:", is_smooth_point(space, N3))
