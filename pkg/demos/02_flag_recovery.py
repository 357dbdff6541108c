# Recovering a flag from its linear span

# U_F is the n^2-dimensional space of End_Sp matrices that push each step of
# the flag F into the previous one. Given only a basis of U_F we find F again.

from sympcone.nilcone import check_step_identities, conjugate_subspace, flag_subspace, recover_flag
from sympcone.symplectic import SymplecticSpace, random_sp, standard_flag, transport_flag

space = SymplecticSpace(3)
P = random_sp(space, 2024)
F = transport_flag(P, standard_flag(space))
L = conjugate_subspace(space, P, flag_subspace(space, standard_flag(space)).subspace)
print("dim L:", L.dim)

# A random integer combination of the basis is a rank 2n - 1 witness with
# high probability; its kernels give the flag, and U_F == L is checked exactly.

report = recover_flag(space, L, seed=3)
print("draws:", report.draws_used, "certified:", report.certified)
print(report.flag == F)

# The same subspace passes the step-by-step identities.

steps = check_step_identities(space, L, seed=3, certify=True)
print("step identities hold:", steps.ok)
