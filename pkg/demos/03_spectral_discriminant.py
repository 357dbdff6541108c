# Spectral curves and their two discriminant components

# A polynomial Higgs field theta(x) with J theta symmetric has characteristic
# polynomial y^{2n} + s_1 y^{2n-2} + ... + s_n, even in y.

import random

from sympcone.exact_linalg import Poly
from sympcone.spectral import SpectralData, classify_discriminant, hitchin, random_poly_higgs, spectral_curve
from sympcone.symplectic import SymplecticSpace

space = SymplecticSpace(2)
theta = random_poly_higgs(space, random.Random(5), degree=1)
s = hitchin(space, theta)
print([p.to_json() for p in s.s])
print(spectral_curve(s))
print(classify_discriminant(s).to_json())

# D1 means s_n has a repeated root; D2 means the curve in t = y^2 is singular
# away from t = 0.

x = Poly([0, 1])
one = Poly([1])
cases = {
    "smooth": SpectralData(2, (Poly([0, -2]), x * x - one)),
    "D1 only": SpectralData(1, (x * x,)),
    "D2 only": SpectralData(2, (Poly([-2]), one - x * x)),
    "both": SpectralData(2, (Poly([0, -2]), x * x)),
}
for name, data in cases.items():
    print(name, classify_discriminant(data).to_json())
