"""Spectral data, spectral curves and their discriminant on an affine chart.

Sections of K^{2k} are modelled as polynomials in ``x`` of bounded degree;
a point of the Hitchin base is the tuple ``(s_2, s_4, ..., s_{2n})`` and its
spectral curve is ``y^{2n} + s_2 y^{2n-2} + ... + s_{2n} = 0``.

The discriminant splits into D1 (``s_{2n}`` has a multiple root, giving a
node on the axis y = 0) and D2 (the curve in ``t = y^2``,
``Q = t^n + s_2 t^{n-1} + ... + s_{2n}``, is singular somewhere with t != 0,
giving a pair of nodes exchanged by y -> -y).  Both tests are decided exactly
over Q; D2 runs a gcd over Q[x]/f and splits f whenever a zero divisor turns
up, so no algebraic numbers are ever constructed.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact_linalg import (
    Poly,
    Subspace,
    charpoly_coeffs,
    flatten,
    poly_gcd,
    rational_roots,
    resultant,
    squarefree_part,
    subresultant_last,
    to_fraction,
    xgcd,
)
from .symplectic import SymplecticSpace


class DegenerateSpectralData(ValueError):
    """s_{2n} is identically zero, so the curve contains y = 0 twice."""


def default_degree_bounds(n, genus=3):
    """deg s_{2k} <= 2k (2g - 2), the degree of K^{2k}."""
    return tuple(2 * k * (2 * genus - 2) for k in range(1, n + 1))


@dataclass(frozen=True)
class SpectralData:
    n: int
    s: tuple
    degree_bounds: tuple = None

    def __post_init__(self):
        s = tuple(p if isinstance(p, Poly) else Poly(p) for p in self.s)
        object.__setattr__(self, "s", s)
        if len(s) != self.n:
            raise ValueError(f"expected {self.n} coefficient polynomials, got {len(s)}")
        bounds = self.degree_bounds
        if bounds is None:
            bounds = default_degree_bounds(self.n)
        bounds = tuple(int(b) for b in bounds)
        object.__setattr__(self, "degree_bounds", bounds)
        if len(bounds) != self.n:
            raise ValueError("one degree bound per coefficient")
        for k, (p, b) in enumerate(zip(s, bounds), 1):
            if p.degree > b:
                raise ValueError(f"deg s_{2 * k} = {p.degree} exceeds its bound {b}")

    def component(self, two_k):
        return self.s[two_k // 2 - 1]

    def __eq__(self, other):
        if not isinstance(other, SpectralData):
            return NotImplemented
        return self.n == other.n and all(a == b for a, b in zip(self.s, other.s))

    __hash__ = None

    def to_json(self):
        return {"n": self.n, "s": [p.to_json() for p in self.s],
                "degree_bounds": list(self.degree_bounds)}

    @classmethod
    def from_json(cls, data):
        n = int(data["n"])
        s = tuple(Poly.from_json(c) for c in data["s"])
        bounds = data.get("degree_bounds")
        if bounds is None:
            bounds = tuple(max(b, p.degree) for b, p in zip(default_degree_bounds(n), s))
        return cls(n, s, tuple(bounds))


# -- Higgs fields with polynomial entries --------------------------------------

class PolyHiggs:
    """A 2n x 2n matrix of polynomials in x with J theta(x) symmetric for all x."""

    __slots__ = ("space", "entries")

    def __init__(self, space, entries):
        d = space.dim
        a = np.empty((d, d), dtype=object)
        rows = list(entries)
        if len(rows) != d or any(len(r) != d for r in rows):
            raise ValueError(f"Higgs field must be {d}x{d}")
        for i, row in enumerate(rows):
            for j, e in enumerate(row):
                a[i, j] = e if isinstance(e, Poly) else Poly(e)
        JA = space.J @ a
        for i in range(d):
            for j in range(i + 1, d):
                if JA[i, j] != JA[j, i]:
                    raise ValueError("theta is not symmetric-symplectic: J theta is not symmetric")
        self.space = space
        self.entries = a

    @property
    def max_degree(self):
        return max((e.degree for e in self.entries.flat), default=-1)

    def at(self, x0):
        return np.array([[e(x0) for e in row] for row in self.entries], dtype=object)

    def scaled(self, lam):
        lam = to_fraction(lam)
        return PolyHiggs(self.space, [[e * lam for e in row] for row in self.entries])

    def to_json(self):
        return {"n": self.space.n, "higgs": [[e.to_json() for e in row] for row in self.entries]}

    @classmethod
    def from_json(cls, data):
        space = SymplecticSpace(int(data["n"]))
        return cls(space, [[Poly.from_json(e) for e in row] for row in data["higgs"]])


def char_poly_in_y(theta):
    """det(y I - theta(x)) as a Poly in y with Poly-in-x coefficients."""
    coeffs = charpoly_coeffs(theta.entries, one=Poly([1]))
    return Poly(list(reversed(coeffs)), var="y")


def hitchin(space, theta):
    """(s_2, ..., s_{2n}) with s_i = tr(wedge^i theta), as polynomials in x."""
    if theta.space != space:
        raise ValueError("Higgs field lives on a different symplectic space")
    coeffs = charpoly_coeffs(theta.entries, one=Poly([1]))
    for k in range(1, space.dim + 1, 2):
        if coeffs[k]:
            raise ValueError(f"odd exterior trace tr(wedge^{k} theta) is nonzero")
    s = tuple(coeffs[2 * k] for k in range(1, space.n + 1))
    deg = max(theta.max_degree, 0)
    bounds = tuple(2 * k * deg for k in range(1, space.n + 1))
    return SpectralData(space.n, s, bounds)


def odd_exterior_traces(theta):
    coeffs = charpoly_coeffs(theta.entries, one=Poly([1]))
    return [-coeffs[k] for k in range(1, theta.space.dim + 1, 2)]


def cstar_scale(data, lam):
    """s_{2k} -> lam^{2k} s_{2k}."""
    lam = to_fraction(lam)
    s = tuple(p * lam ** (2 * k) for k, p in enumerate(data.s, 1))
    return SpectralData(data.n, s, data.degree_bounds)


def spectral_curve(data):
    """P(x, y) = y^{2n} + s_2(x) y^{2n-2} + ... + s_{2n}(x) as a Poly in y."""
    n = data.n
    coeffs = [Poly([])] * (2 * n + 1)
    coeffs[2 * n] = Poly([1])
    for k, p in enumerate(data.s, 1):
        coeffs[2 * n - 2 * k] = p
    return Poly(coeffs, var="y")


def curve_in_t(data):
    """Q(x, t) = t^n + s_2 t^{n-1} + ... + s_{2n}, so that P(x, y) = Q(x, y^2)."""
    n = data.n
    coeffs = [Poly([])] * (n + 1)
    coeffs[n] = Poly([1])
    for k, p in enumerate(data.s, 1):
        coeffs[n - k] = p
    return Poly(coeffs, var="t")


def specialize_x(P, x0):
    """P(x0, .) for a Poly whose coefficients are polynomials in x."""
    return Poly([c(x0) if isinstance(c, Poly) else c for c in P.coeffs], var=P.var)


def partial_x(P):
    return P.map_coeffs(lambda c: c.derivative() if isinstance(c, Poly) else Fraction(0))


# -- discriminant classification ------------------------------------------------

@dataclass(frozen=True)
class DiscriminantClass:
    kind: str
    d1_witness: Poly = None
    d2_witness: Poly = None

    def to_json(self):
        return {
            "class": self.kind,
            "d1_witness": None if self.d1_witness is None else self.d1_witness.to_json(),
            "d2_witness": None if self.d2_witness is None else self.d2_witness.to_json(),
        }


class _Split(Exception):
    def __init__(self, factor):
        self.factor = factor


def _is_zero_mod(c, f):
    r = c % f
    if not r:
        return True
    g = poly_gcd(r, f)
    if g.degree > 0:
        raise _Split(g)
    return False


def _inverse_mod(c, f):
    g, s, _ = xgcd(c % f, f)
    if g.degree > 0:
        raise _Split(g)
    return s % f


def _normalize_mod(p, f):
    cs = [c % f for c in p]
    while cs and _is_zero_mod(cs[-1], f):
        cs.pop()
    return cs


def _rem_mod(a, b, f):
    """a mod b over Q[x]/f with b monic and normalized."""
    a = list(a)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = a[-1]
        shift = len(a) - 1 - db
        for j, y in enumerate(b):
            a[shift + j] = (a[shift + j] - c * y) % f
        a.pop()
        a = _normalize_mod(a, f)
    return a


def _monic_mod(p, f):
    inv = _inverse_mod(p[-1], f)
    return [(c * inv) % f for c in p]


def _gcd_mod(a, b, f):
    a = _normalize_mod(a, f)
    b = _normalize_mod(b, f)
    while b:
        b = _monic_mod(b, f)
        a, b = b, _rem_mod(a, b, f)
    return _monic_mod(a, f) if a else a


def _off_axis_common_root(polys, f):
    """Whether the t-polynomials share a root with t != 0 over every root of f."""
    G = [c % f for c in polys[0].coeffs]
    for p in polys[1:]:
        G = _gcd_mod(G, [c % f for c in p.coeffs], f)
    while len(G) > 1 and _is_zero_mod(G[0], f):
        G = G[1:]
    return len(G) > 1


def d2_factors(Q, f):
    """Split squarefree f into factors on which Q has / lacks an off-axis singular point.

    Returns a list of ``(factor, has_node)``.
    """
    Qt = Q.derivative()
    Qx = partial_x(Q)
    todo = [f.monic()]
    out = []
    while todo:
        g = todo.pop()
        try:
            out.append((g, _off_axis_common_root([Q, Qt, Qx], g)))
        except _Split as e:
            h = e.factor.monic()
            todo.extend([h, (g / h).monic()])
    out.sort(key=lambda item: (item[0].degree, [str(c) for c in item[0].coeffs]))
    return out


def classify_discriminant(data):
    """Smooth, D1, D2 or Both, with witnesses.

    The D1 witness is ``gcd(s_2n, s_2n')``.  The D2 witness is the product of
    the squarefree eliminant factors over which an off-axis singular point
    exists, or the zero polynomial when Q has a repeated component (then the
    curve is singular along a whole branch and no finite eliminant exists).
    """
    top = data.s[-1]
    if not top:
        raise DegenerateSpectralData("s_2n is identically zero")
    g1 = poly_gcd(top, top.derivative())
    d1 = g1 if g1.degree > 0 else None

    Q = curve_in_t(data)
    Qt = Q.derivative()
    Qx = partial_x(Q)
    d2 = None
    r1 = resultant(Q, Qt) if Q.degree > 0 else Poly([1])
    if isinstance(r1, Poly) and not r1:
        last = subresultant_last(Q, Qt)
        if any(last.coeffs[:-1]):
            d2 = Poly([])
    elif Q.degree > 1:
        r2 = resultant(Q, Qx) if Qx else Poly([])
        r1 = r1 if isinstance(r1, Poly) else Poly([r1])
        r2 = r2 if isinstance(r2, Poly) else Poly([r2])
        g = poly_gcd(r1, r2)
        if g.degree > 0:
            hits = [h for h, node in d2_factors(Q, squarefree_part(g)) if node]
            if hits:
                w = Poly([1])
                for h in hits:
                    w = w * h
                d2 = w

    if d1 is not None and d2 is not None:
        kind = "Both"
    elif d1 is not None:
        kind = "D1"
    elif d2 is not None:
        kind = "D2"
    else:
        kind = "Smooth"
    return DiscriminantClass(kind, d1, d2)


# -- vanishing subspaces -------------------------------------------------------------

def taylor_conditions(d, x0, m):
    """m x (d+1) matrix whose j-th row evaluates p^{(j)}(x0)/j! on coefficient vectors."""
    from math import comb

    x0 = to_fraction(x0)
    return [[Fraction(comb(i, j)) * x0 ** (i - j) if i >= j else Fraction(0)
             for i in range(d + 1)] for j in range(m)]


def vanishing_subspace(d, x0, m):
    """Polynomials of degree <= d vanishing to order >= m at x0 (codimension m)."""
    if d < 0 or m < 0:
        raise ValueError("degree bound and order must be nonnegative")
    if m > d + 1:
        raise ValueError(f"order {m} exceeds d + 1 = {d + 1}")
    if m == 0:
        return Subspace.full(d + 1)
    rows = taylor_conditions(d, x0, m)
    return Subspace.kernel_of(np.array(rows, dtype=object))


def coefficient_vector(p, d):
    if p.degree > d:
        raise ValueError(f"polynomial of degree {p.degree} exceeds the bound {d}")
    return tuple(p.coeff(i) for i in range(d + 1))


@dataclass(frozen=True)
class IrrationalWitness:
    """A multiple-root factor of s_2n with no rational root."""
    factor: Poly


def d1_as_union_check(b, d=None):
    """A rational double root x0 of b, an IrrationalWitness, or None.

    When x0 is rational, b is also confirmed to lie in the vanishing subspace
    of order 2 at x0.
    """
    if not b:
        raise ValueError("the zero polynomial has no discriminant class")
    g = poly_gcd(b, b.derivative())
    if g.degree <= 0:
        return None
    roots = rational_roots(g)
    if not roots:
        return IrrationalWitness(g)
    x0 = roots[0]
    d = b.degree if d is None else d
    if not vanishing_subspace(d, x0, 2).contains(coefficient_vector(b, d)):
        raise AssertionError("double root is not a vanishing point of order 2")
    return x0


# -- trace surjectivity -------------------------------------------------------------

def product_span(matrices, length):
    """Span of all ``length``-fold products of the given matrices, flattened."""
    if not matrices:
        raise ValueError("need at least one matrix")
    d = matrices[0].shape[0]
    S = Subspace(d * d, [flatten(M) for M in matrices])
    for _ in range(length - 1):
        current = [np.array(v, dtype=object).reshape(d, d) for v in S.basis]
        S = Subspace(d * d, [flatten(P @ M) for P in current for M in matrices])
    return S


def trace_surjectivity_check(space, V, k):
    """Whether some product B_1 ... B_{2k} of elements of V has nonzero trace."""
    d = space.dim
    mats = [space.check_square(M) for M in V]
    S = product_span(mats, 2 * k)
    return any(sum(v[i * d + i] for i in range(d)) != 0 for v in S.basis)


# -- samplers -------------------------------------------------------------------------

def random_poly(rng, degree, bound=3):
    return Poly([rng.randint(-bound, bound) for _ in range(degree + 1)])


def random_spectral_data(n, rng, degree_bounds=None, bound=3):
    bounds = default_degree_bounds(n) if degree_bounds is None else tuple(degree_bounds)
    s = [random_poly(rng, b, bound) for b in bounds]
    while not s[-1]:
        s[-1] = random_poly(rng, bounds[-1], bound)
    return SpectralData(n, tuple(s), bounds)


def random_poly_higgs(space, rng, degree=4, bound=3):
    """theta = -J S(x) with S a random symmetric polynomial matrix."""
    d = space.dim
    S = np.empty((d, d), dtype=object)
    for i in range(d):
        for j in range(i, d):
            S[i, j] = S[j, i] = random_poly(rng, degree, bound)
    theta = -space.J @ S
    return PolyHiggs(space, [[e if isinstance(e, Poly) else Poly([e]) for e in row] for row in theta])


def random_rational(rng, bound=50):
    return Fraction(rng.randint(-bound * bound, bound * bound), rng.randint(1, bound))


__all__ = [
    "DegenerateSpectralData",
    "DiscriminantClass",
    "IrrationalWitness",
    "PolyHiggs",
    "SpectralData",
    "char_poly_in_y",
    "classify_discriminant",
    "cstar_scale",
    "curve_in_t",
    "d1_as_union_check",
    "default_degree_bounds",
    "hitchin",
    "random_poly_higgs",
    "random_spectral_data",
    "spectral_curve",
    "trace_surjectivity_check",
    "vanishing_subspace",
]
