"""Univariate polynomials with exact coefficients.

``Poly`` stores coefficients in ascending degree with no trailing zeros, so
the zero polynomial has an empty coefficient tuple.  Coefficients are usually
Fractions, but they may themselves be ``Poly`` objects in another variable:
``Poly([Poly([0, 1], var="x"), 1], var="t")`` is ``t + x``.  Two polynomials
combine as polynomials only when their ``var`` agrees; anything else is
treated as a scalar coefficient.
"""

from fractions import Fraction
from math import gcd as igcd, lcm as ilcm

from .matrix import to_fraction


def _is_scalar(x):
    return isinstance(x, (int, Fraction))


def _coerce_coeff(c):
    if isinstance(c, Poly):
        return c
    return to_fraction(c)


class Poly:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var="x"):
        cs = [_coerce_coeff(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def monomial(cls, k, c=1, var="x"):
        return cls([0] * k + [c], var=var)

    @classmethod
    def constant(cls, c, var="x"):
        return cls([c], var=var)

    @classmethod
    def from_roots(cls, roots, var="x"):
        p = cls([1], var=var)
        for r in roots:
            p = p * cls([-to_fraction(r), 1], var=var)
        return p

    # -- basic accessors -------------------------------------------------

    @property
    def degree(self):
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        return f"Poly({[str(c) if _is_scalar(c) else c for c in self.coeffs]!r}, var={self.var!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            cs = f"({c})" if isinstance(c, Poly) or (mono and c.denominator != 1) else str(c)
            if mono and cs == "1":
                terms.append(mono)
            elif mono and cs == "-1":
                terms.append("-" + mono)
            else:
                terms.append(cs + ("*" + mono if mono else ""))
        return " + ".join(reversed(terms))

    # -- ring structure --------------------------------------------------

    def _same(self, other):
        return isinstance(other, Poly) and other.var == self.var

    def _lift(self, other):
        if self._same(other):
            return other
        return Poly([other], var=self.var)

    def __eq__(self, other):
        if self._same(other):
            return self.coeffs == other.coeffs
        if _is_scalar(other) or isinstance(other, Poly):
            if not other:
                return not self.coeffs
            return len(self.coeffs) == 1 and self.coeffs[0] == other
        return NotImplemented

    __hash__ = None

    def __neg__(self):
        return Poly([-c for c in self.coeffs], var=self.var)

    def __add__(self, other):
        if not (_is_scalar(other) or isinstance(other, Poly)):
            return NotImplemented
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out, var=self.var)

    __radd__ = __add__

    def __sub__(self, other):
        if not (_is_scalar(other) or isinstance(other, Poly)):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not (_is_scalar(other) or isinstance(other, Poly)):
            return NotImplemented
        if not self._same(other):
            if not other:
                return Poly([], var=self.var)
            return Poly([c * other for c in self.coeffs], var=self.var)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly([], var=self.var)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly(out, var=self.var)

    def __rmul__(self, other):
        if not other:
            return Poly([], var=self.var)
        return Poly([other * c for c in self.coeffs], var=self.var)

    def __pow__(self, k):
        result = Poly([1], var=self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        """Division by a scalar, or exact division by a polynomial."""
        if self._same(other):
            q, r = divmod(self, other)
            if r:
                raise ArithmeticError(f"{other} does not divide {self}")
            return q
        return Poly([_exact_div(c, other) for c in self.coeffs], var=self.var)

    def __divmod__(self, other):
        """Euclidean division; coefficients must live in a field."""
        if not self._same(other):
            other = Poly([other], var=self.var)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lb = other.lc
        q = [Fraction(0)] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db]
            if not c:
                continue
            f = _exact_div(c, lb)
            q[k] = f
            for j, y in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - f * y
        return Poly(q, var=self.var), Poly(rem[:db] if db > 0 else [], var=self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- calculus and structure -------------------------------------------

    def derivative(self):
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:], var=self.var)

    def map_coeffs(self, f):
        return Poly([f(c) for c in self.coeffs], var=self.var)

    def monic(self):
        if not self.coeffs:
            return self
        return self / self.lc

    def compose_neg(self):
        """p(-var)."""
        return Poly([c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)], var=self.var)

    def valuation(self):
        """Largest k with var^k dividing self (0 for the zero polynomial)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return 0

    def shift_down(self, k):
        return Poly(self.coeffs[k:], var=self.var)

    def integer_primitive(self):
        """(content, primitive integer coefficient list) for a Q-polynomial."""
        if not self.coeffs:
            return Fraction(0), []
        den = 1
        for c in self.coeffs:
            den = ilcm(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for x in ints:
            g = igcd(g, x)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), [x // g for x in ints]

    def to_json(self):
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data, var="x"):
        return cls([to_fraction(c) for c in data], var=var)


def _exact_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{b} does not divide {a}")
        return q
    if isinstance(a, Poly):
        return a / b
    if isinstance(b, Poly):
        if b.degree > 0:
            if not a:
                return Fraction(0)
            raise ArithmeticError("scalar divided by a nonconstant polynomial")
        b = b.coeffs[0]
    return a / b


def _ipoly_prem(a, b):
    """Pseudo-remainder on integer coefficient lists (ascending)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [lb * x for x in r]
        for j, y in enumerate(b):
            r[shift + j] -= lr * y
        r.pop()
        while r and r[-1] == 0:
            r.pop()
        e -= 1
    if e > 0:
        f = lb ** e
        r = [f * x for x in r]
    return r


def _iprimitive(a):
    g = 0
    for x in a:
        g = igcd(g, x)
    if a[-1] < 0:
        g = -g
    return [x // g for x in a]


def poly_gcd(a, b):
    """Monic gcd of two Q-polynomials via the primitive PRS.

    ``gcd(0, 0)`` is the zero polynomial; otherwise the result is monic.
    """
    var = a.var if isinstance(a, Poly) else b.var
    if not a and not b:
        return Poly([], var=var)
    if not a:
        return b.monic()
    if not b:
        return a.monic()
    _, x = a.integer_primitive()
    _, y = b.integer_primitive()
    if len(x) < len(y):
        x, y = y, x
    while y:
        if len(y) == 1:
            return Poly([1], var=var)
        r = _ipoly_prem(x, y)
        x, y = y, (_iprimitive(r) if r else [])
    return Poly(x, var=var).monic()


def prem(a, b):
    """Pseudo-remainder of ``a`` by ``b`` over any integral domain."""
    if not b:
        raise ZeroDivisionError("pseudo-remainder by zero")
    var = a.var
    r = a
    db = b.degree
    lb = b.lc
    e = a.degree - db + 1
    while r.degree >= db and r:
        shift = Poly.monomial(r.degree - db, 1, var=var)
        r = r * lb - shift * b * r.lc
        e -= 1
    if e > 0:
        r = r * (lb ** e)
    return r


def resultant(a, b):
    """Res(a, b) by the subresultant PRS.

    Coefficients may come from any exact integral domain (Q, or Q[x] when the
    polynomials are in another variable).  Q-polynomials are first scaled to
    integer coefficients.
    """
    if not a and not b:
        raise ValueError("resultant of two zero polynomials")
    if not a or not b:
        return _zero_like(a, b)
    if all(_is_scalar(c) for c in a.coeffs + b.coeffs):
        ca, ia = a.integer_primitive()
        cb, ib = b.integer_primitive()
        r = _subresultant_resultant(ia, ib, _int_ops)
        return ca ** b.degree * cb ** a.degree * r
    return _subresultant_resultant(list(a.coeffs), list(b.coeffs), _generic_ops(a.var))


def _zero_like(a, b):
    for p in (a, b):
        for c in p.coeffs:
            return c * 0
    return Fraction(0)


class _int_ops:
    one = 1

    @staticmethod
    def prem(x, y):
        return _ipoly_prem(x, y)

    @staticmethod
    def div(x, y):
        return _exact_div(x, y)


def _generic_ops(var):
    class ops:
        one = 1

        @staticmethod
        def prem(x, y):
            return list(prem(Poly(x, var=var), Poly(y, var=var)).coeffs)

        @staticmethod
        def div(x, y):
            return _exact_div(x, y)

    return ops


def _subresultant_resultant(A, B, ops):
    # Coefficient lists, ascending; both nonzero.
    s = 1
    da, db = len(A) - 1, len(B) - 1
    if da < db:
        A, B = B, A
        da, db = db, da
        if da % 2 == 1 and db % 2 == 1:
            s = -s
    g = h = ops.one
    while db > 0:
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        R = ops.prem(A, B)
        if not R:
            return A[0] * 0
        A = B
        denom = g * h ** delta
        B = [ops.div(c, denom) for c in R]
        g = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = ops.div(g ** delta, h ** (delta - 1))
        da, db = len(A) - 1, len(B) - 1
    # B is a nonzero constant
    if da == 0:
        return s * ops.one
    h = ops.div(B[0] ** da, h ** (da - 1)) if da > 1 else B[0]
    return s * h


def subresultant_last(a, b):
    """Last nonzero polynomial of the subresultant PRS of ``a`` and ``b``.

    Over the fraction field of the coefficient domain this is a scalar multiple
    of ``gcd(a, b)``; coefficients stay in the domain.
    """
    if not b:
        return a
    if a.degree < b.degree:
        a, b = b, a
    g = h = 1
    A, B = a, b
    while True:
        delta = A.degree - B.degree
        R = prem(A, B)
        if not R:
            return B
        denom = g * h ** delta
        A, B = B, R.map_coeffs(lambda c: _exact_div(c, denom))
        g = A.lc
        if delta == 1:
            h = g
        elif delta > 1:
            h = _exact_div(g ** delta, h ** (delta - 1))
        if B.degree == 0:
            return B


def squarefree_part(p):
    """p / gcd(p, p'), made monic."""
    if not p:
        return p
    g = poly_gcd(p, p.derivative())
    return (p / g).monic()


def xgcd(a, b):
    """Extended Euclid over Q: returns (g, s, t) with s a + t b = g monic."""
    var = a.var
    r0, r1 = a, b
    s0, s1 = Poly([1], var=var), Poly([], var=var)
    t0, t1 = Poly([], var=var), Poly([1], var=var)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    c = r0.lc
    return r0 / c, s0 / c, t0 / c


def rational_roots(p):
    """Distinct rational roots of a nonzero Q-polynomial, ascending."""
    if not p:
        raise ValueError("rational roots of the zero polynomial")
    roots = []
    v = p.valuation()
    if v:
        roots.append(Fraction(0))
        p = p.shift_down(v)
    if p.degree < 1:
        return roots
    _, ints = p.integer_primitive()
    a0, an = abs(ints[0]), abs(ints[-1])
    for num in _divisors(a0):
        for den in _divisors(an):
            if igcd(num, den) != 1:
                continue
            for sign in (1, -1):
                r = Fraction(sign * num, den)
                if p(r) == 0:
                    roots.append(r)
    return sorted(set(roots))


def _divisors(m):
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d * d != m:
                large.append(m // d)
        d += 1
    return small + large[::-1]
