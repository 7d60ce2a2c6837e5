"""Univariate algorithms over the rationals and the field of rational functions.

Internally a univariate polynomial is a list of Fraction coefficients, lowest
degree first, with no trailing zeros (the zero polynomial is ``[]``).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm

from .errors import DivisionByZero, ZeroPolynomial
from .ring import Monomial, Polynomial, scalar

Dense = list  # list[Fraction], lowest degree first


def _trim(a: Dense) -> Dense:
    while a and not a[-1]:
        a.pop()
    return a


def to_coeffs(f: Polynomial, var: str) -> Dense:
    """Coefficient list of ``f`` in ``var``; ``f`` must not involve other variables."""
    others = set(f.support()) - {var}
    if others:
        raise ValueError(f"expected a polynomial in {var} only, found {sorted(others)}")
    out = [Fraction(0)] * (f.degree_in(var) + 1)
    for m, c in f.terms.items():
        out[m.exponent(var)] = c
    return _trim(out)


def from_coeffs(coeffs: Dense, var: str) -> Polynomial:
    terms = {}
    for k, c in enumerate(coeffs):
        if c:
            terms[Monomial._raw(((var, k),)) if k else Monomial.one()] = Fraction(c)
    return Polynomial._make(terms, (var,))


def univariate_var(f: Polynomial) -> str | None:
    """The single variable of ``f``, or None for constants."""
    sup = f.support()
    if len(sup) > 1:
        raise ValueError(f"not univariate: involves {list(sup)}")
    return sup[0] if sup else None


def add(a: Dense, b: Dense) -> Dense:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def neg(a: Dense) -> Dense:
    return [-c for c in a]


def mul(a: Dense, b: Dense) -> Dense:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def scale(a: Dense, c: Fraction) -> Dense:
    return _trim([x * c for x in a]) if c else []


def divmod_(a: Dense, b: Dense) -> tuple[Dense, Dense]:
    if not b:
        raise DivisionByZero("polynomial division by zero")
    r = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv = 1 / b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        c = r[-1] * inv
        q[shift] = c
        for i, y in enumerate(b):
            r[shift + i] -= c * y
        r.pop()
        _trim(r)
    return _trim(q), r


def monic(a: Dense) -> Dense:
    return [c / a[-1] for c in a] if a else []


def gcd_(a: Dense, b: Dense) -> Dense:
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0."""
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def derivative(a: Dense) -> Dense:
    return _trim([k * c for k, c in enumerate(a)][1:])


def evaluate(a: Dense, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def squarefree(a: Dense) -> Dense:
    if not a:
        raise ZeroPolynomial("square-free part of the zero polynomial")
    return monic(divmod_(a, gcd_(a, derivative(a)))[0])


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def _integer_coeffs(a: Dense) -> list[int]:
    den = lcm(*(c.denominator for c in a))
    ints = [int(c * den) for c in a]
    g = gcd(*ints)
    return [x // g for x in ints]


def rational_roots(a: Dense) -> dict[Fraction, int]:
    """Rational roots with multiplicities (rational root theorem)."""
    if not a:
        raise ZeroPolynomial("roots of the zero polynomial")
    roots: dict[Fraction, int] = {}
    a = list(a)
    zeros = 0
    while a and not a[0]:
        a.pop(0)
        zeros += 1
    if zeros:
        roots[Fraction(0)] = zeros
    if len(a) <= 1:
        return roots
    core = squarefree(a)
    ints = _integer_coeffs(core)
    candidates = set()
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            candidates.add(Fraction(p, q))
            candidates.add(Fraction(-p, q))
    for r in sorted(candidates):
        if evaluate(core, r) == 0:
            mult = 0
            rest = a
            lin = [-r, Fraction(1)]
            while True:
                quo, rem = divmod_(rest, lin)
                if rem:
                    break
                mult += 1
                rest = quo
            roots[r] = mult
    return dict(sorted(roots.items()))


def split_rational(a: Dense) -> tuple[Fraction, dict[Fraction, int], Dense]:
    """Factor ``a = lc * prod (x - r)^k * rest`` with ``rest`` monic and free of
    rational roots."""
    roots = rational_roots(a)
    rest = monic(a)
    for r, k in roots.items():
        for _ in range(k):
            rest = divmod_(rest, [-r, Fraction(1)])[0]
    return a[-1], roots, rest


# -- Polynomial-level wrappers ------------------------------------------------


def squarefree_part(f: Polynomial) -> Polynomial:
    """``f / gcd(f, f')`` made monic, for univariate ``f``."""
    if f.is_zero():
        raise ZeroPolynomial("square-free part of the zero polynomial")
    var = univariate_var(f)
    if var is None:
        return Polynomial.constant(1, f.vars)
    return from_coeffs(squarefree(to_coeffs(f, var)), var).with_vars(f.vars)


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd of two polynomials in (at most) one common variable."""
    sup = set(f.support()) | set(g.support())
    if len(sup) > 1:
        raise ValueError(f"not univariate: involves {sorted(sup)}")
    if f.is_zero() and g.is_zero():
        return Polynomial.zero(f.vars)
    if not sup:
        return Polynomial.constant(1, f.vars)
    var = sup.pop()
    return from_coeffs(gcd_(to_coeffs(f, var), to_coeffs(g, var)), var)


class RationalFunction:
    """An element of Q(s): numerator/denominator in the single variable ``var``,
    coprime, with a monic denominator."""

    __slots__ = ("num", "den", "var")

    def __init__(self, numerator=0, denominator=1, var: str = "s"):
        num = self._coeffs(numerator, var)
        den = self._coeffs(denominator, var)
        if not den:
            raise DivisionByZero("rational function with zero denominator")
        self.var = var
        self.num, self.den = self._normalize(num, den)

    @staticmethod
    def _coeffs(value, var: str) -> Dense:
        if isinstance(value, Polynomial):
            return to_coeffs(value, var)
        if isinstance(value, list):
            return _trim([scalar(c) for c in value])
        c = scalar(value)
        return [c] if c else []

    @staticmethod
    def _normalize(num: Dense, den: Dense) -> tuple[Dense, Dense]:
        if not num:
            return [], [Fraction(1)]
        g = gcd_(num, den)
        if len(g) > 1:
            num = divmod_(num, g)[0]
            den = divmod_(den, g)[0]
        lc = den[-1]
        return [c / lc for c in num], [c / lc for c in den]

    @classmethod
    def _raw(cls, num: Dense, den: Dense, var: str) -> RationalFunction:
        r = cls.__new__(cls)
        r.var = var
        r.num, r.den = cls._normalize(num, den)
        return r

    @property
    def numerator(self) -> Polynomial:
        return from_coeffs(self.num, self.var)

    @property
    def denominator(self) -> Polynomial:
        return from_coeffs(self.den, self.var)

    def is_zero(self) -> bool:
        return not self.num

    def _lift(self, other) -> RationalFunction | None:
        if isinstance(other, RationalFunction):
            if other.var != self.var:
                raise ValueError(f"mixing Q({self.var}) and Q({other.var})")
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other, 1, self.var)
        try:
            return RationalFunction(scalar(other), 1, self.var)
        except TypeError:
            return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        num = add(mul(self.num, other.den), mul(other.num, self.den))
        return RationalFunction._raw(num, mul(self.den, other.den), self.var)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(neg(self.num), self.den, self.var)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return RationalFunction._raw(mul(self.num, other.num), mul(self.den, other.den), self.var)

    __rmul__ = __mul__

    def inverse(self) -> RationalFunction:
        if not self.num:
            raise DivisionByZero("inverse of the zero rational function")
        return RationalFunction._raw(self.den, self.num, self.var)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> RationalFunction:
        if n < 0:
            return self.inverse() ** -n
        result = RationalFunction(1, 1, self.var)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        try:
            other = self._lift(other)
        except ValueError:
            return False
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((tuple(self.num), tuple(self.den), self.var))

    def __repr__(self) -> str:
        return f"RationalFunction(({self.numerator}) / ({self.denominator}))"
