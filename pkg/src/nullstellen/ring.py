"""Sparse multivariate polynomials over the rationals, and monomial orders.

Variables are plain strings. A *varset* is a duplicate-free tuple of names
sorted by the canonical global order (plain string comparison), so that
polynomial rings over nested variable sets agree on how variables compare.
Individual monomial orders may override that order with an explicit variable
sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping

from .errors import VariableOutsideOrder, ZeroPolynomial

__all__ = [
    "Monomial",
    "MonomialOrder",
    "Polynomial",
    "grevlex",
    "grlex",
    "lex",
    "block",
    "scalar",
    "varset",
]

ORDER_KINDS = ("lex", "grlex", "grevlex")


def scalar(value) -> Fraction:
    """Coerce ``value`` to an exact rational. Floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def varset(names: Iterable[str] = ()) -> tuple[str, ...]:
    if isinstance(names, str):
        names = (names,)
    return tuple(sorted(set(names)))


class Monomial:
    """A power product, stored as sorted ``(variable, exponent)`` pairs with
    positive exponents only."""

    __slots__ = ("_exps", "_hash")

    def __init__(self, exps: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        items = exps.items() if isinstance(exps, Mapping) else exps
        cleaned: dict[str, int] = {}
        for var, e in items:
            if e < 0:
                raise ValueError(f"negative exponent {e} for {var}")
            if e:
                cleaned[var] = cleaned.get(var, 0) + e
        self._exps = tuple(sorted(cleaned.items()))
        self._hash = hash(self._exps)

    @classmethod
    def _raw(cls, exps: tuple[tuple[str, int], ...]) -> Monomial:
        m = cls.__new__(cls)
        m._exps = exps
        m._hash = hash(exps)
        return m

    @classmethod
    def one(cls) -> Monomial:
        return _ONE

    @classmethod
    def from_dense(cls, variables: tuple[str, ...], exps: tuple[int, ...]) -> Monomial:
        return cls._raw(tuple(sorted((v, e) for v, e in zip(variables, exps) if e)))

    def dense(self, variables: tuple[str, ...]) -> tuple[int, ...]:
        """Exponent vector aligned with ``variables``."""
        lookup = dict(self._exps)
        out = tuple(lookup.pop(v, 0) for v in variables)
        if lookup:
            raise VariableOutsideOrder(f"variables {sorted(lookup)} not in {list(variables)}")
        return out

    def items(self) -> tuple[tuple[str, int], ...]:
        return self._exps

    def variables(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self._exps)

    def exponent(self, var: str) -> int:
        for v, e in self._exps:
            if v == var:
                return e
        return 0

    def degree(self) -> int:
        return sum(e for _, e in self._exps)

    def is_one(self) -> bool:
        return not self._exps

    def __mul__(self, other: Monomial) -> Monomial:
        if not isinstance(other, Monomial):
            return NotImplemented
        d = dict(self._exps)
        for v, e in other._exps:
            d[v] = d.get(v, 0) + e
        return Monomial._raw(tuple(sorted(d.items())))

    def divides(self, other: Monomial) -> bool:
        theirs = dict(other._exps)
        return all(theirs.get(v, 0) >= e for v, e in self._exps)

    def __truediv__(self, other: Monomial) -> Monomial:
        if not other.divides(self):
            raise ValueError(f"{other!r} does not divide {self!r}")
        d = dict(self._exps)
        for v, e in other._exps:
            d[v] -= e
        return Monomial(d)

    def lcm(self, other: Monomial) -> Monomial:
        d = dict(self._exps)
        for v, e in other._exps:
            d[v] = max(d.get(v, 0), e)
        return Monomial._raw(tuple(sorted(d.items())))

    def __pow__(self, n: int) -> Monomial:
        if n < 0:
            raise ValueError("negative power of a monomial")
        return Monomial._raw(tuple((v, e * n) for v, e in self._exps) if n else ())

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self._exps == other._exps

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if not self._exps:
            return "Monomial(1)"
        body = "*".join(v if e == 1 else f"{v}^{e}" for v, e in self._exps)
        return f"Monomial({body})"


_ONE = Monomial()


def _grevlex_key(exps: tuple[int, ...]) -> tuple:
    return (sum(exps), tuple(-e for e in reversed(exps)))


def _grlex_key(exps: tuple[int, ...]) -> tuple:
    return (sum(exps), exps)


def _lex_key(exps: tuple[int, ...]) -> tuple:
    return exps


_KEYS = {"lex": _lex_key, "grlex": _grlex_key, "grevlex": _grevlex_key}


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on a fixed variable sequence (earlier = bigger).

    ``kind`` is one of lex, grlex, grevlex or block. A block order compares
    the leading ``len(eliminated)`` variables first (with ``inner``), and only
    on a tie the remaining ones, which makes it an elimination order for the
    leading block.
    """

    kind: str
    variables: tuple[str, ...]
    eliminated: tuple[str, ...] = ()
    inner: str = "grevlex"

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "eliminated", tuple(self.eliminated))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variables in order: {self.variables}")
        if self.kind == "block":
            if self.inner not in ORDER_KINDS:
                raise ValueError(f"unknown inner order {self.inner!r}")
            if self.variables[: len(self.eliminated)] != self.eliminated:
                raise ValueError("block order must list eliminated variables first")
        elif self.kind not in ORDER_KINDS:
            raise ValueError(f"unknown monomial order {self.kind!r}")
        elif self.eliminated:
            raise ValueError("only block orders have an eliminated block")

    @classmethod
    def named(cls, name: str, variables: Iterable[str]) -> MonomialOrder:
        return cls(name, tuple(variables))

    @property
    def kept(self) -> tuple[str, ...]:
        return self.variables[len(self.eliminated):]

    def dense_key(self):
        """Sort key on exponent vectors aligned with :attr:`variables`."""
        if self.kind != "block":
            return _KEYS[self.kind]
        k = len(self.eliminated)
        inner = _KEYS[self.inner]

        def key(exps, k=k, inner=inner):
            return (inner(exps[:k]), inner(exps[k:]))

        return key

    def key(self, m: Monomial):
        return self.dense_key()(m.dense(self.variables))

    def compare(self, u: Monomial, v: Monomial) -> int:
        """-1, 0 or 1 as ``u`` is smaller than, equal to or bigger than ``v``."""
        key = self.dense_key()
        a, b = key(u.dense(self.variables)), key(v.dense(self.variables))
        return (a > b) - (a < b)

    def restrict(self, variables: Iterable[str]) -> MonomialOrder:
        """The induced order on a subset of the variables."""
        keep = set(variables)
        seq = tuple(v for v in self.variables if v in keep)
        if keep - set(seq):
            raise VariableOutsideOrder(f"{sorted(keep - set(seq))} not in order")
        if self.kind != "block":
            return MonomialOrder(self.kind, seq)
        elim = tuple(v for v in self.eliminated if v in keep)
        if not elim:
            return MonomialOrder(self.inner, seq)
        return MonomialOrder("block", seq, elim, self.inner)

    def extend(self, new: Iterable[str]) -> MonomialOrder:
        """Append new variables at the small end of the sequence."""
        extra = tuple(v for v in varset(new) if v not in self.variables)
        return MonomialOrder(self.kind, self.variables + extra, self.eliminated, self.inner)


def lex(*variables: str) -> MonomialOrder:
    return MonomialOrder("lex", variables)


def grlex(*variables: str) -> MonomialOrder:
    return MonomialOrder("grlex", variables)


def grevlex(*variables: str) -> MonomialOrder:
    return MonomialOrder("grevlex", variables)


def block(eliminate: Iterable[str], keep: Iterable[str], inner: str = "grevlex") -> MonomialOrder:
    elim = tuple(eliminate)
    return MonomialOrder("block", elim + tuple(keep), elim, inner)


class Polynomial:
    """Immutable sparse polynomial with :class:`~fractions.Fraction` coefficients.

    ``vars`` is the ambient varset; it always contains every variable that
    actually occurs. Equality and hashing look at the terms only, so the same
    polynomial viewed in a bigger ring compares equal.
    """

    __slots__ = ("terms", "vars", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None, vars: Iterable[str] = ()):
        clean: dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            if not isinstance(m, Monomial):
                m = Monomial(m)
            c = scalar(c)
            if c:
                total = clean.get(m, 0) + c
                if total:
                    clean[m] = total
                else:
                    del clean[m]
        support = {v for m in clean for v in m.variables()}
        self.terms = clean
        self.vars = varset(support.union(varset(vars)))
        self._hash = None

    @classmethod
    def _make(cls, terms: dict[Monomial, Fraction], vars: tuple[str, ...]) -> Polynomial:
        p = cls.__new__(cls)
        p.terms = terms
        p.vars = vars
        p._hash = None
        return p

    @classmethod
    def zero(cls, vars: Iterable[str] = ()) -> Polynomial:
        return cls._make({}, varset(vars))

    @classmethod
    def constant(cls, c, vars: Iterable[str] = ()) -> Polynomial:
        c = scalar(c)
        return cls._make({_ONE: c} if c else {}, varset(vars))

    @classmethod
    def variable(cls, name: str, vars: Iterable[str] = ()) -> Polynomial:
        return cls._make({Monomial._raw(((name, 1),)): Fraction(1)}, varset(set(vars) | {name}))

    @classmethod
    def from_dense(cls, variables: tuple[str, ...], terms: Mapping[tuple[int, ...], Fraction],
                   vars: Iterable[str] = ()) -> Polynomial:
        out = {Monomial.from_dense(variables, e): c for e, c in terms.items() if c}
        return cls._make(out, varset(set(vars) | set(variables)))

    def to_dense(self, variables: tuple[str, ...]) -> dict[tuple[int, ...], Fraction]:
        return {m.dense(variables): c for m, c in self.terms.items()}

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ONE in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get(_ONE, Fraction(0))

    def support(self) -> tuple[str, ...]:
        """Variables that actually occur."""
        return varset(v for m in self.terms for v in m.variables())

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((m.degree() for m in self.terms), default=-1)

    def degree_in(self, var: str) -> int:
        return max((m.exponent(var) for m in self.terms), default=-1)

    def leading_term(self, order: MonomialOrder) -> tuple[Monomial, Fraction]:
        if not self.terms:
            raise ZeroPolynomial("the zero polynomial has no leading term")
        key = order.dense_key()
        seq = order.variables
        m = max(self.terms, key=lambda mono: key(mono.dense(seq)))
        return m, self.terms[m]

    def leading_monomial(self, order: MonomialOrder) -> Monomial:
        return self.leading_term(order)[0]

    def leading_coefficient(self, order: MonomialOrder) -> Fraction:
        return self.leading_term(order)[1]

    def sorted_terms(self, order: MonomialOrder) -> list[tuple[Monomial, Fraction]]:
        """Terms in strictly decreasing order."""
        key = order.dense_key()
        seq = order.variables
        return sorted(self.terms.items(), key=lambda t: key(t[0].dense(seq)), reverse=True)

    def monic(self, order: MonomialOrder) -> Polynomial:
        if not self.terms:
            return self
        return self * (1 / self.leading_coefficient(order))

    # -- ring structure ----------------------------------------------------

    def _coerce(self, other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            return other
        try:
            return Polynomial.constant(scalar(other))
        except TypeError:
            return None

    def _merged_vars(self, other: Polynomial) -> tuple[str, ...]:
        if self.vars == other.vars or not other.vars:
            return self.vars
        if not self.vars:
            return other.vars
        return varset(self.vars + other.vars)

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            total = out.get(m, 0) + c
            if total:
                out[m] = total
            else:
                out.pop(m, None)
        return Polynomial._make(out, self._merged_vars(other))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial._make({m: -c for m, c in self.terms.items()}, self.vars)

    def __pos__(self) -> Polynomial:
        return self

    def __sub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        vars = self._merged_vars(other)
        if other.is_constant():
            c = other.constant_term()
            if not c:
                return Polynomial._make({}, vars)
            return Polynomial._make({m: a * c for m, a in self.terms.items()}, vars)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                total = out.get(m, 0) + c1 * c2
                if total:
                    out[m] = total
                else:
                    out.pop(m, None)
        return Polynomial._make(out, vars)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Polynomial:
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        result = Polynomial.constant(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- substitution --------------------------------------------------------

    def evaluate(self, assignment: Mapping[str, object]) -> Polynomial:
        """Substitute exact values for some variables.

        Variables not mentioned stay symbolic; the result lives over the
        remaining variables of :attr:`vars`.
        """
        values = {v: scalar(c) for v, c in assignment.items()}
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            rest = []
            for v, e in m.items():
                if v in values:
                    c = c * values[v] ** e
                else:
                    rest.append((v, e))
            if not c:
                continue
            mono = Monomial._raw(tuple(rest))
            total = out.get(mono, 0) + c
            if total:
                out[mono] = total
            else:
                out.pop(mono, None)
        return Polynomial._make(out, tuple(v for v in self.vars if v not in values))

    def __call__(self, assignment: Mapping[str, object]) -> Fraction:
        """Full evaluation at a point; every occurring variable must be assigned."""
        result = self.evaluate(assignment)
        if not result.is_constant():
            raise ValueError(f"unassigned variables {list(result.support())}")
        return result.constant_term()

    def derivative(self, var: str) -> Polynomial:
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            e = m.exponent(var)
            if e:
                lowered = ((v, k - 1) if v == var else (v, k) for v, k in m.items())
                mono = Monomial._raw(tuple(p for p in lowered if p[1]))
                out[mono] = out.get(mono, 0) + c * e
        return Polynomial._make({m: c for m, c in out.items() if c}, self.vars)

    def with_vars(self, vars: Iterable[str]) -> Polynomial:
        """The same polynomial viewed over a (larger) varset."""
        vars = varset(vars)
        missing = set(self.support()) - set(vars)
        if missing:
            raise ValueError(f"variables {sorted(missing)} are not in {list(vars)}")
        return Polynomial._make(self.terms, vars)

    # -- dunder plumbing -----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        try:
            c = scalar(other)
        except TypeError:
            return NotImplemented
        return self.is_constant() and self.constant_term() == c

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_term())
            else:
                self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        from .parser import print_poly

        return print_poly(self, MonomialOrder("grevlex", self.vars))

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r}, vars={list(self.vars)})"
