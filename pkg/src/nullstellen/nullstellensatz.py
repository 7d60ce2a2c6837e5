"""Decision procedures for the Nullstellensatz statements.

Everything is computed over Q. Whether ``1`` lies in an ideal does not change
under field extension, so solvability and radical membership decided here hold
over the algebraic closure as well. Explicit point enumeration is limited to
rational points; anything else is reported, never guessed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import univariate as uni
from .errors import EmptyPointSet, NotCheckable, NotMaximal, NotUnitContraction, PartialPoint
from .groebner import Ideal, eliminate, fresh_variable, ideal_equal, intersect, is_member
from .ring import MonomialOrder, Polynomial, scalar, varset

log = logging.getLogger(__name__)

Point = dict  # dict[str, Fraction]

DEFAULT_POWER_BOUND = 12


def _as_point(x: Mapping[str, object], vars: Sequence[str]) -> dict[str, Fraction]:
    missing = [v for v in vars if v not in x]
    if missing:
        raise PartialPoint(f"point has no coordinate for {missing}")
    extra = sorted(set(x) - set(vars))
    if extra:
        raise PartialPoint(f"point has coordinates {extra} outside {list(vars)}")
    return {v: scalar(x[v]) for v in vars}


def point_ideal(x: Mapping[str, object], vars: Iterable[str] | None = None,
                order: MonomialOrder | None = None) -> Ideal:
    """The maximal ideal ⟨t - x_t⟩ of all polynomials vanishing at ``x``."""
    vars = varset(x if vars is None else vars)
    pt = _as_point(x, vars)
    gens = [Polynomial.variable(v, vars) - pt[v] for v in vars]
    return Ideal(gens, vars, order)


def solvable(a: Ideal) -> bool:
    """Whether the variety of ``a`` over the algebraic closure is nonempty."""
    return not a.gb.is_unit()


def radical_member(f: Polynomial, a: Ideal) -> bool:
    """Whether ``f`` is in the radical of ``a``: 1 ∈ a + ⟨1 - w*f⟩ for fresh ``w``."""
    extra = set(f.support()) - set(a.vars)
    if extra:
        raise ValueError(f"{f} uses variables {sorted(extra)} outside the ideal's ring")
    if f.is_zero():
        return True
    w = fresh_variable(a.vars)
    probe = 1 - Polynomial.variable(w) * f
    # Seed with the reduced basis: same ideal, usually far smaller coefficients.
    seed = a.with_order(MonomialOrder("grevlex", a.order.variables)).gb.elements
    lifted = Ideal(seed + (probe,), a.vars + (w,), MonomialOrder("grevlex", a.order.variables + (w,)))
    return lifted.gb.is_unit()


def least_power_in(f: Polynomial, a: Ideal, bound: int = DEFAULT_POWER_BOUND) -> int | None:
    """Smallest ``1 <= N <= bound`` with ``f^N`` in ``a``, else None.

    Powers are formed on normal forms, which is legitimate because the normal
    form with respect to a Groebner basis depends only on the residue class.
    """
    if f.is_zero():
        return 1
    return a.gb.least_power(f, bound)


@dataclass(frozen=True)
class VarietyResult:
    """Outcome of :func:`variety_points`: ``tag`` is one of
    ``Empty``, ``Points``, ``NonRational`` or ``NotZeroDimensional``."""

    tag: str
    points: tuple = ()
    witness: Polynomial | None = None
    variables: tuple[str, ...] = field(default=())

    EMPTY = "Empty"
    POINTS = "Points"
    NON_RATIONAL = "NonRational"
    NOT_ZERO_DIMENSIONAL = "NotZeroDimensional"


def is_zero_dimensional(a: Ideal) -> bool:
    if a.gb.is_unit():
        return True
    lms = a.gb.leading_monomials()
    return all(any(m.variables() == (v,) for m in lms) for v in a.vars)


def variety_points(a: Ideal) -> VarietyResult:
    """Enumerate V(a) when it is finite and consists of rational points.

    Uses the lex basis for the ideal's variable sequence and back-substitutes
    from the last variable upwards, taking rational roots of the gcd of the
    specialised eliminants at each step.
    """
    seq = a.order.variables
    if a.gb.is_unit():
        return VarietyResult(VarietyResult.EMPTY, variables=seq)
    la = a.with_order(MonomialOrder("lex", seq))
    if not is_zero_dimensional(la):
        return VarietyResult(VarietyResult.NOT_ZERO_DIMENSIONAL, variables=seq)

    # Bucket basis elements by their largest variable.
    layers: dict[str, list[Polynomial]] = {v: [] for v in seq}
    for g in la.gb:
        lead = next(v for v in seq if v in g.support())
        layers[lead].append(g)

    partial: list[dict[str, Fraction]] = [{}]
    for v in reversed(seq):
        extended = []
        for pt in partial:
            h: uni.Dense = []
            for g in layers[v]:
                spec = g.evaluate(pt)
                if not spec.is_zero():
                    h = uni.gcd_(h, uni.to_coeffs(spec, v))
            _, roots, rest = uni.split_rational(h)
            if len(rest) > 1:
                witness = uni.from_coeffs(uni.squarefree(rest), v)
                return VarietyResult(VarietyResult.NON_RATIONAL, witness=witness, variables=seq)
            for r in roots:
                extended.append({**pt, v: r})
        partial = extended

    points = sorted(({v: p[v] for v in seq} for p in partial), key=lambda p: tuple(p[v] for v in seq))
    for p in points:
        for g in a.generators:
            if g(p) != 0:
                raise AssertionError(f"back-substitution produced a non-zero {p} of {g}")
    return VarietyResult(VarietyResult.POINTS, tuple(points), variables=seq)


def vanishing_ideal(X: Sequence[Mapping[str, object]], vars: Iterable[str],
                    order: MonomialOrder | None = None, allow_empty: bool = False) -> Ideal:
    """I(X) as the intersection of the point ideals, folded pairwise."""
    vars = varset(vars)
    if not X:
        if not allow_empty:
            raise EmptyPointSet("vanishing ideal of an empty point set requested")
        return Ideal.unit(vars, order)
    pts = []
    for x in X:
        p = _as_point(x, vars)
        if p not in pts:
            pts.append(p)
    result = point_ideal(pts[0], vars, order)
    for p in pts[1:]:
        result = intersect(result, point_ideal(p, vars, result.order))
    return result


def maximal_point(m: Ideal) -> dict[str, Fraction]:
    """Recover ``x`` with ``m = m_x`` from the contractions ``m ∩ Q[t]``."""
    if m.gb.is_unit():
        raise NotMaximal("the unit ideal is not maximal")
    x: dict[str, Fraction] = {}
    for v in m.order.variables:
        contraction = eliminate(m, [v])
        value = _linear_root(contraction, v)
        if value is None:
            shown = ", ".join(str(g) for g in contraction.gb) or "0"
            raise NotUnitContraction(f"contraction to Q[{v}] is <{shown}>, not <{v} - c>")
        x[v] = value
    if not ideal_equal(m, point_ideal(x, m.vars)):
        raise NotMaximal(f"m_x for x = {x} is strictly smaller than the input ideal")
    return x


def _linear_root(contraction: Ideal, v: str) -> Fraction | None:
    gens = contraction.gb.elements
    if len(gens) != 1:
        return None
    (g,) = gens
    if g.support() != (v,) or g.degree() != 1:
        return None
    return -g.constant_term()


def check_statement_f(m: Ideal, subvars: Iterable[str]) -> tuple[bool, dict[str, Fraction] | None]:
    """Is ``m ∩ Q[subvars]`` generated by ``t - x_t`` for rational ``x_t``?

    Returns ``(True, x)`` restricted to ``subvars``, or ``(False, None)``. With no
    variables the contraction must be the zero ideal of Q.
    """
    subvars = varset(subvars)
    contraction = eliminate(m, subvars)
    gens = contraction.gb.elements
    if not subvars:
        return (True, {}) if not gens else (False, None)
    if len(gens) != len(subvars):
        return False, None
    x = {}
    for g in gens:
        sup = g.support()
        if len(sup) != 1 or g.degree() != 1:
            return False, None
        x[sup[0]] = -g.constant_term()
    if set(x) != set(subvars):
        return False, None
    return True, {v: x[v] for v in subvars}


def strong_nss_check(a: Ideal) -> bool:
    """Certify I(V(a)) = √a on an instance with finitely many rational points.

    ``b = I(V(a))`` is computed from the enumerated points; then every basis
    element of ``b`` must be a radical member of ``a`` and every generator of
    ``a`` must lie in ``b``.
    """
    result = variety_points(a)
    if result.tag == VarietyResult.NON_RATIONAL:
        raise NotCheckable("NonRational", f"variety has non-rational points (witness {result.witness})")
    if result.tag == VarietyResult.NOT_ZERO_DIMENSIONAL:
        raise NotCheckable("NotZeroDimensional", "variety is not finite")
    if result.tag == VarietyResult.EMPTY and solvable(a):
        raise NotCheckable("Empty-with-proper-ideal-impossible")
    b = vanishing_ideal(result.points, a.vars, a.order, allow_empty=True)
    radical_side = all(radical_member(g, a) for g in b.gb)
    vanishing_side = all(is_member(g, b) for g in a.generators)
    return radical_side and vanishing_side
