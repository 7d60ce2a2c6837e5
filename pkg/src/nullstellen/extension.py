"""Ideal extension to larger polynomial rings and the exact identities used to
prove persistence of the strong Nullstellensatz.

Nothing here is approximate: every construction re-verifies its defining
identity with exact polynomial or rational-function arithmetic before
returning.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import univariate as uni
from .errors import InvalidCertificate, MissingRootVariable, NonSplit, NotASuperset
from .groebner import Ideal, ideal_equal, is_member, multivariate_squarefree_part
from .nullstellensatz import DEFAULT_POWER_BOUND, least_power_in, radical_member, vanishing_ideal
from .ring import Polynomial, scalar, varset
from .univariate import RationalFunction

log = logging.getLogger(__name__)


def extend_ideal(a: Ideal, J: Iterable[str]) -> Ideal:
    """The extension ``a Q[J]``: same generators, bigger ring.

    New variables go to the small end of the order, so the reduced basis of
    ``a`` stays the reduced basis of the extension.
    """
    J = varset(J)
    missing = set(a.vars) - set(J)
    if missing:
        raise NotASuperset(f"{list(J)} does not contain {sorted(missing)}")
    return Ideal(a.generators, J, a.order.extend(J))


def corollary_check(a: Ideal, J: Iterable[str], probes: Sequence[Polynomial],
                    bound: int = DEFAULT_POWER_BOUND) -> bool:
    """Probe-based consistency of radical membership under extension.

    Probes living in the small ring must get the same verdict in both rings.
    Every probe's verdict in the big ring is cross-checked against bounded
    powers: a member power with a negative verdict is a contradiction; a
    positive verdict without a member power up to ``bound`` is inconclusive and
    only logged.
    """
    u = extend_ideal(a, J)
    small = set(a.vars)
    ok = True
    for f in probes:
        extra = set(f.support()) - set(u.vars)
        if extra:
            raise ValueError(f"probe {f} uses {sorted(extra)} outside {list(u.vars)}")
        big = radical_member(f, u)
        if set(f.support()) <= small and big != radical_member(f.with_vars(a.vars), a):
            log.warning("extension changed the radical verdict for %s", f)
            ok = False
        n = least_power_in(f, u, bound)
        if n is not None and not big:
            log.warning("%s^%d lies in the extension but the radical test says no", f, n)
            ok = False
        elif n is None and big:
            log.info("radical member %s has no power <= %d in the extension", f, bound)
    return ok


@dataclass(frozen=True)
class PrincipalRadicalReport:
    squarefree: Polynomial
    extension_radical: Ideal
    generators_in_radical: bool
    radical_equal: bool
    power: int

    @property
    def holds(self) -> bool:
        return self.generators_in_radical and self.radical_equal


def principal_radical_check(h: Polynomial, I: Iterable[str], J: Iterable[str]) -> PrincipalRadicalReport:
    """Full check of I V(u) = √u for ``u = ⟨h⟩ Q[J]``.

    With ``s`` the square-free part of ``h`` the candidate radical is
    ``r = ⟨s⟩ Q[J]``, radical because ``s`` is square-free. We certify
    ``r ⊆ √u`` by the Rabinowitsch test on the basis of ``r``, and
    ``√u ⊆ r`` by ``h ∈ r``; ``s^k ∈ u`` gives an explicit exponent.
    """
    I, J = varset(I), varset(J)
    a = Ideal([h], I)
    u = extend_ideal(a, J)
    s = multivariate_squarefree_part(h)
    r = extend_ideal(Ideal([s], I), J)
    closure = Ideal([g for g in r.gb if radical_member(g, u)], J, r.order)
    power = 1
    while not is_member(s ** power, u):
        power += 1
    return PrincipalRadicalReport(
        squarefree=s,
        extension_radical=r,
        generators_in_radical=len(closure.generators) == len(r.gb),
        radical_equal=ideal_equal(closure, r) and is_member(h, r),
        power=power,
    )


def cylinder_membership(f: Polynomial, X: Sequence[Mapping[str, object]], J: Iterable[str]) -> bool:
    """Does ``f`` vanish on ``X × Q^(J∖I)``? Decided by substituting each point
    of ``X`` and asking for the zero polynomial in the remaining variables."""
    J = varset(J)
    if not X:
        raise ValueError("cylinder over an empty point set")
    for x in X:
        outside = set(x) - set(J)
        if outside:
            raise NotASuperset(f"point coordinates {sorted(outside)} not in {list(J)}")
        if not f.evaluate(x).is_zero():
            return False
    return True


def cylinder_ideal(X: Sequence[Mapping[str, object]], I: Iterable[str], J: Iterable[str]) -> Ideal:
    """I(X) Q[J], the ideal the cylinder criterion should agree with."""
    return extend_ideal(vanishing_ideal(X, I), J)


@dataclass(frozen=True)
class Claim5Entry:
    z: Fraction
    lam: Fraction
    m: Polynomial
    g: Polynomial


@dataclass(frozen=True)
class Claim5Certificate:
    """Data ``(z_p, λ_p, m_p, g_p)`` with ``m_p + (t - z_p) g_p = 1`` and
    ``Σ λ_p g_p = 0``, for a distinguished variable ``t``."""

    var: str
    entries: tuple[Claim5Entry, ...]

    @classmethod
    def build(cls, var: str, entries: Iterable[tuple]) -> Claim5Certificate:
        return cls(var, tuple(Claim5Entry(scalar(z), scalar(lam), m, g) for z, lam, m, g in entries))

    def validate(self) -> None:
        if not self.entries:
            raise InvalidCertificate("no entries")
        zs = [e.z for e in self.entries]
        if len(set(zs)) != len(zs):
            raise InvalidCertificate("z values are not pairwise distinct")
        t = Polynomial.variable(self.var)
        total = Polynomial.zero()
        for k, e in enumerate(self.entries):
            if e.lam == 0:
                raise InvalidCertificate(f"entry {k}: lambda is zero")
            if e.m + (t - e.z) * e.g != 1:
                raise InvalidCertificate(f"entry {k}: m + (t - z)*g != 1")
            total = total + e.lam * e.g
        if not total.is_zero():
            raise InvalidCertificate("sum of lambda_p * g_p is not zero")


def _others_product(t: Polynomial, zs: Sequence[Fraction], p: int) -> Polynomial:
    out = Polynomial.constant(1)
    for q, z in enumerate(zs):
        if q != p:
            out = out * (t - z)
    return out


def claim5_construct(cert: Claim5Certificate) -> Polynomial:
    """Build ``g = Σ λ_p Π_{q≠p} (t - z_q)`` and verify that it equals
    ``Σ [λ_p Π_{q≠p} (t - z_q)] m_p`` and does not vanish at ``z_1``."""
    cert.validate()
    t = Polynomial.variable(cert.var)
    zs = [e.z for e in cert.entries]
    weights = [e.lam * _others_product(t, zs, p) for p, e in enumerate(cert.entries)]
    g = sum(weights, Polynomial.zero())
    rearranged = sum((w * e.m for w, e in zip(weights, cert.entries)), Polynomial.zero())
    if g != rearranged:
        raise AssertionError("rearrangement identity failed")
    at_first = g({cert.var: zs[0]})
    expected = cert.entries[0].lam
    for z in zs[1:]:
        expected *= zs[0] - z
    if at_first != expected or at_first == 0:
        raise AssertionError(f"g(z_1) = {at_first}, expected nonzero {expected}")
    return g


def claim5_in_ideal(cert: Claim5Certificate, g: Polynomial) -> bool:
    """Membership of ``g`` in the ideal generated by the ``m_p``."""
    vars = varset(set(g.vars).union(*(e.m.vars for e in cert.entries)) | {cert.var})
    return is_member(g.with_vars(vars), Ideal([e.m for e in cert.entries], vars))


@dataclass(frozen=True)
class LinearFactorization:
    """``scale * Π (s - root)^k`` with nonzero integer exponents."""

    scale: Fraction
    factors: Mapping[Fraction, int]
    var: str = "s"

    def reconstruct(self) -> RationalFunction:
        out = RationalFunction(self.scale, 1, self.var)
        for root, k in self.factors.items():
            out = out * RationalFunction([-root, 1], 1, self.var) ** k
        return out


def claim3_factor(r: RationalFunction) -> LinearFactorization:
    """Split a rational function into linear factors over Q."""
    if r.is_zero():
        raise NonSplit("the zero function has no factorization")
    lc_n, roots_n, rest_n = uni.split_rational(r.num)
    _, roots_d, rest_d = uni.split_rational(r.den)
    for label, rest in (("numerator", rest_n), ("denominator", rest_d)):
        if len(rest) > 1:
            raise NonSplit(f"{label} keeps the factor {uni.from_coeffs(rest, r.var)} without rational roots")
    factors: dict[Fraction, int] = dict(roots_n)
    for root, k in roots_d.items():
        factors[root] = factors.get(root, 0) - k
    factors = {root: k for root, k in sorted(factors.items()) if k}
    fac = LinearFactorization(lc_n, factors, r.var)
    if fac.reconstruct() != r:
        raise AssertionError("factorization does not reconstruct the input")
    return fac


def substitute(f: Polynomial, t_j: str, var_of_root: Mapping[Fraction, str], s: str = "s") -> RationalFunction:
    """Image of ``f`` under ``t_j ↦ s``, ``u_a ↦ 1/(s - a)`` and every other variable ↦ 0."""
    images = {t_j: RationalFunction([0, 1], 1, s)}
    for root, name in var_of_root.items():
        images[name] = RationalFunction(1, [-scalar(root), 1], s)
    out = RationalFunction(0, 1, s)
    for m, c in f:
        term = RationalFunction(c, 1, s)
        for v, e in m.items():
            if v not in images:
                term = RationalFunction(0, 1, s)
                break
            term = term * images[v] ** e
        out = out + term
    return out


def claim3_preimage(fac: LinearFactorization, t_j: str,
                    var_of_root: Mapping[Fraction, str]) -> tuple[Polynomial, Polynomial]:
    """Polynomials ``f`` in ``t_j`` and monomial ``g`` whose product maps to the
    factored function under :func:`substitute`."""
    var_of_root = {scalar(k): v for k, v in var_of_root.items()}
    t = Polynomial.variable(t_j)
    f = Polynomial.constant(fac.scale, [t_j])
    g = Polynomial.constant(1)
    for root, k in fac.factors.items():
        if k > 0:
            f = f * (t - root) ** k
        else:
            if root not in var_of_root:
                raise MissingRootVariable(f"no variable assigned to the pole at {root}")
            g = g * Polynomial.variable(var_of_root[root]) ** (-k)
    used = {r: v for r, v in var_of_root.items() if fac.factors.get(r, 0) < 0}
    if substitute(f * g, t_j, used, fac.var) != fac.reconstruct():
        raise AssertionError("substitution does not reproduce the rational function")
    return f, g
