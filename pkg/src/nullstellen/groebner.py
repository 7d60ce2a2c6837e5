"""Buchberger's algorithm and the ideal operations built on reduced bases.

The engine works on dense exponent tuples aligned with the order's variable
sequence; :class:`~nullstellen.ring.Polynomial` is only the public face.
"""

from __future__ import annotations

import heapq
import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import VariableOutsideOrder
from .ring import Monomial, MonomialOrder, Polynomial, block, varset

log = logging.getLogger(__name__)

Exps = tuple  # tuple[int, ...]
Dense = dict  # dict[Exps, Fraction]

FRESH_PREFIX = "_w"
_fresh_counter = itertools.count()


def fresh_variable(taken: Iterable[str] = ()) -> str:
    """A new reserved variable name (``_w<n>``); user input can never spell these."""
    taken = set(taken)
    while True:
        name = f"{FRESH_PREFIX}{next(_fresh_counter)}"
        if name not in taken:
            return name


def _divides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exps, b: Exps) -> Exps:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a: Exps, b: Exps) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


def _cached_key(order: MonomialOrder):
    return lru_cache(maxsize=None)(order.dense_key())


class _Top:
    """Heap entry that pops the biggest key first."""

    __slots__ = ("k", "m")

    def __init__(self, k, m):
        self.k, self.m = k, m

    def __lt__(self, other):
        return self.k > other.k


def _divide(p: Dense, divisors: Sequence[tuple[Exps, Fraction, Dense]], key,
            quotients: list[Dense] | None = None, full: bool = True) -> Dense:
    """Multivariate division of ``p`` by ``(lm, lc, poly)`` triples, trying
    divisors in sequence order. Returns the remainder; with ``quotients`` the
    cofactors are accumulated in place."""
    p = dict(p)
    rem: Dense = {}
    # Every new term lies below the current leading one, so stale or repeated
    # heap entries are exactly those no longer present in ``p``.
    heap = [_Top(key(m), m) for m in p]
    heapq.heapify(heap)
    while heap:
        m = heapq.heappop(heap).m
        c = p.get(m)
        if c is None:
            continue
        for idx, (lm, lc, g) in enumerate(divisors):
            if _divides(lm, m):
                q = tuple(x - y for x, y in zip(m, lm))
                factor = c / lc if lc != 1 else c
                for gm, gc in g.items():
                    t = tuple(x + y for x, y in zip(gm, q))
                    old = p.get(t)
                    v = (old or 0) - factor * gc
                    if v:
                        p[t] = v
                        if old is None:
                            heapq.heappush(heap, _Top(key(t), t))
                    elif old is not None:
                        del p[t]
                if quotients is not None:
                    quotients[idx][q] = quotients[idx].get(q, 0) + factor
                break
        else:
            rem[m] = c
            del p[m]
            if not full:
                rem.update(p)
                break
    return rem


def _primitive(p: dict, lm: Exps) -> dict:
    """Divide out the content of an integer polynomial; leading coefficient > 0."""
    g = math.gcd(*p.values())
    if p[lm] < 0:
        g = -g
    if g == 1:
        return p
    return {m: c // g for m, c in p.items()}


def _integral(p: Dense) -> dict:
    """Clear denominators of a rational polynomial."""
    den = math.lcm(*(c.denominator for c in p.values()))
    return {m: int(c * den) for m, c in p.items()}


def _reduce_int(p: dict, divisors: Sequence[tuple[Exps, int, dict]], key) -> dict:
    """Fraction-free full reduction: returns a nonzero integer multiple of the
    remainder of ``p``. Content is removed every few steps to bound growth."""
    p = dict(p)
    rem: dict = {}
    steps = 0
    while p:
        m = max(p, key=key)
        c = p[m]
        for lm, lc, g in divisors:
            if _divides(lm, m):
                q = tuple(x - y for x, y in zip(m, lm))
                h = math.gcd(c, lc)
                mine, theirs = lc // h, c // h
                if mine != 1:
                    if mine == -1:
                        p = {k: -v for k, v in p.items()}
                        rem = {k: -v for k, v in rem.items()}
                    else:
                        p = {k: v * mine for k, v in p.items()}
                        rem = {k: v * mine for k, v in rem.items()}
                for gm, gc in g.items():
                    t = tuple(x + y for x, y in zip(gm, q))
                    v = p.get(t, 0) - theirs * gc
                    if v:
                        p[t] = v
                    else:
                        p.pop(t, None)
                steps += 1
                if steps % 8 == 0 and (p or rem):
                    content = math.gcd(*p.values(), *rem.values())
                    if content > 1:
                        p = {k: v // content for k, v in p.items()}
                        rem = {k: v // content for k, v in rem.items()}
                break
        else:
            rem[m] = c
            del p[m]
    return rem


def _spoly(f: dict, lf: Exps, g: dict, lg: Exps) -> dict:
    """S-polynomial of two integer polynomials, scaled to stay integral."""
    lcm = _lcm(lf, lg)
    sf = tuple(x - y for x, y in zip(lcm, lf))
    sg = tuple(x - y for x, y in zip(lcm, lg))
    a, b = f[lf], g[lg]
    h = math.gcd(a, b)
    a, b = a // h, b // h
    out: dict = {}
    for m, c in f.items():
        out[tuple(x + y for x, y in zip(m, sf))] = c * b
    for m, c in g.items():
        t = tuple(x + y for x, y in zip(m, sg))
        v = out.get(t, 0) - c * a
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def _update(G: list[int], B: list[tuple[int, int]], h: int, lms: list[Exps]):
    """Gebauer-Moeller installation of basis element ``h``: prunes new and old
    pairs with the coprimality and chain criteria."""
    lh = lms[h]
    C = [(h, g) for g in G]
    D: list[tuple[int, int]] = []
    while C:
        pair = C.pop()
        g1 = pair[1]
        l1 = _lcm(lh, lms[g1])
        if _coprime(lh, lms[g1]) or not any(
            _divides(_lcm(lh, lms[g2]), l1) for _, g2 in itertools.chain(C, D)
        ):
            D.append(pair)
    E = [(a, b) for a, b in D if not _coprime(lms[a], lms[b])]
    kept = []
    for g1, g2 in B:
        l12 = _lcm(lms[g1], lms[g2])
        if (_divides(lh, l12) and _lcm(lms[g1], lh) != l12 and _lcm(lh, lms[g2]) != l12):
            continue
        kept.append((g1, g2))
    kept.extend(E)
    G_new = [g for g in G if not _divides(lh, lms[g])]
    G_new.append(h)
    return G_new, kept


def buchberger(polys: Iterable[Dense], order: MonomialOrder) -> list[Dense]:
    """Reduced monic Groebner basis of dense polynomials, sorted by decreasing
    leading monomial. The zero ideal gives ``[]``, the unit ideal ``[{0..0: 1}]``.

    Internally every polynomial is kept primitive with integer coefficients.
    """
    n = len(order.variables)
    one = (0,) * n
    unit = [{one: Fraction(1)}]
    key = _cached_key(order)
    store: list[dict] = []
    lms: list[Exps] = []
    G: list[int] = []
    B: list[tuple[int, int]] = []

    def divisors():
        return [(lms[i], store[i][lms[i]], store[i]) for i in G]

    def install(p: dict) -> bool:
        nonlocal G, B
        lm = max(p, key=key)
        store.append(_primitive(p, lm))
        lms.append(lm)
        if lm == one:
            return True
        G, B = _update(G, B, len(store) - 1, lms)
        return False

    inputs = sorted((_integral(p) for p in polys if p), key=lambda p: key(max(p, key=key)))
    for p in inputs:
        r = _reduce_int(p, divisors(), key)
        if r and install(r):
            return unit

    while B:
        # Normal strategy: smallest lcm in the term order. For graded orders
        # this is smallest lcm degree first; for lex, degree-first blows up.
        pair = min(B, key=lambda ij: (key(_lcm(lms[ij[0]], lms[ij[1]])), ij))
        B.remove(pair)
        i, j = pair
        s = _spoly(store[i], lms[i], store[j], lms[j])
        r = _reduce_int(s, divisors(), key)
        if r and install(r):
            return unit

    # G is minimal, so no leading monomial is reducible by another element and
    # full reduction only rewrites tails.
    basis = [(lms[i], store[i]) for i in G]
    out = []
    for k, (lm, g) in enumerate(basis):
        others = [(l2, g2[l2], g2) for k2, (l2, g2) in enumerate(basis) if k2 != k]
        r = _reduce_int(g, others, key)
        inv = Fraction(1, r[lm])
        out.append((lm, {m: c * inv for m, c in r.items()}))
    out.sort(key=lambda t: key(t[0]), reverse=True)
    return [g for _, g in out]


def _zero_dimensional(lms: Sequence[Exps], n: int) -> bool:
    """Every variable has a pure power among the leading monomials."""
    pure = {i for lm in lms for i in range(n) if lm[i] and sum(lm) == lm[i]}
    return len(pure) == n


def fglm(basis: Sequence[Dense], source: MonomialOrder, target: MonomialOrder) -> list[Dense]:
    """Change of order for a zero-dimensional ideal.

    ``basis`` is the reduced basis under ``source``. Monomials are visited in
    increasing ``target`` order; the normal form of each is either independent
    of the staircase found so far (it joins the staircase) or a combination of
    it, which yields a new basis element. Both orders must share the variable
    sequence.
    """
    if source.variables != target.variables:
        raise ValueError("fglm needs orders on the same variable sequence")
    n = len(source.variables)
    one = (0,) * n
    skey, tkey = _cached_key(source), _cached_key(target)
    lms = [max(g, key=skey) for g in basis]
    if one in lms:
        return [{one: Fraction(1)}]
    if not _zero_dimensional(lms, n):
        raise ValueError("fglm needs a zero-dimensional ideal")
    divisors = [(lm, g[lm], g) for lm, g in zip(lms, basis)]
    units = [tuple(int(i == k) for i in range(n)) for k in range(n)]

    def shift(m: Exps, k: int) -> Exps:
        return tuple(a + b for a, b in zip(m, units[k]))

    # Normal forms are dense polynomials on the source normal set; products
    # with a variable go through a cached table of NF(x_k * b).
    table: dict[tuple[int, Exps], Dense] = {}

    def times(k: int, vec: Dense) -> Dense:
        out: Dense = {}
        for m, c in vec.items():
            col = table.get((k, m))
            if col is None:
                col = table[(k, m)] = _divide({shift(m, k): Fraction(1)}, divisors, skey)
            for r, v in col.items():
                out[r] = out.get(r, 0) + c * v
        return {r: v for r, v in out.items() if v}

    staircase: list[Exps] = []
    rows: list[tuple[Exps, Dense, dict[int, Fraction]]] = []  # pivot, NF row, staircase combination
    new_lms: list[Exps] = []
    result: list[Dense] = []
    candidates: dict[Exps, Dense] = {one: {one: Fraction(1)}}
    seen = {one}
    while candidates:
        m = min(candidates, key=tkey)
        nf = candidates.pop(m)
        if any(_divides(lm, m) for lm in new_lms):
            continue
        v = dict(nf)
        combo: dict[int, Fraction] = {}
        for pivot, row, rc in rows:
            c = v.get(pivot)
            if not c:
                continue
            for r, x in row.items():
                y = v.get(r, 0) - c * x
                if y:
                    v[r] = y
                else:
                    v.pop(r, None)
            for i, x in rc.items():
                combo[i] = combo.get(i, 0) - c * x
        if not v:
            # nf(m) = -sum(combo[i] * nf(staircase[i]))
            poly = {m: Fraction(1)}
            poly.update((staircase[i], x) for i, x in combo.items() if x)
            result.append(poly)
            new_lms.append(m)
            continue
        combo[len(staircase)] = Fraction(1)
        staircase.append(m)
        pivot = next(iter(v))
        inv = 1 / v[pivot]
        rows.append((pivot, {r: x * inv for r, x in v.items()}, {i: x * inv for i, x in combo.items() if x}))
        for k in range(n):
            nxt = shift(m, k)
            if nxt not in seen:
                seen.add(nxt)
                candidates[nxt] = times(k, nf)
    result.sort(key=lambda g: tkey(max(g, key=tkey)), reverse=True)
    return result


def _check_vars(polys: Iterable[Polynomial], order: MonomialOrder) -> None:
    known = set(order.variables)
    for f in polys:
        extra = set(f.support()) - known
        if extra:
            raise VariableOutsideOrder(f"variables {sorted(extra)} not covered by the order")


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    """Remainder of multivariate division of ``f`` by ``G`` (divisors tried in
    sequence order). No term of the result is divisible by a leading monomial
    of ``G``."""
    return divide(f, G, order)[1]


def divide(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder) -> tuple[list[Polynomial], Polynomial]:
    """Quotients and remainder with ``f = sum(q_i * g_i) + r``."""
    G = list(G)
    _check_vars([f, *G], order)
    seq = order.variables
    key = _cached_key(order)
    divisors = []
    for g in G:
        d = g.to_dense(seq)
        lm = max(d, key=key)
        divisors.append((lm, d[lm], d))
    quotients: list[Dense] = [{} for _ in G]
    rem = _divide(f.to_dense(seq), divisors, key, quotients)
    vars = varset(set(f.vars).union(*(g.vars for g in G)))
    return ([Polynomial.from_dense(seq, q, vars) for q in quotients],
            Polynomial.from_dense(seq, rem, vars))


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    lf, cf = f.leading_term(order)
    lg, cg = g.leading_term(order)
    lcm = lf.lcm(lg)
    left = Polynomial({lcm / lf: 1 / cf}, f.vars)
    right = Polynomial({lcm / lg: 1 / cg}, g.vars)
    return left * f - right * g


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced monic Groebner basis, sorted by decreasing leading monomial."""

    elements: tuple[Polynomial, ...]
    order: MonomialOrder

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, i) -> Polynomial:
        return self.elements[i]

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0] == 1

    def leading_monomials(self) -> list[Monomial]:
        return [g.leading_monomial(self.order) for g in self.elements]

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.elements, self.order)

    def least_power(self, f: Polynomial, bound: int) -> int | None:
        """Smallest ``1 <= N <= bound`` with ``f^N`` reducing to zero, else None.

        Powers are taken on normal forms, which only depend on residue classes.
        """
        seq = self.order.variables
        _check_vars([f], self.order)
        key = _cached_key(self.order)
        divisors = []
        for g in self.elements:
            d = g.to_dense(seq)
            lm = max(d, key=key)
            divisors.append((lm, d[lm], d))
        base = f.to_dense(seq)
        current = _divide(base, divisors, key)
        for n in range(1, bound + 1):
            if not current:
                return n
            if n < bound:
                prod: Dense = {}
                for am, ac in current.items():
                    for bm, bc in base.items():
                        t = tuple(x + y for x, y in zip(am, bm))
                        v = prod.get(t, 0) + ac * bc
                        if v:
                            prod[t] = v
                        else:
                            prod.pop(t, None)
                current = _divide(prod, divisors, key)
        return None


class Ideal:
    """A finitely generated ideal of Q[vars] together with a monomial order.

    Zero generators are dropped. The reduced basis is computed on first use
    and cached; recomputation would give the identical canonical basis, so the
    unsynchronised cache write is harmless.
    """

    def __init__(self, generators: Iterable[Polynomial] = (), vars: Iterable[str] | None = None,
                 order: MonomialOrder | None = None):
        gens = [g for g in generators if not g.is_zero()]
        support = set().union(*(g.support() for g in gens)) if gens else set()
        if vars is None:
            vars = order.variables if order is not None else support
        self.vars = varset(vars)
        extra = support - set(self.vars)
        if extra:
            raise ValueError(f"generators use undeclared variables {sorted(extra)}")
        if order is None:
            order = MonomialOrder("grevlex", self.vars)
        if set(order.variables) != set(self.vars):
            raise ValueError(f"order variables {order.variables} do not match {self.vars}")
        self.order = order
        self.generators = tuple(g.with_vars(self.vars) for g in gens)
        self._gb: GroebnerBasis | None = None

    @classmethod
    def unit(cls, vars: Iterable[str], order: MonomialOrder | None = None) -> Ideal:
        return cls([Polynomial.constant(1)], vars, order)

    @property
    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = groebner_basis(self)
        return self._gb

    def _seed(self, gb: GroebnerBasis) -> None:
        assert gb.order == self.order
        self._gb = gb

    def with_order(self, order: MonomialOrder) -> Ideal:
        if order == self.order:
            return self
        return Ideal(self.generators, self.vars, order)

    def is_unit(self) -> bool:
        return self.gb.is_unit()

    def is_zero(self) -> bool:
        return not self.generators

    def __contains__(self, f: Polynomial) -> bool:
        return is_member(f, self)

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators)
        return f"Ideal(<{gens}>, vars={list(self.vars)}, order={self.order.kind})"


GRADED_KINDS = ("grlex", "grevlex")


def groebner_basis(a: Ideal) -> GroebnerBasis:
    """Reduced basis of ``a`` under its order.

    For lex and block orders the grevlex basis comes first; when it shows the
    ideal is zero-dimensional the target basis is obtained by :func:`fglm`,
    otherwise Buchberger continues from the grevlex basis.
    """
    seq = a.order.variables
    gens = [g.to_dense(seq) for g in a.generators]
    if a.order.kind in GRADED_KINDS or not gens:
        dense = buchberger(gens, a.order)
    else:
        source = MonomialOrder("grevlex", seq)
        start = buchberger(gens, source)
        lms = [max(g, key=_cached_key(source)) for g in start]
        if _zero_dimensional(lms, len(seq)) or lms == [(0,) * len(seq)]:
            dense = fglm(start, source, a.order)
        else:
            dense = buchberger(start, a.order)
    return GroebnerBasis(tuple(Polynomial.from_dense(seq, d, a.vars) for d in dense), a.order)


def is_member(f: Polynomial, a: Ideal) -> bool:
    extra = set(f.support()) - set(a.vars)
    if extra:
        raise ValueError(f"{f} uses variables {sorted(extra)} outside the ideal's ring")
    if f.is_zero():
        return True
    return a.gb.reduce(f).is_zero()


def ideal_equal(a: Ideal, b: Ideal) -> bool:
    if set(a.vars) != set(b.vars):
        raise ValueError("ideal_equal needs ideals in the same ring")
    return a.gb.elements == b.with_order(a.order).gb.elements


def eliminate(a: Ideal, keep: Iterable[str]) -> Ideal:
    """The contraction ``a ∩ Q[keep]``, via a block order that puts the
    discarded variables first. The result's generators are its reduced basis
    for grevlex on the kept variables."""
    keep = varset(keep)
    missing = set(keep) - set(a.vars)
    if missing:
        raise ValueError(f"cannot keep {sorted(missing)}: not variables of the ideal")
    elim = tuple(v for v in a.order.variables if v not in keep)
    kept_seq = tuple(v for v in a.order.variables if v in keep)
    order = block(elim, kept_seq) if elim else MonomialOrder("grevlex", kept_seq)
    work = a.with_order(order)
    kept_set = set(keep)
    survivors = tuple(g.with_vars(keep) for g in work.gb if set(g.support()) <= kept_set)
    result = Ideal(survivors, keep, a.order.restrict(keep))
    inner = MonomialOrder("grevlex", kept_seq)
    if result.order == inner:
        result._seed(GroebnerBasis(survivors, inner))
    return result


def intersect(a: Ideal, b: Ideal) -> Ideal:
    """``a ∩ b`` by eliminating ``w`` from ``w*a + (1 - w)*b``."""
    if set(a.vars) != set(b.vars):
        raise ValueError("intersect needs ideals in the same ring")
    w = fresh_variable(a.vars)
    tw = Polynomial.variable(w)
    gens = [tw * f for f in a.generators] + [(1 - tw) * g for g in b.generators]
    lifted = Ideal(gens, a.vars + (w,), a.order.extend([w]))
    meet = eliminate(lifted, a.vars)
    return Ideal(meet.generators, a.vars, a.order)


def exact_quotient(f: Polynomial, g: Polynomial) -> Polynomial:
    """``f / g`` when ``g`` divides ``f``; raises ValueError otherwise."""
    order = MonomialOrder("grevlex", varset(set(f.vars) | set(g.vars)))
    (q,), r = divide(f, [g], order)
    if not r.is_zero():
        raise ValueError(f"{g} does not divide {f}")
    return q


def poly_lcm(f: Polynomial, g: Polynomial) -> Polynomial:
    """Least common multiple, as the generator of the principal ideal ⟨f⟩ ∩ ⟨g⟩."""
    vars = varset(set(f.vars) | set(g.vars))
    meet = intersect(Ideal([f], vars), Ideal([g], vars))
    (gen,) = meet.gb.elements
    return gen


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Multivariate gcd (monic under grevlex) as ``f*g / lcm(f, g)``."""
    vars = varset(set(f.vars) | set(g.vars))
    order = MonomialOrder("grevlex", vars)
    if f.is_zero():
        return g.monic(order)
    if g.is_zero():
        return f.monic(order)
    return exact_quotient(f * g, poly_lcm(f, g)).monic(order)


def multivariate_squarefree_part(h: Polynomial) -> Polynomial:
    """``h / gcd(h, dh/dx_1, ..., dh/dx_n)``, monic under grevlex; char 0 only."""
    from .errors import ZeroPolynomial

    if h.is_zero():
        raise ZeroPolynomial("square-free part of the zero polynomial")
    order = MonomialOrder("grevlex", h.vars)
    d = h
    for v in h.support():
        d = poly_gcd(d, h.derivative(v))
    return exact_quotient(h, d).monic(order)
