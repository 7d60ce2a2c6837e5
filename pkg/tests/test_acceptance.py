"""Acceptance run: eleven exact checks, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py`` (the lines appear in the terminal
summary) or directly with ``python tests/test_acceptance.py``. Every corpus is
seeded; every comparison is an exact identity over Q.
"""

from __future__ import annotations

import itertools
import json
import logging
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corpus import planted_member, random_ideal_gens, random_point, random_poly  # noqa: E402
from oracles import macaulay_member  # noqa: E402

from nullstellen.cli import run  # noqa: E402
from nullstellen.errors import InvalidCertificate, NonSplit, NotCheckable  # noqa: E402
from nullstellen.extension import (  # noqa: E402
    Claim5Certificate, claim3_factor, claim3_preimage, claim5_construct, claim5_in_ideal, corollary_check,
    cylinder_membership, extend_ideal, principal_radical_check, substitute,
)
from nullstellen.groebner import Ideal, groebner_basis, is_member, normal_form, s_polynomial  # noqa: E402
from nullstellen.nullstellensatz import (  # noqa: E402
    VarietyResult, check_statement_f, least_power_in, point_ideal, radical_member, solvable, strong_nss_check,
    vanishing_ideal, variety_points,
)
from nullstellen.parser import parse_poly, print_poly  # noqa: E402
from nullstellen.ring import MonomialOrder, Polynomial  # noqa: E402
from nullstellen.univariate import RationalFunction  # noqa: E402

RESULTS: dict[int, str] = {}
GOLDEN = Path(__file__).parent / "golden"
XYZ = ("x", "y", "z")


def record(n: int, title: str, ok: bool, detail: str) -> bool:
    line = f"criterion {n:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    RESULTS[n] = line
    print(line)
    return ok


# -- corpora ---------------------------------------------------------------

def membership_corpus(seed: int = 2024, count: int = 50):
    """Ideals ``<l^2, g...>`` with probes: a planted member, a random
    polynomial, the linear form ``l`` and a multiple of it."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        vars = XYZ[:rng.randint(2, 3)]
        lin = random_poly(rng, vars, 1, 3)
        while lin.degree() < 1:
            lin = random_poly(rng, vars, 1, 3)
        gens = [lin ** 2] + random_ideal_gens(rng, vars, rng.randint(1, 2))
        probes = [planted_member(rng, gens, vars, 6), random_poly(rng, vars, rng.randint(0, 6), 4), lin,
                  lin * random_poly(rng, vars, 2, 2)]
        out.append((vars, gens, probes))
    return out


# -- criteria --------------------------------------------------------------

def criterion_1():
    rng = random.Random(1)
    start = time.perf_counter()
    bad = proper = largest = 0
    kinds = ("lex", "grlex", "grevlex")
    for k in range(200):
        n = rng.choice((1, 2, 2, 3, 3, 3))
        vars = XYZ[:n]
        order = MonomialOrder(kinds[k % 3], vars)
        gens = [random_poly(rng, vars, rng.randint(1, 3), rng.randint(2, 4))
                for _ in range(rng.randint(max(1, n - 1), n))]
        G = list(groebner_basis(Ideal(gens, vars, order)))
        ok = all(normal_form(g, G, order).is_zero() for g in gens)
        ok = ok and all(normal_form(s_polynomial(f, g, order), G, order).is_zero()
                        for f, g in itertools.combinations(G, 2))
        bad += not ok
        proper += not G[0].is_constant()
        largest = max(largest, len(G))
    elapsed = time.perf_counter() - start
    return bad == 0 and elapsed < 60, (f"200 ideals ({proper} proper, largest basis {largest}), "
                                       f"{bad} failures, {elapsed:.1f} s (limit 60 s)")


def criterion_2():
    checked = agree = 0
    for vars, gens, probes in membership_corpus():
        a = Ideal(gens, vars)
        for f in probes:
            checked += 1
            agree += is_member(f, a) == macaulay_member(f, gens, vars, 6)
    return agree == checked, f"{agree}/{checked} probes agree with the degree-6 Macaulay oracle on 50 instances"


def criterion_3():
    rng = random.Random(3)
    examples = solvable(Ideal([parse_poly("x^2 + 1", ["x"])])) and not solvable(
        Ideal([parse_poly("x", ["x"]), parse_poly("x - 1", ["x"])]))
    units = 0
    for _ in range(30):
        vars = XYZ[:rng.randint(1, 3)]
        g1, g2 = random_ideal_gens(rng, vars, 2)
        h1, h2 = random_poly(rng, vars, 2), random_poly(rng, vars, 2)
        c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
        units += not solvable(Ideal([g1, g2, c - h1 * g1 - h2 * g2], vars))
    planted = 0
    for _ in range(30):
        vars = XYZ[:rng.randint(1, 3)]
        p = random_point(rng, vars)
        gens = [g - g(p) for g in random_ideal_gens(rng, vars, rng.randint(1, 3))]
        gens = [g for g in gens if not g.is_zero()] or [Polynomial.variable(vars[0], vars) - p[vars[0]]]
        assert all(g(p) == 0 for g in gens)
        planted += solvable(Ideal(gens, vars))
    ok = examples and units == 30 and planted == 30
    return ok, f"examples {'ok' if examples else 'WRONG'}, unit ideals unsolvable {units}/30, planted zeros solvable {planted}/30"


def criterion_4():
    rng = random.Random(44)
    passed = excluded = failed = 0
    for _ in range(30):
        vars = XYZ[:rng.randint(1, 3)]
        target = rng.randint(1, 4)
        X = []
        while len(X) < target:
            p = random_point(rng, vars)
            if p not in X:
                X.append(p)
        G = list(vanishing_ideal(X, vars).gb)
        cross = [random_poly(rng, vars, 1, 2) * G[i] * G[j] for i, j in itertools.combinations(range(len(G)), 2)]
        a = Ideal([g ** 2 for g in G] + cross[:2], vars)
        try:
            ok = strong_nss_check(a)
        except NotCheckable:
            excluded += 1
            continue
        found = variety_points(a)
        key = lambda q: tuple(q[v] for v in vars)
        ok = ok and found.tag == VarietyResult.POINTS and sorted(map(key, found.points)) == sorted(map(key, X))
        passed += ok
        failed += not ok
    return failed == 0 and passed >= 20, f"{passed} pass, {failed} fail, {excluded} excluded as not checkable (need >= 20)"


def criterion_5():
    contradictions = inconclusive = conclusive = 0
    for vars, gens, probes in membership_corpus():
        a = Ideal(gens, vars)
        for f in probes:
            rad = radical_member(f, a)
            n = least_power_in(f, a, 12)
            if n is not None:
                conclusive += 1
                contradictions += not rad
            elif rad:
                inconclusive += 1
            else:
                conclusive += 1
    return contradictions == 0, (f"{contradictions} contradictions; {conclusive} conclusive, "
                                 f"{inconclusive} radical members without a power <= 12")


def criterion_6():
    rng = random.Random(6)
    names = ("a", "b", "c", "d")
    checks = bad = 0
    for _ in range(20):
        vars = names[:rng.randint(1, 4)]
        x = random_point(rng, vars)
        m = point_ideal(x, vars)
        for k in range(len(vars) + 1):
            for sub in itertools.combinations(vars, k):
                checks += 1
                bad += check_statement_f(m, sub) != (True, {v: x[v] for v in sub})
    return bad == 0, f"20 points, {checks} variable subsets, {bad} mismatches"


def split_product(rng, vars):
    h = Polynomial.constant(rng.choice([1, 2, -3, Fraction(1, 2)]), vars)
    for _ in range(rng.randint(1, 3)):
        lin = Polynomial.zero(vars)
        while lin.degree() < 1:
            lin = random_poly(rng, vars, 1, 3, bound=3)
        h = h * lin ** rng.randint(1, 3)
    return h


def criterion_7():
    rng = random.Random(7)
    I, J = ("x", "y"), ("w", "x", "y", "z")
    logging.getLogger("nullstellen").setLevel(logging.ERROR)
    full = probes_ok = 0
    for _ in range(20):
        h = split_product(rng, I)
        full += principal_radical_check(h, I, J).holds
        a = Ideal([h], I)
        u = extend_ideal(a, J)
        for k in range(10):
            if k < 4:
                f = random_poly(rng, I, 3)
                if k % 2:
                    f = f * h
                ok = (is_member(f, a) == is_member(f, u)) and corollary_check(a, J, [f])
            else:
                f = random_poly(rng, J, 2) * (h if k % 3 == 0 else random_poly(rng, I, 1))
                ok = corollary_check(a, J, [f])
            probes_ok += ok
    return full == 20 and probes_ok == 200, f"principal identity {full}/20, probe checks {probes_ok}/200"


def criterion_8():
    rng = random.Random(8)
    agree = members = 0
    for k in range(100):
        I = ("x",) if k % 2 else ("x", "y")
        J = I + ("z",) if k % 3 else I + ("w", "z")
        X = []
        for _ in range(rng.randint(1, 3)):
            p = random_point(rng, I, bound=2)
            if p not in X:
                X.append(p)
        u = extend_ideal(vanishing_ideal(X, I), sorted(J))
        f = random_poly(rng, tuple(sorted(J)), 3)
        if rng.random() < 0.5:
            f = f * rng.choice(u.generators)
        verdict = cylinder_membership(f, X, sorted(J))
        members += verdict
        agree += verdict == is_member(f, u)
    return agree == 100, f"{agree}/100 agree ({members} members, {100 - members} non-members)"


def random_certificate(rng):
    vars = ("t", "x")
    t = Polynomial.variable("t", vars)
    r = rng.randint(2, 4)
    zs = rng.sample([Fraction(n, d) for n in range(-6, 7) for d in (1, 2, 3)], r)
    zs = list(dict.fromkeys(zs))
    lams = [Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3)) for _ in zs]
    gs = [random_poly(rng, vars, 2, 3) for _ in zs[:-1]]
    gs.append(-sum((lam * g for lam, g in zip(lams, gs)), Polynomial.zero(vars)) * (1 / lams[-1]))
    entries = [(z, lam, 1 - (t - z) * g, g) for z, lam, g in zip(zs, lams, gs)]
    return Claim5Certificate.build("t", entries)


def corrupt(rng, cert: Claim5Certificate, kind: int) -> Claim5Certificate:
    entries = [(e.z, e.lam, e.m, e.g) for e in cert.entries]
    z, lam, m, g = entries[0]
    if kind == 0:
        entries[1] = (z,) + entries[1][1:]
    elif kind == 1:
        entries[0] = (z, Fraction(0), m, g)
    elif kind == 2:
        entries[0] = (z, lam, m + parse_poly("x", ["t", "x"]), g)
    else:
        k = next(i for i, e in enumerate(entries) if not e[3].is_zero())
        e = entries[k]
        entries[k] = (e[0], e[1] + 1 if e[1] != -1 else Fraction(2), e[2], e[3])
    return Claim5Certificate.build("t", entries)


def criterion_9():
    rng = random.Random(9)
    good = 0
    certs = []
    for _ in range(50):
        cert = random_certificate(rng)
        certs.append(cert)
        g = claim5_construct(cert)
        t = Polynomial.variable("t")
        zs = [e.z for e in cert.entries]
        weights = []
        for p, e in enumerate(cert.entries):
            w = Polynomial.constant(e.lam)
            for q, z in enumerate(zs):
                if q != p:
                    w = w * (t - z)
            weights.append(w)
        identity = g == sum((w * e.m for w, e in zip(weights, cert.entries)), Polynomial.zero())
        good += identity and g({"t": zs[0]}) != 0 and claim5_in_ideal(cert, g)
    rejected = 0
    for k in range(10):
        try:
            claim5_construct(corrupt(rng, certs[k], k % 4))
        except InvalidCertificate:
            rejected += 1
    return good == 50 and rejected == 10, f"valid certificates {good}/50, corrupted rejected {rejected}/10"


def criterion_10():
    rng = random.Random(10)
    s = Polynomial.variable("s")
    good = 0
    for _ in range(50):
        scale = Fraction(rng.choice([-5, -2, -1, 1, 3, 7]), rng.randint(1, 4))
        roots = rng.sample([Fraction(n, d) for n in range(-5, 6) for d in (1, 2)], rng.randint(1, 4))
        roots = list(dict.fromkeys(roots))
        exps = {a: rng.choice([-3, -2, -1, 1, 2, 3]) for a in roots}
        num, den = Polynomial.constant(scale), Polynomial.constant(1)
        for a, k in exps.items():
            if k > 0:
                num = num * (s - a) ** k
            else:
                den = den * (s - a) ** -k
        r = RationalFunction(num, den, "s")
        fac = claim3_factor(r)
        names = {a: f"u{i}" for i, a in enumerate(roots) if exps[a] < 0}
        f, g = claim3_preimage(fac, "t", names)
        good += (fac.scale == scale and dict(fac.factors) == exps and fac.reconstruct() == r
                 and substitute(f * g, "t", names) == r)
    non_split = 0
    for k in range(10):
        irreducible = parse_poly(rng.choice(["s^2 + 1", "s^2 - 2", "s^2 + s + 1", "2*s^2 - 3", "s^3 - 2"]), ["s"])
        extra = (s - rng.randint(-3, 3)) ** rng.randint(0, 2)
        r = RationalFunction(irreducible * extra, 1, "s") if k % 2 else RationalFunction(extra, irreducible, "s")
        try:
            claim3_factor(r)
        except NonSplit:
            non_split += 1
    return good == 50 and non_split == 10, f"split round trips {good}/50, non-split rejected {non_split}/10"


def criterion_11():
    rng = random.Random(11)
    kinds = ("lex", "grlex", "grevlex")
    round_trips = 0
    for k in range(500):
        vars = XYZ[:rng.randint(1, 3)]
        order = MonomialOrder(kinds[k % 3], vars)
        f = random_poly(rng, vars, rng.randint(0, 6), rng.randint(1, 8), bound=40, nonzero=k % 50 != 0,
                        fractions=True)
        text = print_poly(f, order)
        round_trips += parse_poly(text, vars) == f and print_poly(parse_poly(text, vars), order) == text
    cases = json.loads((GOLDEN / "transcripts.json").read_text(encoding="utf-8"))
    exact = 0
    import os
    here = os.getcwd()
    os.chdir(GOLDEN)
    try:
        for case in cases:
            exact += run(case["argv"]) == (case["exit"], case["stdout"], case["stderr"])
    finally:
        os.chdir(here)
    ok = round_trips == 500 and exact == len(cases)
    return ok, f"parse(print(f)) = f for {round_trips}/500, golden transcripts byte-exact {exact}/{len(cases)}"


CRITERIA = [
    (1, "Groebner basis correctness", criterion_1),
    (2, "membership vs Macaulay oracle", criterion_2),
    (3, "weak Nullstellensatz", criterion_3),
    (4, "strong Nullstellensatz", criterion_4),
    (5, "Rabinowitsch vs power oracle", criterion_5),
    (6, "contraction shape of point ideals", criterion_6),
    (7, "radical persists under extension", criterion_7),
    (8, "cylinder vanishing ideal", criterion_8),
    (9, "linear-relation certificates", criterion_9),
    (10, "linear factorization round trip", criterion_10),
    (11, "parser round trip and CLI transcripts", criterion_11),
]


def evaluate(n, title, fn) -> bool:
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure, reported on its line
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    return record(n, title, ok, detail)


@pytest.mark.parametrize("n, title, fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(n, title, fn):
    assert evaluate(n, title, fn), RESULTS[n]


if __name__ == "__main__":
    results = [evaluate(*c) for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
