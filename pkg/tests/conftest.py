import itertools
import sys
from fractions import Fraction
from pathlib import Path

import pytest
import sympy as sp

from p1cox import (
    GradingGroup,
    Polynomial,
    RationalPoint,
    Ring,
    build_matrices,
    build_presentation,
    cox_equation,
    make_ring,
)

INSTANCES = Path(__file__).resolve().parent.parent / "instances"

Z1 = GradingGroup(1)


def quadric_ring():
    names = ("T1", "T2", "T3", "T4", "T5")
    return make_ring(names, [Z1.degree((1,))] * 5, ["T1*T2 + T3*T4 + T5^2"])


@pytest.fixture
def quadric():
    return quadric_ring()


def golden_equation(base=None):
    """f_0 = T1^3, f_1 = T2^3, f_2 = T5^3 over the quadric, P^1 variables T6, T7."""
    base = base or quadric_ring()
    coeffs = [base.parse(s) for s in ("T1^3", "T2^3", "T5^3")]
    return cox_equation(coeffs, base, ("T6", "T7"))


@pytest.fixture
def golden():
    return golden_equation()


@pytest.fixture
def golden_P(golden):
    return build_presentation(golden)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "REPORT_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)


# --- sympy oracle helpers --------------------------------------------------


def to_sympy(p, symbols=None):
    symbols = symbols or sp.symbols(p.ring.names)
    expr = sp.Integer(0)
    for m, c in p.terms.items():
        term = sp.Rational(c.numerator, c.denominator)
        for s, k in zip(symbols, m):
            term *= s**k
        expr += term
    return expr


def from_sympy(expr, ring: Ring, symbols=None):
    symbols = symbols or sp.symbols(ring.names)
    poly = sp.Poly(expr, *symbols, domain="QQ")
    return Polynomial(ring, {m: Fraction(int(c.p), int(c.q)) for m, c in poly.as_dict().items()})


def sympy_groebner(polys, ring: Ring, order="grevlex"):
    symbols = sp.symbols(ring.names)
    if not polys:
        return []
    G = sp.groebner([to_sympy(p, symbols) for p in polys], *symbols, order=order, domain="QQ")
    return [from_sympy(g, ring, symbols) for g in G.exprs]


def sympy_quotient(polys, h, ring: Ring):
    """(I : h) computed independently with sympy: eliminate t from tI + (1-t)h, divide by h."""
    symbols = sp.symbols(ring.names)
    t = sp.Symbol("tq")
    gens = [t * to_sympy(p, symbols) for p in polys] + [(1 - t) * to_sympy(h, symbols)]
    G = sp.groebner(gens, t, *symbols, order="lex", domain="QQ")
    hs = to_sympy(h, symbols)
    out = []
    for g in G.exprs:
        if not g.has(t):
            q, r = sp.div(g, hs, *symbols, domain="QQ")
            assert r == 0
            out.append(from_sympy(q, ring, symbols))
    return sympy_groebner(out, ring)


def monic_set(polys, order=None):
    from p1cox import grevlex

    order = order or grevlex()
    return {frozenset(p.monic(order).terms.items()) for p in polys if not p.is_zero()}


# --- rational points on Y, found by search ---------------------------------

F = Fraction


def _z_candidates(base):
    names = base.ring.names
    vals = range(-2, 3)
    if not base.relations:
        for z in itertools.product(vals, repeat=len(names)):
            yield tuple(map(F, z))
        return
    # the quadric T1*T2 + T3*T4 + T5^2: solve for T2
    assert [str(r) for r in base.relations] == ["T1*T2 + T3*T4 + T5^2"]
    for a, c, d, e in itertools.product(vals, repeat=4):
        if a:
            yield (F(a), F(-(c * d + e * e), a), F(c), F(d), F(e))


def sample_points(eq, n=4):
    """Rational points (t1 : t2 ; z) of Y in U with t2 != 0, found by search."""
    mats = build_matrices(eq)
    a = sp.Symbol("a")
    out = []
    for z in _z_candidates(eq.base):
        zd = dict(zip(eq.base.ring.names, z))
        c = mats.c_values(zd)
        if all(x == 0 for x in c):
            continue
        poly = sum(sp.Rational(ci.numerator, ci.denominator) * a ** (eq.d - i) for i, ci in enumerate(c))
        if poly == 0:
            continue
        for r in sp.Poly(poly, a).ground_roots():
            pt = RationalPoint(z, (F(int(r.p), int(r.q)), 1))
            if pt not in out:
                out.append(pt)
        if len(out) >= n:
            return out
    return out
