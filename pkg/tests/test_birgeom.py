from fractions import Fraction

import pytest
import sympy as sp

from p1cox import (
    IndeterminacyLocus,
    NotOnHypersurface,
    OutOfRange,
    RationalPoint,
    build_matrices,
    build_presentation,
    cones,
    cox_equation,
    forward_map,
    inverse_map,
    make_ring,
)
from p1cox.birgeom import cone_subset, kernel, on_Y, on_Y_prime
from p1cox.cli import read_instance
from p1cox.verifier import s_values_at

from conftest import INSTANCES, Z1, sample_points, to_sympy

F = Fraction


def generic(d):
    """Generic coefficients: base ring Q[c0..cd], f_i = (-1)^i c_i."""
    names = tuple(f"c{i}" for i in range(d + 1))
    base = make_ring(names, [Z1.degree((1,))] * (d + 1))
    coeffs = [(-1) ** i * base.ring.var(n) for i, n in enumerate(names)]
    return cox_equation(coeffs, base, ("T1", "T2"))


# --- determinant identity --------------------------------------------------


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_det_identity_generic(d):
    eq = generic(d)
    mats = build_matrices(eq)
    ring = mats.ring
    t1, t2 = ring.var("T1"), ring.var("T2")
    expected = sum((ring.var(f"c{i}") * t1 ** (d - i) * t2**i for i in range(d + 1)), ring.zero())
    assert mats.det_M() == expected
    # independent determinant by sympy on the same symbolic matrix
    syms = sp.symbols(ring.names)
    SM = sp.Matrix([[to_sympy(e, syms) for e in row] for row in mats.M])
    assert sp.expand(SM.det() - to_sympy(expected, syms)) == 0


def test_matrix_shapes_d1_d2():
    m1 = build_matrices(generic(1))
    r = m1.ring
    assert [list(row) for row in m1.M] == [[r.var("T2"), r.var("c0")], [-r.var("T1"), r.var("c1")]]
    assert m1.minors_N() == []
    m2 = build_matrices(generic(2))
    assert len(m2.minors_N()) == 1
    pr = m2.prime_ring
    assert [str(e) for e in m2.N[0]] == ["0", "Tp1", "c0"]
    assert [str(e) for e in m2.N[2]] == ["-Tp2", "0", "c2"]
    assert pr.names[-2:] == ("Tp1", "Tp2")


def test_signed_inputs_reproduce_f(golden):
    mats = build_matrices(golden)
    assert mats.det_M() == golden.assemble()


# --- maps: documented example ----------------------------------------------

Z0 = (1, -1, 1, 1, 0)


def test_documented_forward_and_back(golden):
    mats = build_matrices(golden)
    assert mats.c_values(dict(zip(golden.base.ring.names, map(F, Z0)))) == [1, 1, 0]
    img = forward_map(mats, RationalPoint(Z0, (0, 1)))
    assert img.t == (F(-1), F(-1))
    back = inverse_map(mats, img)
    assert back.projectively_equal(RationalPoint(Z0, (0, 1)))


def test_kernel_examples():
    assert kernel([[1, 0, 1], [0, 1, 1], [0, 0, 0]]) == [[F(-1), F(-1), F(1)]]
    assert kernel([[0, -1, 1], [1, -1, 1], [1, 0, 0]]) == [[F(0), F(1), F(1)]]


def test_map_errors(golden):
    mats = build_matrices(golden)
    z_bad = (0, 0, 1, 0, 0)  # T1 = T2 = T5 = 0: every coefficient vanishes
    with pytest.raises(IndeterminacyLocus):
        forward_map(mats, RationalPoint(z_bad, (1, 1)))
    with pytest.raises(NotOnHypersurface):
        forward_map(mats, RationalPoint(Z0, (1, 1)))
    with pytest.raises(NotOnHypersurface):
        forward_map(mats, RationalPoint((1, 1, 1, 1, 1), (0, 1)))  # off the quadric
    with pytest.raises(IndeterminacyLocus):
        inverse_map(mats, RationalPoint(Z0, (0, 0)))
    with pytest.raises(NotOnHypersurface):
        inverse_map(mats, RationalPoint(Z0, (1, -1)))


# --- sample points ---------------------------------------------------------


INSTANCE_FILES = ["quadric_threefold_d1.json", "quadric_threefold_d2.json", "quadric_threefold_d3.json", "torsion_polynomial_ring_d1.json"]


@pytest.mark.parametrize("name", INSTANCE_FILES)
def test_round_trips(name):
    eq = read_instance(str(INSTANCES / name)).equation
    mats = build_matrices(eq)
    pts = sample_points(eq)
    assert len(pts) >= 3
    for pt in pts:
        assert on_Y(mats, pt)
        img = forward_map(mats, pt)
        assert on_Y_prime(mats, img)
        for m in mats.minors_N():
            vals = dict(zip(eq.base.ring.names, img.z))
            vals.update(zip(mats.prime_vars, img.t))
            assert m.evaluate(vals) == 0
        back = inverse_map(mats, img)
        assert back.projectively_equal(pt)
        assert on_Y(mats, back)
        # forward after inverse, starting from Y'
        assert forward_map(mats, back).projectively_equal(img)


def test_projective_scaling_is_ignored(golden):
    mats = build_matrices(golden)
    img = forward_map(mats, RationalPoint(Z0, (0, 7)))
    assert img.normalized().t == (F(1), F(1))
    assert img.projectively_equal(RationalPoint(Z0, (-1, -1)))
    assert inverse_map(mats, RationalPoint(Z0, (F(-3, 2), F(-3, 2)))).normalized().t == (0, 1)


def test_point_json_roundtrip():
    pt = RationalPoint((F(1, 2), -3), (0, F(5, 7)))
    js = pt.to_json()
    assert js == {"t": ["0", "5/7"], "z": ["1/2", "-3"]}
    assert RationalPoint.from_json(js) == pt


# --- cones -----------------------------------------------------------------

CASE1 = ("unique small Q-factorial modification", "fibration onto P^1")


@pytest.mark.parametrize(
    "d,m,case",
    [(1, 3, 2), (2, 3, 1), (3, 3, 3), (2, 4, 1), (3, 4, 1), (4, 4, 3), (1, 5, 2)],
)
def test_cone_cases(d, m, case):
    rep = cones(d, m)
    assert rep.case == case
    assert rep.eff == ((1, 0), (-1, 1))
    if case == 1:
        assert rep.mov == rep.eff and rep.nef == ((1, 0), (0, 1))
        assert rep.descriptors == CASE1 + (f"dominant rational fibration to P^{d - 1}",)
    elif case == 2:
        assert rep.mov == rep.nef == ((1, 0), (0, 1))
        assert rep.descriptors == ("divisorial contraction", "fibration onto P^1")
    else:
        assert rep.mov == rep.nef == rep.eff
        assert rep.descriptors == (f"fibration onto P^{d - 1}", "fibration onto P^1")
    assert rep.nested()
    assert cone_subset(rep.nef, rep.mov) and cone_subset(rep.mov, rep.eff)


@pytest.mark.parametrize("d,m", [(4, 3), (0, 3), (2, 2), (-1, 5)])
def test_cone_out_of_range(d, m):
    with pytest.raises(OutOfRange):
        cones(d, m)


def test_cone_subset_is_strict_where_expected():
    assert not cone_subset(((1, 0), (-1, 1)), ((1, 0), (0, 1)))


# --- cross-module consistency ----------------------------------------------


@pytest.mark.parametrize("name", INSTANCE_FILES)
def test_kernel_matches_s_assignments(name):
    eq = read_instance(str(INSTANCES / name)).equation
    mats = build_matrices(eq)
    P = build_presentation(eq)
    for pt in sample_points(eq):
        img = forward_map(mats, pt)
        vals = dict(zip(eq.base.ring.names, pt.z))
        vals.update(zip(eq.p1_vars, pt.t))
        s = s_values_at(P, vals, "T2")
        # t'_i = (-1)^(i+1) S_i for i = 1..d (zero-based k below)
        assert list(img.t) == [(-1) ** k * s[k] for k in range(eq.d)]


def test_kernel_matches_s_assignments_golden_point(golden):
    P = build_presentation(golden)
    vals = dict(zip(golden.base.ring.names, map(F, Z0)))
    vals.update({"T6": F(0), "T7": F(1)})
    assert s_values_at(P, vals, "T2") == [F(-1), F(1)]
