"""Degeneracy matrices, the small modification Y --> Y' and the cone table.

With unsigned coefficients c_i = (-1)^i f_i the hypersurface Y is the locus
where the (d+1) x (d+1) matrix

    M = [[ T2,   0, ...,   0, c_0],
         [-T1,  T2, ...,   0, c_1],
         ...
         [  0, ..., -T1,  T2, c_(d-1)],
         [  0, ...,   0, -T1, c_d]]

is singular, and Y' in P^(d-1) x Z is cut out by the 3 x 3 minors of the
(d+1) x 3 matrix N with columns (0, -T'_1..-T'_d), (T'_1..T'_d, 0), (c_0..c_d).
Both kernels are solved exactly over Q at rational points.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Sequence, Tuple

from .grading import GradedRing
from .presentation import CoxEquation, InternalConsistencyError
from .ring import Polynomial, Ring

Matrix = List[List[Polynomial]]


class IndeterminacyLocus(ValueError):
    """The point lies where the map is undefined."""

    def __init__(self, message: str, locus: str):
        self.locus = locus
        super().__init__(message)


class NotOnHypersurface(ValueError):
    pass


class KernelRankUnexpected(InternalConsistencyError):
    pass


class OutOfRange(ValueError):
    pass


# ---------------------------------------------------------------------------
# exact linear algebra


def kernel(rows: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    """Basis of the right kernel of a rational matrix, by Gauss-Jordan elimination."""
    A = [[Fraction(x) for x in row] for row in rows]
    ncols = len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                k = A[i][c]
                A[i] = [a - k * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(A, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def determinant(mat: Matrix) -> Polynomial:
    """Laplace expansion along the first row; fine for the small sizes used here."""
    n = len(mat)
    if n == 1:
        return mat[0][0]
    ring = mat[0][0].ring
    total = ring.zero()
    for j in range(n):
        if mat[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def evaluate_matrix(mat: Matrix, values: Mapping[str, Fraction]) -> List[List[Fraction]]:
    return [[e.evaluate(values) for e in row] for row in mat]


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class DegeneracyMatrices:
    equation: CoxEquation
    ring: Ring          # Z-variables, T1, T2
    prime_ring: Ring    # Z-variables, T'_1..T'_d
    prime_vars: Tuple[str, ...]
    c: Tuple[Polynomial, ...]
    M: Tuple[Tuple[Polynomial, ...], ...]
    N: Tuple[Tuple[Polynomial, ...], ...]

    @property
    def d(self) -> int:
        return self.equation.d

    def det_M(self) -> Polynomial:
        return determinant([list(r) for r in self.M])

    def minors_N(self) -> List[Polynomial]:
        """All 3 x 3 minors of N (none when d = 1)."""
        rows = [list(r) for r in self.N]
        return [determinant([rows[i] for i in idx]) for idx in combinations(range(len(rows)), 3)]

    def c_values(self, z: Mapping[str, Fraction]) -> List[Fraction]:
        return [ci.evaluate(z) for ci in self.equation.unsigned()]


def build_matrices(eq: CoxEquation, prime_prefix: str = "Tp") -> DegeneracyMatrices:
    d = eq.d
    ring = eq.ambient
    prime_vars = tuple(f"{prime_prefix}{i}" for i in range(1, d + 1))
    prime_ring = eq.base.ring.extend(prime_vars)
    t1, t2 = (ring.var(n) for n in eq.p1_vars)
    c = tuple(ci.embed(ring) for ci in eq.unsigned())
    zero = ring.zero()
    M = []
    for i in range(d + 1):
        row = []
        for j in range(d):
            if i == j:
                row.append(t2)
            elif i == j + 1:
                row.append(-t1)
            else:
                row.append(zero)
        row.append(c[i])
        M.append(tuple(row))
    tp = [prime_ring.var(n) for n in prime_vars]
    cp = [ci.embed(prime_ring) for ci in eq.unsigned()]
    pz = prime_ring.zero()
    N = []
    for i in range(d + 1):
        first = pz if i == 0 else -tp[i - 1]
        second = tp[i] if i < d else pz
        N.append((first, second, cp[i]))
    mats = DegeneracyMatrices(eq, ring, prime_ring, prime_vars, c, tuple(M), tuple(N))
    expected = ring.zero()
    for i, ci in enumerate(c):
        expected = expected + ci * t1 ** (d - i) * t2**i
    det = mats.det_M()
    if det != expected or det != eq.assemble():
        raise InternalConsistencyError(f"det M = {det}, expected {expected}")
    return mats


# ---------------------------------------------------------------------------
# points and maps


def _fmt(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class RationalPoint:
    """A point (t; z): ``z`` has one coordinate per Z-variable, ``t`` is projective."""

    z: Tuple[Fraction, ...]
    t: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "z", tuple(Fraction(x) for x in self.z))
        object.__setattr__(self, "t", tuple(Fraction(x) for x in self.t))

    def normalized(self) -> "RationalPoint":
        """Scale ``t`` so that its last nonzero coordinate is 1."""
        last = next((x for x in reversed(self.t) if x != 0), None)
        if last is None:
            return self
        return RationalPoint(self.z, tuple(x / last for x in self.t))

    def projectively_equal(self, other: "RationalPoint") -> bool:
        return self.z == other.z and self.normalized().t == other.normalized().t

    def to_json(self) -> dict:
        return {"t": [_fmt(x) for x in self.t], "z": [_fmt(x) for x in self.z]}

    @classmethod
    def from_json(cls, data: Mapping) -> "RationalPoint":
        return cls(tuple(Fraction(s) for s in data["z"]), tuple(Fraction(s) for s in data["t"]))

    def __str__(self):
        return f"(({':'.join(_fmt(x) for x in self.t)}), ({', '.join(_fmt(x) for x in self.z)}))"


def _z_values(mats: DegeneracyMatrices, pt: RationalPoint, base: GradedRing) -> Dict[str, Fraction]:
    names = base.ring.names
    if len(pt.z) != len(names):
        raise ValueError(f"point has {len(pt.z)} Z-coordinates, expected {len(names)}")
    z = dict(zip(names, pt.z))
    for rel in base.relations:
        if rel.evaluate(z) != 0:
            raise NotOnHypersurface(f"z does not satisfy the relation {rel}")
    return z


def on_Y(mats: DegeneracyMatrices, pt: RationalPoint) -> bool:
    eq = mats.equation
    vals = dict(zip(eq.base.ring.names, pt.z))
    vals.update(zip(eq.p1_vars, pt.t))
    return eq.assemble().evaluate(vals) == 0


def on_Y_prime(mats: DegeneracyMatrices, pt: RationalPoint) -> bool:
    vals = dict(zip(mats.equation.base.ring.names, pt.z))
    vals.update(zip(mats.prime_vars, pt.t))
    return all(m.evaluate(vals) == 0 for m in mats.minors_N())


def forward_map(mats: DegeneracyMatrices, pt: RationalPoint) -> RationalPoint:
    """Send (t1:t2; z) on Y to (t'_1:...:t'_d; z), where (t', 1) spans ker M."""
    eq = mats.equation
    if len(pt.t) != 2:
        raise ValueError("a point of Y has two P^1 coordinates")
    z = _z_values(mats, pt, eq.base)
    if pt.t[0] == 0 and pt.t[1] == 0:
        raise IndeterminacyLocus("(t1, t2) = (0, 0) is not a point of P^1", "T1=T2=0")
    if not on_Y(mats, pt):
        raise NotOnHypersurface("the point does not satisfy det M = 0")
    if all(v == 0 for v in mats.c_values(z)):
        raise IndeterminacyLocus("all coefficients vanish at z", "f_0=...=f_d=0")
    vals = dict(z)
    vals.update(zip(eq.p1_vars, pt.t))
    ker = kernel(evaluate_matrix([list(r) for r in mats.M], vals))
    if len(ker) != 1 or ker[0][-1] == 0:
        raise KernelRankUnexpected(f"kernel of M has dimension {len(ker)} at a point of U")
    v = ker[0]
    v = [x / v[-1] for x in v]
    return RationalPoint(pt.z, tuple(v[:-1]))


def inverse_map(mats: DegeneracyMatrices, pt: RationalPoint) -> RationalPoint:
    """Send (t'; z) on Y' to (t1:t2; z), where (t1, t2, 1) spans ker N."""
    eq = mats.equation
    if len(pt.t) != mats.d:
        raise ValueError(f"a point of Y' has {mats.d} coordinates t'")
    z = _z_values(mats, pt, eq.base)
    if all(x == 0 for x in pt.t):
        raise IndeterminacyLocus("t' = 0 is not a point of P^(d-1)", "T'=0")
    if not on_Y_prime(mats, pt):
        raise NotOnHypersurface("the point does not satisfy the 3x3 minors of N")
    if all(v == 0 for v in mats.c_values(z)):
        raise IndeterminacyLocus("all coefficients vanish at z", "f_0=...=f_d=0")
    vals = dict(z)
    vals.update(zip(mats.prime_vars, pt.t))
    ker = kernel(evaluate_matrix([list(r) for r in mats.N], vals))
    if len(ker) != 1 or ker[0][-1] == 0:
        raise KernelRankUnexpected(f"kernel of N has dimension {len(ker)} at a point of U'")
    v = ker[0]
    return RationalPoint(pt.z, (v[0] / v[2], v[1] / v[2]))


# ---------------------------------------------------------------------------
# cones

H1 = (1, 0)
H2 = (0, 1)
H2_MINUS_H1 = (-1, 1)

Cone = Tuple[Tuple[int, int], Tuple[int, int]]


def cone_contains(outer: Cone, v: Sequence[int]) -> bool:
    """Whether ``v`` is a non-negative combination of the two generators."""
    (a, b), (c, d) = outer
    det = a * d - b * c
    if det == 0:
        raise ValueError("degenerate cone")
    x = Fraction(v[0] * d - v[1] * c, det)
    y = Fraction(a * v[1] - b * v[0], det)
    return x >= 0 and y >= 0


def cone_subset(inner: Cone, outer: Cone) -> bool:
    return all(cone_contains(outer, g) for g in inner)


@dataclass(frozen=True)
class ConeReport:
    d: int
    m: int
    case: int
    eff: Cone
    mov: Cone
    nef: Cone
    descriptors: Tuple[str, ...]

    def nested(self) -> bool:
        return cone_subset(self.nef, self.mov) and cone_subset(self.mov, self.eff)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "m": self.m,
            "case": self.case,
            "basis": ["H1", "H2"],
            "Eff": [list(g) for g in self.eff],
            "Mov": [list(g) for g in self.mov],
            "Nef": [list(g) for g in self.nef],
            "descriptors": list(self.descriptors),
        }

    def to_text(self) -> str:
        def show(cone):
            return " + ".join(f"R>=0*{_name(g)}" for g in cone)

        lines = [
            f"d = {self.d}, m = {self.m}  (case {self.case})",
            f"Eff = {show(self.eff)}",
            f"Mov = {show(self.mov)}",
            f"Nef = {show(self.nef)}",
        ]
        lines += [f"  - {s}" for s in self.descriptors]
        return "\n".join(lines)


def _name(g) -> str:
    return {H1: "H1", H2: "H2", H2_MINUS_H1: "(H2-H1)"}.get(tuple(g), str(g))


def cones(d: int, m: int) -> ConeReport:
    """Effective, movable and nef cones of a general Y in |O(d) x L'| on P^1 x Z."""
    if m < 3:
        raise OutOfRange(f"dim Z must be at least 3, got m = {m}")
    if not 1 <= d <= m:
        raise OutOfRange(f"need 1 <= d <= m, got d = {d}, m = {m}")
    big = (H1, H2_MINUS_H1)
    ample = (H1, H2)
    if d == 1:
        return ConeReport(d, m, 2, big, ample, ample, ("divisorial contraction", "fibration onto P^1"))
    if d == m:
        return ConeReport(
            d, m, 3, big, big, big, (f"fibration onto P^{d - 1}", "fibration onto P^1")
        )
    return ConeReport(
        d, m, 1, big, big, ample,
        (
            "unique small Q-factorial modification",
            "fibration onto P^1",
            f"dominant rational fibration to P^{d - 1}",
        ),
    )
