"""Cox equations on P^1 x Z and the presented Cox ring of the hypersurface.

A hypersurface equation in R[T1, T2] is written as

    f = f_0*T1^d - f_1*T1^(d-1)*T2 + ... + (-1)^d * f_d*T2^d

with f_i in R, and the presented ring is R[T1, T2, S_1..S_d] modulo

    g_0 = f_0 + T2*S_1,
    g_i = f_i + T1*S_i + T2*S_(i+1)   (1 <= i <= d-1),
    g_d = f_d + T1*S_d,

graded by Z + Cl(Z) with deg T1 = deg T2 = (1, 0) and deg S_i = deg f_i - deg T1.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Sequence, Tuple

from .grading import (
    GradedRing,
    MultiDegree,
    NotHomogeneousError,
    degree_of,
    make_ring,
)
from .groebner import Ideal, RegularSequenceResult, check_regular_sequence
from .ring import Polynomial, Ring

ASSERTED_FLAGS = ("cartier", "normal_outside_irrelevant", "class_group_pullback_iso")


class DegreeZeroInP1Error(ValueError):
    """The equation does not involve the P^1 variables."""


class InternalConsistencyError(RuntimeError):
    pass


@dataclass(frozen=True)
class CoxEquation:
    """Signed coefficients f_0..f_d of a bihomogeneous equation.

    ``p1_vars[0]`` plays the role of T1 (paired with T1^d) and ``p1_vars[1]``
    that of T2.  ``coefficients`` live over ``base.ring``.
    """

    d: int
    p1_vars: Tuple[str, str]
    coefficients: Tuple[Polynomial, ...]
    base: GradedRing
    coefficient_degree: MultiDegree
    signed: bool = field(default=True, init=False)

    def __post_init__(self):
        if self.d < 1:
            raise DegreeZeroInP1Error(f"d must be >= 1, got {self.d}")
        if len(self.coefficients) != self.d + 1:
            raise ValueError(f"expected {self.d + 1} coefficients, got {len(self.coefficients)}")
        if self.coefficients[0].is_zero() and self.coefficients[-1].is_zero():
            raise ValueError("f_0 and f_d are both zero")

    @property
    def ambient(self) -> Ring:
        """R[T1, T2] as a polynomial ring (relations of R not included)."""
        return self.base.ring.extend(self.p1_vars)

    def unsigned(self) -> Tuple[Polynomial, ...]:
        """c_i = (-1)^i f_i, so that f = sum c_i T1^(d-i) T2^i."""
        return tuple(c if i % 2 == 0 else -c for i, c in enumerate(self.coefficients))

    def assemble(self) -> Polynomial:
        """Rebuild f over R[T1, T2]."""
        amb = self.ambient
        t1, t2 = (amb.var(n) for n in self.p1_vars)
        f = amb.zero()
        for i, c in enumerate(self.unsigned()):
            f = f + c.embed(amb) * t1 ** (self.d - i) * t2**i
        return f


def _common_degree(coeffs: Sequence[Polynomial], base: GradedRing) -> Optional[MultiDegree]:
    deg = None
    for i, c in enumerate(coeffs):
        if c.is_zero():
            continue
        di = degree_of(c, base)
        if deg is None:
            deg = di
        elif di != deg:
            raise NotHomogeneousError(f"f_{i} has degree {di}, expected {deg}", (), c)
    return deg


def cox_equation(
    coefficients: Sequence[Polynomial],
    base: GradedRing,
    p1_vars: Sequence[str] = ("T1", "T2"),
    coefficient_degree: MultiDegree = None,
) -> CoxEquation:
    """CoxEquation from an explicit signed coefficient list f_0..f_d.

    ``coefficient_degree`` is only needed when every f_i is zero except those
    whose degree cannot be read off; normally it is inferred.
    """
    coeffs = tuple(c.embed(base.ring) for c in coefficients)
    deg = _common_degree(coeffs, base)
    if deg is None:
        deg = coefficient_degree
    elif coefficient_degree is not None and coefficient_degree != deg:
        raise NotHomogeneousError(f"coefficients have degree {deg}, not {coefficient_degree}")
    if deg is None:
        raise ValueError("all coefficients are zero")
    names = tuple(p1_vars)
    if len(names) != 2:
        raise ValueError("exactly two P^1 variables are required")
    return CoxEquation(len(coeffs) - 1, names, coeffs, base, deg)


def expand_cox_equation(
    f: Polynomial, base: GradedRing, p1_vars: Sequence[str] = ("T1", "T2")
) -> CoxEquation:
    """Read off the signed coefficients of ``f`` in the two P^1 variables.

    ``f`` may live over any ring whose variables are those of ``base`` plus
    ``p1_vars``.  Raises :class:`DegreeZeroInP1Error` when ``f`` does not
    involve the P^1 variables and :class:`NotHomogeneousError` when it is not
    bihomogeneous.
    """
    p1_vars = tuple(p1_vars)
    if f.is_zero():
        raise ValueError("the equation is zero")
    amb = base.ring.extend(p1_vars)
    f = f.embed(amb)
    parts = f.coefficients_in(p1_vars)
    tdegs = {a + b for a, b in parts}
    if len(tdegs) > 1:
        raise NotHomogeneousError(
            f"equation has P^1-degrees {sorted(tdegs)}; it must be homogeneous in {p1_vars}"
        )
    d = tdegs.pop()
    if d == 0:
        raise DegreeZeroInP1Error(f"equation {f} does not involve {p1_vars}")
    coeffs = []
    for i in range(d + 1):
        c = parts.get((d - i, i), amb.zero())
        # c is free of T1, T2; drop the two trailing coordinates
        c = Polynomial._raw(base.ring, {m[:-2]: v for m, v in c.terms.items()})
        coeffs.append(c if i % 2 == 0 else -c)
    return cox_equation(coeffs, base, p1_vars)


# ---------------------------------------------------------------------------
# hypotheses


@dataclass(frozen=True)
class HypothesisReport:
    equal_degrees: bool
    degree_detail: str
    regular_sequence: bool
    regular_detail: RegularSequenceResult
    asserted: Mapping[str, bool]
    provenance: str = "user input"

    @property
    def machine_ok(self) -> bool:
        return self.equal_degrees and self.regular_sequence

    @property
    def failing_step(self) -> Optional[int]:
        return self.regular_detail.failing_step

    def all_asserted(self) -> bool:
        return all(self.asserted.get(k, False) for k in ASSERTED_FLAGS)

    def to_json(self) -> dict:
        return {
            "equal_degrees": {"verdict": self.equal_degrees, "detail": self.degree_detail},
            "regular_sequence": self.regular_detail.to_json(),
            "asserted": {
                k: {"value": bool(self.asserted.get(k, False)), "provenance": self.provenance}
                for k in ASSERTED_FLAGS
            },
            "machine_ok": self.machine_ok,
        }

    def to_text(self) -> str:
        w = max(len(k) for k in ASSERTED_FLAGS)
        lines = [f"{'equal degrees':<{w}} : {'yes' if self.equal_degrees else 'NO'}  ({self.degree_detail})"]
        rs = self.regular_detail
        lines.append(f"{'regular sequence':<{w}} : {'yes' if rs.verdict else 'NO'}")
        for s in rs.steps:
            lines.append(f"  step {s.index}: {s.element}  -> {s.reason}")
        if not rs.proper and rs.failing_step == len(rs.steps):
            lines.append("  the sequence generates the unit ideal")
        for k in ASSERTED_FLAGS:
            lines.append(f"{k:<{w}} : {self.asserted.get(k, False)} ({self.provenance})")
        return "\n".join(lines)


def check_hypotheses(
    eq: CoxEquation, base: GradedRing = None, asserted: Mapping[str, bool] = None, budget=None
) -> HypothesisReport:
    """Check equal degrees and regularity of f_0..f_d modulo the relations of R.

    The geometric hypotheses are recorded from ``asserted`` as given.
    """
    base = base or eq.base
    try:
        deg = _common_degree(eq.coefficients, base)
        equal = True
        detail = f"all nonzero f_i of degree {deg}"
    except NotHomogeneousError as exc:
        equal = False
        detail = str(exc)
    zero = [i for i, c in enumerate(eq.coefficients) if c.is_zero()]
    if zero:
        detail += f"; zero coefficients at {zero}"
    J = Ideal(base.ring, base.relations)
    rs = check_regular_sequence(J, eq.coefficients, budget)
    flags = {k: bool((asserted or {}).get(k, False)) for k in ASSERTED_FLAGS}
    return HypothesisReport(equal, detail, rs.verdict, rs, flags)


# ---------------------------------------------------------------------------
# presented ring


@dataclass(frozen=True)
class PresentedCoxRing:
    """R[T1, T2, S_1..S_d] / (J, g_0..g_d) with its Z + Cl(Z) grading."""

    equation: CoxEquation
    graded: GradedRing
    s_vars: Tuple[str, ...]
    base_relations: Tuple[Polynomial, ...]
    g: Tuple[Polynomial, ...]

    @property
    def ring(self) -> Ring:
        return self.graded.ring

    @property
    def p1_vars(self) -> Tuple[str, str]:
        return self.equation.p1_vars

    @property
    def relations(self) -> Tuple[Polynomial, ...]:
        return self.base_relations + self.g

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.relations)

    def with_relation(self, i: int, poly: Optional[Polynomial]) -> "PresentedCoxRing":
        """Copy with g_i replaced (or removed when ``poly`` is None); for negative controls."""
        g = list(self.g)
        if poly is None:
            del g[i]
        else:
            g[i] = poly
        return dataclasses.replace(self, g=tuple(g))

    def role(self, name: str) -> str:
        if name in self.p1_vars:
            return "p1"
        if name in self.s_vars:
            return "s"
        return "z"

    def to_json(self) -> dict:
        grp = self.graded.group
        return {
            "grading_group": {"free_rank": grp.free_rank, "torsion": list(grp.torsion)},
            "d": self.equation.d,
            "variables": [
                {"name": n, "role": self.role(n), "degree": deg.to_json()}
                for n, deg in zip(self.ring.names, self.graded.degrees)
            ],
            "relations": [str(r) for r in self.relations],
            "base_relations": [str(r) for r in self.base_relations],
            "cox_relations": [str(r) for r in self.g],
        }

    def to_text(self) -> str:
        names = self.ring.names
        lines = [f"Q[{', '.join(names)}] /"]
        lines.append("  < " + ",\n    ".join(str(r) for r in self.relations) + " >")
        lines.append("degrees:")
        for n, deg in zip(names, self.graded.degrees):
            lines.append(f"  deg({n}) = {deg}")
        return "\n".join(lines)


def build_presentation(
    eq: CoxEquation, base: GradedRing = None, s_prefix: str = "S"
) -> PresentedCoxRing:
    base = base or eq.base
    d = eq.d
    s_vars = tuple(f"{s_prefix}{i}" for i in range(1, d + 1))
    clash = set(s_vars) & (set(base.ring.names) | set(eq.p1_vars))
    if clash:
        raise ValueError(f"new variable names {sorted(clash)} collide with existing ones")
    group = base.group.with_p1_factor()
    p1_deg = group.degree((1,) + (0,) * base.group.free_rank)
    deg_f = eq.coefficient_degree.lift(group)
    s_deg = deg_f - p1_deg
    degrees = tuple(dg.lift(group) for dg in base.degrees) + (p1_deg, p1_deg) + (s_deg,) * d
    ring = Ring(base.ring.names + eq.p1_vars + s_vars)
    t1, t2 = ring.var(eq.p1_vars[0]), ring.var(eq.p1_vars[1])
    S = [ring.var(s) for s in s_vars]
    f = [c.embed(ring) for c in eq.coefficients]
    g = []
    for i in range(d + 1):
        gi = f[i]
        if i >= 1:
            gi = gi + t1 * S[i - 1]
        if i < d:
            gi = gi + t2 * S[i]
        g.append(gi)
    rels = tuple(r.embed(ring) for r in base.relations)
    try:
        graded = make_ring(ring.names, degrees, rels + tuple(g), group)
    except NotHomogeneousError as exc:
        raise InternalConsistencyError(f"presentation is not homogeneous: {exc}") from exc
    for gi in g:
        if degree_of(gi, graded) != deg_f:
            raise InternalConsistencyError(f"{gi} does not have degree {deg_f}")
    return PresentedCoxRing(eq, graded, s_vars, rels, tuple(g))


def target_ring(eq: CoxEquation, base: GradedRing = None) -> GradedRing:
    """The hypersurface ring A = R[T1, T2] / (J, f) with its Z + Cl(Z) grading."""
    base = base or eq.base
    group = base.group.with_p1_factor()
    p1_deg = group.degree((1,) + (0,) * base.group.free_rank)
    degrees = tuple(dg.lift(group) for dg in base.degrees) + (p1_deg, p1_deg)
    amb = eq.ambient
    rels = tuple(r.embed(amb) for r in base.relations) + (eq.assemble(),)
    return make_ring(amb.names, degrees, rels, group)


def build_all(eq: CoxEquation, asserted: Dict[str, bool] = None, budget=None):
    """Hypothesis report plus presentation; the presentation is None when a check fails."""
    report = check_hypotheses(eq, eq.base, asserted, budget)
    if not report.machine_ok:
        return report, None
    return report, build_presentation(eq)
