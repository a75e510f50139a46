"""Grading groups Z^r + torsion, multidegrees, and graded ring presentations."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, Mapping, Sequence, Tuple, Union

from .ring import Polynomial, Ring, parse_polynomial


class NotHomogeneousError(ValueError):
    def __init__(self, message: str, monomials: Tuple = (), relation: Polynomial = None):
        self.monomials = monomials
        self.relation = relation
        super().__init__(message)


class ZeroPolynomialError(ValueError):
    pass


class GroupMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class GradingGroup:
    """The abelian group Z^free_rank + sum of Z/n_i."""

    free_rank: int
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        if any(n < 2 for n in self.torsion):
            raise ValueError("torsion moduli must be >= 2")

    def degree(self, free: Sequence[int], torsion: Sequence[int] = ()) -> "MultiDegree":
        return MultiDegree(self, tuple(free), tuple(torsion) or (0,) * len(self.torsion))

    def zero(self) -> "MultiDegree":
        return MultiDegree(self, (0,) * self.free_rank, (0,) * len(self.torsion))

    def with_p1_factor(self) -> "GradingGroup":
        """Z + self, the class group of P^1 times a variety graded by self."""
        return GradingGroup(self.free_rank + 1, self.torsion)


@dataclass(frozen=True)
class MultiDegree:
    group: GradingGroup
    free: Tuple[int, ...]
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        free = tuple(int(x) for x in self.free)
        tors = tuple(self.torsion) or (0,) * len(self.group.torsion)
        if len(free) != self.group.free_rank or len(tors) != len(self.group.torsion):
            raise ValueError(f"degree {free}/{tors} does not fit {self.group}")
        object.__setattr__(self, "free", free)
        object.__setattr__(self, "torsion", tuple(int(v) % n for v, n in zip(tors, self.group.torsion)))

    def _check(self, other: "MultiDegree"):
        if self.group != other.group:
            raise GroupMismatchError(f"{self.group} vs {other.group}")

    def __add__(self, other: "MultiDegree") -> "MultiDegree":
        self._check(other)
        return MultiDegree(
            self.group,
            tuple(a + b for a, b in zip(self.free, other.free)),
            tuple(a + b for a, b in zip(self.torsion, other.torsion)),
        )

    def __neg__(self) -> "MultiDegree":
        return MultiDegree(self.group, tuple(-a for a in self.free), tuple(-a for a in self.torsion))

    def __sub__(self, other: "MultiDegree") -> "MultiDegree":
        self._check(other)
        return self + (-other)

    def scale(self, k: int) -> "MultiDegree":
        return MultiDegree(self.group, tuple(k * a for a in self.free), tuple(k * a for a in self.torsion))

    def is_zero(self) -> bool:
        return not any(self.free) and not any(self.torsion)

    def lift(self, group: GradingGroup, p1_part: int = 0) -> "MultiDegree":
        """Embed into Z + G, putting ``p1_part`` in the new leading coordinate."""
        if group != self.group.with_p1_factor():
            raise GroupMismatchError(f"{group} is not Z + {self.group}")
        return MultiDegree(group, (p1_part,) + self.free, self.torsion)

    def to_json(self) -> dict:
        return {
            "free": list(self.free),
            "torsion": [{"mod": n, "val": v} for n, v in zip(self.group.torsion, self.torsion)],
        }

    @classmethod
    def from_json(cls, data: Mapping, group: GradingGroup) -> "MultiDegree":
        tors = data.get("torsion", [])
        mods = tuple(t["mod"] for t in tors)
        if mods != group.torsion:
            raise GroupMismatchError(f"torsion moduli {mods} do not match {group.torsion}")
        return cls(group, tuple(data["free"]), tuple(t["val"] for t in tors))

    def __str__(self):
        parts = [str(a) for a in self.free]
        parts += [f"{v} mod {n}" for v, n in zip(self.torsion, self.group.torsion)]
        return "(" + ",".join(parts) + ")"


def degree_arith(a: MultiDegree, b: MultiDegree, op: str) -> MultiDegree:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    raise ValueError(f"unknown op {op!r}")


@dataclass(frozen=True)
class GradedRing:
    """A graded ring presentation Q[variables] / J."""

    ring: Ring
    degrees: Tuple[MultiDegree, ...]
    relations: Tuple[Polynomial, ...] = ()
    group: GradingGroup = field(default=None)

    @property
    def variables(self) -> Tuple[str, ...]:
        return self.ring.names

    def degree_of_var(self, name: str) -> MultiDegree:
        return self.degrees[self.ring.index(name)]

    def monomial_degree(self, mono) -> MultiDegree:
        total = self.group.zero()
        for k, deg in zip(mono, self.degrees):
            if k:
                total = total + deg.scale(k)
        return total

    def degree_of(self, p: Polynomial) -> MultiDegree:
        return degree_of(p, self)

    def parse(self, text: str) -> Polynomial:
        return parse_polynomial(text, self.ring)


def degree_of(p: Polynomial, ring: GradedRing) -> MultiDegree:
    """Common multidegree of every term of ``p``."""
    if p.ring != ring.ring:
        p = p.embed(ring.ring)
    if p.is_zero():
        raise ZeroPolynomialError("the zero polynomial has no degree")
    first = None
    first_deg = None
    for m in sorted(p.terms):
        deg = ring.monomial_degree(m)
        if first is None:
            first, first_deg = m, deg
        elif deg != first_deg:
            names = ring.ring.names
            show = lambda e: "*".join(f"{n}^{k}" if k > 1 else n for n, k in zip(names, e) if k) or "1"
            raise NotHomogeneousError(
                f"terms {show(first)} (degree {first_deg}) and {show(m)} (degree {deg}) disagree",
                (first, m),
                p,
            )
    return first_deg


def is_homogeneous(p: Polynomial, ring: GradedRing) -> bool:
    if p.is_zero():
        return True
    try:
        degree_of(p, ring)
    except NotHomogeneousError:
        return False
    return True


def make_ring(
    variables: Sequence[str],
    degrees: Sequence[MultiDegree],
    relations: Iterable[Union[str, Polynomial]] = (),
    group: GradingGroup = None,
) -> GradedRing:
    """Validate and build a graded presentation.

    Relations may be given as strings or as polynomials over ``variables``.
    Zero relations are dropped; every remaining one must be homogeneous.
    """
    ring = Ring(tuple(variables))
    degrees = tuple(degrees)
    if len(degrees) != ring.nvars:
        raise ValueError(f"{ring.nvars} variables but {len(degrees)} degrees")
    if group is None:
        if not degrees:
            raise ValueError("cannot infer the grading group without variables")
        group = degrees[0].group
    for d in degrees:
        if d.group != group:
            raise GroupMismatchError(f"degree {d} is not in {group}")
    out: List[Polynomial] = []
    graded = GradedRing(ring, degrees, (), group)
    for rel in relations:
        p = parse_polynomial(rel, ring) if isinstance(rel, str) else rel.embed(ring)
        if p.is_zero():
            continue
        try:
            degree_of(p, graded)
        except NotHomogeneousError as exc:
            raise NotHomogeneousError(f"relation {p} is not homogeneous: {exc}", exc.monomials, p) from None
        out.append(p)
    return GradedRing(ring, degrees, tuple(out), group)
