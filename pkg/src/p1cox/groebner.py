"""Buchberger's algorithm over Q and the ideal operations built on it.

The engine works on raw term dictionaries (exponent tuple -> Fraction) under a
fixed monomial order; :class:`Ideal` and :class:`GroebnerBasis` wrap it with the
ring bookkeeping.  Pair management uses the Gebauer-Moeller update, which
applies both Buchberger criteria, and pairs are selected by sugar degree.

Computations in a quotient ring Q[x]/J are done by adjoining the generators of
J to every ideal involved; the callers in :mod:`p1cox.presentation` and
:mod:`p1cox.verifier` follow that convention.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .ring import MonomialOrder, Polynomial, Ring, RingMismatchError, block, grevlex

DEFAULT_BUDGET = 10**6

Terms = Dict[Tuple[int, ...], Fraction]


class ResourceLimitError(RuntimeError):
    """The S-pair budget was exhausted before the computation finished."""

    def __init__(self, budget: int, reductions: int):
        self.budget = budget
        self.reductions = reductions
        super().__init__(f"Groebner budget of {budget} S-pair reductions exceeded")


# ---------------------------------------------------------------------------
# raw engine


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _monic(f: Terms, key) -> Terms:
    lc = f[max(f, key=key)]
    if lc == 1:
        return f
    inv = 1 / lc
    return {m: c * inv for m, c in f.items()}


def _reduce(f: Terms, basis: Sequence[Tuple[tuple, Terms]], key, full: bool = True) -> Terms:
    """Remainder of ``f`` on division by monic ``basis`` entries (lm, terms)."""
    f = dict(f)
    rem: Terms = {}
    while f:
        m = max(f, key=key)
        c = f[m]
        for lm, g in basis:
            if _divides(lm, m):
                q = tuple(x - y for x, y in zip(m, lm))
                for gm, gc in g.items():
                    t = tuple(a + b for a, b in zip(gm, q))
                    v = f.get(t, 0) - c * gc
                    if v:
                        f[t] = v
                    else:
                        del f[t]
                break
        else:
            if not full:
                rem.update(f)
                return rem
            rem[m] = c
            del f[m]
    return rem


class Budget:
    """A cap on S-pair reductions, shareable across several computations."""

    def __init__(self, limit: Optional[int] = None):
        self.limit = DEFAULT_BUDGET if limit is None else limit
        self.used = 0

    def spend(self):
        self.used += 1
        if self.used > self.limit:
            raise ResourceLimitError(self.limit, self.used)


def _as_budget(budget) -> Budget:
    return budget if isinstance(budget, Budget) else Budget(budget)


def _buchberger(gens: Iterable[Terms], key, budget: Budget) -> List[Terms]:
    polys: List[Terms] = []
    lms: List[tuple] = []
    sugar: List[int] = []
    G: List[int] = []
    B: List[Tuple[int, int]] = []

    def update(h: int):
        nonlocal G, B
        lh = lms[h]
        C = list(G)
        D: List[int] = []
        while C:
            g1 = C.pop(0)
            l1 = _lcm(lh, lms[g1])
            if _coprime(lh, lms[g1]) or not any(
                _divides(_lcm(lh, lms[g2]), l1) for g2 in C + D
            ):
                D.append(g1)
        E = [(g, h) for g in D if not _coprime(lh, lms[g])]
        kept = []
        for g1, g2 in B:
            l12 = _lcm(lms[g1], lms[g2])
            if (
                _divides(lh, l12)
                and _lcm(lms[g1], lh) != l12
                and _lcm(lms[g2], lh) != l12
            ):
                continue
            kept.append((g1, g2))
        B = kept + E
        G = [g for g in G if not _divides(lh, lms[g])] + [h]

    def add(f: Terms, s: int):
        f = _monic(f, key)
        polys.append(f)
        lms.append(max(f, key=key))
        sugar.append(s)
        update(len(polys) - 1)

    def basis():
        # trying reducers with small leading monomials first keeps coefficients smaller
        return sorted(((lms[g], polys[g]) for g in G), key=lambda e: key(e[0]))

    # interreduce the input until it stops changing, then queue it by leading monomial
    cur = [dict(f) for f in gens if f]
    while True:
        nxt = []
        for i, f in enumerate(cur):
            r = _reduce(f, [(max(g, key=key), g) for g in nxt], key)
            if r:
                nxt.append(_monic(r, key))
        if nxt == cur:
            break
        cur = nxt
    for f in sorted(cur, key=lambda f: key(max(f, key=key))):
        add(f, max(sum(m) for m in f))

    def pair_key(p):
        i, j = p
        L = _lcm(lms[i], lms[j])
        s = max(sugar[i] + sum(L) - sum(lms[i]), sugar[j] + sum(L) - sum(lms[j]))
        return (key(L), s, i, j)

    while B:
        best = min(B, key=pair_key)
        B.remove(best)
        i, j = best
        s_deg = pair_key(best)[1]
        L = _lcm(lms[i], lms[j])
        qi = tuple(x - y for x, y in zip(L, lms[i]))
        qj = tuple(x - y for x, y in zip(L, lms[j]))
        sp: Terms = {}
        for m, c in polys[i].items():
            sp[tuple(a + b for a, b in zip(m, qi))] = c
        for m, c in polys[j].items():
            t = tuple(a + b for a, b in zip(m, qj))
            v = sp.get(t, 0) - c
            if v:
                sp[t] = v
            else:
                sp.pop(t, None)
        budget.spend()
        h = _reduce(sp, basis(), key)
        if h:
            add(h, s_deg)

    # reduced basis: minimal leading terms, tails fully reduced, monic
    minimal = [g for g in G if not any(h != g and _divides(lms[h], lms[g]) for h in G)]
    out = []
    for g in minimal:
        others = [(lms[h], polys[h]) for h in minimal if h != g]
        lt = {lms[g]: polys[g][lms[g]]}
        tail = {m: c for m, c in polys[g].items() if m != lms[g]}
        r = _reduce(tail, others, key)
        r.update(lt)
        out.append(_monic(r, key))
    out.sort(key=lambda f: key(max(f, key=key)), reverse=True)
    return out


# ---------------------------------------------------------------------------
# public wrappers


class GroebnerBasis:
    """A reduced Groebner basis: monic elements sorted by decreasing leading monomial."""

    __slots__ = ("ring", "order", "elements", "_lead")

    def __init__(self, ring: Ring, order: MonomialOrder, elements: Sequence[Polynomial]):
        self.ring = ring
        self.order = order
        self.elements = tuple(elements)
        self._lead = [(e.leading_monomial(order), e.terms) for e in self.elements]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and self.ring == other.ring
            and self.order == other.order
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash(self.elements)

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def reduce(self, p: Polynomial) -> Polynomial:
        if p.ring != self.ring:
            raise RingMismatchError(f"{p.ring} vs {self.ring}")
        return Polynomial._raw(self.ring, _reduce(p.terms, self._lead, self.order.key))

    def contains(self, p: Polynomial) -> bool:
        return self.reduce(p).is_zero()

    def to_strings(self) -> List[str]:
        return [e.to_string(self.order) for e in self.elements]

    def __repr__(self):
        return f"GroebnerBasis({self.to_strings()}, {self.order!r})"


class Ideal:
    """An ideal of Q[ring] given by generators; zero generators are dropped.

    Groebner bases are cached per monomial order.
    """

    __slots__ = ("ring", "generators", "_gb")

    def __init__(self, ring: Ring, generators: Iterable[Polynomial] = ()):
        self.ring = ring
        gens = []
        for g in generators:
            if g.ring != ring:
                raise RingMismatchError(f"generator over {g.ring}, ideal over {ring}")
            if not g.is_zero():
                gens.append(g)
        self.generators: Tuple[Polynomial, ...] = tuple(gens)
        self._gb: Dict[MonomialOrder, GroebnerBasis] = {}

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")
        return Ideal(self.ring, self.generators + other.generators)

    def plus(self, *polys: Polynomial) -> "Ideal":
        return Ideal(self.ring, self.generators + tuple(polys))

    def is_zero(self) -> bool:
        return not self.generators

    def groebner(self, order: MonomialOrder = None, budget=None) -> GroebnerBasis:
        return groebner_basis(self, order or grevlex(), budget)

    def contains(self, p: Polynomial, budget=None) -> bool:
        return self.groebner(budget=budget).contains(p)

    def is_unit(self, budget=None) -> bool:
        return self.groebner(budget=budget).is_unit()

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]} in {self.ring})"


def groebner_basis(I: Ideal, order: MonomialOrder = None, budget=None) -> GroebnerBasis:
    """Reduced Groebner basis of ``I``; raises :class:`ResourceLimitError` past ``budget``."""
    order = order or grevlex()
    cached = I._gb.get(order)
    if cached is not None:
        return cached
    raw = _buchberger([g.terms for g in I.generators], order.key, _as_budget(budget))
    gb = GroebnerBasis(I.ring, order, [Polynomial._raw(I.ring, f) for f in raw])
    I._gb[order] = gb
    return gb


def normal_form(p: Polynomial, G: GroebnerBasis) -> Polynomial:
    return G.reduce(p)


def ideals_equal(I: Ideal, J: Ideal, budget=None) -> bool:
    if I.ring != J.ring:
        raise RingMismatchError(f"{I.ring} vs {J.ring}")
    return groebner_basis(I, grevlex(), budget) == groebner_basis(J, grevlex(), budget)


def contained_in(I: Ideal, J: Ideal, budget=None) -> bool:
    """Whether every generator of ``I`` lies in ``J``."""
    G = groebner_basis(J, grevlex(), budget)
    return all(G.contains(g) for g in I.generators)


def eliminate(I: Ideal, drop: Iterable[str], budget=None) -> Ideal:
    """Generators of the intersection of ``I`` with the subring omitting ``drop``.

    The result stays in ``I.ring``; its generators simply avoid ``drop``.
    """
    drop = tuple(drop)
    if not drop:
        return Ideal(I.ring, groebner_basis(I, grevlex(), budget).elements)
    order = block(I.ring, drop)
    idx = [I.ring.index(n) for n in drop]
    gb = groebner_basis(I, order, budget)
    kept = [g for g in gb if all(m[i] == 0 for m in g.terms for i in idx)]
    return Ideal(I.ring, kept)


def _aux_name(ring: Ring, stem: str = "t") -> str:
    k = 0
    while f"{stem}{k}aux" in ring.names:
        k += 1
    return f"{stem}{k}aux"


def _drop_last(p: Polynomial, ring: Ring) -> Polynomial:
    return Polynomial._raw(ring, {m[:-1]: c for m, c in p.terms.items()})


def exact_quotient(p: Polynomial, h: Polynomial) -> Polynomial:
    """``p / h`` when ``h`` divides ``p``; raises ValueError otherwise."""
    order = grevlex()
    lm_h = h.leading_monomial(order)
    lc_h = h.terms[lm_h]
    q: Terms = {}
    r = dict(p.terms)
    key = order.key
    while r:
        m = max(r, key=key)
        if not _divides(lm_h, m):
            raise ValueError(f"{h} does not divide {p}")
        e = tuple(x - y for x, y in zip(m, lm_h))
        c = r[m] / lc_h
        q[e] = c
        for hm, hc in h.terms.items():
            t = tuple(a + b for a, b in zip(hm, e))
            v = r.get(t, 0) - c * hc
            if v:
                r[t] = v
            else:
                r.pop(t, None)
    return Polynomial._raw(p.ring, q)


def intersect(I: Ideal, J: Ideal, budget=None) -> Ideal:
    """I meet J via eliminating t from t*I + (1 - t)*J."""
    if I.ring != J.ring:
        raise RingMismatchError(f"{I.ring} vs {J.ring}")
    ring = I.ring
    t = _aux_name(ring)
    big = ring.extend([t])
    tv = big.var(t)
    gens = [tv * g.embed(big) for g in I.generators]
    gens += [(1 - tv) * g.embed(big) for g in J.generators]
    elim = eliminate(Ideal(big, gens), [t], budget)
    return Ideal(ring, [_drop_last(g, ring) for g in elim.generators])


def ideal_quotient(I: Ideal, h: Polynomial, budget=None) -> Ideal:
    """(I : h) = {p : p*h in I}, from I meet <h> divided by h."""
    if h.is_zero():
        raise ValueError("quotient by the zero polynomial")
    if h.ring != I.ring:
        raise RingMismatchError(f"{h.ring} vs {I.ring}")
    if h.is_constant() or I.is_zero():
        return Ideal(I.ring, groebner_basis(I, grevlex(), budget).elements)
    meet = intersect(I, Ideal(I.ring, [h]), budget)
    return Ideal(I.ring, [exact_quotient(g, h) for g in meet.generators])


def saturate(I: Ideal, h: Polynomial, budget=None) -> Ideal:
    """(I : h^infinity) by iterating :func:`ideal_quotient` until the ideal stabilizes."""
    # Quotient on the caller's generators rather than on a reduced basis: reduced
    # bases tend to carry large denominators that make the auxiliary elimination
    # far more expensive.
    cur = I
    while True:
        nxt = ideal_quotient(cur, h, budget)
        if contained_in(nxt, cur, budget):
            return Ideal(I.ring, groebner_basis(cur, grevlex(), budget).elements)
        cur = nxt


def saturate_aux(I: Ideal, h: Polynomial, budget=None) -> Ideal:
    """(I : h^infinity) as the elimination of t from I + <1 - t*h>."""
    ring = I.ring
    t = _aux_name(ring, "u")
    big = ring.extend([t])
    gens = [g.embed(big) for g in I.generators] + [1 - big.var(t) * h.embed(big)]
    elim = eliminate(Ideal(big, gens), [t], budget)
    return Ideal(ring, [_drop_last(g, ring) for g in elim.generators])


@dataclass(frozen=True)
class RegularStep:
    index: int
    element: Polynomial
    verdict: bool
    reason: str
    prefix_basis: Tuple[str, ...]
    quotient_basis: Tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "element": str(self.element),
            "verdict": self.verdict,
            "reason": self.reason,
            "prefix_basis": list(self.prefix_basis),
            "quotient_basis": list(self.quotient_basis),
        }


@dataclass(frozen=True)
class RegularSequenceResult:
    steps: Tuple[RegularStep, ...]
    proper: bool
    verdict: bool
    failing_step: Optional[int]

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "failing_step": self.failing_step,
            "proper": self.proper,
            "steps": [s.to_json() for s in self.steps],
        }


def check_regular_sequence(base: Ideal, sequence: Sequence[Polynomial], budget=None) -> RegularSequenceResult:
    """Test whether ``sequence`` is regular on Q[x]/base.

    Step i passes when ((base, s_0..s_{i-1}) : s_i) equals (base, s_0..s_{i-1}).
    The sequence must also leave a proper quotient.  Testing stops at the first
    failing step, whose index is reported.
    """
    budget = _as_budget(budget)
    steps = []
    prefix = base
    for i, s in enumerate(sequence):
        prefix_gb = groebner_basis(prefix, grevlex(), budget)
        if s.is_zero():
            steps.append(RegularStep(i, s, False, "zero element", tuple(prefix_gb.to_strings()), ()))
            return RegularSequenceResult(tuple(steps), False, False, i)
        quot = ideal_quotient(prefix, s, budget)
        quot_gb = groebner_basis(quot, grevlex(), budget)
        ok = quot_gb == prefix_gb
        steps.append(
            RegularStep(
                i, s, ok, "nonzerodivisor" if ok else "zerodivisor modulo predecessors",
                tuple(prefix_gb.to_strings()), tuple(quot_gb.to_strings()),
            )
        )
        if not ok:
            return RegularSequenceResult(tuple(steps), False, False, i)
        prefix = prefix.plus(s)
    proper = not groebner_basis(prefix, grevlex(), budget).is_unit()
    return RegularSequenceResult(tuple(steps), proper, proper, None if proper else len(sequence))
