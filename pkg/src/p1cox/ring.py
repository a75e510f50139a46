"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Ring` is an ordered tuple of variable names.  Monomials are dense
exponent tuples indexed by that order, and a :class:`Polynomial` is a map from
monomials to nonzero :class:`fractions.Fraction` coefficients.  Values are
never mutated after construction.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class RingMismatchError(ValueError):
    """Operands live over different variable sets."""


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class UnknownVariableError(ParseError):
    def __init__(self, name: str, position: int, text: str = ""):
        self.name = name
        super().__init__(f"unknown variable {name!r}", position, text)


@dataclass(frozen=True)
class Ring:
    """Polynomial ring Q[names] with a fixed variable order."""

    names: Tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for n in names:
            if not _IDENT.match(n):
                raise ValueError(f"invalid variable name {n!r}")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"{name!r} is not a variable of {self}") from None

    def var(self, name: str) -> "Polynomial":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): Fraction(1)})

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(self.var(n) for n in self.names)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c: Scalar) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: Fraction(c)})

    def monomial(self, exps: Mapping[str, int], coeff: Scalar = 1) -> "Polynomial":
        e = [0] * self.nvars
        for name, k in exps.items():
            e[self.index(name)] = k
        return Polynomial(self, {tuple(e): Fraction(coeff)})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def extend(self, names: Iterable[str]) -> "Ring":
        return Ring(self.names + tuple(names))

    def __str__(self):
        return "Q[" + ", ".join(self.names) + "]"


def _clean(terms: Mapping[Monomial, Fraction]) -> Dict[Monomial, Fraction]:
    return {m: c for m, c in terms.items() if c}


class Polynomial:
    """Immutable sparse polynomial in canonical form (no zero coefficients)."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, Scalar] = None):
        self.ring = ring
        self.terms: Dict[Monomial, Fraction] = {}
        n = ring.nvars
        for m, c in (terms or {}).items():
            if len(m) != n:
                raise ValueError(f"monomial {m} has wrong length for {ring}")
            if c:
                self.terms[tuple(m)] = Fraction(c)
        self._hash = None

    @classmethod
    def _raw(cls, ring: Ring, terms: Dict[Monomial, Fraction]) -> "Polynomial":
        # Trusted constructor: terms must already be canonical.
        p = object.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # -- structure ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def __len__(self):
        return len(self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        return max((m[i] for m in self.terms), default=-1)

    def variables(self) -> Tuple[str, ...]:
        """Names of the variables that actually occur, in ring order."""
        used = [False] * self.ring.nvars
        for m in self.terms:
            for i, k in enumerate(m):
                if k:
                    used[i] = True
        return tuple(n for n, u in zip(self.ring.names, used) if u)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def leading_monomial(self, order: "MonomialOrder") -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: "MonomialOrder") -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: "MonomialOrder") -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coefficient(order))

    # -- arithmetic --------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial._raw(self.ring, _clean(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, mono: Monomial, c: Scalar = 1) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(
            self.ring,
            {tuple(a + b for a, b in zip(m, mono)): c * v for m, v in self.terms.items()},
        )

    # -- comparisons -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- evaluation & change of ring ----------------------------------------
    def evaluate(self, values: Mapping[str, Scalar]) -> Fraction:
        """Value at a rational point; every occurring variable must be given."""
        idx = [(i, Fraction(values[n])) for i, n in enumerate(self.ring.names) if n in values]
        full = dict(idx)
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for i, k in enumerate(m):
                if k:
                    if i not in full:
                        raise KeyError(f"no value for {self.ring.names[i]}")
                    v *= full[i] ** k
            total += v
        return total

    def substitute(self, images: Mapping[str, "Polynomial"], target: Ring = None) -> "Polynomial":
        """Ring map sending each named variable to a polynomial over ``target``.

        Variables not mentioned map to the same-named variable of ``target``.
        """
        target = target or self.ring
        gen_images = []
        for n in self.ring.names:
            if n in images:
                img = images[n]
                if img.ring != target:
                    raise RingMismatchError(f"image of {n} lives in {img.ring}, expected {target}")
                gen_images.append(img)
            else:
                gen_images.append(target.var(n))
        powers: Dict[Tuple[int, int], Polynomial] = {}
        result = target.zero()
        for m, c in self.terms.items():
            term = target.const(c)
            for i, k in enumerate(m):
                if k:
                    if (i, k) not in powers:
                        powers[(i, k)] = gen_images[i] ** k
                    term = term * powers[(i, k)]
            result = result + term
        return result

    def embed(self, target: Ring) -> "Polynomial":
        """Reinterpret in a ring whose variables include all occurring ones."""
        if target == self.ring:
            return self
        pos = []
        for i, n in enumerate(self.ring.names):
            try:
                pos.append(target.index(n))
            except KeyError:
                pos.append(None)
        out = {}
        for m, c in self.terms.items():
            e = [0] * target.nvars
            for i, k in enumerate(m):
                if k:
                    if pos[i] is None:
                        raise RingMismatchError(f"{self.ring.names[i]} is not a variable of {target}")
                    e[pos[i]] = k
            out[tuple(e)] = c
        return Polynomial._raw(target, out)

    def coefficients_in(self, names: Sequence[str]) -> Dict[Monomial, "Polynomial"]:
        """Split as sum over monomials in ``names`` with coefficients free of them."""
        idx = [self.ring.index(n) for n in names]
        out: Dict[Monomial, Dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            key = tuple(m[i] for i in idx)
            rest = list(m)
            for i in idx:
                rest[i] = 0
            out.setdefault(key, {})[tuple(rest)] = c
        return {k: Polynomial._raw(self.ring, v) for k, v in out.items()}

    # -- printing ----------------------------------------------------------
    def to_string(self, order: "MonomialOrder" = None) -> str:
        if not self.terms:
            return "0"
        order = order or grevlex()
        parts = []
        for m in sorted(self.terms, key=order.key, reverse=True):
            c = self.terms[m]
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.ring.names, m) if k
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = _fmt_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_fmt_rational(a)}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.to_string()!r} over {self.ring})"


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# Monomial orders


class MonomialOrder:
    """A term order given by a sort key on exponent tuples.

    ``kind`` is ``"lex"``, ``"grevlex"`` or ``"block"``; a block order compares
    the exponents of the ``front`` variable indices first (with ``inner``) and
    breaks ties on the remaining variables (again with ``inner``).
    """

    def __init__(self, kind: str, front: Tuple[int, ...] = (), inner: "MonomialOrder" = None):
        if kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown order kind {kind!r}")
        if kind == "block" and inner is None:
            inner = grevlex()
        self.kind = kind
        self.front = tuple(sorted(front))
        self.inner = inner
        self.key = lru_cache(maxsize=1 << 18)(self._make_key())

    def _make_key(self):
        if self.kind == "lex":
            return lambda m: m
        if self.kind == "grevlex":
            return lambda m: (sum(m), tuple(-k for k in reversed(m)))
        front = self.front
        fset = set(front)
        inner_key = self.inner.key

        def key(m):
            rest = tuple(k for i, k in enumerate(m) if i not in fset)
            return (inner_key(tuple(m[i] for i in front)), inner_key(rest))

        return key

    def _ident(self):
        return (self.kind, self.front, self.inner._ident() if self.inner else None)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self._ident() == other._ident()

    def __hash__(self):
        return hash(self._ident())

    def __repr__(self):
        if self.kind == "block":
            return f"block({list(self.front)}, {self.inner!r})"
        return self.kind


_LEX = MonomialOrder("lex")
_GREVLEX = MonomialOrder("grevlex")


def lex() -> MonomialOrder:
    return _LEX


def grevlex() -> MonomialOrder:
    return _GREVLEX


def block(ring: Ring, front_names: Iterable[str], inner: MonomialOrder = None) -> MonomialOrder:
    """Elimination order in which any monomial involving ``front_names`` dominates."""
    return MonomialOrder("block", tuple(ring.index(n) for n in front_names), inner or grevlex())


def compare_monomials(a: Monomial, b: Monomial, order: MonomialOrder) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to, or greater than ``b``."""
    ka, kb = order.key(tuple(a)), order.key(tuple(b))
    return (ka > kb) - (ka < kb)


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if a.ring != b.ring:
        raise RingMismatchError(f"{a.ring} vs {b.ring}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# Parsing
#
#   expr   := term (('+'|'-') term)*
#   term   := factor ('*' factor)*
#   factor := atom ('^' posint)?
#   atom   := integer ('/' posint)? | identifier | '(' expr ')'
#
# A leading '-' is accepted on the first term of an expression.

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<id>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*^/()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastgroup)
        tokens.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind, value=None):
        tok = self.take()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want!r}, got {got!r}", tok[2], self.text)
        return tok

    def expr(self) -> Polynomial:
        neg = False
        if self.peek()[:2] == ("op", "-"):
            self.take()
            neg = True
        acc = self.term()
        if neg:
            acc = -acc
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.expect("int")
            base = base ** int(tok[1])
        return base

    def atom(self) -> Polynomial:
        kind, val, pos = self.take()
        if kind == "int":
            num = int(val)
            if self.peek()[:2] == ("op", "/"):
                self.take()
                _, den, dpos = self.expect("int")
                if int(den) == 0:
                    raise ParseError("zero denominator", dpos, self.text)
                return self.ring.const(Fraction(num, int(den)))
            return self.ring.const(num)
        if kind == "id":
            if val not in self.ring.names:
                raise UnknownVariableError(val, pos, self.text)
            return self.ring.var(val)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect("op", ")")
            return inner
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos, self.text)


def parse_polynomial(text: str, ring: Union[Ring, Sequence[str]]) -> Polynomial:
    """Parse ``text`` over ``ring`` (a :class:`Ring` or a sequence of names).

    >>> str(parse_polynomial("T1*T2 + T3*T4 + T5^2", ["T1", "T2", "T3", "T4", "T5"]))
    'T1*T2 + T3*T4 + T5^2'
    """
    if not isinstance(ring, Ring):
        ring = Ring(tuple(ring))
    p = _Parser(text, ring)
    if p.peek()[0] == "end":
        raise ParseError("empty expression", 0, text)
    result = p.expr()
    tok = p.peek()
    if tok[0] != "end":
        raise ParseError(f"unexpected {tok[1]!r}", tok[2], text)
    return result
