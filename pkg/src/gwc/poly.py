"""Sparse multivariate polynomials over Q or a number field, and monomial orders."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .errors import IndexOutOfRange, ParseError, RingMismatch
from .fields import QQ, NumberField, NumberFieldElement, RationalField

__all__ = [
    "MonomialOrder",
    "DEGREVLEX",
    "LEX",
    "MultiPoly",
    "poly_arith",
    "partial_derivative",
    "is_weighted_homogeneous",
    "parse_poly",
    "variable_names",
    "weighted_degree",
]

Monomial = tuple


def weighted_degree(exp: Sequence[int], weights: Sequence[int]) -> int:
    return sum(a * e for a, e in zip(weights, exp))


class MonomialOrder:
    """A monomial order; ``key(m)`` is larger for larger monomials."""

    KINDS = ("degrevlex", "lex", "weighted-degrevlex")

    def __init__(self, kind: str = "degrevlex", weights: Optional[Sequence[int]] = None):
        if kind not in self.KINDS:
            raise ValueError(f"unknown monomial order {kind!r}")
        if kind == "weighted-degrevlex":
            if not weights or any(int(w) <= 0 for w in weights):
                raise ValueError("weighted-degrevlex needs positive weights")
            weights = tuple(int(w) for w in weights)
        else:
            weights = None
        self.kind = kind
        self.weights = weights

    def key(self, m: Monomial):
        if self.kind == "lex":
            return tuple(m)
        tail = tuple(-e for e in reversed(m))
        if self.kind == "degrevlex":
            return (sum(m), tail)
        if len(self.weights) != len(m):
            raise RingMismatch("order weights do not match the number of variables")
        return (weighted_degree(m, self.weights), tail)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.weights) == (other.kind, other.weights)

    def __hash__(self):
        return hash((self.kind, self.weights))

    def __repr__(self):
        if self.weights:
            return f"MonomialOrder({self.kind!r}, {list(self.weights)})"
        return f"MonomialOrder({self.kind!r})"


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


def variable_names(nvars: int) -> list[str]:
    if nvars <= 4:
        return ["x", "y", "z", "w"][:nvars]
    return [f"x{i}" for i in range(nvars)]


def _coerce(field, c):
    if isinstance(field, RationalField):
        if isinstance(c, NumberFieldElement):
            raise RingMismatch("number field coefficient in a polynomial over QQ")
        return Fraction(c)
    return field(c)


class MultiPoly:
    """Immutable sparse polynomial: ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("terms", "nvars", "field", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | Iterable = (), nvars: int = 1, field=QQ):
        self.nvars = int(nvars)
        self.field = field
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict = {}
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.nvars:
                raise RingMismatch(f"monomial {exp} has wrong length for {self.nvars} variables")
            if any(e < 0 for e in exp):
                raise ValueError("negative exponent")
            c = _coerce(field, c)
            if exp in clean:
                c = clean[exp] + c
            if c == 0:
                clean.pop(exp, None)
            else:
                clean[exp] = c
        self.terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def zero(cls, nvars: int, field=QQ) -> "MultiPoly":
        return cls({}, nvars, field)

    @classmethod
    def const(cls, c, nvars: int, field=QQ) -> "MultiPoly":
        return cls({(0,) * nvars: c}, nvars, field)

    @classmethod
    def var(cls, i: int, nvars: int, field=QQ) -> "MultiPoly":
        if not 0 <= i < nvars:
            raise IndexOutOfRange(f"variable index {i} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[i] = 1
        return cls({tuple(exp): 1}, nvars, field)

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff=1, field=QQ) -> "MultiPoly":
        return cls({tuple(exp): coeff}, len(exp), field)

    # ring plumbing
    def _check(self, other: "MultiPoly"):
        if other.nvars != self.nvars or other.field != self.field:
            raise RingMismatch(
                f"polynomials live in different rings ({self.nvars} vars over {self.field!r} "
                f"vs {other.nvars} vars over {other.field!r})"
            )

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, NumberFieldElement)):
            return MultiPoly.const(other, self.nvars, self.field)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for exp, c in o.terms.items():
            out[exp] = out.get(exp, 0) + c
        return MultiPoly(out, self.nvars, self.field)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({e: -c for e, c in self.terms.items()}, self.nvars, self.field)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, NumberFieldElement)):
            return self.scale(other)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(out, self.nvars, self.field)

    __rmul__ = __mul__

    def scale(self, c) -> "MultiPoly":
        c = _coerce(self.field, c)
        return MultiPoly({e: v * c for e, v in self.terms.items()}, self.nvars, self.field)

    def __truediv__(self, c):
        if isinstance(c, MultiPoly):
            if not c.is_constant() or c.is_zero():
                raise ParseError("division by a non-constant polynomial")
            c = c.constant_term()
        c = _coerce(self.field, c)
        return self.scale(1 / c)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial exponent must be a non-negative integer")
        result = MultiPoly.const(1, self.nvars, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, exp: Sequence[int], c=1) -> "MultiPoly":
        c = _coerce(self.field, c)
        return MultiPoly(
            {tuple(a + b for a, b in zip(e, exp)): v * c for e, v in self.terms.items()},
            self.nvars,
            self.field,
        )

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.field == other.field and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.const(other, self.nvars, self.field)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self.field, frozenset(self.terms.items())))
        return self._hash

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, _coerce(self.field, 0))

    def coeff(self, exp: Sequence[int]):
        return self.terms.get(tuple(exp), _coerce(self.field, 0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def monomials(self, order: MonomialOrder = DEGREVLEX) -> list[Monomial]:
        """Monomials sorted from largest to smallest."""
        return sorted(self.terms, key=order.key, reverse=True)

    def leading_monomial(self, order: MonomialOrder = DEGREVLEX) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_term(self, order: MonomialOrder = DEGREVLEX):
        m = self.leading_monomial(order)
        return m, self.terms[m]

    def leading_coefficient(self, order: MonomialOrder = DEGREVLEX):
        return self.leading_term(order)[1]

    def monic(self, order: MonomialOrder = DEGREVLEX) -> "MultiPoly":
        return self.scale(1 / self.leading_coefficient(order))

    def diff(self, i: int) -> "MultiPoly":
        if not 0 <= i < self.nvars:
            raise IndexOutOfRange(f"variable index {i} out of range for {self.nvars} variables")
        out = {}
        for e, c in self.terms.items():
            if e[i] > 0:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return MultiPoly(out, self.nvars, self.field)

    def weighted_part(self, weights: Sequence[int], degree: int) -> "MultiPoly":
        return MultiPoly(
            {e: c for e, c in self.terms.items() if weighted_degree(e, weights) == degree},
            self.nvars,
            self.field,
        )

    def weighted_degrees(self, weights: Sequence[int]) -> set[int]:
        return {weighted_degree(e, weights) for e in self.terms}

    def evaluate(self, point: Sequence):
        acc = _coerce(self.field, 0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x**k
            acc = acc + v
        return acc

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Replace variable i by ``images[i]`` (all in one common ring)."""
        if len(images) != self.nvars:
            raise RingMismatch("need one image per variable")
        target = images[0]
        acc = MultiPoly.zero(target.nvars, target.field)
        for e, c in self.terms.items():
            term = MultiPoly.const(c, target.nvars, target.field)
            for img, k in zip(images, e):
                if k:
                    term = term * img**k
            acc = acc + term
        return acc

    def change_field(self, field) -> "MultiPoly":
        """Coerce coefficients into ``field`` (e.g. Q into a number field)."""
        out = {}
        for e, c in self.terms.items():
            if isinstance(field, RationalField):
                out[e] = QQ(c)
            else:
                out[e] = field(c) if not isinstance(c, NumberFieldElement) else field(c)
        return MultiPoly(out, self.nvars, field)

    # text
    def to_str(self, names: Optional[Sequence[str]] = None, order: MonomialOrder = DEGREVLEX) -> str:
        names = list(names) if names else variable_names(self.nvars)
        if not self.terms:
            return "0"
        pieces = []
        for exp in self.monomials(order):
            c = self.terms[exp]
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, exp) if k)
            neg, body = _coeff_text(c)
            if not mono:
                text = body
            elif body == "1":
                text = mono
            else:
                text = f"{body}*{mono}"
            pieces.append((neg, text))
        out = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, text in pieces[1:]:
            out += (" - " if neg else " + ") + text
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MultiPoly({self.to_str()!r}, nvars={self.nvars})"


def _coeff_text(c) -> tuple[bool, str]:
    if isinstance(c, NumberFieldElement):
        if c.is_rational():
            q = c.coords[0]
            return q < 0, str(abs(q))
        return False, f"({c})"
    c = Fraction(c)
    return c < 0, str(abs(c))


def poly_arith(p: MultiPoly, q: MultiPoly, op: str) -> MultiPoly:
    """``op`` is one of ``add``, ``sub``, ``mul``."""
    if not isinstance(p, MultiPoly) or not isinstance(q, MultiPoly):
        raise RingMismatch("poly_arith expects two MultiPoly values")
    p._check(q)
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(p: MultiPoly, var_index: int) -> MultiPoly:
    return p.diff(var_index)


def is_weighted_homogeneous(F: MultiPoly, a: Sequence[int]) -> Optional[int]:
    """Weighted degree e if every monomial of F has weighted degree e, else None."""
    if len(a) != F.nvars or any(int(w) <= 0 for w in a):
        raise ValueError("weights must be positive, one per variable")
    degs = F.weighted_degrees(a)
    if len(degs) == 1:
        return degs.pop()
    return None


_INDEXED = re.compile(r"\bx(\d)\b")
_NAMED = ["x", "y", "z", "w"]


def parse_poly(text: str, nvars: Optional[int] = None, field=QQ, generator: str = "a") -> MultiPoly:
    """Parse ``x^3 - y^2`` style text.

    Variables are ``x, y, z, w`` or ``x0 .. x9`` (not mixed).  Over a number
    field the symbol ``generator`` (default ``a``) denotes the field generator.
    """
    from .parse import evaluate, normalize

    src = normalize(text)
    indexed = sorted({int(m) for m in _INDEXED.findall(src)})
    named = [n for n in _NAMED if re.search(rf"\b{n}\b", src)]
    if indexed and named:
        raise ParseError(f"mixed variable styles in {text!r}")
    if indexed:
        names = [f"x{i}" for i in range(10)]
        needed = max(indexed) + 1
    else:
        names = list(_NAMED)
        needed = max((_NAMED.index(n) + 1 for n in named), default=1)
    if nvars is None:
        nvars = needed
    elif nvars < needed:
        raise ParseError(f"{text!r} uses {needed} variables but only {nvars} were allowed")
    if not indexed and nvars > 4:
        if named and named != ["x"]:
            raise ParseError(f"use x0..x{nvars - 1} for more than four variables")
        names = [f"x{i}" for i in range(nvars)]
    symbols = {names[i]: MultiPoly.var(i, nvars, field) for i in range(nvars)}
    if isinstance(field, NumberField):
        symbols[generator] = MultiPoly.const(field.gen, nvars, field)

    def lift(q):
        return MultiPoly.const(q, nvars, field)

    value = evaluate(text, symbols, lift)
    if not isinstance(value, MultiPoly):
        raise ParseError(f"{text!r} did not evaluate to a polynomial")
    return value
