"""Grothendieck-Witt classes over Q and over number fields.

Equality in GW(Q) is decided with the classical invariants (rank, signature,
discriminant, Hasse invariants at every relevant prime).  That these four
invariants classify nondegenerate forms over Q is the Hasse-Minkowski
theorem, used here as an external fact.

Hasse invariant convention: for a diagonal form <a_1, ..., a_r>,
eps_p = prod_{i<j} (a_i, a_j)_p.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from sympy import factorint

from .errors import (
    Degenerate,
    DegenerateTraceForm,
    FieldMismatch,
    SchemaError,
    UnsupportedField,
    ZeroEntry,
)
from .fields import QQ, NumberField, NumberFieldElement, RationalField, RationalFunction, nf_trace, ratfun_split

__all__ = [
    "square_class_reduce",
    "hilbert_symbol",
    "determinant",
    "QuadraticForm",
    "DiagonalForm",
    "diagonalize",
    "GWClass",
    "gw_add",
    "gw_mul",
    "gw_neg",
    "hyperbolic",
    "InvariantProfile",
    "invariant_profile",
    "gw_equal",
    "is_witt_zero",
    "transfer_scharlau",
    "specialize_sp_t",
    "INF",
]

INF = math.inf


@lru_cache(maxsize=4096)
def _squarefree_int(n: int) -> int:
    if n == 0:
        raise ZeroEntry("zero has no square class")
    sign = -1 if n < 0 else 1
    out = 1
    for p, k in factorint(abs(n)).items():
        if k % 2:
            out *= p
    return sign * out


def square_class_reduce(a) -> int:
    """The squarefree integer in the square class of a nonzero rational."""
    q = Fraction(a)
    if q == 0:
        raise ZeroEntry("zero has no square class")
    return _squarefree_int(q.numerator * q.denominator)


@lru_cache(maxsize=4096)
def _prime_divisors(n: int) -> tuple:
    return tuple(sorted(factorint(abs(n)))) if n not in (0, 1, -1) else ()


def _split_p(n: int, p: int) -> tuple[int, int]:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n


def _is_inf(place) -> bool:
    return place == INF or (isinstance(place, str) and place.lower() in ("inf", "infinity", "∞", "real"))


def hilbert_symbol(a, b, place) -> int:
    """Hilbert symbol (a, b)_v for nonzero rationals and v a prime or infinity."""
    a, b = square_class_reduce(a), square_class_reduce(b)
    if _is_inf(place):
        return -1 if (a < 0 and b < 0) else 1
    p = int(place)
    if p < 2:
        raise ValueError(f"not a place: {place!r}")
    alpha, u = _split_p(a, p)
    beta, v = _split_p(b, p)
    if p == 2:
        eps_u, eps_v = ((u - 1) // 2) % 2, ((v - 1) // 2) % 2
        om_u, om_v = ((u * u - 1) // 8) % 2, ((v * v - 1) // 8) % 2
        e = eps_u * eps_v + alpha * om_v + beta * om_u
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    leg_u = _legendre(u, p)
    leg_v = _legendre(v, p)
    return sign * (leg_u**beta) * (leg_v**alpha)


def _legendre(u: int, p: int) -> int:
    r = pow(u % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else 1


# ---------------------------------------------------------------------------
# matrices over a field


def determinant(m: Sequence[Sequence]):
    n = len(m)
    if n == 0:
        return Fraction(1)
    a = [list(row) for row in m]
    det = a[0][0] * 0 + 1
    for i in range(n):
        piv = next((r for r in range(i, n) if a[r][i] != 0), None)
        if piv is None:
            return det * 0
        if piv != i:
            a[i], a[piv] = a[piv], a[i]
            det = -det
        det = det * a[i][i]
        for r in range(i + 1, n):
            if a[r][i] != 0:
                f = a[r][i] / a[i][i]
                for c in range(i, n):
                    a[r][c] = a[r][c] - f * a[i][c]
    return det


def _coerce_entry(field, x):
    if isinstance(field, RationalField):
        return Fraction(x)
    return field(x)


class QuadraticForm:
    """Nondegenerate symmetric Gram matrix over Q or a number field."""

    def __init__(self, field, matrix: Sequence[Sequence]):
        n = len(matrix)
        if any(len(row) != n for row in matrix):
            raise Degenerate("Gram matrix must be square")
        self.field = field
        self.matrix = [[_coerce_entry(field, x) for x in row] for row in matrix]
        for i in range(n):
            for j in range(i + 1, n):
                if self.matrix[i][j] != self.matrix[j][i]:
                    raise Degenerate("Gram matrix must be symmetric")
        if determinant(self.matrix) == 0:
            raise Degenerate("Gram matrix is degenerate")

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def diagonalize(self) -> "DiagonalForm":
        return diagonalize(self)

    def gw_class(self) -> "GWClass":
        return diagonalize(self).gw_class()

    def __repr__(self):
        return f"QuadraticForm({self.field!r}, {[[str(x) for x in r] for r in self.matrix]})"


class DiagonalForm:
    """<a_1, ..., a_r> with nonzero entries."""

    def __init__(self, field, entries: Iterable):
        self.field = field
        self.entries = [_coerce_entry(field, x) for x in entries]
        if any(x == 0 for x in self.entries):
            raise ZeroEntry("diagonal entries must be nonzero")

    @property
    def rank(self) -> int:
        return len(self.entries)

    def reduced_entries(self) -> list:
        if isinstance(self.field, RationalField):
            return [square_class_reduce(x) for x in self.entries]
        return list(self.entries)

    def gw_class(self) -> "GWClass":
        return GWClass.from_entries(self.entries, self.field)

    def __repr__(self):
        return f"DiagonalForm({', '.join(str(x) for x in self.entries)})"


def diagonalize(q: QuadraticForm, pivot_rule: str = "first") -> DiagonalForm:
    """Symmetric Gaussian elimination.

    If every remaining diagonal entry is zero, pick i, j with B(x_i, x_j) != 0
    and replace x_i by x_i + x_j.  ``pivot_rule="last"`` picks the last usable
    diagonal pivot instead of the first (used to cross-check invariance).
    """
    a = [list(row) for row in q.matrix]
    n = len(a)
    out = []
    for k in range(n):
        rows = range(k, n) if pivot_rule == "first" else range(n - 1, k - 1, -1)
        piv = next((i for i in rows if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in range(k, n) for j in range(k, n) if i != j and a[i][j] != 0), None)
            if pair is None:
                raise Degenerate("form is degenerate")
            i, j = pair
            for c in range(n):
                a[i][c] = a[i][c] + a[j][c]
            for r in range(n):
                a[r][i] = a[r][i] + a[r][j]
            piv = i
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            for row in a:
                row[k], row[piv] = row[piv], row[k]
        d = a[k][k]
        for r in range(k + 1, n):
            if a[r][k] != 0:
                f = a[r][k] / d
                for c in range(k, n):
                    a[r][c] = a[r][c] - f * a[k][c]
                for rr in range(k, n):
                    a[rr][r] = a[rr][r] - f * a[rr][k]
        out.append(d)
    return DiagonalForm(q.field, out)


# ---------------------------------------------------------------------------
# GW classes


def _check_fields(f1, f2):
    if f1 != f2:
        raise FieldMismatch(f"GW classes over different fields ({f1!r} vs {f2!r})")


class GWClass:
    """Formal sum of rank-one forms <a>, multiplicities may be negative.

    Over Q the keys are squarefree integers.  Over a number field the keys
    are field elements, kept as given (no square-class normalization).
    """

    __hash__ = None  # equality is semantic over Q

    def __init__(self, field=QQ, terms: Mapping | None = None):
        self.field = field
        clean: dict = {}
        for a, m in (terms or {}).items():
            m = int(m)
            if m == 0:
                continue
            key = square_class_reduce(a) if isinstance(field, RationalField) else field(a)
            if key == 0:
                raise ZeroEntry("<0> is not a class")
            clean[key] = clean.get(key, 0) + m
            if clean[key] == 0:
                del clean[key]
        self.terms = clean

    @classmethod
    def from_entries(cls, entries: Iterable, field=QQ) -> "GWClass":
        c: Counter = Counter()
        for a in entries:
            if a == 0:
                raise ZeroEntry("<0> is not a class")
            key = square_class_reduce(a) if isinstance(field, RationalField) else field(a)
            c[key] += 1
        return cls(field, dict(c))

    @classmethod
    def one(cls, field=QQ) -> "GWClass":
        return cls(field, {1: 1})

    @classmethod
    def zero(cls, field=QQ) -> "GWClass":
        return cls(field, {})

    @classmethod
    def angle(cls, a, field=QQ) -> "GWClass":
        return cls(field, {a: 1})

    @property
    def rank(self) -> int:
        return sum(self.terms.values())

    @property
    def is_rational(self) -> bool:
        return isinstance(self.field, RationalField)

    @property
    def signature(self) -> int:
        if not self.is_rational:
            raise UnsupportedField("signature needs a real embedding; transfer to Q first")
        return sum(m if a > 0 else -m for a, m in self.terms.items())

    def is_zero_structurally(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, GWClass):
            return NotImplemented
        _check_fields(self.field, other.field)
        out = dict(self.terms)
        for a, m in other.terms.items():
            out[a] = out.get(a, 0) + m
        return GWClass(self.field, out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return GWClass(self.field, {a: -m for a, m in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, GWClass):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GWClass(self.field, {a: m * other for a, m in self.terms.items()})
        if not isinstance(other, GWClass):
            return NotImplemented
        _check_fields(self.field, other.field)
        out: dict = {}
        for a, m in self.terms.items():
            for b, k in other.terms.items():
                ab = a * b
                key = _squarefree_int(ab) if self.is_rational else ab
                out[key] = out.get(key, 0) + m * k
        return GWClass(self.field, out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        out = GWClass.one(self.field)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, GWClass):
            return NotImplemented
        if self.field != other.field:
            return False
        if self.is_rational:
            return gw_equal(self, other)
        return self.terms == other.terms

    def sorted_terms(self) -> list:
        if self.is_rational:
            return sorted(self.terms.items())
        return sorted(self.terms.items(), key=lambda kv: tuple(kv[0].coords))

    def to_json(self) -> list[dict]:
        out = []
        for a, m in self.sorted_terms():
            entry = a if self.is_rational else [str(c) for c in a.coords]
            out.append({"entry": entry, "multiplicity": m})
        return out

    @classmethod
    def from_json(cls, data, field=QQ) -> "GWClass":
        if not isinstance(data, list):
            raise SchemaError("GW class must be a list of {entry, multiplicity} objects")
        terms: dict = {}
        for item in data:
            if not isinstance(item, dict) or set(item) != {"entry", "multiplicity"}:
                raise SchemaError(f"bad GW term {item!r}")
            m = item["multiplicity"]
            if not isinstance(m, int) or isinstance(m, bool):
                raise SchemaError(f"multiplicity must be an integer, got {m!r}")
            e = item["entry"]
            if isinstance(field, RationalField):
                if not isinstance(e, int) or isinstance(e, bool) or e == 0:
                    raise SchemaError(f"entry must be a nonzero integer, got {e!r}")
                key = e
            else:
                key = field([Fraction(c) for c in e])
            terms[key] = terms.get(key, 0) + m
        return cls(field, terms)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for a, m in self.sorted_terms():
            label = f"⟨{a}⟩"
            mag = abs(m)
            body = label if mag == 1 else f"{mag}{label}"
            parts.append((m < 0, body))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"GWClass({self.to_text()})"


def gw_add(g1: GWClass, g2: GWClass) -> GWClass:
    return g1 + g2


def gw_mul(g1: GWClass, g2: GWClass) -> GWClass:
    return g1 * g2


def gw_neg(g: GWClass) -> GWClass:
    return -g


def hyperbolic(m: int = 1, field=QQ) -> GWClass:
    """m * (<1> + <-1>)."""
    return GWClass(field, {1: m, -1: m})


# ---------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class InvariantProfile:
    rank: int
    signature: int
    discriminant: int
    hasse: dict
    hasse_real: int
    primes: tuple
    padding: int

    def as_dict(self) -> dict:
        return {
            "rank": self.rank,
            "signature": self.signature,
            "discriminant": self.discriminant,
            "hasse": {str(p): s for p, s in sorted(self.hasse.items())},
            "hasse_real": self.hasse_real,
            "padding": self.padding,
        }


def _padding(g: GWClass) -> int:
    return sum(-m for m in g.terms.values() if m < 0)


def _honest_entries(g: GWClass, pad: int) -> list[int]:
    """Entries of a genuine form isometric to g + pad * h (pad >= _padding(g)).

    Uses -<a> = <-a> - h to clear negative multiplicities.
    """
    entries: list[int] = []
    for a, m in g.sorted_terms():
        if m > 0:
            entries += [a] * m
        else:
            entries += [-a] * (-m)
    extra = pad - _padding(g)
    if extra < 0:
        raise ValueError("padding too small")
    entries += [1, -1] * extra
    return entries


def _hasse(entries: Sequence[int], place) -> int:
    eps, d = 1, 1
    for a in entries:
        eps *= hilbert_symbol(d, a, place)
        d = _squarefree_int(d * a)
    return eps


def _profile(entries: list[int], places: Iterable[int], pad: int) -> InvariantProfile:
    disc = 1
    for a in entries:
        disc = _squarefree_int(disc * a)
    places = tuple(sorted(set(places)))
    return InvariantProfile(
        rank=len(entries) - 2 * pad,
        signature=sum(1 if a > 0 else -1 for a in entries),
        discriminant=disc,
        hasse={p: _hasse(entries, p) for p in places},
        hasse_real=_hasse(entries, INF),
        primes=places,
        padding=pad,
    )


def _relevant_primes(g: GWClass) -> set[int]:
    ps = {2}
    for a in g.terms:
        ps.update(_prime_divisors(a))
    return ps


def _require_rational(g: GWClass):
    if not g.is_rational:
        raise UnsupportedField("invariants are only implemented over Q; transfer number-field classes first")


def invariant_profile(g: GWClass, padding: int | None = None) -> InvariantProfile:
    """Rank, signature, discriminant and Hasse invariants of g.

    Virtual classes are made honest by adding ``padding`` copies of h; the
    padding is recorded in the profile.  Rank and signature refer to g itself,
    discriminant and Hasse invariants to the padded form.
    """
    _require_rational(g)
    pad = _padding(g) if padding is None else padding
    entries = _honest_entries(g, pad)
    return _profile(entries, _relevant_primes(g), pad)


def gw_equal(g1: GWClass, g2: GWClass) -> bool:
    if g1.field != g2.field:
        raise FieldMismatch("GW classes over different fields")
    _require_rational(g1)
    if g1.rank != g2.rank or g1.signature != g2.signature:
        return False
    pad = max(_padding(g1), _padding(g2))
    places = _relevant_primes(g1) | _relevant_primes(g2)
    p1 = _profile(_honest_entries(g1, pad), places, pad)
    p2 = _profile(_honest_entries(g2, pad), places, pad)
    return (
        p1.discriminant == p2.discriminant
        and p1.hasse == p2.hasse
        and p1.hasse_real == p2.hasse_real
    )


def is_witt_zero(g: GWClass) -> bool:
    """g is a multiple of h in GW(Q)."""
    _require_rational(g)
    if g.rank % 2:
        return False
    return gw_equal(g, hyperbolic(g.rank // 2))


# ---------------------------------------------------------------------------
# transfer and specialization


def _trace_form(nf: NumberField, a: NumberFieldElement) -> DiagonalForm:
    basis = nf.basis()
    d = nf.degree
    gram = [[nf_trace(a * basis[i] * basis[j]) for j in range(d)] for i in range(d)]
    try:
        return diagonalize(QuadraticForm(QQ, gram))
    except Degenerate:
        raise DegenerateTraceForm("trace form is degenerate; field input is invalid") from None


def transfer_scharlau(nf, form) -> GWClass:
    """Scharlau transfer Tr_{nf/Q}: compose each rank-one form with the trace.

    ``form`` may be a DiagonalForm, a GWClass over nf, or a list of entries.
    """
    if isinstance(form, GWClass):
        _check_fields(form.field, nf)
        items = list(form.terms.items())
    elif isinstance(form, DiagonalForm):
        _check_fields(form.field, nf)
        items = [(a, 1) for a in form.entries]
    else:
        items = [(a, 1) for a in form]
    if isinstance(nf, RationalField):
        return GWClass(QQ, _merge((square_class_reduce(a), m) for a, m in items))
    total = GWClass.zero(QQ)
    for a, m in items:
        a = nf(a)
        if a == 0:
            raise ZeroEntry("<0> is not a class")
        total = total + _trace_form(nf, a).gw_class() * m
    return total


def _merge(pairs) -> dict:
    out: dict = {}
    for a, m in pairs:
        out[a] = out.get(a, 0) + m
    return out


def specialize_sp_t(form) -> GWClass:
    """sp_t on diagonal forms over Q(t): <t^m u> goes to <u(0)>."""
    entries = form.entries if isinstance(form, DiagonalForm) else list(form)
    out = GWClass.zero(QQ)
    for f in entries:
        if isinstance(f, str):
            f = RationalFunction.parse(f)
        elif not isinstance(f, RationalFunction):
            f = RationalFunction([Fraction(f)])
        if f.is_zero():
            raise ZeroEntry("cannot specialize <0>")
        _, u0 = ratfun_split(f)
        out = out + GWClass.angle(u0)
    return out
