"""Exact scalar fields: the rationals, number fields Q[a]/(m(a)) and Q(t).

Rationals are :class:`fractions.Fraction`.  Univariate polynomials over Q are
plain lists of Fractions, constant term first, with no trailing zeros.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import sympy

from .errors import NotMonic, Reducible, ZeroFunction

__all__ = [
    "QQ",
    "QQt",
    "RationalFunctionField",
    "RationalField",
    "NumberField",
    "NumberFieldElement",
    "RationalFunction",
    "nf_new",
    "nf_trace",
    "ratfun_split",
    "upoly_factor",
    "monic_integer_model",
]


# ---------------------------------------------------------------------------
# univariate polynomials over Q


def utrim(p: Sequence) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def uadd(p, q):
    n = max(len(p), len(q))
    return utrim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def uneg(p):
    return [-c for c in p]


def usub(p, q):
    return uadd(p, uneg(q))


def umul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return utrim(out)


def uscale(p, c):
    return utrim([c * a for a in p])


def udivmod(p, q):
    """Quotient and remainder of p by q (q nonzero)."""
    q = utrim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in utrim(p)]
    lead = Fraction(q[-1])
    dq = len(q) - 1
    quo = [Fraction(0)] * max(len(r) - dq, 0)
    while len(r) - 1 >= dq and r:
        shift = len(r) - 1 - dq
        c = r[-1] / lead
        quo[shift] = c
        for i, b in enumerate(q):
            r[shift + i] -= c * b
        r = utrim(r)
    return utrim(quo), r


def umonic(p):
    p = utrim(p)
    lead = Fraction(p[-1])
    return [Fraction(c) / lead for c in p]


def ugcd(p, q):
    p, q = utrim(p), utrim(q)
    while q:
        p, q = q, udivmod(p, q)[1]
    return umonic(p) if p else []


def uegcd(p, q):
    """Return (g, s, t) with s*p + t*q = g = monic gcd."""
    r0, r1 = utrim(p), utrim(q)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        quo, rem = udivmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, usub(s0, umul(quo, s1))
        t0, t1 = t1, usub(t0, umul(quo, t1))
    lead = Fraction(r0[-1])
    return umonic(r0), uscale(s0, 1 / lead), uscale(t0, 1 / lead)


def ueval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def uderiv(p):
    return utrim([i * p[i] for i in range(1, len(p))])


def uvaluation(p) -> int:
    for i, c in enumerate(p):
        if c != 0:
            return i
    raise ZeroFunction("valuation of the zero polynomial")


def _divisors(n: int) -> list[int]:
    return sympy.divisors(abs(n))


def integer_model(p) -> tuple[list[int], int]:
    """Return (q, D) with q monic integral and q(D*x) = D^deg * monic(p)(x)."""
    m = [Fraction(c) for c in umonic(p)]
    d = len(m) - 1
    D = 1
    for i in range(d):
        for prime, e in sympy.factorint(m[i].denominator).items():
            need = -(-e // (d - i))
            while D % prime**need:
                D *= prime
    return [int(m[i] * D ** (d - i)) for i in range(d)] + [1], D


def monic_integer_model(p) -> list[int]:
    """Monic integer polynomial whose roots are D times the roots of ``p``.

    The stem fields Q[x]/(p) and Q[x]/(result) are isomorphic.
    """
    return integer_model(p)[0]


def _primitive(p) -> list[int]:
    """Integer polynomial with coprime coefficients and the same roots as ``p``."""
    p = [Fraction(c) for c in utrim(list(p))]
    den = math.lcm(*(c.denominator for c in p))
    ints = [int(c * den) for c in p]
    g = math.gcd(*ints)
    return [c // g for c in ints]


def _rational_roots(p) -> list[Fraction]:
    """Distinct rational roots of a nonzero polynomial over Q."""
    q = _primitive(p)
    roots = []
    if q[0] == 0:
        roots.append(Fraction(0))
        while q and q[0] == 0:
            q = q[1:]
    if len(q) < 2:
        return roots
    for num in _divisors(q[0]):
        for den in _divisors(q[-1]):
            for r in (Fraction(num, den), Fraction(-num, den)):
                if r not in roots and ueval(q, r) == 0:
                    roots.append(r)
    return roots


def _quadratic_factor(p):
    """An irreducible-or-not quadratic factor over Q of ``p``, or None.

    Kronecker's method: an integral quadratic factor g of the primitive model
    has g(0), g(1), g(-1) dividing the corresponding values of p, and is
    determined by them.  Assumes p has no rational roots, so those values are
    nonzero.
    """
    q = _primitive(p)
    if len(q) - 1 < 4:
        return None
    v0, v1, vm = q[0], ueval(q, 1), ueval(q, -1)
    if 0 in (v0, v1, vm):
        return None
    for d0 in _divisors(v0):
        for a1 in _divisors(v1):
            for d1 in (a1, -a1):
                for am in _divisors(vm):
                    for dm in (am, -am):
                        if (d1 + dm) % 2:
                            continue
                        c2 = (d1 + dm) // 2 - d0
                        c1 = (d1 - dm) // 2
                        if c2 == 0:
                            continue
                        g = [Fraction(d0), Fraction(c1), Fraction(c2)]
                        if not udivmod(q, g)[1]:
                            return umonic(g)
    return None


def upoly_factor(p) -> list[list[Fraction]]:
    """Monic irreducible factors (with repetition) of a polynomial over Q.

    Uses rational roots and quadratic factors only, which is complete up to
    degree 5.  A cofactor of degree >= 6 without such factors is returned
    unsplit; callers must treat it as unverified.
    """
    work = umonic(p)
    factors: list[list[Fraction]] = []
    while len(work) > 2:
        roots = _rational_roots(work)
        if roots:
            lin = [-roots[0], Fraction(1)]
            factors.append(lin)
            work = udivmod(work, lin)[0]
            continue
        quad = _quadratic_factor(work)
        if quad is None:
            break
        factors.append(quad)
        work = udivmod(work, quad)[0]
    if len(work) > 1:
        factors.append(umonic(work))
    return factors


# ---------------------------------------------------------------------------
# fields


class RationalField:
    """The field Q; elements are Fractions."""

    degree = 1
    is_rational = True
    min_poly = (0, 1)
    irreducibility_verified = True

    def __call__(self, value) -> Fraction:
        if isinstance(value, NumberFieldElement):
            if not value.is_rational():
                raise TypeError(f"{value} is not rational")
            return value.coords[0]
        return Fraction(value)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def basis(self):
        return [Fraction(1)]

    def trace(self, x) -> Fraction:
        return Fraction(x)

    def coords(self, x) -> list[Fraction]:
        return [Fraction(x)]

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __reduce__(self):
        return (_get_qq, ())


def _get_qq():
    return QQ


QQ = RationalField()


class NumberField:
    """Q[a]/(m(a)) for a monic integer polynomial m, given constant term first.

    Elements are stored in the power basis 1, a, ..., a^(d-1).
    """

    is_rational = False

    def __init__(self, min_poly: Sequence[int]):
        coeffs = utrim([int(c) for c in min_poly])
        if len(coeffs) < 2:
            raise NotMonic("minimal polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise NotMonic(f"minimal polynomial {coeffs} is not monic")
        self.min_poly = tuple(coeffs)
        self.degree = len(coeffs) - 1
        self.irreducibility_verified = True
        if self.degree >= 2:
            if _rational_roots(coeffs):
                raise Reducible(f"{_fmt_upoly(coeffs)} has a rational root")
            if self.degree in (4, 5):
                if _quadratic_factor(coeffs) is not None:
                    raise Reducible(f"{_fmt_upoly(coeffs)} has a quadratic factor")
            elif self.degree >= 6:
                self.irreducibility_verified = False
        self._trace_basis = None

    def __call__(self, value) -> NumberFieldElement:
        if isinstance(value, NumberFieldElement):
            if value.parent != self:
                raise TypeError("element of a different number field")
            return value
        if isinstance(value, (list, tuple)):
            return NumberFieldElement(self, value)
        return NumberFieldElement(self, [Fraction(value)])

    @property
    def zero(self):
        return NumberFieldElement(self, [])

    @property
    def one(self):
        return NumberFieldElement(self, [Fraction(1)])

    @property
    def gen(self):
        if self.degree == 1:
            return NumberFieldElement(self, [Fraction(-self.min_poly[0])])
        return NumberFieldElement(self, [0, 1])

    def basis(self):
        return [NumberFieldElement(self, [0] * i + [1]) for i in range(self.degree)]

    def _reduce(self, p) -> list[Fraction]:
        return udivmod(p, list(self.min_poly))[1]

    def trace(self, x) -> Fraction:
        return nf_trace(self(x))

    def coords(self, x) -> list[Fraction]:
        return list(self(x).coords)

    def __repr__(self):
        return f"NumberField({_fmt_upoly(self.min_poly, 'x')})"

    def __eq__(self, other):
        return isinstance(other, NumberField) and other.min_poly == self.min_poly

    def __hash__(self):
        return hash(("NF", self.min_poly))


def _fmt_upoly(coeffs, var="x") -> str:
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
        if mono and abs(c) == 1:
            s = mono
        elif mono:
            s = f"{abs(c)}*{mono}"
        else:
            s = str(abs(c))
        parts.append(("- " if c < 0 else "+ ") + s)
    if not parts:
        return "0"
    out = " ".join(parts)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


def nf_new(min_poly: Sequence[int]):
    """Number field defined by a monic integer polynomial (constant term first)."""
    return NumberField(min_poly)


class NumberFieldElement:
    __slots__ = ("parent", "coords")

    def __init__(self, parent: NumberField, coords: Iterable):
        self.parent = parent
        c = [Fraction(x) for x in coords]
        if len(c) > parent.degree:
            c = parent._reduce(c)
        c = c + [Fraction(0)] * (parent.degree - len(c))
        self.coords = tuple(c)

    def _coerce(self, other):
        if isinstance(other, NumberFieldElement):
            if other.parent != self.parent:
                raise TypeError("mixed number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return NumberFieldElement(self.parent, [other])
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return NumberFieldElement(self.parent, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self):
        return NumberFieldElement(self.parent, [-a for a in self.coords])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NumberFieldElement(self.parent, [a * other for a in self.coords])
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return NumberFieldElement(self.parent, self.parent._reduce(umul(list(self.coords), list(o.coords))))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a number field")
        g, s, _ = uegcd(utrim(list(self.coords)), list(self.parent.min_poly))
        if len(g) != 1:
            raise Reducible("element shares a factor with the minimal polynomial")
        return NumberFieldElement(self.parent, s)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return NumberFieldElement(self.parent, [a / Fraction(other) for a in self.coords])
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.parent.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, NumberFieldElement):
            return self.parent == other.parent and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        return hash((self.parent.min_poly, self.coords))

    def __repr__(self):
        return f"NumberFieldElement({self})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coords):
            if c == 0:
                continue
            mono = "" if i == 0 else "a" if i == 1 else f"a^{i}"
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        if not terms:
            return "0"
        s = " + ".join(terms)
        return s.replace("+ -", "- ")

    def trace(self) -> Fraction:
        return nf_trace(self)

    def norm(self) -> Fraction:
        return _det([[x for x in col] for col in _mult_columns(self)])


def _mult_columns(e: NumberFieldElement):
    return [list((e * b).coords) for b in e.parent.basis()]


def _det(m) -> Fraction:
    m = [[Fraction(x) for x in row] for row in m]
    n = len(m)
    det = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if m[r][i] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            m[i], m[piv] = m[piv], m[i]
            det = -det
        det *= m[i][i]
        for r in range(i + 1, n):
            f = m[r][i] / m[i][i]
            if f:
                for c in range(i, n):
                    m[r][c] -= f * m[i][c]
    return det


def nf_trace(e) -> Fraction:
    """Trace of multiplication by ``e`` on the field as a Q-vector space."""
    if not isinstance(e, NumberFieldElement):
        return Fraction(e)
    return sum((Fraction((e * b).coords[i]) for i, b in enumerate(e.parent.basis())), Fraction(0))


# ---------------------------------------------------------------------------
# Q(t)


class RationalFunction:
    """num/den in Q(t), den monic and coprime to num."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = utrim([Fraction(c) for c in num])
        den = [Fraction(1)] if den is None else utrim([Fraction(c) for c in den])
        if not den:
            raise ZeroFunction("zero denominator")
        if num:
            g = ugcd(num, den)
            if len(g) > 1:
                num = udivmod(num, g)[0]
                den = udivmod(den, g)[0]
        else:
            den = [Fraction(1)]
        lead = den[-1]
        self.num = tuple(c / lead for c in num)
        self.den = tuple(c / lead for c in den)

    @classmethod
    def t(cls):
        return cls([0, 1])

    @classmethod
    def parse(cls, text: str) -> "RationalFunction":
        """Parse an expression in ``t`` such as ``(3t + t^2)/(1 + t)``."""
        from .parse import evaluate

        return evaluate(text, {"t": cls.t()}, lambda q: cls([q]))

    @staticmethod
    def _lift(x):
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, (int, Fraction)):
            return RationalFunction([x])
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RationalFunction(
            uadd(umul(self.num, o.den), umul(o.num, self.den)), umul(self.den, o.den)
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(uneg(self.num), self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RationalFunction(umul(self.num, o.num), umul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise ZeroFunction("division by the zero function")
        return RationalFunction(umul(self.num, o.den), umul(self.den, o.num))

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RationalFunction([1]) / (self ** (-k))
        out = RationalFunction([1])
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.num

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        n = _fmt_upoly(self.num, "t")
        if self.den == (1,):
            return n
        return f"({n})/({_fmt_upoly(self.den, 't')})"

    def split(self) -> tuple[int, Fraction]:
        return ratfun_split(self)


def ratfun_split(f: RationalFunction) -> tuple[int, Fraction]:
    """Write f = t^m * u with u(0) != 0 and return (m, u(0))."""
    if f.is_zero():
        raise ZeroFunction("cannot split the zero function")
    vn, vd = uvaluation(f.num), uvaluation(f.den)
    return vn - vd, Fraction(f.num[vn]) / Fraction(f.den[vd])


class RationalFunctionField:
    """Descriptor for Q(t); calling it converts strings, numbers and functions."""

    def __call__(self, value) -> RationalFunction:
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, str):
            return RationalFunction.parse(value)
        return RationalFunction([Fraction(value)])

    @property
    def zero(self):
        return RationalFunction([])

    @property
    def one(self):
        return RationalFunction([1])

    def __repr__(self):
        return "QQ(t)"

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField)

    def __hash__(self):
        return hash("QQ(t)")


QQt = RationalFunctionField()
