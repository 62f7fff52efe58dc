"""Jacobian rings, Scheja-Storch forms and singularity-shape validators."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Optional, Sequence

from .errors import (
    ConstantTermPresent,
    Degenerate,
    InputError,
    NotAtOrigin,
    NotIsolated,
    NotZeroDimensional,
    SmoothPoint,
    ZeroElement,
)
from .groebner import (
    GroebnerBasis,
    buchberger,
    coords_in_basis,
    local_quotient_basis,
    mult_matrix,
    standard_monomials,
    supported_at_origin,
)
from .gw import QuadraticForm, determinant
from .poly import DEGREVLEX, MonomialOrder, MultiPoly, weighted_degree

__all__ = [
    "JacobianRing",
    "jacobian_ring",
    "decompose_partials",
    "scheja_storch_element",
    "SchejaStorchForm",
    "scheja_storch_form",
    "milnor_form",
    "random_functional",
    "ValidationReport",
    "check_looks_like",
]


class JacobianRing:
    """Q-algebra O/(df/ds_0, ..., df/ds_n) at the origin, with a monomial basis."""

    def __init__(self, f: MultiPoly, jacobian_gb: GroebnerBasis, basis: Sequence[tuple], localized: bool, power=None):
        self.f = f
        self.jacobian_gb = jacobian_gb
        self.basis = list(basis)
        self.localized = localized
        # N with m^N contained in the ideal, when the presentation was localized
        self.localization_power = power

    @property
    def field(self):
        return self.f.field

    @property
    def nvars(self) -> int:
        return self.f.nvars

    @property
    def milnor_number(self) -> int:
        return len(self.basis)

    @property
    def partials(self) -> list[MultiPoly]:
        return [self.f.diff(i) for i in range(self.f.nvars)]

    @cached_property
    def mult_matrices(self) -> list[list[list]]:
        return [
            mult_matrix(self.jacobian_gb, self.basis, MultiPoly.var(i, self.nvars, self.field))
            for i in range(self.nvars)
        ]

    def coords(self, p: MultiPoly) -> list:
        return coords_in_basis(p, self.jacobian_gb, self.basis)

    def basis_polys(self) -> list[MultiPoly]:
        return [MultiPoly.monomial(m, self.field.one, self.field) for m in self.basis]

    def __repr__(self):
        return f"JacobianRing(f={self.f}, mu={self.milnor_number})"


def _check_singular_at_origin(f: MultiPoly):
    if f.is_zero():
        raise NotIsolated("the zero polynomial has no isolated singularity")
    if f.constant_term() != 0:
        raise ConstantTermPresent(f"{f} does not vanish at the origin")
    if any(sum(e) == 1 for e in f.terms):
        raise SmoothPoint(f"{f} has a nonzero linear part, so the origin is a smooth point")


def jacobian_ring(f: MultiPoly, order: MonomialOrder = DEGREVLEX, local: bool = False) -> JacobianRing:
    """Jacobian ring of f at the origin.

    With ``local=False`` the global Jacobian ideal must be zero-dimensional and
    supported at the origin.  With ``local=True`` other critical points are
    discarded by computing the localization at the origin.
    """
    _check_singular_at_origin(f)
    partials = [f.diff(i) for i in range(f.nvars)]
    try:
        G = buchberger(partials, order)
        basis = standard_monomials(G)
        at_origin = supported_at_origin(G)
    except NotZeroDimensional:
        if not local:
            raise NotIsolated(
                f"Jacobian ideal of {f} is not zero-dimensional (try local mode if other critical "
                "points are expected)"
            ) from None
        G, basis, at_origin = None, None, False
    if at_origin:
        return JacobianRing(f, G, basis, localized=False)
    if not local:
        raise NotAtOrigin(
            f"Jacobian ideal of {f} has support away from the origin; translate the point or use local mode"
        )
    G, power = local_quotient_basis(partials, order)
    basis = standard_monomials(G)
    if not basis:
        raise SmoothPoint(f"{f} is smooth at the origin")
    return JacobianRing(f, G, basis, localized=True, power=power)


def decompose_partials(r: JacobianRing, rng: Optional[random.Random] = None) -> list[list[MultiPoly]]:
    """Matrix A with df/ds_i = sum_j A[i][j] * s_j.

    Each monomial goes to the column of the smallest variable dividing it, or
    to a uniformly random dividing variable when ``rng`` is given.
    """
    n = r.nvars
    fld = r.field
    A = [[{} for _ in range(n)] for _ in range(n)]
    for i, p in enumerate(r.partials):
        for exp in sorted(p.terms):
            c = p.terms[exp]
            support = [j for j in range(n) if exp[j] > 0]
            if not support:
                raise ConstantTermPresent(f"partial derivative {i} has a nonzero constant term")
            j = rng.choice(support) if rng is not None else support[0]
            q = list(exp)
            q[j] -= 1
            A[i][j][tuple(q)] = c
    return [[MultiPoly(A[i][j], n, fld) for j in range(n)] for i in range(n)]


def _poly_det(A: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    n = len(A)
    nvars, fld = A[0][0].nvars, A[0][0].field
    total = MultiPoly.zero(nvars, fld)
    for perm in itertools.permutations(range(n)):
        sign = 1
        for a in range(n):
            for b in range(a + 1, n):
                if perm[a] > perm[b]:
                    sign = -sign
        term = MultiPoly.const(sign, nvars, fld)
        for i in range(n):
            term = term * A[i][perm[i]]
            if term.is_zero():
                break
        total = total + term
    return total


def verify_decomposition(r: JacobianRing, A) -> bool:
    for i, p in enumerate(r.partials):
        acc = MultiPoly.zero(r.nvars, r.field)
        for j in range(r.nvars):
            acc = acc + A[i][j] * MultiPoly.var(j, r.nvars, r.field)
        if acc != p:
            return False
    return True


def scheja_storch_element(r: JacobianRing, A) -> list:
    """Coordinates of det(A) in the Jacobian ring basis."""
    coords = r.coords(_poly_det(A))
    if all(c == 0 for c in coords):
        raise ZeroElement("Scheja-Storch element vanishes; invalid decomposition or non-isolated input")
    return coords


def canonical_functional(r: JacobianRing, e_coords: Sequence) -> list:
    """Dual of the order-largest basis monomial m0 with e-coefficient c0, scaled by 1/c0."""
    idx = max(i for i, c in enumerate(e_coords) if c != 0)  # basis is sorted increasingly
    phi = [r.field.zero] * len(e_coords)
    phi[idx] = 1 / e_coords[idx]
    return phi


def random_functional(r: JacobianRing, e_coords: Sequence, rng: random.Random, spread: int = 5) -> list:
    """A random linear functional phi with phi(e) = 1."""
    fld = r.field
    while True:
        phi = [fld(rng.randint(-spread, spread)) for _ in e_coords]
        s = sum((p * c for p, c in zip(phi, e_coords)), fld.zero)
        if s != 0:
            return [p / s for p in phi]


@dataclass(frozen=True)
class SchejaStorchForm:
    parent: JacobianRing
    decomposition: list
    ss_element_coords: list
    functional: list
    gram: list

    @property
    def quadratic_form(self) -> QuadraticForm:
        return QuadraticForm(self.parent.field, self.gram)

    def gw_class(self):
        return self.quadratic_form.gw_class()


def scheja_storch_form(r: JacobianRing, decomposition=None, functional=None) -> SchejaStorchForm:
    A = decomposition if decomposition is not None else decompose_partials(r)
    if not verify_decomposition(r, A):
        raise InputError("matrix is not a decomposition of the partial derivatives")
    e = scheja_storch_element(r, A)
    phi = functional if functional is not None else canonical_functional(r, e)
    if len(phi) != len(e):
        raise InputError("functional has the wrong length")
    if sum((p * c for p, c in zip(phi, e)), r.field.zero) != 1:
        raise InputError("functional must send the Scheja-Storch element to 1")
    polys = r.basis_polys()
    mu = len(polys)
    # phi(NF(m_i m_j)) only depends on m_i + m_j, cache per product monomial
    cache: dict = {}
    gram = [[None] * mu for _ in range(mu)]
    for i in range(mu):
        for j in range(i, mu):
            prod = tuple(a + b for a, b in zip(r.basis[i], r.basis[j]))
            if prod not in cache:
                c = r.coords(MultiPoly.monomial(prod, r.field.one, r.field))
                cache[prod] = sum((p * x for p, x in zip(phi, c)), r.field.zero)
            gram[i][j] = gram[j][i] = cache[prod]
    if determinant(gram) == 0:
        raise Degenerate("Scheja-Storch Gram matrix is degenerate")
    return SchejaStorchForm(r, A, list(e), list(phi), gram)


def milnor_form(f: MultiPoly, order: MonomialOrder = DEGREVLEX, local: bool = False) -> QuadraticForm:
    """Quadratic Milnor number of f at the origin as a Gram matrix."""
    return scheja_storch_form(jacobian_ring(f, order, local)).quadratic_form


# ---------------------------------------------------------------------------
# validators


@dataclass
class ValidationReport:
    leading_part: MultiPoly
    lower_terms: list
    higher_terms: list
    is_weighted_homogeneous_leading: bool
    divisibility: bool
    coprime: bool
    isolated_cone: bool
    vertex_condition: bool
    higher_terms_in_ideal: bool
    smooth_quotient_verified: bool = False
    notes: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.is_weighted_homogeneous_leading
            and self.divisibility
            and self.coprime
            and self.isolated_cone
            and self.vertex_condition
            and self.higher_terms_in_ideal
        )

    def failures(self) -> list[str]:
        names = [
            "is_weighted_homogeneous_leading",
            "divisibility",
            "coprime",
            "isolated_cone",
            "vertex_condition",
            "higher_terms_in_ideal",
        ]
        return [n for n in names if not getattr(self, n)]

    def as_dict(self) -> dict:
        return {
            "leading_part": str(self.leading_part),
            "lower_terms": [list(m) for m in self.lower_terms],
            "higher_terms": [list(m) for m in self.higher_terms],
            "is_weighted_homogeneous_leading": self.is_weighted_homogeneous_leading,
            "divisibility": self.divisibility,
            "coprime": self.coprime,
            "isolated_cone": self.isolated_cone,
            "vertex_condition": self.vertex_condition,
            "higher_terms_in_ideal": self.higher_terms_in_ideal,
            "smooth_quotient_verified": self.smooth_quotient_verified,
            "passed": self.passed,
        }


def _in_weighted_ideal(b: Sequence[int], a: Sequence[int], e: int) -> bool:
    """Is s^b in m_p * (monomials of weighted degree exactly e)?"""
    n = len(b)
    for i in range(n):
        if b[i] == 0:
            continue
        rest = list(b)
        rest[i] -= 1
        # look for c <= rest componentwise with weighted degree e
        ranges = [range(min(r, e // w) + 1) for r, w in zip(rest, a)]
        for c in itertools.product(*ranges):
            if weighted_degree(c, a) == e:
                return True
    return False


def cone_is_isolated(F: MultiPoly) -> bool:
    """Jacobian ideal of F zero-dimensional and supported at the origin."""
    if F.is_zero():
        return False
    partials = [F.diff(i) for i in range(F.nvars)]
    if all(p.is_zero() for p in partials):
        return False
    try:
        G = buchberger([p for p in partials if not p.is_zero()], DEGREVLEX)
        if G.is_unit_ideal():
            return True
        standard_monomials(G)
        return supported_at_origin(G)
    except NotZeroDimensional:
        return False


def check_looks_like(f: MultiPoly, a: Sequence[int], e: int) -> ValidationReport:
    """Does f look like the weighted homogeneous singularity given by its degree-e part?"""
    a = [int(x) for x in a]
    if len(a) != f.nvars or any(x <= 0 for x in a):
        raise InputError("weights must be positive, one per variable")
    F = f.weighted_part(a, e)
    lower = sorted(m for m in f.terms if weighted_degree(m, a) < e)
    higher = sorted(m for m in f.terms if weighted_degree(m, a) > e)
    coprime = all(math.gcd(a[i], a[j]) == 1 for i in range(len(a)) for j in range(i + 1, len(a)))
    divisibility = all(e % x == 0 for x in a)
    isolated = cone_is_isolated(F)
    vertex = True
    for i, w in enumerate(a):
        if w > 1:
            exp = [0] * len(a)
            exp[i] = e // w if e % w == 0 else 0
            if e % w != 0 or F.coeff(exp) == 0:
                vertex = False
    in_ideal = all(_in_weighted_ideal(m, a, e) for m in higher)
    notes = ["smoothness of V(F) in the weighted projective space is not verified beyond the vertex condition"]
    return ValidationReport(
        leading_part=F,
        lower_terms=lower,
        higher_terms=higher,
        is_weighted_homogeneous_leading=not F.is_zero() and not lower,
        divisibility=divisibility,
        coprime=coprime,
        isolated_cone=isolated,
        vertex_condition=vertex,
        higher_terms_in_ideal=in_ideal,
        notes=notes,
    )
