"""Buchberger's algorithm and zero-dimensional quotient rings.

Internally polynomials are handled as ``dict`` exponent -> coefficient to
keep the inner reduction loop cheap; the public functions take and return
:class:`MultiPoly`.
"""

from __future__ import annotations

import itertools
from typing import Optional, Sequence

from .errors import NotIsolated, NotZeroDimensional, RingMismatch, ZeroIdeal
from .poly import DEGREVLEX, MonomialOrder, MultiPoly

__all__ = [
    "GroebnerBasis",
    "buchberger",
    "normal_form",
    "standard_monomials",
    "mult_matrix",
    "supported_at_origin",
    "local_quotient_basis",
    "coords_in_basis",
]


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub_exp(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


class _Gen:
    """Generator with cached leading data."""

    __slots__ = ("terms", "lm", "lc")

    def __init__(self, terms: dict, key):
        self.terms = terms
        self.lm = max(terms, key=key)
        self.lc = terms[self.lm]


def _reduce(terms: dict, gens: Sequence[_Gen], key, full: bool = True) -> dict:
    """Remainder of ``terms`` on division by ``gens``."""
    p = dict(terms)
    rem: dict = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for g in gens:
            if _divides(g.lm, m):
                shift = _sub_exp(m, g.lm)
                factor = c / g.lc
                for e, v in g.terms.items():
                    t = _add_exp(e, shift)
                    nv = p.get(t, 0) - factor * v
                    if nv == 0:
                        p.pop(t, None)
                    else:
                        p[t] = nv
                break
        else:
            if not full:
                rem.update(p)
                return rem
            rem[m] = c
            del p[m]
    return rem


class GroebnerBasis:
    """Reduced Groebner basis; generators are monic and sorted by leading monomial."""

    def __init__(self, order: MonomialOrder, generators: Sequence[MultiPoly]):
        if not generators:
            raise ZeroIdeal("a Groebner basis needs at least one generator")
        self.order = order
        self.generators = list(generators)
        self.nvars = generators[0].nvars
        self.field = generators[0].field
        self._gens = [_Gen(g.terms, order.key) for g in self.generators]

    @property
    def leading_monomials(self) -> list[tuple]:
        return [g.lm for g in self._gens]

    def is_unit_ideal(self) -> bool:
        return any(sum(m) == 0 for m in self.leading_monomials)

    def reduce_terms(self, terms: dict) -> dict:
        return _reduce(terms, self._gens, self.order.key)

    def normal_form(self, p: MultiPoly) -> MultiPoly:
        if p.nvars != self.nvars or p.field != self.field:
            raise RingMismatch("polynomial and basis live in different rings")
        return MultiPoly(self.reduce_terms(p.terms), self.nvars, self.field)

    def contains(self, p: MultiPoly) -> bool:
        return self.normal_form(p).is_zero()

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __repr__(self):
        return f"GroebnerBasis({self.order!r}, [{', '.join(str(g) for g in self.generators)}])"


def normal_form(p: MultiPoly, G: GroebnerBasis) -> MultiPoly:
    return G.normal_form(p)


def buchberger(gens: Sequence[MultiPoly], order: MonomialOrder = DEGREVLEX) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs are processed by the normal strategy (smallest lcm first, ties by
    the order and then by index) and the product criterion skips pairs with
    coprime leading monomials.
    """
    gens = list(gens)
    if not gens:
        raise ZeroIdeal("no generators")
    nvars, field = gens[0].nvars, gens[0].field
    for g in gens:
        if g.nvars != nvars or g.field != field:
            raise RingMismatch("generators live in different rings")
    key = order.key
    basis: list[_Gen] = []
    for g in gens:
        if g.is_zero():
            continue
        r = _reduce(g.terms, basis, key)
        if r:
            basis.append(_Gen(r, key))
    if not basis:
        raise ZeroIdeal("all generators are zero")

    def pair_key(i, j):
        m = _lcm(basis[i].lm, basis[j].lm)
        return (sum(m), key(m), i, j)

    pairs = {(i, j) for j in range(len(basis)) for i in range(j)}
    while pairs:
        i, j = min(pairs, key=lambda ij: pair_key(*ij))
        pairs.discard((i, j))
        gi, gj = basis[i], basis[j]
        if all(a == 0 or b == 0 for a, b in zip(gi.lm, gj.lm)):
            continue  # product criterion
        m = _lcm(gi.lm, gj.lm)
        if _chain_criterion(basis, i, j, m, pairs):
            continue
        s: dict = {}
        si, sj = _sub_exp(m, gi.lm), _sub_exp(m, gj.lm)
        for e, v in gi.terms.items():
            s[_add_exp(e, si)] = v / gi.lc
        for e, v in gj.terms.items():
            t = _add_exp(e, sj)
            nv = s.get(t, 0) - v / gj.lc
            if nv == 0:
                s.pop(t, None)
            else:
                s[t] = nv
        r = _reduce(s, basis, key)
        if r:
            basis.append(_Gen(r, key))
            k = len(basis) - 1
            pairs.update((a, k) for a in range(k))
    return GroebnerBasis(order, _interreduce(basis, key, nvars, field))


def _chain_criterion(basis, i, j, m, pairs) -> bool:
    """Skip (i, j) if some k has lm_k | lcm and both (i,k), (j,k) were already treated."""
    for k in range(len(basis)):
        if k in (i, j):
            continue
        if not _divides(basis[k].lm, m):
            continue
        if (min(i, k), max(i, k)) in pairs or (min(j, k), max(j, k)) in pairs:
            continue
        return True
    return False


def _interreduce(basis: list[_Gen], key, nvars, field) -> list[MultiPoly]:
    # minimal basis: drop generators whose leading monomial is divisible by another's
    keep: list[_Gen] = []
    for idx, g in enumerate(basis):
        redundant = False
        for jdx, h in enumerate(basis):
            if idx == jdx or not _divides(h.lm, g.lm):
                continue
            if h.lm != g.lm or jdx < idx:
                redundant = True
                break
        if not redundant:
            keep.append(g)
    out = []
    for idx, g in enumerate(keep):
        others = [h for jdx, h in enumerate(keep) if jdx != idx]
        tail = dict(g.terms)
        lc, lm = g.lc, g.lm
        del tail[lm]
        r = _reduce(tail, others, key)
        r = {e: v / lc for e, v in r.items()}
        r[lm] = lc / lc
        out.append(MultiPoly(r, nvars, field))
    out.sort(key=lambda p: key(max(p.terms, key=key)))
    return out


def _pure_power_bounds(G: GroebnerBasis) -> list[int]:
    bounds = []
    for i in range(G.nvars):
        best = None
        for m in G.leading_monomials:
            if all(m[j] == 0 for j in range(G.nvars) if j != i) and m[i] > 0:
                best = m[i] if best is None else min(best, m[i])
        if best is None:
            raise NotZeroDimensional(
                f"no pure power of variable {i} among leading monomials; quotient is infinite"
            )
        bounds.append(best)
    return bounds


def standard_monomials(G: GroebnerBasis) -> list[tuple]:
    """Monomials outside the leading-term ideal, in increasing order."""
    if G.is_unit_ideal():
        return []
    bounds = _pure_power_bounds(G)
    lms = G.leading_monomials
    out = [
        m
        for m in itertools.product(*(range(b) for b in bounds))
        if not any(_divides(l, m) for l in lms)
    ]
    out.sort(key=G.order.key)
    return out


def coords_in_basis(p: MultiPoly, G: GroebnerBasis, basis: Sequence[tuple]) -> list:
    """Coordinates of normal_form(p) in the standard-monomial basis."""
    nf = G.reduce_terms(p.terms)
    zero = p.field.zero
    index = {m: i for i, m in enumerate(basis)}
    out = [zero] * len(basis)
    for e, c in nf.items():
        if e not in index:
            raise NotZeroDimensional("normal form left the standard-monomial span")
        out[index[e]] = c
    return out


def mult_matrix(G: GroebnerBasis, basis: Optional[Sequence[tuple]], g: MultiPoly) -> list[list]:
    """Matrix of multiplication by g: column j holds the coordinates of NF(g * m_j)."""
    if basis is None:
        basis = standard_monomials(G)
    else:
        _pure_power_bounds(G)
    cols = [coords_in_basis(g.mul_monomial(m), G, basis) for m in basis]
    n = len(basis)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def supported_at_origin(G: GroebnerBasis) -> bool:
    """True iff every variable is nilpotent in the quotient ring."""
    D = len(standard_monomials(G))
    if D == 0:
        return False
    for i in range(G.nvars):
        exp = [0] * G.nvars
        exp[i] = D
        if G.reduce_terms({tuple(exp): G.field.one}):
            return False
    return True


def _monomials_of_degree(nvars: int, d: int):
    if nvars == 1:
        yield (d,)
        return
    for k in range(d, -1, -1):
        for rest in _monomials_of_degree(nvars - 1, d - k):
            yield (k,) + rest


def local_quotient_basis(
    gens: Sequence[MultiPoly], order: MonomialOrder = DEGREVLEX, max_power: int = 48
) -> tuple[GroebnerBasis, int]:
    """Groebner basis presenting the localization at the origin.

    Computes ``I + m^N`` for N = 1, 2, ... until the quotient dimension is
    the same for two consecutive N.  Then ``m^N`` lies in ``I`` after
    localizing (Nakayama), so ``Q[x]/(I + m^N)`` is the local quotient.
    Returns the basis and N.  Raises NotIsolated if no stabilization happens
    up to ``max_power``.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise NotIsolated("the zero ideal is not isolated")
    nvars, field = gens[0].nvars, gens[0].field
    prev = None
    prev_dim = -1
    for N in range(1, max_power + 1):
        power = [MultiPoly.monomial(m, field.one, field) for m in _monomials_of_degree(nvars, N)]
        G = buchberger(list(gens) + power, order)
        dim = len(standard_monomials(G))
        if dim == prev_dim:
            return prev, N - 1
        prev, prev_dim = G, dim
    raise NotIsolated(f"local quotient did not stabilize up to m^{max_power}; singularity is not isolated")
