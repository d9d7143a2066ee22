"""Multivariate division, Buchberger's algorithm and ideal operations.

Gröbner bases can record a transformation matrix: each basis element is kept
together with its expression as a combination of the original generators, so
membership tests come with explicit cofactors.
"""

from __future__ import annotations

import threading

from .errors import InconsistentVariableLists
from .poly import MonomialOrder, MultiPoly, default_order


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _sub_exp(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _lcm_exp(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def divide(f: MultiPoly, divisors, order: MonomialOrder | None = None):
    """Full multivariate division: ``f = sum(q_i * g_i) + r`` with ``r`` reduced.

    Returns ``(quotients, remainder)``.
    """
    divisors = list(divisors)
    for g in divisors:
        if g.vars != f.vars:
            raise InconsistentVariableLists(f"{g.vars} vs {f.vars}")
    F = f.field
    order = order or default_order(f.vars)
    key = order.key_for(f.vars)
    lts = []
    for g in divisors:
        if g.is_zero():
            lts.append(None)
        else:
            e, c = g.leading_term(order)
            lts.append((e, F.inv(c), g.terms))
    p = dict(f.terms)
    rem = {}
    quots = [dict() for _ in divisors]
    while p:
        e = max(p, key=key)
        c = p[e]
        for i, lt in enumerate(lts):
            if lt is not None and _divides(lt[0], e):
                ge, ginv, gterms = lt
                m = _sub_exp(e, ge)
                coef = F.mul(c, ginv)
                qi = quots[i]
                s = F.add(qi.get(m, 0), coef)
                if s:
                    qi[m] = s
                else:
                    qi.pop(m, None)
                for te, tc in gterms.items():
                    k = tuple(a + b for a, b in zip(te, m))
                    v = F.sub(p.get(k, 0), F.mul(coef, tc))
                    if v:
                        p[k] = v
                    else:
                        p.pop(k, None)
                break
        else:
            rem[e] = c
            del p[e]
    qs = [MultiPoly(F, f.vars, q, _clean=True) for q in quots]
    return qs, MultiPoly(F, f.vars, rem, _clean=True)


def reduce(f, divisors, order=None):
    return divide(f, divisors, order)[1]


class _Elem:
    __slots__ = ("poly", "combo", "lm")

    def __init__(self, poly, combo, lm):
        self.poly = poly
        self.combo = combo
        self.lm = lm


def _combine(combo_a, combo_b, fa, fb):
    """fa * combo_a - fb * combo_b, entrywise."""
    return [a * fa - b * fb for a, b in zip(combo_a, combo_b)]


def groebner(gens, order: MonomialOrder | None = None, track: bool = False):
    """Reduced Gröbner basis of the ideal generated by ``gens``.

    Leading coefficients are normalized to 1 and the basis is sorted by
    decreasing leading monomial.  With ``track=True`` returns
    ``(basis, matrix)`` where ``basis[i] == sum(matrix[i][j] * gens[j])``.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    variables = gens[0].vars
    F = gens[0].field
    for g in gens:
        if g.vars != variables:
            raise InconsistentVariableLists(f"{g.vars} vs {variables}")
    order = order or default_order(variables)
    key = order.key_for(variables)
    one = MultiPoly.constant(F, variables, 1)
    zero = MultiPoly.zero(F, variables)
    n = len(gens)

    basis: list[_Elem] = []
    for j, g in enumerate(gens):
        if g.is_zero():
            continue
        inv = F.inv(g.leading_coeff(order))
        combo = None
        if track:
            combo = [zero] * n
            combo[j] = one.scale(inv)
        basis.append(_Elem(g.scale(inv), combo, g.leading_monomial(order)))

    def reduce_elem(poly, combo):
        qs, r = divide(poly, [b.poly for b in basis], order)
        if track:
            combo = list(combo)
            for q, b in zip(qs, basis):
                if q:
                    combo = [c - q * bc for c, bc in zip(combo, b.combo)]
        return r, combo

    # interreduce the input once so that duplicates and multiples vanish early
    pairs = set()
    for i in range(len(basis)):
        for j in range(i):
            pairs.add((j, i))

    def pair_key(ij):
        i, j = ij
        lcm = _lcm_exp(basis[i].lm, basis[j].lm)
        return (sum(lcm), key(lcm), ij)

    while pairs:
        ij = min(pairs, key=pair_key)
        pairs.discard(ij)
        i, j = ij
        a, b = basis[i], basis[j]
        if all(x == 0 or y == 0 for x, y in zip(a.lm, b.lm)):
            continue  # product criterion
        lcm = _lcm_exp(a.lm, b.lm)
        chain = False
        for k, c in enumerate(basis):
            if k in ij:
                continue
            if (_divides(c.lm, lcm) and (min(i, k), max(i, k)) not in pairs
                    and (min(j, k), max(j, k)) not in pairs):
                chain = True
                break
        if chain:
            continue
        ma = MultiPoly(F, variables, {_sub_exp(lcm, a.lm): 1}, _clean=True)
        mb = MultiPoly(F, variables, {_sub_exp(lcm, b.lm): 1}, _clean=True)
        s = a.poly * ma - b.poly * mb
        combo = _combine(a.combo, b.combo, ma, mb) if track else None
        r, combo = reduce_elem(s, combo)
        if r.is_zero():
            continue
        lm, lc = r.leading_term(order)
        inv = F.inv(lc)
        r = r.scale(inv)
        if track:
            combo = [c.scale(inv) for c in combo]
        new = len(basis)
        basis.append(_Elem(r, combo, lm))
        for k in range(new):
            pairs.add((k, new))

    # minimalize
    keep = []
    for i, b in enumerate(basis):
        dominated = False
        for j, c in enumerate(basis):
            if j == i:
                continue
            if _divides(c.lm, b.lm) and (c.lm != b.lm or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(b)
    basis = keep
    # interreduce tails
    out = []
    for i, b in enumerate(basis):
        others = [c.poly for j, c in enumerate(basis) if j != i]
        qs, r = divide(b.poly, others, order)
        combo = b.combo
        if track:
            combo = list(combo)
            ob = [c for j, c in enumerate(basis) if j != i]
            for q, c in zip(qs, ob):
                if q:
                    combo = [x - q * y for x, y in zip(combo, c.combo)]
        out.append(_Elem(r, combo, b.lm))
    out.sort(key=lambda b: key(b.lm), reverse=True)
    polys = [b.poly for b in out]
    if track:
        return polys, [b.combo for b in out]
    return polys


class IdealHandle:
    """An ideal given by generators, with a lazily computed, lock-guarded Gröbner cache."""

    def __init__(self, gens, order: MonomialOrder | None = None):
        gens = tuple(gens)
        if not gens:
            raise ValueError("an ideal handle needs at least one generator")
        self.gens = gens
        self.vars = gens[0].vars
        for g in gens:
            if g.vars != self.vars:
                raise InconsistentVariableLists(f"{g.vars} vs {self.vars}")
        self.order = order or default_order(self.vars)
        self._lock = threading.Lock()
        self._gb = None

    def groebner(self):
        """``(basis, matrix)``; the matrix expresses the basis in the original generators."""
        with self._lock:
            if self._gb is None:
                if all(g.is_zero() for g in self.gens):
                    self._gb = ([], [])
                else:
                    self._gb = groebner(self.gens, self.order, track=True)
            return self._gb

    @property
    def basis(self):
        return self.groebner()[0]

    def reduce(self, f):
        basis = self.basis
        if not basis:
            return f
        return reduce(f, basis, self.order)

    def contains(self, f) -> bool:
        return self.reduce(f).is_zero()

    def __repr__(self):
        return f"IdealHandle({[str(g) for g in self.gens]})"


def divide_with_witness(f: MultiPoly, ideal: IdealHandle):
    """``(remainder, cofactors)`` with ``f == sum(c_j * gens[j]) + remainder`` exactly."""
    if f.vars != ideal.vars:
        raise InconsistentVariableLists(f"{f.vars} vs {ideal.vars}")
    basis, matrix = ideal.groebner()
    zero = MultiPoly.zero(f.field, f.vars)
    cof = [zero] * len(ideal.gens)
    if not basis:
        return f, cof
    qs, r = divide(f, basis, ideal.order)
    for q, row in zip(qs, matrix):
        if q:
            cof = [c + q * m for c, m in zip(cof, row)]
    return r, cof


def _same_space(I, J):
    if I.vars != J.vars:
        raise InconsistentVariableLists(f"{I.vars} vs {J.vars}")
    if I.order != J.order:
        raise InconsistentVariableLists("ideals use different monomial orders")


def ideal_equal(I: IdealHandle, J: IdealHandle) -> bool:
    _same_space(I, J)
    return I.basis == J.basis


def ideal_difference_witness(I: IdealHandle, J: IdealHandle):
    """A basis element of one ideal that is not in the other, or ``None`` if equal.

    Returns ``(side, element, remainder)`` where ``side`` names the ideal the
    element comes from.
    """
    _same_space(I, J)
    for g in I.basis:
        r = J.reduce(g)
        if r:
            return ("first", g, r)
    for g in J.basis:
        r = I.reduce(g)
        if r:
            return ("second", g, r)
    return None


def eliminate(gens, elim_vars, order_rest=None):
    """Generators of ``(gens) ∩ k[remaining variables]`` (expressed over the same variable list)."""
    gens = list(gens)
    variables = gens[0].vars
    elim = [v for v in variables if v in elim_vars]
    rest = [v for v in variables if v not in elim_vars]
    if order_rest is not None:
        rest = list(order_rest)
    order = MonomialOrder(tuple(elim) + tuple(rest), "block", (len(elim), len(rest)))
    gb = groebner(gens, order)
    idx = [variables.index(v) for v in elim]
    return [g for g in gb if all(e[i] == 0 for e in g.terms for i in idx)]


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Monic gcd (default order) of two multivariate polynomials via ``(a) ∩ (b) = (lcm)``."""
    if a.vars != b.vars:
        raise InconsistentVariableLists(f"{a.vars} vs {b.vars}")
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_constant() or b.is_constant():
        return MultiPoly.constant(a.field, a.vars, 1)
    tname = "_t"
    while tname in a.vars:
        tname += "_"
    tv = a.vars + (tname,)
    A, B = a.embed(tv), b.embed(tv)
    t = MultiPoly.var(a.field, tv, tname)
    lcms = eliminate([A * t, B - B * t], {tname})
    lcm = min(lcms, key=lambda g: g.total_degree()).embed(a.vars)
    g = (a * b).exact_div(lcm)
    return g.monic()
