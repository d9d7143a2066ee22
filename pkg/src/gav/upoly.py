"""Dense univariate polynomials over finite fields.

Coefficient lists are lowest degree first and carry no trailing zeros; the
zero polynomial is ``[]``.  The public entry points at the bottom of the
module accept and return :class:`~gav.poly.MultiPoly` values.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import ConstantPolynomial, NotUnivariate, ZeroPolynomial
from .field import FieldSpec
from .poly import MultiPoly

DEFAULT_SEED = 0


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a):
    return len(a) - 1


def add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return trim(out)


def sub(F, a, b):
    n = max(len(a), len(b))
    out = [F.sub(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]
    return trim(out)


def scale(F, a, c):
    if not c:
        return []
    return [F.mul(x, c) for x in a]


def mul(F, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(out)


def monic(F, a):
    if not a or a[-1] == 1:
        return list(a)
    return scale(F, a, F.inv(a[-1]))


def divmod_(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = deg(b)
    inv = F.inv(b[-1])
    if len(a) <= db:
        return [], trim(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = F.mul(a[i], inv)
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = F.sub(a[i - db + j], F.mul(c, b[j]))
    return trim(q), trim(a[:db])


def mod(F, a, b):
    return divmod_(F, a, b)[1]


def exact_quo(F, a, b):
    q, r = divmod_(F, a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def gcd(F, a, b):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def derivative(F, a):
    return trim([F.mul(a[k], F.elem(k)) for k in range(1, len(a))])


def powmod(F, a, e, m):
    result = [1]
    base = mod(F, a, m)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, base), m)
        e >>= 1
        if e:
            base = mod(F, mul(F, base, base), m)
    return result


def evaluate(F, a, x):
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def pth_root(F, a):
    """``b`` with ``b(X)^p = a(X)``; requires every exponent of ``a`` to be a multiple of p."""
    p = F.p
    if any(a[k] for k in range(len(a)) if k % p):
        raise ValueError("not a p-th power")
    return trim([F.pth_root(a[k]) for k in range(0, len(a), p)])


# -- squarefree decomposition --------------------------------------------------

def squarefree_dense(F, f):
    """Squarefree parts of a monic ``f`` as ``[(g, e), ...]`` with ``e`` increasing.

    Works in characteristic p: the part whose multiplicities are divisible by
    p is extracted as an exact p-th root and handled recursively.
    """
    f = monic(F, f)
    if deg(f) < 1:
        return []
    out = []
    fp = derivative(F, f)
    if not fp:
        return [(g, e * F.p) for g, e in squarefree_dense(F, pth_root(F, f))]
    c = gcd(F, f, fp)
    w = exact_quo(F, f, c)
    i = 1
    while deg(w) > 0:
        y = gcd(F, w, c)
        z = exact_quo(F, w, y)
        if deg(z) > 0:
            out.append((z, i))
        i += 1
        w = y
        c = exact_quo(F, c, y)
    if deg(c) > 0:
        out.extend((g, e * F.p) for g, e in squarefree_dense(F, pth_root(F, c)))
    return sorted(out, key=lambda t: t[1])


# -- factorization ----------------------------------------------------------------

def ddf(F, f):
    """Distinct-degree split of a monic squarefree ``f``: ``[(g, d), ...]``."""
    out = []
    x = [0, 1]
    h = x
    i = 0
    f = list(f)
    while deg(f) >= 2 * (i + 1):
        i += 1
        h = powmod(F, h, F.q, f)
        g = gcd(F, f, sub(F, h, x))
        if deg(g) > 0:
            out.append((g, i))
            f = exact_quo(F, f, g)
            h = mod(F, h, f)
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def _split_candidate(F, f, d, rng):
    n = deg(f)
    a = trim([rng.randrange(F.q) for _ in range(n)])
    if deg(a) < 1:
        return None
    if F.p == 2:
        # absolute trace to F_2 of a in F_q[X]/(f_i) ~ F_{q^d}
        t = a
        s = a
        for _ in range(F.d * d - 1):
            s = mod(F, mul(F, s, s), f)
            t = add(F, t, s)
        return t
    e = (F.q ** d - 1) // 2
    return sub(F, powmod(F, a, e, f), [1])


def edf(F, f, d, rng):
    """Split a monic product of degree-``d`` irreducibles (Cantor-Zassenhaus)."""
    if deg(f) == d:
        return [f]
    while True:
        b = _split_candidate(F, f, d, rng)
        if b is None:
            continue
        g = gcd(F, f, b)
        if 0 < deg(g) < deg(f):
            return edf(F, g, d, rng) + edf(F, exact_quo(F, f, g), d, rng)


def factor_key(g):
    return (len(g), tuple(reversed(g)))


def factor_dense(F, f, seed=DEFAULT_SEED):
    """Monic irreducible factors of ``f`` with multiplicities, sorted by degree then coefficients."""
    rng = random.Random(seed)
    out = []
    for g, e in squarefree_dense(F, f):
        for h, d in ddf(F, g):
            for irr in edf(F, h, d, rng):
                out.append((irr, e))
    return sorted(out, key=lambda t: (factor_key(t[0]), t[1]))


def is_irreducible_dense(F, f):
    f = monic(F, f)
    n = deg(f)
    if n < 1:
        return False
    if n == 1:
        return True
    if gcd(F, f, derivative(F, f)) != [1]:
        return False
    parts = ddf(F, f)
    return len(parts) == 1 and parts[0][1] == n


def monic_polys(F, n):
    """All monic degree-``n`` polynomials in lexicographic order of (c_{n-1}, ..., c_0)."""
    q = F.q
    for N in range(q ** n):
        coeffs = []
        for _ in range(n):
            N, r = divmod(N, q)
            coeffs.append(r)
        yield coeffs + [1]


def irreducibles(F, n):
    for g in monic_polys(F, n):
        if is_irreducible_dense(F, g):
            yield g


# -- MultiPoly front end ------------------------------------------------------------

@dataclass(frozen=True)
class SquarefreeDecomposition:
    """``u = unit * prod(g_i ** e_i)`` with monic, squarefree, pairwise coprime ``g_i``."""

    unit: int
    parts: tuple  # ((MultiPoly, int), ...) with increasing exponents

    def product(self):
        it = iter(self.parts)
        first = next(it, None)
        if first is None:
            raise ValueError("empty decomposition")
        acc = first[0] ** first[1]
        for g, e in it:
            acc = acc * g ** e
        return acc.scale(self.unit)

    def exponents(self):
        return tuple(e for _, e in self.parts)


def _as_univariate(u: MultiPoly, field: FieldSpec | None):
    if u.is_zero():
        raise ZeroPolynomial("zero polynomial")
    name = u.univariate_var()
    if field is not None and field != u.field:
        if u.field.d != 1 or u.field.p != field.p:
            raise ValueError(f"cannot read {u.field} coefficients in {field}")
        u = u.change_field(field)
    return u, name


def _check_univariate(u):
    if len(u.used_vars()) > 1:
        raise NotUnivariate(f"polynomial uses {u.used_vars()}")


def squarefree_decomposition(u: MultiPoly, field: FieldSpec | None = None) -> SquarefreeDecomposition:
    _check_univariate(u)
    u, name = _as_univariate(u, field)
    F = u.field
    dense = u.to_dense(name)
    unit = dense[-1]
    if name is None:
        return SquarefreeDecomposition(unit, ())
    parts = tuple((MultiPoly.from_univariate(F, u.vars, name, g), e)
                  for g, e in squarefree_dense(F, dense))
    return SquarefreeDecomposition(unit, parts)


def factor_univariate(u: MultiPoly, field: FieldSpec | None = None, seed=DEFAULT_SEED):
    """Monic irreducible factors ``[(g, e), ...]`` of a univariate polynomial."""
    _check_univariate(u)
    u, name = _as_univariate(u, field)
    if name is None:
        return []
    F = u.field
    return [(MultiPoly.from_univariate(F, u.vars, name, g), e)
            for g, e in factor_dense(F, u.to_dense(name), seed)]


def root_multiplicity_profile(u: MultiPoly, field: FieldSpec | None = None):
    """Sorted ``((multiplicity, number of distinct roots in the closure), ...)``.

    Over a finite field each squarefree part is separable, so a part of degree
    n contributes n distinct roots of the part's exponent.
    """
    _check_univariate(u)
    if u.is_zero() or u.is_constant():
        raise ConstantPolynomial("constant polynomial has no roots")
    sq = squarefree_decomposition(u, field)
    return tuple(sorted((e, g.total_degree()) for g, e in sq.parts))


def is_irreducible(u: MultiPoly) -> bool:
    _check_univariate(u)
    name = u.univariate_var()
    if name is None:
        return False
    return is_irreducible_dense(u.field, u.to_dense(name))


def roots(u: MultiPoly, seed=DEFAULT_SEED):
    """Roots in the coefficient field, with multiplicities, as ``[(root, mult), ...]``."""
    out = []
    for g, e in factor_univariate(u, seed=seed):
        if g.total_degree() == 1:
            dense = g.to_dense()
            out.append((u.field.neg(dense[0]), e))
    return sorted(out)


def field_embedding(src: FieldSpec, dst: FieldSpec):
    """A field homomorphism ``src -> dst`` as a function on encoded elements.

    Prime-field elements map to themselves; for ``src.d > 1`` the adjoined root
    is sent to the smallest root of ``src.modulus`` in ``dst``.
    """
    if src.p != dst.p or dst.d % src.d:
        raise ValueError(f"{src} does not embed in {dst}")
    if src == dst or src.d == 1:
        return lambda a: a
    m = MultiPoly.from_univariate(dst, ("X",), "X", list(src.modulus))
    rts = roots(m)
    if not rts:
        raise ValueError(f"no root of the modulus of {src} in {dst}")
    rho = rts[0][0]
    powers = [dst.pow(rho, k) for k in range(src.d)]

    def emb(a):
        acc = 0
        for c, pw in zip(src.digits(a), powers):
            if c:
                acc = dst.add(acc, dst.mul(c, pw))
        return acc
    return emb
