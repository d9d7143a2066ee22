"""Sparse multivariate polynomials over a :class:`~gav.field.FieldSpec`.

A :class:`MultiPoly` is an immutable map from exponent tuples to nonzero field
elements, tied to an ordered tuple of variable names.  Arithmetic between two
polynomials requires identical variable tuples; use :meth:`MultiPoly.embed`
to move a polynomial into a larger variable list.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import (ExactDivisionFailure, InconsistentVariableLists, NotUnivariate,
                     ZeroPolynomial)
from .field import FieldSpec


class MonomialOrder:
    """Monomial order given by a variable ranking (highest first).

    ``kind`` is ``"grevlex"``, ``"lex"`` or ``"block"``.  A block order compares
    grevlex on the first ``blocks[0]`` ranked variables, then the next block,
    and so on; it is an elimination order for the leading blocks.  Variables of
    a polynomial that do not appear in the ranking are ranked last, in their
    polynomial order.
    """

    def __init__(self, ranking=(), kind="grevlex", blocks=None):
        if kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {kind!r}")
        if kind == "block" and not blocks:
            raise ValueError("block order needs block sizes")
        self.ranking = tuple(ranking)
        self.kind = kind
        self.blocks = tuple(blocks) if blocks else None

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder) and self.ranking == other.ranking
                and self.kind == other.kind and self.blocks == other.blocks)

    def __hash__(self):
        return hash((self.ranking, self.kind, self.blocks))

    def __repr__(self):
        return f"MonomialOrder({self.ranking!r}, {self.kind!r}, {self.blocks!r})"

    def key_for(self, variables):
        return _order_key(self, tuple(variables))


@lru_cache(maxsize=None)
def _order_key(order, variables):
    rank = [v for v in order.ranking if v in variables]
    rank += [v for v in variables if v not in rank]
    idx = tuple(variables.index(v) for v in rank)
    ridx = idx[::-1]
    if order.kind == "lex":
        return lambda e: tuple(e[i] for i in idx)
    if order.kind == "grevlex":
        return lambda e: (sum(e), tuple(-e[i] for i in ridx))
    cuts, start = [], 0
    for b in order.blocks:
        cuts.append(idx[start:start + b])
        start += b
    if start < len(idx):
        cuts.append(idx[start:])
    cuts = [(c, c[::-1]) for c in cuts]

    def key(e):
        out = []
        for c, rc in cuts:
            out.append(sum(e[i] for i in c))
            out.append(tuple(-e[i] for i in rc))
        return tuple(out)
    return key


def default_order(variables) -> MonomialOrder:
    return MonomialOrder(tuple(variables), "grevlex")


class MultiPoly:
    __slots__ = ("field", "vars", "terms", "_hash")

    def __init__(self, field: FieldSpec, variables, terms=None, _clean=False):
        self.field = field
        self.vars = tuple(variables)
        if terms is None:
            terms = {}
        elif not _clean:
            n = len(self.vars)
            clean = {}
            for e, c in dict(terms).items():
                e = tuple(e)
                if len(e) != n:
                    raise InconsistentVariableLists(
                        f"exponent {e} does not match variables {self.vars}")
                if c:
                    clean[e] = c
            terms = clean
        self.terms = terms
        self._hash = None

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, field, variables):
        return cls(field, variables, {}, _clean=True)

    @classmethod
    def constant(cls, field, variables, c):
        variables = tuple(variables)
        return cls(field, variables, {(0,) * len(variables): c} if c else {}, _clean=True)

    @classmethod
    def var(cls, field, variables, name, power=1):
        variables = tuple(variables)
        if name not in variables:
            raise InconsistentVariableLists(f"{name} not among {variables}")
        e = [0] * len(variables)
        e[variables.index(name)] = power
        return cls(field, variables, {tuple(e): 1}, _clean=True)

    @classmethod
    def from_univariate(cls, field, variables, name, coeffs):
        """Build from a dense coefficient list (lowest degree first)."""
        variables = tuple(variables)
        i = variables.index(name)
        n = len(variables)
        terms = {}
        for k, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[i] = k
                terms[tuple(e)] = c
        return cls(field, variables, terms, _clean=True)

    def _new(self, terms):
        return MultiPoly(self.field, self.vars, terms, _clean=True)

    def _check(self, other):
        if self.vars != other.vars:
            raise InconsistentVariableLists(f"{self.vars} vs {other.vars}")
        if self.field != other.field:
            raise InconsistentVariableLists(f"field {self.field} vs {other.field}")

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return MultiPoly.constant(self.field, self.vars, self.field.elem(other))
        return NotImplemented

    # -- basic queries -----------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), 0)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = MultiPoly.constant(self.field, self.vars, self.field.elem(other))
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.vars == other.vars and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, self.field, frozenset(self.terms.items())))
        return self._hash

    def __reduce__(self):
        return (MultiPoly, (self.field, self.vars, self.terms, True))

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, name):
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def min_degree(self, name):
        i = self.vars.index(name)
        return min((e[i] for e in self.terms), default=-1)

    def used_vars(self):
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms))

    def depends_on(self, name):
        i = self.vars.index(name)
        return any(e[i] for e in self.terms)

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = F.add(out.get(e, 0), c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return self._new({e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = F.sub(out.get(e, 0), c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return self._new(out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        if len(other.terms) == 1:
            (e2, c2), = other.terms.items()
            if not any(e2):
                return self.scale(c2)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = F.add(out.get(e, 0), F.mul(c1, c2))
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return self._new(out)

    __rmul__ = __mul__

    def scale(self, c):
        if not c:
            return self._new({})
        if c == 1:
            return self
        F = self.field
        return self._new({e: F.mul(v, c) for e, v in self.terms.items()})

    def mul_term(self, e, c):
        """Multiply by the single term ``c * x^e``."""
        F = self.field
        return self._new({tuple(a + b for a, b in zip(k, e)): F.mul(v, c)
                          for k, v in self.terms.items()})

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative int")
        result = MultiPoly.constant(self.field, self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- orders ------------------------------------------------------------
    def leading_term(self, order: MonomialOrder | None = None):
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        key = (order or default_order(self.vars)).key_for(self.vars)
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def leading_monomial(self, order=None):
        return self.leading_term(order)[0]

    def leading_coeff(self, order=None):
        return self.leading_term(order)[1]

    def monic(self, order=None):
        if not self.terms:
            return self
        return self.scale(self.field.inv(self.leading_coeff(order)))

    def sorted_terms(self, order=None):
        key = (order or default_order(self.vars)).key_for(self.vars)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    # -- change of variables -----------------------------------------------
    def embed(self, variables):
        """Re-express over ``variables`` (a superset of the used variables)."""
        variables = tuple(variables)
        if variables == self.vars:
            return self
        pos = []
        for i, v in enumerate(self.vars):
            if v in variables:
                pos.append((i, variables.index(v)))
            elif any(e[i] for e in self.terms):
                raise InconsistentVariableLists(f"variable {v} missing from {variables}")
        n = len(variables)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i, j in pos:
                ne[j] = e[i]
            out[tuple(ne)] = c
        return MultiPoly(self.field, variables, out, _clean=True)

    def rename(self, mapping):
        return MultiPoly(self.field, tuple(mapping.get(v, v) for v in self.vars),
                         self.terms, _clean=True)

    def change_field(self, field, embed_elem=None):
        """Read the coefficients in another field (identity on ints by default)."""
        f = embed_elem or (lambda c: c)
        return MultiPoly(field, self.vars, {e: f(c) for e, c in self.terms.items()})

    def compose(self, images, target_vars=None):
        """Substitute ``images[v]`` (polynomials over ``target_vars``) for each variable ``v``.

        Variables without an image are kept as themselves (they must exist in
        ``target_vars``).
        """
        if target_vars is None:
            target_vars = next(iter(images.values())).vars if images else self.vars
        target_vars = tuple(target_vars)
        F = self.field
        subs = []
        for v in self.vars:
            g = images.get(v)
            if g is None:
                g = MultiPoly.var(F, target_vars, v)
            elif g.vars != target_vars:
                g = g.embed(target_vars)
            subs.append(g)
        powers = [dict() for _ in self.vars]
        one = MultiPoly.constant(F, target_vars, 1)

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                if k == 0:
                    cache[k] = one
                elif k == 1:
                    cache[k] = subs[i]
                else:
                    half = power(i, k // 2)
                    r = half * half
                    cache[k] = r * subs[i] if k % 2 else r
            return cache[k]

        out = {}
        for e, c in self.terms.items():
            t = MultiPoly.constant(F, target_vars, c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            for te, tc in t.terms.items():
                s = F.add(out.get(te, 0), tc)
                if s:
                    out[te] = s
                else:
                    out.pop(te, None)
        return MultiPoly(F, target_vars, out, _clean=True)

    def subs(self, **values):
        """Substitute polynomials or ints for named variables, keeping the variable list."""
        images = {}
        for name, v in values.items():
            if isinstance(v, int):
                v = MultiPoly.constant(self.field, self.vars, self.field.elem(v))
            images[name] = v
        return self.compose(images, self.vars)

    def evaluate(self, name, value):
        """Set variable ``name`` to the field element ``value``."""
        i = self.vars.index(name)
        F = self.field
        out = {}
        for e, c in self.terms.items():
            ne = e[:i] + (0,) + e[i + 1:]
            s = F.add(out.get(ne, 0), F.mul(c, F.pow(value, e[i])))
            if s:
                out[ne] = s
            else:
                out.pop(ne, None)
        return self._new(out)

    def derivative(self, name):
        i = self.vars.index(name)
        F = self.field
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                v = F.mul(c, F.elem(e[i]))
                if v:
                    out[e[:i] + (e[i] - 1,) + e[i + 1:]] = v
        return self._new(out)

    # -- views -------------------------------------------------------------
    def coefficients_in(self, name):
        """Map ``k -> coefficient of name^k`` (polynomials over the same variables)."""
        i = self.vars.index(name)
        parts = {}
        for e, c in self.terms.items():
            parts.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: self._new(t) for k, t in sorted(parts.items())}

    def univariate_var(self):
        used = self.used_vars()
        if len(used) > 1:
            raise NotUnivariate(f"polynomial uses {used}")
        return used[0] if used else None

    def to_dense(self, name=None):
        """Dense coefficient list (lowest first) of a univariate polynomial."""
        if name is None:
            name = self.univariate_var()
        elif any(v != name for v in self.used_vars()):
            raise NotUnivariate(f"polynomial is not univariate in {name}")
        if name is None:
            c = self.constant_term()
            return [c] if c else []
        i = self.vars.index(name)
        out = [0] * (self.degree(name) + 1)
        for e, c in self.terms.items():
            out[e[i]] = c
        return out

    def exact_div(self, other, order=None):
        """Exact quotient ``self / other``; raises if the division leaves a remainder."""
        from .groebner import divide
        qs, r = divide(self, [other], order)
        if r:
            raise ExactDivisionFailure(f"{other} does not divide {self}")
        return qs[0]

    def divides(self, other, order=None) -> bool:
        from .groebner import divide
        return not divide(other, [self], order)[1]

    # -- printing ----------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({format_poly(self)!r}, vars={self.vars}, field={self.field})"


def _monomial_str(variables, e):
    parts = []
    for v, k in zip(variables, e):
        if k == 1:
            parts.append(v)
        elif k:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def format_poly(f: MultiPoly, order=None) -> str:
    """Canonical text: terms in decreasing order, coefficients as 0..p-1 digits."""
    if not f.terms:
        return "0"
    F = f.field
    out = []
    for e, c in f.sorted_terms(order):
        mono = _monomial_str(f.vars, e)
        cs = F.elem_str(c)
        if not mono:
            out.append(f"({cs})" if F.is_compound(c) else cs)
        elif c == 1:
            out.append(mono)
        elif F.is_compound(c):
            out.append(f"({cs})*{mono}")
        else:
            out.append(f"{cs}*{mono}")
    return " + ".join(out)
