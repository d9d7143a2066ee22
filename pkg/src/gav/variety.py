"""Rings ``A = k[X_1..X_m, Y, Z, T] / (alpha * Y - F)`` and their elements.

Elements of ``A`` (and of ``A[U]``, ``A[U, V]``, ...) are kept as normal forms
modulo the single relation ``alpha*Y - F``.  A one-element generating set is a
Gröbner basis of its principal ideal, so the remainder under the fixed
monomial order is canonical and equality is equality of normal forms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field, replace
from pathlib import Path

from .checks import Check, ValidationReport
from .errors import (AlphaNotFactored, GavError, NotARoot, PresentationMismatch,
                     PolySyntaxError, ShapeMismatch)
from .field import FieldSpec, make_field, parse_field
from .groebner import divide, poly_gcd
from .parse import parse_poly
from .poly import MonomialOrder, MultiPoly
from .upoly import factor_univariate, field_embedding, squarefree_decomposition

FLAG_NAMES = ("f_is_line", "f_nontrivial_line", "f_not_linear_any_coords")


def ring_vars(m: int) -> tuple:
    return tuple(f"X{i}" for i in range(1, m + 1)) + ("Y", "Z", "T")


def gav_order(variables) -> MonomialOrder:
    """grevlex with Y ranked first, then the X's, then Z, T, then any extra variables."""
    variables = tuple(variables)
    xs = tuple(v for v in variables if re.fullmatch(r"X\d+", v))
    head = ("Y",) + xs + ("Z", "T")
    rest = tuple(v for v in variables if v not in head)
    return MonomialOrder(head + rest, "grevlex")


@dataclass(frozen=True)
class Flag:
    name: str
    value: bool
    cite: str = ""


@dataclass(frozen=True)
class GavPresentation:
    """Defining data of ``A``; every polynomial is stored over :attr:`vars`."""

    field: FieldSpec
    m: int
    alpha: MultiPoly
    F: MultiPoly
    alpha_factored: tuple | None = None
    f_part: MultiPoly | None = None
    h_part: MultiPoly | None = None
    flags: tuple = ()
    name: str = dc_field(default="", compare=False)

    @property
    def vars(self):
        return ring_vars(self.m)

    @property
    def xvars(self):
        return self.vars[:self.m]

    @property
    def order(self):
        return gav_order(self.vars)

    @property
    def relation(self) -> MultiPoly:
        return self.alpha * self.var("Y") - self.F

    def var(self, name):
        return MultiPoly.var(self.field, self.vars, name)

    def poly(self, text):
        return parse_poly(text, self.vars, self.field)

    def flag(self, name) -> bool:
        return any(fl.name == name and fl.value for fl in self.flags)

    def flag_entry(self, name):
        return next((fl for fl in self.flags if fl.name == name), None)

    # -- elements ----------------------------------------------------------
    def reduce(self, poly: MultiPoly) -> MultiPoly:
        """Normal form of ``poly`` (over ``vars`` plus optional trailing extra variables)."""
        if poly.vars[:len(self.vars)] != self.vars:
            raise PresentationMismatch(f"variables {poly.vars} do not extend {self.vars}")
        if poly.field != self.field:
            raise PresentationMismatch(f"field {poly.field} vs {self.field}")
        rel = self.relation.embed(poly.vars)
        return divide(poly, [rel], gav_order(poly.vars))[1]

    def element(self, rep) -> "AElement":
        if isinstance(rep, str):
            rep = self.poly(rep)
        return AElement(self, self.reduce(rep))

    def elements(self, *texts):
        return [self.element(t) for t in texts]

    def gen(self, name) -> "AElement":
        return self.element(self.var(name))

    def generators(self):
        return {v: self.gen(v) for v in self.vars}

    def extended_vars(self, *extra):
        return self.vars + tuple(extra)

    # -- factor data -------------------------------------------------------
    def require_factored(self):
        if self.alpha_factored is None:
            raise AlphaNotFactored("presentation has no factored alpha (a_1, ..., a_m)")
        return self.alpha_factored

    def alpha_factorization(self, seed=0):
        """Per-variable monic irreducible factors ``((g, e), ...)`` over the current field."""
        return tuple(tuple(factor_univariate(a, seed=seed)) for a in self.require_factored())

    def radical(self) -> MultiPoly:
        """Product of the distinct monic prime factors of alpha (requires factored alpha)."""
        acc = MultiPoly.constant(self.field, self.vars, 1)
        for a in self.require_factored():
            for g, _ in squarefree_decomposition(a).parts:
                acc = acc * g
        return acc

    def with_flags(self, **flags):
        current = {fl.name: fl for fl in self.flags}
        for name, val in flags.items():
            if isinstance(val, tuple):
                current[name] = Flag(name, *val)
            else:
                current[name] = Flag(name, bool(val), "")
        return replace(self, flags=tuple(current[n] for n in sorted(current)))

    def __str__(self):
        return format_presentation(self)


@dataclass(frozen=True, eq=False)
class AElement:
    """An element of ``A`` (or ``A[U, ...]``) held as its normal form."""

    pres: GavPresentation
    nf: MultiPoly

    def _lift(self, other):
        if isinstance(other, AElement):
            if other.pres != self.pres:
                raise PresentationMismatch("elements of different presentations")
            a, b = self.nf, other.nf
        elif isinstance(other, MultiPoly):
            a, b = self.nf, other
        elif isinstance(other, int):
            a, b = self.nf, MultiPoly.constant(self.nf.field, self.nf.vars, self.nf.field.elem(other))
        else:
            return None
        if a.vars != b.vars:
            full = a.vars if len(a.vars) >= len(b.vars) else b.vars
            a, b = a.embed(full), b.embed(full)
        return a, b

    def __add__(self, other):
        ab = self._lift(other)
        return NotImplemented if ab is None else AElement(self.pres, ab[0] + ab[1])

    __radd__ = __add__

    def __sub__(self, other):
        ab = self._lift(other)
        return NotImplemented if ab is None else AElement(self.pres, ab[0] - ab[1])

    def __neg__(self):
        return AElement(self.pres, -self.nf)

    def __mul__(self, other):
        ab = self._lift(other)
        return NotImplemented if ab is None else AElement(self.pres, self.pres.reduce(ab[0] * ab[1]))

    __rmul__ = __mul__

    def __pow__(self, n):
        acc = AElement(self.pres, MultiPoly.constant(self.nf.field, self.nf.vars, 1))
        for _ in range(n):
            acc = acc * self
        return acc

    def __eq__(self, other):
        if not isinstance(other, AElement):
            return NotImplemented
        return elem_equal(self, other)

    def __hash__(self):
        return hash(self.nf)

    def is_zero(self):
        return self.nf.is_zero()

    def embed(self, variables):
        return AElement(self.pres, self.nf.embed(variables))

    def __str__(self):
        return str(self.nf)

    def __repr__(self):
        return f"AElement({self.nf})"


def elem_equal(P: AElement, Q: AElement) -> bool:
    if P.pres != Q.pres:
        raise PresentationMismatch("elements belong to different presentations")
    a, b = P.nf, Q.nf
    if a.vars != b.vars:
        full = a.vars if len(a.vars) >= len(b.vars) else b.vars
        a, b = a.embed(full), b.embed(full)
    return P.pres.reduce(a - b).is_zero()


# -- construction -------------------------------------------------------------

def make_presentation(field, m=None, *, alpha=None, a=None, F, f=None, h=None,
                      flags=None, name="") -> GavPresentation:
    """Build a presentation from strings or polynomials.

    ``a`` is the list ``(a_1(X_1), ..., a_m(X_m))``; when given, ``alpha``
    defaults to their product.  ``flags`` maps flag names to a bool or a
    ``(bool, citation)`` pair.
    """
    if isinstance(field, (int, str)):
        field = parse_field(str(field))
    if m is None:
        if a is None:
            raise ValueError("m is required when a_i are not given")
        m = len(a)
    V = ring_vars(m)

    def P(x):
        if x is None or isinstance(x, MultiPoly):
            return x.embed(V) if isinstance(x, MultiPoly) else None
        return parse_poly(str(x), V, field)

    a_polys = None
    if a is not None:
        if len(a) != m:
            raise ValueError(f"expected {m} polynomials a_i, got {len(a)}")
        a_polys = tuple(P(x) for x in a)
    alpha_p = P(alpha)
    if alpha_p is None:
        if a_polys is None:
            raise ValueError("need alpha or a_1..a_m")
        alpha_p = MultiPoly.constant(field, V, 1)
        for x in a_polys:
            alpha_p = alpha_p * x
    fl = []
    for k, v in sorted((flags or {}).items()):
        if k not in FLAG_NAMES:
            raise ValueError(f"unknown flag {k!r}")
        fl.append(Flag(k, *v) if isinstance(v, tuple) else Flag(k, bool(v), ""))
    return GavPresentation(field, m, alpha_p, P(F), a_polys, P(f), P(h), tuple(fl), name)


# -- validation ---------------------------------------------------------------

def validate_presentation(pres: GavPresentation) -> ValidationReport:
    checks = []
    nonconst = not pres.alpha.is_constant()
    checks.append(Check("alpha_not_constant", nonconst,
                        "alpha is not in k" if nonconst else "alpha is a constant",
                        None if nonconst else str(pres.alpha)))
    dz, dt = pres.F.degree("Z"), pres.F.degree("T")
    checks.append(Check("degree_condition", dz >= 1 or dt >= 1,
                        f"deg_Z F = {dz}, deg_T F = {dt}"))

    if pres.alpha_factored is not None:
        prod = MultiPoly.constant(pres.field, pres.vars, 1)
        ok_vars = True
        for i, a in enumerate(pres.alpha_factored, 1):
            prod = prod * a
            if any(v != f"X{i}" for v in a.used_vars()):
                ok_vars = False
        checks.append(Check("alpha_factored_consistent", ok_vars and prod == pres.alpha,
                            "a_i univariate in X_i and prod a_i == alpha"))
        witness = None
        for i, a in enumerate(pres.alpha_factored, 1):
            if a.is_constant():
                continue
            for g, _ in factor_univariate(a):
                if g.divides(pres.F):
                    witness = str(g)
                    break
            if witness:
                break
        checks.append(Check("domain_gcd", witness is None,
                            "no prime factor of alpha divides F" if witness is None
                            else "a prime factor of alpha divides F", witness))
    else:
        g = poly_gcd(pres.alpha, pres.F)
        ok = g.is_constant()
        checks.append(Check("domain_gcd", ok, "gcd(alpha, F) = 1" if ok else "common factor",
                            None if ok else str(g)))

    if pres.f_part is not None:
        h = pres.h_part if pres.h_part is not None else MultiPoly.zero(pres.field, pres.vars)
        only_zt = all(v in ("Z", "T") for v in pres.f_part.used_vars())
        try:
            rad = pres.radical()
            ok = only_zt and pres.F == pres.f_part + rad * h
            detail = "F == f + rad(alpha) * h" if ok else "F != f + rad(alpha) * h"
            wit = None if ok else str(pres.F - pres.f_part - rad * h)
        except AlphaNotFactored:
            ok, detail, wit = False, "radical of alpha needs factored alpha", None
        checks.append(Check("shape_f_plus_rad_h", ok, detail, wit))

    missing = [fl.name for fl in pres.flags if fl.value and not fl.cite]
    checks.append(Check("flag_citations", not missing,
                        "every true flag carries a citation" if not missing
                        else "uncited flags: " + ", ".join(missing)))
    return ValidationReport(checks)


# -- base change and shifts --------------------------------------------------------

def base_change(pres: GavPresentation, d: int) -> GavPresentation:
    """Re-read the presentation over F_{p^d} (``d`` is the absolute degree)."""
    if d < 1:
        raise ValueError("extension degree must be >= 1")
    if d == pres.field.d:
        return pres
    target = make_field(pres.field.p, d)
    emb = field_embedding(pres.field, target)

    def ch(x):
        return None if x is None else x.change_field(target, emb)
    return replace(pres, field=target, alpha=ch(pres.alpha), F=ch(pres.F),
                   alpha_factored=None if pres.alpha_factored is None
                   else tuple(ch(a) for a in pres.alpha_factored),
                   f_part=ch(pres.f_part), h_part=ch(pres.h_part))


def base_change_element(elem: AElement, target_pres: GavPresentation) -> AElement:
    emb = field_embedding(elem.pres.field, target_pres.field)
    return target_pres.element(elem.nf.change_field(target_pres.field, emb))


@dataclass(frozen=True)
class ShiftResult:
    presentation: GavPresentation
    index: int
    root: int
    multiplicity: int
    alpha_prime: MultiPoly


def _root_multiplicity(a: MultiPoly, name, lam):
    F = a.field
    dense = a.to_dense(name)
    r = 0
    while dense:
        # synthetic division by (X - lam)
        acc, quo = 0, []
        for c in reversed(dense):
            acc = F.add(F.mul(acc, lam), c)
            quo.append(acc)
        if quo[-1] != 0:
            break
        dense = list(reversed(quo[:-1]))
        r += 1
    return r


def shift_coordinate(pres: GavPresentation, i: int, lam) -> ShiftResult:
    """Rewrite ``pres`` in ``X_i' = X_i - lam`` (the variable keeps the name ``X_i``)."""
    factored = pres.require_factored()
    if not 1 <= i <= pres.m:
        raise ValueError(f"variable index {i} out of range 1..{pres.m}")
    name = f"X{i}"
    a_i = factored[i - 1]
    r = _root_multiplicity(a_i, name, lam)
    if r == 0:
        raise NotARoot(f"{pres.field.elem_str(lam)} is not a root of a_{i} = {a_i}")
    shifted = shift_presentation(pres, i, lam)
    xi = MultiPoly.var(pres.field, pres.vars, name)
    alpha_prime = shifted.alpha.exact_div(xi ** r)
    return ShiftResult(shifted, i, lam, r, alpha_prime)


def shift_presentation(pres, i, lam):
    name = f"X{i}"
    img = {name: pres.var(name) + MultiPoly.constant(pres.field, pres.vars, lam)}

    def s(x):
        return None if x is None else x.compose(img, pres.vars)
    return replace(pres, alpha=s(pres.alpha), F=s(pres.F),
                   alpha_factored=None if pres.alpha_factored is None
                   else tuple(s(a) for a in pres.alpha_factored),
                   f_part=s(pres.f_part), h_part=s(pres.h_part))


def shift_poly(poly: MultiPoly, i: int, lam) -> MultiPoly:
    """Substitute ``X_i -> X_i + lam`` in a polynomial."""
    name = f"X{i}"
    img = {name: MultiPoly.var(poly.field, poly.vars, name)
           + MultiPoly.constant(poly.field, poly.vars, lam)}
    return poly.compose(img, poly.vars)


# -- file format ----------------------------------------------------------------

_FLAG_RE = re.compile(r'^flag\s+(\w+)\s*=\s*(true|false)\s*(?:cite\s*=\s*"([^"]*)")?\s*$', re.I)
_ASSIGN_RE = re.compile(r"^(a_?\d+|alpha|F|f|h)\s*=\s*(.+)$")


class PresentationFormatError(GavError):
    def __init__(self, message, line=None, path=None):
        self.line = line
        where = f"{path or '<input>'}:{line}: " if line is not None else ""
        super().__init__(where + message)


def parse_presentation(text: str, path=None, field_override=None) -> GavPresentation:
    field = None
    m = None
    assigns = {}
    a = {}
    flags = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("field"):
                field = parse_field(line[5:])
            elif re.match(r"^m\s+\d+$", line):
                m = int(line.split()[1])
            elif line.startswith("flag"):
                fm = _FLAG_RE.match(line)
                if not fm:
                    raise PresentationFormatError(f"bad flag line {line!r}", lineno, path)
                flags[fm.group(1)] = (fm.group(2).lower() == "true", fm.group(3) or "")
            else:
                am = _ASSIGN_RE.match(line)
                if not am:
                    raise PresentationFormatError(f"unrecognized line {line!r}", lineno, path)
                key, rhs = am.group(1), am.group(2)
                if key.startswith("a") and key != "alpha":
                    a[int(key.lstrip("a_"))] = (rhs, lineno)
                else:
                    assigns[key] = (rhs, lineno)
        except PresentationFormatError:
            raise
        except (ValueError, GavError) as exc:
            raise PresentationFormatError(str(exc), lineno, path) from exc
    if field is None:
        raise PresentationFormatError("missing 'field' line", None, path)
    if field_override is not None:
        field = field_override
    if m is None:
        m = max(a) if a else 1
    if a and sorted(a) != list(range(1, m + 1)):
        raise PresentationFormatError(f"expected a_1..a_{m}", None, path)
    if "F" not in assigns:
        raise PresentationFormatError("missing 'F = ...' line", None, path)
    V = ring_vars(m)

    def P(key, src=assigns):
        rhs, lineno = src[key]
        try:
            return parse_poly(rhs, V, field)
        except PolySyntaxError as exc:
            raise PresentationFormatError(str(exc), lineno, path) from exc
    try:
        return make_presentation(
            field, m,
            alpha=P("alpha") if "alpha" in assigns else None,
            a=[P(i, a) for i in range(1, m + 1)] if a else None,
            F=P("F"),
            f=P("f") if "f" in assigns else None,
            h=P("h") if "h" in assigns else None,
            flags=flags, name=Path(path).stem if path else "")
    except ValueError as exc:
        raise PresentationFormatError(str(exc), None, path) from exc


def load_presentation(path, field_override=None) -> GavPresentation:
    path = Path(path)
    pres = parse_presentation(path.read_text(encoding="utf-8"), path, None)
    if field_override is not None and field_override != pres.field:
        if field_override.p != pres.field.p:
            raise PresentationFormatError(
                f"--field {field_override} has a different characteristic", None, path)
        pres = base_change(pres, field_override.d)
    return pres


def format_presentation(pres: GavPresentation) -> str:
    lines = [f"field {pres.field}", f"m {pres.m}"]
    if pres.alpha_factored is not None:
        for i, a in enumerate(pres.alpha_factored, 1):
            lines.append(f"a_{i} = {a}")
    else:
        lines.append(f"alpha = {pres.alpha}")
    lines.append(f"F = {pres.F}")
    if pres.f_part is not None:
        lines.append(f"f = {pres.f_part}")
    if pres.h_part is not None:
        lines.append(f"h = {pres.h_part}")
    for fl in pres.flags:
        cite = f' cite="{fl.cite}"' if fl.cite else ""
        lines.append(f"flag {fl.name}={'true' if fl.value else 'false'}{cite}")
    return "\n".join(lines) + "\n"


def require_shape_h_zero(pres: GavPresentation):
    """Return ``f`` for presentations of the form ``a_1...a_m Y - f(Z, T)``."""
    pres.require_factored()
    f = pres.f_part if pres.f_part is not None else pres.F
    if any(v not in ("Z", "T") for v in pres.F.used_vars()) or f != pres.F:
        raise ShapeMismatch("F must be a polynomial f(Z, T) (h = 0)")
    return f
