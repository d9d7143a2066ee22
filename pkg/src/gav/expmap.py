"""Exponential maps ``A -> A[U]`` given by images of the generators.

A map is a dictionary ``generator name -> polynomial over A's variables plus U``.
Verification checks the three defining identities exactly in ``A[U]`` and
``A[U, V]``:

* well-definedness: the defining relation maps to zero;
* counit: ``U = 0`` returns every generator;
* comultiplication: applying the map again with a fresh variable ``V`` equals
  substituting ``U + V``.  Both sides are algebra homomorphisms, so it is
  enough to compare them on generators.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field, replace
from pathlib import Path

from .checks import Check, CheckReport
from .errors import (AlphaNotFactored, GavError, NonInvariantDenominator, PolySyntaxError,
                     UnverifiedMap, ZeroElement)
from .parse import parse_poly
from .poly import MultiPoly
from .upoly import field_embedding, squarefree_decomposition
from .variety import (AElement, GavPresentation, base_change, load_presentation,
                      validate_presentation)

U, V = "U", "V"


class VerificationReport(CheckReport):
    @property
    def trivial(self) -> bool:
        return "nontrivial" in self and not self["nontrivial"].passed

    @property
    def axioms_pass(self) -> bool:
        return all(c.passed for c in self.checks if c.name != "nontrivial")

    @property
    def passed(self) -> bool:
        return self.axioms_pass


@dataclass(frozen=True)
class ExpMap:
    """A k-algebra map ``A -> A[U]`` on the presentation's generators."""

    pres: GavPresentation
    images: tuple  # ((generator name, MultiPoly over vars + (U,)), ...) in generator order
    status: str = "unverified"  # unverified | verified | failed
    reason: str = ""
    label: str = dc_field(default="", compare=False)

    @property
    def uvars(self):
        return self.pres.vars + (U,)

    def image(self, name) -> MultiPoly:
        return dict(self.images)[name]

    def image_map(self):
        return dict(self.images)

    def apply(self, a) -> MultiPoly:
        """``phi(a)`` as a normal form in ``A[U]``; ``a`` is an AElement or polynomial over A."""
        poly = a.nf if isinstance(a, AElement) else a
        poly = poly.embed(self.pres.vars)
        return self.pres.reduce(poly.compose(self.image_map(), self.uvars))

    def __call__(self, a):
        return AElement(self.pres, self.apply(a))

    @property
    def verified(self) -> bool:
        return self.status == "verified"

    def with_status(self, report: VerificationReport) -> "ExpMap":
        if report.axioms_pass:
            return replace(self, status="verified", reason="")
        return replace(self, status="failed", reason=", ".join(report.failed()))

    def is_trivial(self) -> bool:
        return all(not img.depends_on(U) for _, img in self.images)


def make_expmap(pres: GavPresentation, images: dict, label="", verify=True) -> ExpMap:
    """Build a map from images (strings or polynomials); missing generators are fixed."""
    uv = pres.vars + (U,)
    out = []
    for name in pres.vars:
        img = images.get(name)
        if img is None:
            img = MultiPoly.var(pres.field, uv, name)
        elif isinstance(img, str):
            img = parse_poly(img, uv, pres.field)
        elif isinstance(img, AElement):
            img = img.nf.embed(uv)
        else:
            img = img.embed(uv)
        out.append((name, pres.reduce(img)))
    phi = ExpMap(pres, tuple(out), label=label)
    if verify:
        phi = phi.with_status(verify_expmap(phi))
    return phi


def _shift_map(pres: GavPresentation, moving: str, label: str, verify: bool) -> ExpMap:
    uv = pres.vars + (U,)
    alpha = pres.alpha.embed(uv)
    Fu = pres.F.embed(uv)
    u = MultiPoly.var(pres.field, uv, U)
    shifted = Fu.subs(**{moving: MultiPoly.var(pres.field, uv, moving) + alpha * u})
    quotient = (shifted - Fu).exact_div(alpha * u)
    images = {moving: MultiPoly.var(pres.field, uv, moving) + alpha * u,
              "Y": MultiPoly.var(pres.field, uv, "Y") + u * quotient}
    return make_expmap(pres, images, label=label, verify=verify)


def make_phi1(pres: GavPresentation, verify=True) -> ExpMap:
    """``z -> z + alpha*U``, ``y -> y + U*v`` with ``v = (F(Z + alpha U) - F) / (alpha U)``."""
    return _shift_map(pres, "Z", "phi1", verify)


def make_phi2(pres: GavPresentation, verify=True) -> ExpMap:
    """``t -> t + alpha*U``, ``y -> y + U*w`` with ``w = (F(T + alpha U) - F) / (alpha U)``."""
    return _shift_map(pres, "T", "phi2", verify)


def _rename_u(poly: MultiPoly, uvvars) -> MultiPoly:
    """Read a polynomial over ``vars + (U,)`` as one over ``vars + (U, V)`` with U renamed V."""
    return poly.rename({U: V}).embed(uvvars)


def verify_expmap(phi: ExpMap) -> VerificationReport:
    pres = phi.pres
    rep = VerificationReport()
    uv = phi.uvars
    uvv = pres.vars + (U, V)
    images = phi.image_map()

    rel = pres.relation.embed(pres.vars)
    disc = pres.reduce(rel.compose(images, uv))
    rep.add("well_defined", disc.is_zero(),
            "phi(alpha*Y - F) = 0 in A[U]", None if disc.is_zero() else str(disc))

    bad = []
    for name, img in phi.images:
        back = pres.reduce(img.evaluate(U, 0).embed(uv))
        diff = back - MultiPoly.var(pres.field, uv, name)
        if diff:
            bad.append(f"{name}: {diff}")
    rep.add("counit", not bad, "phi(g)|_{U=0} = g for every generator",
            "; ".join(bad) or None)

    v_images = {n: _rename_u(img, uvv) for n, img in phi.images}
    u_plus_v = MultiPoly.var(pres.field, uvv, U) + MultiPoly.var(pres.field, uvv, V)
    bad = []
    for name, img in phi.images:
        img2 = img.embed(uvv)
        lhs = pres.reduce(img2.compose(v_images, uvv))
        rhs = pres.reduce(img2.compose({U: u_plus_v}, uvv))
        diff = lhs - rhs
        if diff:
            bad.append(f"{name}: {diff}")
    rep.add("comultiplication", not bad, "phi_V(phi_U(g)) = phi_{U+V}(g) for every generator",
            "; ".join(bad) or None)

    moving = [n for n, img in phi.images if img != MultiPoly.var(pres.field, uv, n)]
    rep.add("nontrivial", bool(moving),
            "moves " + ", ".join(moving) if moving else "every generator is fixed")
    return rep


def _require_verified(phi):
    if not phi.verified:
        raise UnverifiedMap(f"map {phi.label or '<unnamed>'} is {phi.status}"
                            + (f" ({phi.reason})" if phi.reason else ""))


def is_invariant(phi: ExpMap, a) -> bool:
    _require_verified(phi)
    poly = a.nf if isinstance(a, AElement) else a
    poly = poly.embed(phi.pres.vars)
    return phi.apply(poly) == phi.pres.reduce(poly).embed(phi.uvars)


def base_change_map(phi: ExpMap, d: int, verify=True) -> ExpMap:
    """The map ``phi (x) id`` over ``F_{p^d}``."""
    target = base_change(phi.pres, d)
    emb = field_embedding(phi.pres.field, target.field)
    images = {n: img.change_field(target.field, emb) for n, img in phi.images}
    return make_expmap(target, images, label=phi.label, verify=verify)


# -- localization ---------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LocElement:
    """``num / s**power`` in ``A[1/s]`` (or ``A[1/s][U, ...]``)."""

    num: MultiPoly
    power: int

    def same(self, other: "LocElement", s: MultiPoly, pres: GavPresentation) -> bool:
        n = max(self.power, other.power)
        a = self.num * s.embed(self.num.vars) ** (n - self.power)
        b = other.num * s.embed(other.num.vars) ** (n - other.power)
        if a.vars != b.vars:
            full = a.vars if len(a.vars) >= len(b.vars) else b.vars
            a, b = a.embed(full), b.embed(full)
        return pres.reduce(a - b).is_zero()


@dataclass(frozen=True)
class LocalizedExpMap:
    base: ExpMap
    s: MultiPoly  # normal form of the invariant denominator over A's variables
    report: VerificationReport = dc_field(compare=False, default=None)

    def apply(self, x: LocElement) -> LocElement:
        return LocElement(self.base.apply(x.num.embed(self.base.pres.vars)), x.power)

    @property
    def verified(self):
        return self.report is not None and self.report.axioms_pass


def extend_to_localization(phi: ExpMap, s) -> LocalizedExpMap:
    """Extend ``phi`` to ``A[1/s]`` by ``phi(a / s^n) = phi(a) / s^n``."""
    pres = phi.pres
    s_poly = pres.reduce((s.nf if isinstance(s, AElement) else s).embed(pres.vars))
    if s_poly.is_zero():
        raise ZeroElement("cannot invert zero")
    if not is_invariant(phi, s_poly):
        raise NonInvariantDenominator(f"{s_poly} is not invariant under {phi.label or 'the map'}")
    loc = LocalizedExpMap(phi, s_poly)
    rep = VerificationReport()
    base = verify_expmap(phi)
    for c in base.checks:
        name = c.name if c.name == "nontrivial" else "base_" + c.name
        rep.add(Check(name, c.passed, c.detail, c.witness))
    uv, uvv = phi.uvars, pres.vars + (U, V)
    s_u = s_poly.embed(uv)
    # generators of A[1/s]: the generators of A divided by s, and 1/s itself
    gens = [LocElement(MultiPoly.var(pres.field, pres.vars, n), 1) for n in pres.vars]
    gens.append(LocElement(MultiPoly.constant(pres.field, pres.vars, 1), 1))
    bad_counit, bad_comult = [], []
    u_plus_v = MultiPoly.var(pres.field, uvv, U) + MultiPoly.var(pres.field, uvv, V)
    v_images = {n: _rename_u(img, uvv) for n, img in phi.images}
    for g in gens:
        img = loc.apply(g)
        at0 = LocElement(pres.reduce(img.num.evaluate(U, 0)), img.power)
        if not at0.same(LocElement(g.num.embed(uv), g.power), s_u, pres):
            bad_counit.append(str(g.num))
        num2 = img.num.embed(uvv)
        lhs = LocElement(pres.reduce(num2.compose(v_images, uvv)), img.power)
        rhs = LocElement(pres.reduce(num2.compose({U: u_plus_v}, uvv)), img.power)
        if not lhs.same(rhs, s_poly.embed(uvv), pres):
            bad_comult.append(str(g.num))
    rep.add("fraction_counit", not bad_counit, "U = 0 on a/s and 1/s",
            ", ".join(bad_counit) or None)
    rep.add("fraction_comultiplication", not bad_comult, "comultiplication on a/s and 1/s",
            ", ".join(bad_comult) or None)
    rep.add("denominator_invariant", True, f"phi({s_poly}) = {s_poly}")
    return replace(loc, report=rep)


# -- DK / ML certificates ----------------------------------------------------------------

@dataclass
class InvariantCertificate:
    DK_generators: list
    ML_generators: list
    hypothesis_log: list  # (condition, status, provenance, detail)
    certified: bool
    lower_bound_witnesses: dict
    cited: tuple = ()

    @property
    def kind(self):
        return "certified" if self.certified else "lower-bound"

    def to_dict(self):
        return {
            "kind": self.kind,
            "DK": [str(g) for g in self.DK_generators],
            "ML": [str(g) for g in self.ML_generators] if self.certified else None,
            "DK_lower_bound": [str(g) for g in self.lower_bound_witnesses["generators"]],
            "hypotheses": [{"condition": c, "status": s, "provenance": p, "detail": d}
                           for c, s, p, d in self.hypothesis_log],
            "invariance": self.lower_bound_witnesses["checks"],
        }


def certify_DK_ML(pres: GavPresentation) -> InvariantCertificate:
    """DK and ML for presentations whose ``a_i`` have only multiple roots and whose ``f`` is not linear."""
    if pres.alpha_factored is None:
        raise AlphaNotFactored("certificate needs factored alpha")
    log = []
    simple = []
    for i, a in enumerate(pres.alpha_factored, 1):
        if a.is_constant():
            simple.append(f"a_{i} constant")
            continue
        sq = squarefree_decomposition(a)
        if any(e == 1 for _, e in sq.parts):
            simple.append(f"a_{i} = {a} has a simple root")
    h1 = not simple
    log.append(("only_multiple_roots", "pass" if h1 else "fail", "computed",
                "every a_i is a product of squares or higher powers" if h1 else "; ".join(simple)))

    shape_ok = pres.f_part is not None or all(v in ("Z", "T") for v in pres.F.used_vars())
    log.append(("shape_f_plus_rad_h", "pass" if shape_ok else "fail", "computed",
                "F = f(Z, T) + rad(alpha) h" if shape_ok else "F not given in the form f + rad(alpha) h"))
    if shape_ok and pres.f_part is not None:
        rep = validate_presentation(pres)
        if "shape_f_plus_rad_h" in rep and not rep["shape_f_plus_rad_h"].passed:
            shape_ok = False
            log[-1] = ("shape_f_plus_rad_h", "fail", "computed", rep["shape_f_plus_rad_h"].detail)

    nl = pres.flag_entry("f_not_linear_any_coords")
    nt = pres.flag_entry("f_nontrivial_line")
    if nl is not None and nl.value:
        h2, detail = True, f"flag f_not_linear_any_coords (cite: {nl.cite})"
    elif nt is not None and nt.value:
        h2, detail = True, f"from flag f_nontrivial_line (cite: {nt.cite}); non-trivial lines are not linear in any coordinates"
    else:
        h2, detail = False, "no trusted flag asserts that f is not linear in any coordinates"
    log.append(("f_not_linear_any_coords", "pass" if h2 else "unavailable", "trusted-flag", detail))

    phi1, phi2 = make_phi1(pres), make_phi2(pres)
    gens = {n: pres.gen(n) for n in pres.vars}
    checks = []
    for phi, names in ((phi1, pres.xvars + ("T",)), (phi2, pres.xvars + ("Z",))):
        for n in names:
            checks.append({"map": phi.label, "element": n, "invariant": is_invariant(phi, gens[n])})
    lower_ok = phi1.verified and phi2.verified and all(c["invariant"] for c in checks)
    log.append(("lower_bound_witnesses", "pass" if lower_ok else "fail", "computed",
                "x_i, t invariant under phi1 and x_i, z invariant under phi2"))
    bz = [gens[n] for n in pres.xvars + ("Z", "T")]
    certified = h1 and h2 and shape_ok and lower_ok
    return InvariantCertificate(
        DK_generators=bz if certified else [],
        ML_generators=[gens[n] for n in pres.xvars] if certified else [],
        hypothesis_log=log,
        certified=certified,
        lower_bound_witnesses={"maps": (phi1, phi2), "generators": bz if lower_ok else [],
                               "checks": checks},
    )


# -- map files -------------------------------------------------------------------------

_MAP_LINE = re.compile(r"^phi\(\s*([A-Za-z]\w*)\s*\)\s*=\s*(.+)$")
_PRES_LINE = re.compile(r"^presentation\s*=\s*(.+)$")


class MapFormatError(GavError):
    pass


def _generator_name(token, pres):
    names = {n.lower(): n for n in pres.vars}
    if token in pres.vars:
        return token
    if token.lower() in names:
        return names[token.lower()]
    raise MapFormatError(f"unknown generator {token!r}")


def parse_map(text: str, pres: GavPresentation | None = None, path=None, label="", verify=True):
    """Parse ``phi(z) = ...`` lines; the presentation may be named in a header line."""
    base = Path(path).parent if path else Path(".")
    raw = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        pm = _PRES_LINE.match(line)
        if pm:
            if pres is None:
                pres = load_presentation(base / pm.group(1).strip())
            continue
        mm = _MAP_LINE.match(line)
        if not mm:
            raise MapFormatError(f"{path or '<input>'}:{lineno}: unrecognized line {line!r}")
        raw[mm.group(1)] = (mm.group(2), lineno)
    if pres is None:
        raise MapFormatError(f"{path or '<input>'}: no presentation given")
    uv = pres.vars + (U,)
    images = {}
    for token, (rhs, lineno) in raw.items():
        try:
            name = _generator_name(token, pres)
            images[name] = parse_poly(rhs, uv, pres.field)
        except (PolySyntaxError, MapFormatError) as exc:
            raise MapFormatError(f"{path or '<input>'}:{lineno}: {exc}") from exc
    return make_expmap(pres, images, label=label or (Path(path).stem if path else ""), verify=verify)


def load_map(path, pres=None, verify=True):
    path = Path(path)
    return parse_map(path.read_text(encoding="utf-8"), pres, path, verify=verify)


def format_map(phi: ExpMap) -> str:
    return "".join(f"phi({n.lower() if n in ('Y', 'Z', 'T') else n}) = {img}\n"
                   for n, img in phi.images)
