"""Degree functions centred at a root of ``a_i``, the associated graded ring, and homogenized maps.

Fix a root ``lam`` of ``a_i`` with multiplicity ``r`` and write ``X' = X_i - lam``.
In the shifted coordinates the relation is ``X'^r alpha'(X') Y - F`` and the
weights are ``w(X') = -1``, ``w(Y) = r``, all other generators 0.  The top
weight part of the relation is

    g0 = alpha'(X' = 0) * X'^r * Y - F(X' = 0, Z, T),

and the associated graded ring is ``k[X, Y, Z, T] / (g0)``.

The degree of an element is the least maximal weight over all of its
polynomial representatives.  Starting from the normal form, whenever the top
weight part of the representative is a multiple ``q * g0`` the representative
is replaced by ``P - q * relation``; this removes the whole top part and
strictly lowers the maximal weight.  The process stops exactly when the top
part is nonzero in the graded ring, which is then the top class of the
element, so the maximal weight reached is its degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field, replace
from fractions import Fraction

from .checks import Check, CheckReport
from .errors import (GcdConditionFails, HomogenizationFailed, NotShifted,
                     PreconditionViolation, ZeroElement)
from .expmap import U, ExpMap, make_expmap, verify_expmap
from .groebner import IdealHandle, divide, divide_with_witness, poly_gcd
from .poly import MultiPoly
from .sampling import parallel_map, random_element, random_poly, sample_rng
from .variety import (AElement, GavPresentation, ShiftResult, make_presentation,
                      shift_coordinate, shift_poly)

MAX_TOP_STEPS = 10_000


@dataclass(frozen=True)
class GradedPresentation:
    """``k[vars] / (relation)`` graded by integer weights on the variables."""

    field: object
    vars: tuple
    relation: MultiPoly
    weights: tuple  # ((name, weight), ...)
    pres: GavPresentation  # the same ring in alpha*Y - F form, used for normal forms

    def weight_map(self):
        return dict(self.weights)

    def is_homogeneous(self) -> bool:
        return len(weights_present(self.relation, self.weight_map())) <= 1

    def element(self, poly) -> AElement:
        return self.pres.element(poly)


def monomial_weight(e, vars, wmap):
    return sum(k * wmap.get(v, 0) for k, v in zip(e, vars) if k)


def weights_present(poly: MultiPoly, wmap):
    return {monomial_weight(e, poly.vars, wmap) for e in poly.terms}


def weight_part(poly: MultiPoly, wmap, weight):
    return MultiPoly(poly.field, poly.vars,
                     {e: c for e, c in poly.terms.items()
                      if monomial_weight(e, poly.vars, wmap) == weight}, _clean=True)


def max_weight(poly: MultiPoly, wmap):
    return max(weights_present(poly, wmap))


@dataclass(frozen=True)
class DegreeFunction:
    """Weights on the generating set ``{x_1, .., x_i - lam, .., x_m, y, z, t}``.

    ``shift`` is ``None`` only for unsafe custom weights, where the degree of an
    element is simply the weighted degree of its normal form.
    """

    pres: GavPresentation  # the unshifted presentation
    weights: tuple  # ((name, weight), ...)
    shift: ShiftResult | None = None
    unsafe: bool = False
    _g0: MultiPoly | None = dc_field(default=None, compare=False, repr=False)

    @classmethod
    def centred(cls, pres: GavPresentation, i: int, lam) -> "DegreeFunction":
        sh = shift_coordinate(pres, i, lam)
        w = {n: 0 for n in pres.vars}
        w[f"X{i}"] = -1
        w["Y"] = sh.multiplicity
        g0 = _graded_relation(sh)
        return cls(pres, tuple(w.items()), sh, False, g0)

    @classmethod
    def custom(cls, pres: GavPresentation, weights: dict, unsafe=False) -> "DegreeFunction":
        if not unsafe:
            raise PreconditionViolation(
                "arbitrary weights need unsafe=True; admissibility is not checked for them")
        w = {n: int(weights.get(n, 0)) for n in pres.vars}
        return cls(pres, tuple(w.items()), None, True, None)

    @property
    def wmap(self):
        return dict(self.weights)

    @property
    def shifted(self) -> GavPresentation:
        return self.shift.presentation if self.shift else self.pres

    @property
    def index(self):
        return self.shift.index if self.shift else None

    @property
    def r(self):
        return self.shift.multiplicity if self.shift else None

    def to_shifted(self, a) -> MultiPoly:
        """Normal form of ``a`` (an element of the unshifted ring) in shifted coordinates."""
        poly = a.nf if isinstance(a, AElement) else a
        if self.shift is None:
            return self.pres.reduce(poly)
        return self.shifted.reduce(shift_poly(poly, self.shift.index, self.shift.root))

    def from_shifted(self, poly: MultiPoly) -> MultiPoly:
        if self.shift is None:
            return poly
        return shift_poly(poly, self.shift.index, poly.field.neg(self.shift.root))


def _graded_relation(sh: ShiftResult) -> MultiPoly:
    pres = sh.presentation
    name = f"X{sh.index}"
    a0 = sh.alpha_prime.evaluate(name, 0)
    F0 = pres.F.evaluate(name, 0)
    return a0 * pres.var(name) ** sh.multiplicity * pres.var("Y") - F0


def top_reduce(poly: MultiPoly, omega: DegreeFunction):
    """``(P, n)``: a representative whose top weight ``n`` part is nonzero in gr.

    ``poly`` is in shifted coordinates (over the ring variables, optionally
    followed by extra variables of weight 0).
    """
    if poly.is_zero():
        raise ZeroElement("the zero element has no degree")
    wmap = omega.wmap
    if omega.shift is None:
        return poly, max_weight(poly, wmap)
    rel = omega.shifted.relation.embed(poly.vars)
    g0 = omega._g0.embed(poly.vars)
    P = poly
    for _ in range(MAX_TOP_STEPS):
        if P.is_zero():
            raise ZeroElement("element is zero in A")
        n = max_weight(P, wmap)
        top = weight_part(P, wmap, n)
        (q,), rem = divide(top, [g0])
        if rem:
            return P, n
        P = P - q * rel
    raise RuntimeError("top reduction did not terminate")


def omega_value(a, omega: DegreeFunction) -> int:
    """Filtration degree of a nonzero element of the unshifted ring."""
    P = omega.to_shifted(a)
    return top_reduce(P, omega)[1]


def omega_reduced(a, omega: DegreeFunction):
    """``(representative in shifted coordinates, degree)``."""
    return top_reduce(omega.to_shifted(a), omega)


# -- graded presentation -----------------------------------------------------------------

def gr_presentation(pres: GavPresentation, omega: DegreeFunction) -> GradedPresentation:
    if omega.shift is None:
        raise NotShifted("the graded presentation needs a degree function centred at a root")
    sh = omega.shift
    spres = sh.presentation
    name = f"X{sh.index}"
    a0 = sh.alpha_prime.evaluate(name, 0)
    F0 = spres.F.evaluate(name, 0)
    if F0.is_zero():
        raise GcdConditionFails(f"F vanishes at {name} = 0, so the top part of the relation is not a domain relation",
                                witness=str(a0))
    g = poly_gcd(a0, F0)
    if not g.is_constant():
        raise GcdConditionFails(f"alpha'(0) and F(0, Z, T) share the factor {g}", witness=str(g))
    g0 = a0 * spres.var(name) ** sh.multiplicity * spres.var("Y") - F0
    factored = None
    if spres.alpha_factored is not None:
        xi = spres.var(name)
        lead = a0
        others = [a for j, a in enumerate(spres.alpha_factored, 1) if j != sh.index]
        for a in others:
            lead = lead.exact_div(a)
        c = lead.constant_term()
        factored = tuple(a if j != sh.index else (xi ** sh.multiplicity).scale(c)
                         for j, a in enumerate(spres.alpha_factored, 1))
    gpres = make_presentation(spres.field, spres.m,
                              alpha=a0 * spres.var(name) ** sh.multiplicity,
                              a=factored, F=F0)
    gpres = replace(gpres, flags=spres.flags)
    return GradedPresentation(spres.field, spres.vars, g0, omega.weights, gpres)


def rho(a, omega: DegreeFunction, gr: GradedPresentation | None = None) -> AElement:
    """Top homogeneous class of ``a`` in the graded ring."""
    gr = gr or gr_presentation(omega.pres, omega)
    P, n = omega_reduced(a, omega)
    return gr.element(weight_part(P, omega.wmap, n))


# -- sample-based checks -------------------------------------------------------------------

@dataclass
class PropertyReport(CheckReport):
    samples: int = 0
    failures: list = dc_field(default_factory=list)

    def to_dict(self):
        d = super().to_dict()
        d.update(samples=self.samples, failures=self.failures[:20],
                 failure_count=len(self.failures))
        return d


def _pair_task(args):
    pres, omega, seed, k = args
    rng = sample_rng(seed, k)
    a = random_element(pres, rng)
    b = random_element(pres, rng)
    wa, wb = omega_value(a, omega), omega_value(b, omega)
    wab = omega_value(a * b, omega)
    if wab != wa + wb:
        return {"a": str(a), "b": str(b), "omega_a": wa, "omega_b": wb, "omega_ab": wab}
    return None


def check_proper_filtration(pres, omega, samples=1000, seed=0, jobs=1) -> PropertyReport:
    """``omega(ab) = omega(a) + omega(b)`` on random nonzero pairs."""
    results = parallel_map(_pair_task, [(pres, omega, seed, k) for k in range(samples)], jobs)
    fails = [r for r in results if r is not None]
    rep = PropertyReport(samples=samples, failures=fails)
    rep.add("multiplicative_degree", not fails,
            f"{samples - len(fails)}/{samples} pairs satisfy omega(ab) = omega(a) + omega(b)",
            None if not fails else f"a = {fails[0]['a']}, b = {fails[0]['b']}")
    return rep


def in_shifted_subring(P: MultiPoly, omega: DegreeFunction) -> bool:
    """Whether every monomial of ``P`` is a monomial in ``x, (x_i - lam)^r y, z, t``."""
    i = P.vars.index(f"X{omega.index}")
    iy = P.vars.index("Y")
    return all(e[i] >= omega.r * e[iy] for e in P.terms)


def remark_subring_check(pres, omega, b) -> Check | None:
    """For ``omega(b) <= 0``: the reduced representative uses ``(x_i - lam)^r y`` only."""
    P, n = omega_reduced(b, omega)
    if n > 0:
        return None
    same = omega.shifted.reduce(P) == omega.to_shifted(b)
    ok = same and in_shifted_subring(P, omega)
    return Check("nonpositive_in_subring", ok, f"omega = {n}", None if ok else str(P))


def remark_divisible_check(pres, omega, b, gr) -> Check | None:
    """For ``omega(b) > 0``: the top class is a multiple of ``y`` in the graded ring."""
    P, n = omega_reduced(b, omega)
    if n <= 0:
        return None
    top = gr.element(weight_part(P, omega.wmap, n)).nf
    ideal = IdealHandle([gr.pres.var("Y"), gr.relation])
    rem, cof = divide_with_witness(top, ideal)
    return Check("positive_top_divisible_by_y", rem.is_zero(), f"omega = {n}",
                 f"{cof[0]} * Y" if rem.is_zero() else str(rem))


def _remark_task(args):
    pres, omega, gr, seed, k, want_positive = args
    rng = sample_rng(seed, k)
    for _ in range(200):
        b = random_element(pres, rng)
        n = omega_value(b, omega)
        if (n > 0) == want_positive:
            c = (remark_divisible_check(pres, omega, b, gr) if want_positive
                 else remark_subring_check(pres, omega, b))
            return None if c.passed else {"b": str(b), "omega": n, "witness": c.witness}
    return {"b": None, "omega": None, "witness": "no sample with the requested sign found"}


def check_remark_samples(pres, omega, samples=200, seed=0, jobs=1) -> PropertyReport:
    gr = gr_presentation(pres, omega)
    rep = PropertyReport(samples=samples)
    for positive, name, offset in ((False, "nonpositive_in_subring", 0),
                                   (True, "positive_top_divisible_by_y", 10**6)):
        tasks = [(pres, omega, gr, seed, offset + k, positive) for k in range(samples)]
        fails = [r for r in parallel_map(_remark_task, tasks, jobs) if r is not None]
        rep.failures.extend(fails)
        rep.add(name, not fails, f"{samples - len(fails)}/{samples} samples",
                None if not fails else str(fails[0]))
    return rep


def rho_multiplicative_check(pres, omega, samples=500, seed=0):
    gr = gr_presentation(pres, omega)
    fails = []
    for k in range(samples):
        rng = sample_rng(seed, k)
        a, b = random_element(pres, rng), random_element(pres, rng)
        if rho(a, omega, gr) * rho(b, omega, gr) != rho(a * b, omega, gr):
            fails.append((str(a), str(b)))
    return fails


# -- homogenized exponential maps ---------------------------------------------------------------

@dataclass
class GradedExpMap:
    map: ExpMap  # on the graded ring's presentation
    report: CheckReport
    weight_u: Fraction
    shifted_map: ExpMap


def shift_expmap(phi: ExpMap, omega: DegreeFunction) -> ExpMap:
    """The map ``phi`` written in the shifted coordinates."""
    sh = omega.shift
    spres = sh.presentation
    name = f"X{sh.index}"
    images = {}
    for n, img in phi.images:
        s = shift_poly(img, sh.index, sh.root)
        if n == name:
            s = s - MultiPoly.constant(s.field, s.vars, sh.root)
        images[n] = s
    return make_expmap(spres, images, label=phi.label)


def _wu_candidates(sphi: ExpMap, omega):
    """``(generator, j, coefficient, degree)`` for every ``U^j`` coefficient with ``j >= 1``."""
    out = []
    for n, img in sphi.images:
        wg = omega.wmap[n]
        for j, c in img.coefficients_in(U).items():
            if j == 0 or c.is_zero():
                continue
            cj = c.embed(sphi.pres.vars)
            P, d = top_reduce(cj, omega)
            out.append((n, j, P, d, wg))
    return out


def induce_graded_expmap(phi: ExpMap, omega: DegreeFunction, samples=100, seed=0):
    """Homogenize a non-trivial verified map along the filtration of ``omega``.

    ``U`` receives the largest weight ``w_U`` (a rational number) with
    ``omega(c_j) + j*w_U <= omega(g)`` for every generator ``g`` and every
    coefficient ``c_j`` of ``U^j`` in ``phi(g)``.  The graded image of
    ``rho(g)`` collects the ``rho(c_j) U^j`` attaining equality.
    """
    if not phi.verified:
        raise PreconditionViolation(f"map is {phi.status}; verify it first")
    if phi.is_trivial():
        raise PreconditionViolation("the trivial map has no homogenization")
    gr = gr_presentation(phi.pres, omega)
    sphi = shift_expmap(phi, omega)
    cands = _wu_candidates(sphi, omega)
    wu = min(Fraction(wg - d, j) for _, j, _, d, wg in cands)
    gvars = gr.pres.vars + (U,)
    images = {}
    for n, _ in sphi.images:
        img = MultiPoly.var(gr.field, gvars, n)
        for g, j, P, d, wg in cands:
            if g == n and d + j * wu == wg:
                top = weight_part(P, omega.wmap, d)
                img = img + gr.pres.reduce(top).embed(gvars) * MultiPoly.var(gr.field, gvars, U) ** j
        images[n] = img
    gphi = make_expmap(gr.pres, images, label=(phi.label or "phi") + "_bar")
    rep = CheckReport()
    vr = verify_expmap(gphi)
    for c in vr.checks:
        rep.add(c)
    hom_bad = []
    wext = dict(omega.wmap)
    for n, img in gphi.images:
        ws = {Fraction(sum(k * (wext.get(v, 0) if v != U else wu) for k, v in zip(e, img.vars)))
              for e in img.terms}
        if ws != {Fraction(omega.wmap[n])}:
            hom_bad.append(n)
    rep.add("homogeneous", not hom_bad, f"every image has weight w(g) with w(U) = {wu}",
            ", ".join(hom_bad) or None)
    fixed = [n for n, img in phi.images if not img.depends_on(U)]
    bad = []
    if fixed:
        exps = {n: (3 if n.startswith("X") else 2) for n in fixed}
        for k in range(samples):
            rng = sample_rng(seed, k)
            a = None
            while a is None or a.is_zero():
                a = phi.pres.element(random_poly(phi.pres.field, phi.pres.vars, fixed, rng,
                                                 max_terms=4, max_exp=exps))
            ra = rho(a, omega, gr)
            if gphi.apply(ra.nf) != ra.nf.embed(gvars):
                bad.append(str(a))
        rep.add("rho_invariants", not bad,
                f"{samples - len(bad)}/{samples} sampled invariants in {', '.join(fixed)} keep invariant tops",
                bad[0] if bad else None)
    else:
        rep.add("rho_invariants", True, "no fixed generator to sample invariants from",
                provenance="skipped")
    if not rep.passed:
        raise HomogenizationFailed("induced map fails: " + ", ".join(rep.failed()), report=rep)
    return GradedExpMap(gphi, rep, wu, sphi)
