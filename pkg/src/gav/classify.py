"""Root-multiplicity discriminants, comparison verdicts, families and automorphism completion."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field as dc_field

from .checks import CheckReport
from .citations import cites
from .errors import (ConditionIFails, ConditionIIIFails, ConstantPolynomial, ExactDivisionFailure,
                     FieldMismatch, GammaNotConstant, LineNotTrusted, PreconditionViolation)
from .groebner import (IdealHandle, divide_with_witness, groebner, ideal_difference_witness,
                       ideal_equal)
from .lines import LineEntry
from .parse import parse_poly
from .poly import MonomialOrder, MultiPoly
from .sampling import parallel_map
from .upoly import (irreducibles, root_multiplicity_profile,
                    squarefree_decomposition)
from .variety import (AElement, GavPresentation, make_presentation, require_shape_h_zero,
                      ring_vars)


# -- discriminants ------------------------------------------------------------------------

@dataclass(frozen=True)
class IsoDiscriminant:
    field: object
    m: int
    profiles: tuple  # per variable, each a sorted tuple of (multiplicity, root count)
    only_multiple_roots: bool
    f_not_linear: bool
    f_flag_source: str = ""

    @property
    def multiset(self):
        return tuple(sorted(self.profiles))

    @property
    def total_roots(self):
        return sum(c for prof in self.profiles for _, c in prof)

    @property
    def hypotheses_met(self):
        return self.only_multiple_roots and self.f_not_linear

    def to_dict(self):
        return {"field": str(self.field), "m": self.m,
                "profiles": [[list(t) for t in prof] for prof in self.profiles],
                "total_roots": self.total_roots,
                "hypotheses": {"only_multiple_roots": {"value": self.only_multiple_roots,
                                                       "provenance": "computed"},
                               "f_not_linear": {"value": self.f_not_linear,
                                                "provenance": "trusted-flag",
                                                "source": self.f_flag_source}}}


def _f_not_linear(pres):
    for name in ("f_not_linear_any_coords", "f_nontrivial_line"):
        fl = pres.flag_entry(name)
        if fl is not None and fl.value:
            return True, name
    return False, ""


def iso_discriminant(pres: GavPresentation) -> IsoDiscriminant:
    factored = pres.require_factored()
    profiles = []
    for a in factored:
        if a.is_constant():
            profiles.append(())
        else:
            profiles.append(root_multiplicity_profile(a))
    multiple = all(prof and all(e > 1 for e, _ in prof) for prof in profiles)
    nl, src = _f_not_linear(pres)
    return IsoDiscriminant(pres.field, pres.m, tuple(profiles), multiple, nl, src)


def check_separable_multiple_root(a: MultiPoly) -> bool:
    """Some root in the closure has multiplicity at least 2.

    Over a finite field every irreducible is separable, so this is the same as
    ``a`` not being squarefree.
    """
    if a.is_zero() or a.is_constant():
        raise ConstantPolynomial("constant polynomial has no roots")
    return any(e >= 2 for _, e in squarefree_decomposition(a).parts)


# -- comparison ---------------------------------------------------------------------------------

@dataclass
class Verdict:
    kind: str  # Isomorphic | NonIsomorphic | Inconclusive
    reason: str
    cited_results: list = dc_field(default_factory=list)
    witnesses: dict = dc_field(default_factory=dict)

    @property
    def status(self):
        return {"Isomorphic": "pass", "NonIsomorphic": "fail"}.get(self.kind, "inconclusive")

    def to_dict(self):
        return {"verdict": self.kind, "reason": self.reason,
                "cited_results": self.cited_results, "witnesses": self.witnesses}


def _scalar_ratio(p: MultiPoly, q: MultiPoly):
    """``c`` with ``p == c * q`` (both nonzero), else ``None``."""
    if p.is_zero() or q.is_zero() or set(p.terms) != set(q.terms):
        return None
    e = next(iter(q.terms))
    c = p.field.div(p.terms[e], q.terms[e])
    return c if p == q.scale(c) else None


def isomorphism_by_renaming(A: GavPresentation, B: GavPresentation):
    """A map ``x_i -> x'_sigma(i), y -> c*y', z -> z', t -> t'`` from A onto B, if one exists."""
    if A.field != B.field or A.m != B.m:
        return None
    F = A.field
    for perm in itertools.permutations(range(A.m)):
        ren = {f"X{i + 1}": MultiPoly.var(F, B.vars, f"X{perm[i] + 1}") for i in range(A.m)}
        aA = A.alpha.compose(ren, B.vars)
        fA = A.F.compose(ren, B.vars)
        c1 = _scalar_ratio(aA, B.alpha)
        c2 = _scalar_ratio(fA, B.F)
        if c1 is None or c2 is None:
            continue
        gamma = F.div(c2, c1)
        images = dict(ren)
        images["Y"] = MultiPoly.var(F, B.vars, "Y").scale(gamma)
        rel = B.reduce(A.relation.compose(images, B.vars))
        if rel.is_zero():
            return {n: str(g) for n, g in images.items()} | {"Z": "Z", "T": "T"}
    return None


def compare(A: GavPresentation, B: GavPresentation) -> Verdict:
    if A.field != B.field:
        raise FieldMismatch(f"{A.field} vs {B.field}")
    witness = isomorphism_by_renaming(A, B)
    if witness is not None:
        return Verdict("Isomorphic", "presentations agree up to renaming and scaling",
                       [], {"map": witness})
    dA, dB = iso_discriminant(A), iso_discriminant(B)
    wit = {"first": dA.to_dict(), "second": dB.to_dict()}
    if A.m != B.m:
        return Verdict("NonIsomorphic", f"Krull dimensions differ ({A.m + 2} vs {B.m + 2})", [], wit)
    if not (dA.hypotheses_met and dB.hypotheses_met):
        unmet = [f"{side}: {h}" for side, d in (("first", dA), ("second", dB))
                 for h, ok in (("only_multiple_roots", d.only_multiple_roots),
                               ("f_not_linear", d.f_not_linear)) if not ok]
        wit["unmet"] = unmet
        return Verdict("Inconclusive", "HypothesesUnmet", [], wit)
    ca, cb = Counter(dA.profiles), Counter(dB.profiles)
    if ca != cb:
        wit["unmatched_first"] = [[list(t) for t in p] for p in sorted((ca - cb).elements())]
        wit["unmatched_second"] = [[list(t) for t in p] for p in sorted((cb - ca).elements())]
        reason = "no matching of variables with equal root profiles"
        if dA.total_roots != dB.total_roots:
            reason += f"; total root counts {dA.total_roots} and {dB.total_roots} differ"
        return Verdict("NonIsomorphic", reason, cites("iso_linear", "iso_roots"), wit)
    return Verdict("Inconclusive", "root profiles match; matching profiles are necessary, not sufficient",
                   cites("iso_roots"), wit)


# -- non-rectangularity chains -----------------------------------------------------------------

@dataclass
class CertificateChain:
    steps: list  # dicts: claim, status, provenance
    conclusion: str
    cited_results: list

    @property
    def complete(self):
        return all(s["status"] == "pass" for s in self.steps)

    def to_dict(self):
        return {"steps": self.steps, "conclusion": self.conclusion,
                "cited_results": self.cited_results}


def non_rectangularity_report(pres: GavPresentation) -> CertificateChain:
    require_shape_h_zero(pres)
    steps = []
    bad = [f"a_{i}" for i, a in enumerate(pres.alpha_factored, 1)
           if a.is_constant() or not check_separable_multiple_root(a)]
    steps.append({"claim": "every a_i has a separable multiple root",
                  "status": "fail" if bad else "pass", "provenance": "computed",
                  "detail": ("squarefree: " + ", ".join(bad)) if bad else "non-squarefree over a finite field"})
    if bad:
        return CertificateChain(steps, "blocked: the multiple-root hypothesis fails",
                                cites("separable_multiple_root"))
    nt = pres.flag_entry("f_nontrivial_line")
    line = pres.flag_entry("f_is_line")
    if nt is not None and nt.value:
        steps.append({"claim": "f is a non-trivial line", "status": "pass",
                      "provenance": "trusted-flag", "detail": nt.cite})
    else:
        trivial = line is not None and line.value
        steps.append({"claim": "f is a non-trivial line", "status": "fail",
                      "provenance": "trusted-flag",
                      "detail": "f is flagged as a trivial line" if trivial else "no trusted flag"})
        concl = ("blocked: for a trivial line, A is a polynomial ring in m + 2 variables"
                 if trivial else "blocked: non-triviality of f is not asserted")
        return CertificateChain(steps, concl, cites("separable_multiple_root"))
    steps.append({"claim": f"A is not a polynomial ring in {pres.m + 2} variables",
                  "status": "pass", "provenance": "implied"})
    steps.append({"claim": f"A[W] is a polynomial ring in {pres.m + 3} variables",
                  "status": "pass", "provenance": "trusted-metadata",
                  "detail": "stable isomorphism recorded, not machine-verified"})
    return CertificateChain(steps, "A is a counterexample to cancellation",
                            cites("separable_multiple_root", "stable"))


# -- the family of pairwise non-isomorphic examples ----------------------------------------------

def squarefree_of_degree(field, j: int, variables=("X1",), name="X1") -> MultiPoly:
    """Product of distinct monic irreducibles of total degree ``j``, smallest first.

    Irreducibles are scanned in degree-lexicographic order; one is taken when
    the remaining degree can still be filled by later irreducibles.
    """
    if j < 1:
        raise ValueError("degree must be positive")
    chosen = []
    remaining = j
    d = 1
    while remaining:
        irr = list(irreducibles(field, d))
        for k, g in enumerate(irr):
            rest = remaining - d
            if rest < 0:
                break
            if rest == 0 or rest > d or (rest == d and k + 1 < len(irr)):
                chosen.append(g)
                remaining = rest
                if remaining == 0:
                    break
        d += 1
    out = MultiPoly.constant(field, variables, 1)
    for g in chosen:
        out = out * MultiPoly.from_univariate(field, variables, name, g)
    return out


@dataclass
class FamilyResult:
    presentations: list
    certificates: dict  # (j, k) -> Verdict
    line: LineEntry

    def all_separated(self):
        return all(v.kind == "NonIsomorphic" for v in self.certificates.values())


def _compare_pair(args):
    A, B = args
    return compare(A, B)


def generate_zcp_family(m: int, count: int, line: LineEntry, jobs=1) -> FamilyResult:
    if count < 2:
        raise PreconditionViolation("a family needs at least two members")
    if not line.trusted_nontrivial:
        raise LineNotTrusted("the line is not flagged non-trivial with a citation")
    F = line.field
    V = ring_vars(m)
    f = line.f.embed(V)
    members = []
    for j in range(1, count + 1):
        g = squarefree_of_degree(F, j, V, "X1")
        a = [g * g] + [MultiPoly.var(F, V, f"X{i}", 2) for i in range(2, m + 1)]
        members.append(make_presentation(F, m, a=a, F=f, f=f,
                                         h=MultiPoly.zero(F, V),
                                         flags={"f_is_line": (True, line.cite),
                                                "f_nontrivial_line": (True, line.cite)},
                                         name=f"member_{j}"))
    pairs = list(itertools.combinations(range(count), 2))
    verdicts = parallel_map(_compare_pair, [(members[a], members[b]) for a, b in pairs], jobs)
    return FamilyResult(members, dict(zip(pairs, verdicts)), line)


# -- automorphism completion -------------------------------------------------------------------------

@dataclass
class AutoCompletion:
    gamma: int
    u: MultiPoly
    v: MultiPoly
    u_tilde: MultiPoly
    v_tilde: MultiPoly
    preimage: AElement
    y_image: AElement
    inverse: dict
    verified: bool
    checks: CheckReport

    def to_dict(self, field):
        return {"gamma": field.elem_str(self.gamma), "u": str(self.u), "v": str(self.v),
                "u_tilde": str(self.u_tilde), "v_tilde": str(self.v_tilde),
                "preimage_of_y": str(self.preimage), "image_of_y": str(self.y_image),
                "inverse": {k: str(g) for k, g in self.inverse.items()},
                "verified": self.verified, "checks": self.checks.to_dict()}


def _b_vars(pres):
    return pres.xvars + ("Z", "T")


def invert_b_map(field, bvars, images):
    """Inverse of the endomorphism ``v -> images[v]`` of ``k[bvars]``, or ``None``.

    Uses the graph ideal ``(W_v - images[v](V))`` and a block order eliminating
    the ``V``; the map is invertible exactly when the reduced basis consists of
    ``V_v - h_v(W)``, and then ``h`` is the inverse.
    """
    wvars = tuple(f"W_{v}" for v in bvars)
    allv = tuple(bvars) + wvars
    gens = [MultiPoly.var(field, allv, w) - images[v].embed(allv) for v, w in zip(bvars, wvars)]
    order = MonomialOrder(allv, "block", (len(bvars), len(wvars)))
    gb = groebner(gens, order)
    if len(gb) != len(bvars):
        return None
    inverse = {}
    for g in gb:
        lm = g.leading_monomial(order)
        if sum(lm) != 1 or lm.index(1) >= len(bvars):
            return None
        v = allv[lm.index(1)]
        rest = MultiPoly.var(field, allv, v) - g
        if any(rest.depends_on(x) for x in bvars):
            return None
        inverse[v] = rest.embed(wvars).rename(dict(zip(wvars, bvars)))
    if set(inverse) != set(bvars):
        return None
    for v in bvars:  # both composites are the identity
        if inverse[v].compose(images, bvars) != MultiPoly.var(field, bvars, v):
            return None
    return inverse


def complete_automorphism(pres: GavPresentation, endo: dict, gamma=None) -> AutoCompletion:
    """Complete an endomorphism of ``B = k[x, z, t]`` to an automorphism of ``A``.

    ``endo`` maps each of ``X1..Xm, Z, T`` to a polynomial (or string) in those
    variables; missing entries are fixed.
    """
    F = pres.field
    bv = _b_vars(pres)
    images = {}
    for v in bv:
        g = endo.get(v)
        if g is None:
            g = MultiPoly.var(F, bv, v)
        elif isinstance(g, str):
            g = parse_poly(g, bv, F)
        else:
            g = g.embed(bv)
        images[v] = g
    checks = CheckReport()
    # condition (i)
    for x in pres.xvars:
        if any(images[x].depends_on(w) for w in ("Z", "T")):
            raise ConditionIFails(f"image of {x} = {images[x]} leaves k[x]")
    inverse = invert_b_map(F, bv, images)
    if inverse is None:
        raise ConditionIFails("the map on k[x, z, t] is not invertible")
    for x in pres.xvars:
        if any(inverse[x].depends_on(w) for w in ("Z", "T")):
            raise ConditionIFails(f"inverse image of {x} = {inverse[x]} leaves k[x]")
    checks.add("condition_i", True, "invertible on k[x, z, t], preserving k[x]")
    # condition (iii)
    alpha, Fb = pres.alpha.embed(bv), pres.F.embed(bv)
    pa, pF = alpha.compose(images, bv), Fb.compose(images, bv)
    order = MonomialOrder(("Y",) + bv, "grevlex")
    I, J = IdealHandle([alpha, Fb], order), IdealHandle([pa, pF], order)
    if not ideal_equal(I, J):
        side, elem, rem = ideal_difference_witness(I, J)
        raise ConditionIIIFails(
            f"(alpha, F) != (phi(alpha), phi(F)): {elem} from the {side} ideal leaves remainder {rem}",
            witness={"side": side, "element": str(elem), "remainder": str(rem)})
    checks.add("condition_iii", True, "(alpha, F) = (phi(alpha), phi(F)) in k[x, z, t]")
    # phi(alpha) = gamma * alpha
    try:
        q = pa.exact_div(alpha)
    except ExactDivisionFailure:
        q = None
    if q is None or not q.is_constant() or q.is_zero():
        raise GammaNotConstant("phi(alpha) / alpha is not a nonzero constant")
    g = q.constant_term()
    if gamma is not None and F.elem(gamma) != g:
        raise GammaNotConstant(f"candidate gamma {gamma} differs from phi(alpha)/alpha = {F.elem_str(g)}")
    # F = alpha*u + phi(F)*v
    rem, (u, v) = divide_with_witness(Fb, J)
    if rem:
        raise ConditionIIIFails("F is not in (phi(alpha), phi(F))", witness={"remainder": str(rem)})
    rem2, (u2, v2) = divide_with_witness(pF, I)
    if rem2:
        raise ConditionIIIFails("phi(F) is not in (alpha, F)", witness={"remainder": str(rem2)})
    checks.add("cofactors", (pa * u + pF * v) == Fb, "F = phi(alpha) u + phi(F) v")
    # with phi(alpha) = gamma*alpha this is F = alpha*(gamma u) + phi(F) v
    u = u.scale(g)
    ut, vt = u.compose(inverse, bv), v.compose(inverse, bv)
    V = pres.vars
    ginv = F.inv(g)
    y = pres.var("Y")
    # phi(y) = phi(F) / phi(alpha) = (alpha*u2 + F*v2) / (gamma*alpha) = (u2 + y*v2) / gamma
    y_img = (u2.embed(V) + y * v2.embed(V)).scale(ginv)
    amap = {n: images[n].embed(V) for n in bv}
    amap["Y"] = y_img
    rel_img = pres.reduce(pres.relation.compose(amap, V))
    checks.add("endomorphism_of_A", rel_img.is_zero(), "relation maps to 0",
               None if rel_img.is_zero() else str(rel_img))
    pre = pres.element(ut.embed(V) + y.scale(g) * vt.embed(V))
    back = pres.reduce(pre.nf.compose(amap, V))
    ok = back == pres.reduce(y)
    checks.add("preimage_of_y", ok, "phi(u~ + gamma*y*v~) = y", None if ok else str(back))
    return AutoCompletion(g, u, v, ut, vt, pre, pres.element(y_img), inverse, checks.passed, checks)
