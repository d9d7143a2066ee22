"""``gav`` command-line interface.

Exit codes: 0 pass, 1 fail, 2 inconclusive, 64 usage error, 65 bad input data.
A certified non-isomorphism is a successful computation and exits 0 unless
``--strict-exit`` is given, in which case it exits 1.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from . import __version__
from .checks import CheckReport
from .citations import cite, cites
from .classify import (complete_automorphism, compare, generate_zcp_family, iso_discriminant,
                       non_rectangularity_report)
from .errors import (ConditionIFails, ConditionIIIFails, GammaNotConstant, GavError,
                     GcdConditionFails, HomogenizationFailed, ShapeMismatch)
from .expmap import (U, certify_DK_ML, format_map, is_invariant, load_map, make_phi1,
                     make_phi2, verify_expmap)
from .field import parse_field
from .filtration import (DegreeFunction, check_proper_filtration, check_remark_samples,
                         gr_presentation, induce_graded_expmap)
from .lines import default_line, line_report, load_line
from .parse import parse_elem, parse_poly
from .report import EXIT_DATA, EXIT_USAGE, Report, emit_report
from .variety import format_presentation, load_presentation, validate_presentation


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _checks_body(rep: CheckReport):
    return [c.to_dict() for c in rep.checks]


def _witnesses(rep: CheckReport):
    return {c.name: c.witness for c in rep.checks if c.witness is not None and not c.passed}


def _status(ok):
    return "pass" if ok else "fail"


def _load(args, path):
    field = parse_field(args.field) if args.field else None
    return load_presentation(path, field_override=field)


# -- verbs -----------------------------------------------------------------------------

def cmd_validate(args):
    pres = _load(args, args.presentation)
    rep = validate_presentation(pres)
    r = Report("validate", _status(rep.passed))
    r.section("presentation", {"file": args.presentation, "field": str(pres.field), "m": pres.m,
                               "relation": str(pres.relation)})
    r.section("checks", _checks_body(rep), _witnesses(rep))
    return r


def _map_section(r, phi, rep):
    r.section(f"map {phi.label}", {"images": {n: str(g) for n, g in phi.images},
                                   "status": phi.status, "nontrivial": not rep.trivial,
                                   "checks": _checks_body(rep)}, _witnesses(rep))


def cmd_expmap_construct(args):
    pres = _load(args, args.presentation)
    makers = {"phi1": make_phi1, "phi2": make_phi2}
    which = ["phi1", "phi2"] if args.which == "both" else [args.which]
    r = Report("expmap-construct", "pass")
    ok = True
    for name in which:
        phi = makers[name](pres)
        rep = verify_expmap(phi)
        ok &= rep.axioms_pass
        _map_section(r, phi, rep)
        if args.output:
            out = Path(args.output)
            if len(which) > 1:
                out = out.with_name(f"{out.stem}_{name}{out.suffix or '.map'}")
            out.write_text(f"presentation = {Path(args.presentation).resolve()}\n" + format_map(phi),
                           encoding="utf-8")
    r.status = _status(ok)
    r.cite(*cites("phi12", "expmap"))
    return r


def cmd_expmap_verify(args):
    pres = _load(args, args.presentation) if args.presentation else None
    phi = load_map(args.map, pres=pres, verify=False)
    rep = verify_expmap(phi)
    phi = phi.with_status(rep)
    r = Report("expmap-verify", _status(rep.axioms_pass))
    _map_section(r, phi, rep)
    r.cite(cite("expmap"))
    return r


def cmd_invariants(args):
    pres = _load(args, args.presentation)
    cert = certify_DK_ML(pres)
    r = Report("invariants", "pass" if cert.certified else "inconclusive")
    r.section("certificate", cert.to_dict())
    if args.element:
        phi1, phi2 = cert.lower_bound_witnesses["maps"]
        rows = []
        for text in args.element:
            a = pres.element(parse_poly(text, pres.vars, pres.field))
            rows.append({"element": str(a), "phi1": is_invariant(phi1, a),
                         "phi2": is_invariant(phi2, a)})
        r.section("membership", rows)
    r.cite(*cites("phi12", "dk", "ml", "not_linear"))
    return r


def _omega(args, pres):
    if args.unsafe_weights:
        weights = {}
        for part in args.unsafe_weights.split(","):
            k, _, v = part.partition("=")
            if k.strip() not in pres.vars or not v.strip().lstrip("-").isdigit():
                raise UsageError(f"bad weight {part!r}; expected NAME=INT")
            weights[k.strip()] = int(v)
        return DegreeFunction.custom(pres, weights, unsafe=True)
    if args.var is None:
        raise UsageError("--var is required (or --unsafe-weights)")
    lam = parse_elem(args.root or "0", pres.field)
    return DegreeFunction.centred(pres, args.var, lam)


def cmd_gr(args):
    pres = _load(args, args.presentation)
    omega = _omega(args, pres)
    r = Report("gr", "pass")
    try:
        gr = gr_presentation(pres, omega)
    except GcdConditionFails as exc:
        r.status = "fail"
        r.section("graded presentation", {"error": str(exc)}, {"common_factor": str(exc.witness)})
        r.cite(cite("gr"))
        return r
    sh = omega.shift
    r.section("graded presentation", {
        "variable": f"X{sh.index}", "root": pres.field.elem_str(sh.root),
        "multiplicity": sh.multiplicity, "alpha_prime": str(sh.alpha_prime),
        "weights": dict(omega.weights), "relation": str(gr.relation),
        "homogeneous": gr.is_homogeneous()})
    if args.homogenize:
        rows = []
        ok = True
        for phi in (make_phi1(pres), make_phi2(pres)):
            try:
                g = induce_graded_expmap(phi, omega, samples=args.samples or 100, seed=args.seed)
                rows.append({"map": phi.label, "weight_U": str(g.weight_u),
                             "images": {n: str(x) for n, x in g.map.images},
                             "checks": _checks_body(g.report)})
            except HomogenizationFailed as exc:
                ok = False
                rows.append({"map": phi.label, "error": str(exc),
                             "checks": _checks_body(exc.report) if exc.report else []})
        r.section("homogenized maps", rows)
        r.status = _status(ok)
        r.cite(cite("dhm"))
    r.cite(*cites("gr", "centred_degree"))
    return r


def cmd_filtration_check(args):
    pres = _load(args, args.presentation)
    omega = _omega(args, pres)
    n = args.samples or 1000
    rep = check_proper_filtration(pres, omega, n, args.seed, args.jobs)
    r = Report("filtration-check", _status(rep.passed))
    r.section("multiplicativity", rep.to_dict())
    if omega.shift is not None:
        rem = check_remark_samples(pres, omega, min(n, 200), args.seed, args.jobs)
        r.section("centred degree facts", rem.to_dict())
        r.status = _status(rep.passed and rem.passed)
        r.cite(*cites("gr", "centred_degree"))
    else:
        r.section("admissibility", {"checked": False, "note": "custom weights: admissibility unchecked"})
    return r


def cmd_classify_discriminant(args):
    pres = _load(args, args.presentation)
    d = iso_discriminant(pres)
    r = Report("classify-discriminant", "pass")
    r.section("discriminant", d.to_dict())
    try:
        chain = non_rectangularity_report(pres)
        r.section("non-rectangularity", chain.to_dict())
        r.cite(*chain.cited_results)
    except ShapeMismatch as exc:
        r.section("non-rectangularity", {"skipped": str(exc)})
    r.cite(cite("iso_roots"))
    return r


def cmd_classify_compare(args):
    A = _load(args, args.first)
    B = _load(args, args.second)
    v = compare(A, B)
    status = {"Isomorphic": "pass", "NonIsomorphic": "fail" if args.strict_exit else "pass",
              "Inconclusive": "inconclusive"}[v.kind]
    r = Report("classify-compare", status)
    r.section("certificate", {"verdict": v.kind, "cited_results": v.cited_results,
                              "witnesses": v.witnesses, "reason": v.reason})
    r.cite(*v.cited_results)
    return r


def cmd_family(args):
    line = load_line(args.line) if args.line else default_line(args.p)
    fam = generate_zcp_family(args.m, args.count, line, jobs=args.jobs)
    r = Report("family", "pass" if fam.all_separated() else "fail")
    r.section("line", {"f": str(line.f), "p": line.p, "name": line.name, "cite": line.cite})
    r.section("members", [{"index": j + 1, "a": [str(a) for a in P.alpha_factored],
                           "total_roots": iso_discriminant(P).total_roots}
                          for j, P in enumerate(fam.presentations)])
    r.section("pairwise", [{"pair": [a + 1, b + 1], "verdict": v.kind, "reason": v.reason}
                           for (a, b), v in sorted(fam.certificates.items())])
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for j, P in enumerate(fam.presentations, 1):
            (out / f"member_{j}.gav").write_text(format_presentation(P), encoding="utf-8")
    r.cite(*cites("iso_roots", "family"))
    return r


def cmd_line_verify(args):
    entry = load_line(args.line)
    rep = line_report(entry)
    r = Report("line-verify", _status(rep.passed))
    r.section("line", {"f": str(entry.f), "p": entry.p, "nontrivial_flag": entry.nontrivial,
                       "nontrivial_provenance": "trusted-flag", "cite": entry.cite})
    r.section("witness", _checks_body(rep), _witnesses(rep))
    return r


_IMAGE = re.compile(r"^(?:phi\(\s*)?([A-Za-z]\w*)\s*\)?\s*=\s*(.+)$")


def _endo_images(args, pres):
    items = []
    if args.endo:
        for line in Path(args.endo).read_text(encoding="utf-8").splitlines():
            line = line.split("#", 1)[0].strip()
            if line and not line.startswith("presentation"):
                items.append(line)
    items.extend(args.image or [])
    names = {n.lower(): n for n in pres.xvars + ("Z", "T")}
    images = {}
    for item in items:
        m = _IMAGE.match(item)
        if not m or m.group(1).lower() not in names:
            raise UsageError(f"bad image {item!r}; expected NAME=EXPR with NAME among X1..Xm, Z, T")
        images[names[m.group(1).lower()]] = m.group(2)
    return images


def cmd_auto_complete(args):
    pres = _load(args, args.presentation)
    images = _endo_images(args, pres)
    gamma = parse_elem(args.gamma, pres.field) if args.gamma else None
    r = Report("auto-complete", "pass")
    r.section("endomorphism", {n: images.get(n, n) for n in pres.xvars + ("Z", "T")})
    try:
        ac = complete_automorphism(pres, images, gamma)
    except ConditionIIIFails as exc:
        r.status = "fail"
        r.section("condition (iii)", {"error": str(exc)}, exc.witness or {})
    except (ConditionIFails, GammaNotConstant) as exc:
        r.status = "fail"
        r.section("conditions", {"error": str(exc)})
    else:
        r.status = _status(ac.verified)
        r.section("completion", ac.to_dict(pres.field))
    r.cite(cite("auto"))
    return r


# -- parser ---------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="coefficient field p or p^d (extends the presentation's field)")
    common.add_argument("--seed", type=int, default=0, help="seed for all randomized steps")
    common.add_argument("--samples", type=int, help="number of random samples")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--strict-exit", action="store_true",
                        help="exit 1 on certified non-isomorphism")

    p = _Parser(prog="gav", description="Exact algebra for rings alpha(X) Y = F(X, Z, T) over finite fields.")
    p.add_argument("--version", action="version", version=f"gav {__version__}")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    verb("validate", cmd_validate, "check a presentation").add_argument("presentation")
    sp = verb("expmap-construct", cmd_expmap_construct, "build and verify phi1/phi2")
    sp.add_argument("presentation")
    sp.add_argument("--which", choices=["phi1", "phi2", "both"], default="both")
    sp.add_argument("-o", "--output", help="write the map file(s)")
    sp = verb("expmap-verify", cmd_expmap_verify, "verify a map file")
    sp.add_argument("map")
    sp.add_argument("--presentation", help="presentation file (else taken from the map header)")
    sp = verb("invariants", cmd_invariants, "DK/ML certificate")
    sp.add_argument("presentation")
    sp.add_argument("--element", action="append", help="test membership of an element")
    for name, fn, h in (("gr", cmd_gr, "graded presentation at a root"),
                        ("filtration-check", cmd_filtration_check, "sample-based filtration checks")):
        sp = verb(name, fn, h)
        sp.add_argument("presentation")
        sp.add_argument("--var", type=int, help="index i of the shifted variable X_i")
        sp.add_argument("--root", help="root of a_i (field element; default 0)")
        sp.add_argument("--unsafe-weights", metavar="NAME=INT,...",
                        help="arbitrary weights; admissibility is not checked")
        if name == "gr":
            sp.add_argument("--homogenize", action="store_true", help="also homogenize phi1 and phi2")
    verb("classify-discriminant", cmd_classify_discriminant, "root-profile discriminant").add_argument("presentation")
    sp = verb("classify-compare", cmd_classify_compare, "compare two presentations")
    sp.add_argument("first")
    sp.add_argument("second")
    sp = verb("family", cmd_family, "pairwise non-isomorphic family")
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--count", type=int, default=5)
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--line", help="line file (default: catalog entry for p)")
    sp.add_argument("--out-dir", help="write member presentations here")
    verb("line-verify", cmd_line_verify, "check a line witness").add_argument("line")
    sp = verb("auto-complete", cmd_auto_complete, "complete an endomorphism to an automorphism")
    sp.add_argument("presentation")
    sp.add_argument("--image", action="append", help="NAME=EXPR, e.g. T=T+X1^2")
    sp.add_argument("--endo", help="file of NAME = EXPR lines")
    sp.add_argument("--gamma", help="expected constant gamma")
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        report = args.fn(args)
    except UsageError as exc:
        print(f"gav: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GavError, OSError, ValueError, LookupError) as exc:
        print(f"gav: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA
    out.write(emit_report(report, "json" if args.json else "text"))
    return report.exit_code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
