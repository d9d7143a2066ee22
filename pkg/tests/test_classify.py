"""Discriminants, comparison verdicts, lines, families and automorphism completion."""

from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from gav import (base_change, make_field, check_separable_multiple_root, compare, complete_automorphism,
                 generate_zcp_family, iso_discriminant, make_presentation,
                 non_rectangularity_report, validate_presentation, verify_line_witness)
from gav.errors import (AlphaNotFactored, ConditionIFails, ConditionIIIFails, ConstantPolynomial,
                        FieldMismatch, GammaNotConstant, LineNotTrusted, MissingWitness,
                        PreconditionViolation, ShapeMismatch)
from gav.classify import squarefree_of_degree
from gav.lines import (LineEntry, catalog, default_line, format_line, line_report, load_line,
                       parse_lines, segre_line)
from gav.parse import parse_poly
from gav.upoly import is_irreducible

import oracles
from corpus import CORPUS, FIXTURES, LINE_FLAGS

LINE = "Z^4 + T + T^6"


def zcp(a, p=2, F=LINE, **kw):
    kw.setdefault("flags", LINE_FLAGS)
    return make_presentation(p, a=a, F=F, **kw)


# -- discriminants ---------------------------------------------------------------------------------

def test_single_double_root():
    assert iso_discriminant(make_presentation(5, a=["X1^2"], F="Z")).profiles == (((2, 1),),)


def test_two_double_roots():
    d = iso_discriminant(make_presentation(5, a=["(X1^2 - X1)^2"], F="Z"))
    assert d.profiles == (((2, 2),),) and d.total_roots == 2


def test_two_variables():
    d = iso_discriminant(make_presentation(3, a=["X1^2", "(X2^2 + 1)^2"], F="Z"))
    assert d.multiset == (((2, 1),), ((2, 2),))


def test_discriminant_needs_factors():
    with pytest.raises(AlphaNotFactored):
        iso_discriminant(make_presentation(5, 1, alpha="X1^2", F="Z"))


@pytest.mark.parametrize("pres", CORPUS, ids=lambda P: P.name)
def test_discriminant_matches_brute_force(pres):
    for a, prof in zip(pres.alpha_factored, iso_discriminant(pres).profiles):
        assert prof == oracles.brute_force_profile(a.to_dense(a.univariate_var()), pres.field.p)


@pytest.mark.parametrize("pres", CORPUS[::4], ids=lambda P: P.name)
@pytest.mark.parametrize("d", [2, 3])
def test_discriminant_stable_under_base_change(pres, d):
    assert iso_discriminant(base_change(pres, d)).profiles == iso_discriminant(pres).profiles


@pytest.mark.parametrize("text,p,expected", [
    ("X1^2", 5, True),
    ("X1^2 - X1", 5, False),
    ("X1^4 + X1^2", 2, True),
    ("X1^3 - X1", 3, False),
])
def test_separable_multiple_root(text, p, expected):
    assert check_separable_multiple_root(parse_poly(text, ("X1",), make_field(p))) is expected


def test_separable_multiple_root_constant():
    with pytest.raises(ConstantPolynomial):
        check_separable_multiple_root(parse_poly("2", ("X1",), make_field(5)))


# -- compare --------------------------------------------------------------------------------------------

def test_root_counts_separate():
    v = compare(zcp(["X1^2"]), zcp(["(X1^2 + X1)^2"]))
    assert v.kind == "NonIsomorphic"
    assert "1 and 2" in v.reason
    assert any("equal number of roots" in c["quote"] for c in v.cited_results)


def test_identical_is_isomorphic():
    A = zcp(["X1^2"])
    v = compare(A, A)
    assert v.kind == "Isomorphic" and v.witnesses["map"]["X1"] == "X1"


def test_translation_is_inconclusive():
    v = compare(zcp(["X1^2"]), zcp(["(X1 + 1)^2"]))
    assert v.kind == "Inconclusive"
    assert v.witnesses["first"]["profiles"] == v.witnesses["second"]["profiles"]


def test_unmet_hypotheses():
    v = compare(zcp(["X1^2 + X1"]), zcp(["X1^2"]))
    assert v.kind == "Inconclusive" and v.reason == "HypothesesUnmet"
    v = compare(zcp(["X1^2"], flags={}), zcp(["(X1^2 + X1)^2"], flags={}))
    assert v.reason == "HypothesesUnmet"


def test_renaming_witness():
    A = zcp(["X1^2", "(X2^2 + X2)^2"])
    B = zcp(["(X1^2 + X1)^2", "X2^2"])
    v = compare(A, B)
    assert v.kind == "Isomorphic" and v.witnesses["map"]["X1"] == "X2"


def test_scaling_witness():
    A = make_presentation(5, a=["X1^2"], F="Z^2 + T^3")
    B = make_presentation(5, 1, alpha="2*X1^2", F="Z^2 + T^3")
    assert compare(A, B).kind == "Isomorphic"


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        compare(zcp(["X1^2"]), make_presentation(5, a=["X1^2"], F="Z"))


def test_dimension_mismatch():
    assert compare(zcp(["X1^2"]), zcp(["X1^2", "X2^2"])).kind == "NonIsomorphic"


_members = [zcp([a]) for a in ("X1^2", "(X1^2 + X1)^2", "(X1 + 1)^2", "X1^3", "X1^2*(X1 + 1)^3",
                               "X1^2 + X1", "(X1^3 + X1 + 1)^2")]


@given(st.sampled_from(_members), st.sampled_from(_members))
def test_compare_is_symmetric(A, B):
    v, w = compare(A, B), compare(B, A)
    assert v.kind == w.kind
    if v.kind == "NonIsomorphic":
        assert v.witnesses["unmatched_first"] == w.witnesses["unmatched_second"]


# -- lines ---------------------------------------------------------------------------------------------------

@pytest.mark.parametrize("name,expected", [
    ("coordinate.line", True),
    ("parabola.line", True),
    ("nontrivial_p2.line", True),
    ("not_a_line.line", False),
])
def test_line_fixtures(name, expected):
    assert verify_line_witness(load_line(FIXTURES / name)) is expected


def test_reducible_curve_fails_only_the_kernel_check():
    rep = line_report(load_line(FIXTURES / "not_a_line.line"))
    assert rep.failed() == ["kernel_is_f"]


def test_missing_witness():
    entry = parse_lines("p 5\nf = Z\nnontrivial false\n")[0]
    with pytest.raises(MissingWitness):
        verify_line_witness(entry)


@pytest.mark.parametrize("entry", catalog(), ids=lambda e: e.name)
def test_catalog_witnesses(entry):
    assert entry.trusted_nontrivial
    assert verify_line_witness(entry)
    assert parse_lines(format_line(entry))[0] == entry


@pytest.mark.parametrize("p,e,s", [(2, 1, 3), (2, 2, 3), (3, 1, 2), (3, 2, 2), (5, 1, 2), (2, 3, 3)])
def test_segre_witnesses(p, e, s):
    assert verify_line_witness(segre_line(p, e, s))


def test_segre_over_extension():
    assert verify_line_witness(segre_line(2, 2, 3, d=2))


def test_default_line():
    assert default_line(2).f == parse_poly(LINE, ("Z", "T"), make_field(2))
    with pytest.raises(LookupError):
        default_line(11)


# -- non-rectangularity chains ------------------------------------------------------------------------------

def test_full_chain():
    chain = non_rectangularity_report(zcp(["X1^2"], f=LINE, h="0"))
    assert chain.complete
    assert "counterexample" in chain.conclusion
    assert [s["provenance"] for s in chain.steps] == ["computed", "trusted-flag", "implied", "trusted-metadata"]


def test_chain_blocked_by_simple_roots():
    chain = non_rectangularity_report(zcp(["X1"]))
    assert not chain.complete and len(chain.steps) == 1


def test_chain_blocked_by_trivial_line():
    pres = make_presentation(2, a=["X1^2"], F="Z", flags={"f_is_line": (True, "coordinate")})
    chain = non_rectangularity_report(pres)
    assert not chain.complete and "polynomial ring" in chain.conclusion


def test_chain_needs_h_zero():
    with pytest.raises(ShapeMismatch):
        non_rectangularity_report(zcp(["X1^2"], F="Z^4 + T + T^6 + X1*T"))


# -- families --------------------------------------------------------------------------------------------------

def test_squarefree_builder_over_f2():
    F = make_field(2)
    got = [str(squarefree_of_degree(F, j)) for j in range(1, 6)]
    assert got == ["X1", "X1^2 + X1", "X1^3 + X1^2 + X1", "X1^4 + X1", "X1^5 + X1^4 + X1^3 + X1"]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_squarefree_builder_is_squarefree(p):
    F = make_field(p)
    for j in range(1, 8):
        g = squarefree_of_degree(F, j)
        assert g.total_degree() == j
        assert iso_discriminant(make_presentation(F, a=[g * g], F="Z")).profiles == (((2, j),),)


def test_family_of_three():
    fam = generate_zcp_family(1, 3, default_line(2))
    assert [iso_discriminant(P).total_roots for P in fam.presentations] == [1, 2, 3]
    assert len(fam.certificates) == 3 and fam.all_separated()


def test_family_p5():
    fam = generate_zcp_family(1, 2, default_line(5))
    assert fam.certificates[(0, 1)].kind == "NonIsomorphic"


def test_family_members_are_valid():
    fam = generate_zcp_family(2, 4, default_line(3))
    for P in fam.presentations:
        assert validate_presentation(P).passed
        assert non_rectangularity_report(P).complete
    assert fam.all_separated()


def test_family_preconditions():
    with pytest.raises(PreconditionViolation):
        generate_zcp_family(1, 1, default_line(2))
    untrusted = LineEntry(default_line(2).f, 2)
    with pytest.raises(LineNotTrusted):
        generate_zcp_family(1, 3, untrusted)


def test_family_parallel_matches_serial():
    line = default_line(2)
    a = generate_zcp_family(1, 4, line, jobs=1)
    b = generate_zcp_family(1, 4, line, jobs=2)
    assert {k: v.to_dict() for k, v in a.certificates.items()} == {k: v.to_dict() for k, v in b.certificates.items()}


# -- automorphism completion ----------------------------------------------------------------------------------

@pytest.fixture
def cusp():
    return make_presentation(5, a=["X1^2"], F="Z^2 + T^3")


def test_shear(cusp):
    ac = complete_automorphism(cusp, {"T": "T + X1^2"})
    assert ac.gamma == 1 and ac.verified
    assert ac.checks["preimage_of_y"].passed


def test_identity(cusp):
    ac = complete_automorphism(cusp, {})
    assert ac.gamma == 1 and ac.preimage == cusp.gen("Y")


def test_shift_breaks_condition_iii():
    pres = make_presentation(5, a=["X1^2"], F="Z^2")
    with pytest.raises(ConditionIIIFails) as info:
        complete_automorphism(pres, {"Z": "Z + 1"})
    assert info.value.witness["remainder"]


def test_non_invertible(cusp):
    with pytest.raises(ConditionIFails):
        complete_automorphism(cusp, {"T": "T^2"})
    with pytest.raises(ConditionIFails):
        complete_automorphism(cusp, {"X1": "X1 + Z"})


def test_gamma_candidate(cusp):
    ac = complete_automorphism(cusp, {"X1": "2*X1", "Z": "2*Z", "T": "4*T"}, gamma=4)
    assert ac.gamma == 4 and ac.verified
    with pytest.raises(GammaNotConstant):
        complete_automorphism(cusp, {"T": "T + X1^2"}, gamma=2)


def test_scaled_variables_two_dimensional():
    pres = make_presentation(5, a=["X1^2", "X2^2"], F="Z^2 + T^3")
    ac = complete_automorphism(pres, {"X1": "3*X1", "Z": "Z + X1^2*X2^2"})
    assert ac.gamma == 4 and ac.verified


@settings(max_examples=25)
@given(st.sampled_from([P for P in CORPUS if P.field.p == 5]), st.integers(1, 4), st.integers(0, 4))
def test_completions_reproduce_y(pres, c, e):
    bv = pres.xvars + ("Z", "T")
    shear = pres.alpha.embed(bv)
    t, z = (parse_poly(n, bv, pres.field) for n in ("T", "Z"))
    images = {"T": t + shear.scale(c), "Z": z + shear.scale(e) * t}
    ac = complete_automorphism(pres, images)
    assert ac.verified and ac.gamma == 1
    # the transported presentation has the same discriminant
    moved = make_presentation(pres.field, pres.m, a=pres.alpha_factored,
                              F=pres.F.compose({n: g.embed(pres.vars) for n, g in images.items()}, pres.vars))
    assert iso_discriminant(moved) == iso_discriminant(pres)


def test_completion_serializes(cusp):
    d = complete_automorphism(cusp, {"T": "T + X1^2"}).to_dict(cusp.field)
    assert d["gamma"] == "1" and d["verified"] and d["preimage_of_y"]
