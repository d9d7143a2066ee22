"""Presentations, normal forms, validation, base change and coordinate shifts."""

from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gav import (base_change, elem_equal, load_presentation, make_presentation, parse_field,
                 parse_poly, shift_coordinate, validate_presentation)
from gav.errors import AlphaNotFactored, NotARoot, PresentationMismatch, ShapeMismatch
from gav.sampling import random_element, random_poly, sample_rng
from gav.upoly import factor_univariate
from gav.variety import (PresentationFormatError, base_change_element, format_presentation,
                         parse_presentation, require_shape_h_zero, shift_presentation)

import oracles
from corpus import CORPUS, CORPUS_BY_NAME, FIXTURES


@pytest.fixture
def a1z2():
    return make_presentation(5, a=["X1^2"], F="Z^2")


# -- validation ---------------------------------------------------------------------------------

def test_valid_presentation_passes_everything():
    rep = validate_presentation(make_presentation(5, a=["X1^2"], F="Z^2 + T^3"))
    assert rep.passed and not rep.failed()


def test_common_factor_is_reported():
    rep = validate_presentation(make_presentation(5, 1, alpha="X1", F="X1*Z"))
    assert not rep["domain_gcd"].passed
    assert rep["domain_gcd"].witness == "X1"


def test_common_factor_with_factored_alpha():
    rep = validate_presentation(make_presentation(5, a=["X1^2*(X1 + 1)"], F="(X1 + 1)*(Z + T)"))
    assert rep.failed() == ["domain_gcd"]
    assert rep["domain_gcd"].witness == "X1 + 1"


def test_constant_alpha_fails():
    rep = validate_presentation(make_presentation(5, 1, alpha="3", F="Z"))
    assert not rep["alpha_not_constant"].passed


def test_degree_condition():
    rep = validate_presentation(make_presentation(5, a=["X1^2"], F="X1 + 1"))
    assert not rep["degree_condition"].passed


def test_shape_check_and_witness():
    good = make_presentation(5, a=["X1^2*(X1 + 1)"], F="Z^2 + T^3 + (X1^2 + X1)*T", f="Z^2 + T^3", h="T")
    assert validate_presentation(good)["shape_f_plus_rad_h"].passed
    bad = make_presentation(5, a=["X1^2"], F="Z^2 + T^3 + X1", f="Z^2 + T^3", h="0")
    check = validate_presentation(bad)["shape_f_plus_rad_h"]
    assert not check.passed and check.witness == "X1"


def test_true_flags_need_citations():
    P = make_presentation(2, a=["X1^2"], F="Z^4 + T + T^6", flags={"f_nontrivial_line": True})
    assert validate_presentation(P).failed() == ["flag_citations"]
    with pytest.raises(ValueError):
        make_presentation(2, a=["X1^2"], F="Z", flags={"made_up": True})


@pytest.mark.parametrize("pres", CORPUS, ids=lambda P: P.name)
def test_corpus_is_valid(pres):
    assert validate_presentation(pres).passed


# -- elements -------------------------------------------------------------------------------------

def test_relation_is_zero(a1z2):
    assert a1z2.element(a1z2.relation).is_zero()


def test_relation_equality(a1z2):
    assert elem_equal(a1z2.element("X1^2*Y"), a1z2.element("Z^2"))


def test_y_is_not_z_squared(a1z2):
    P, Q = a1z2.element("Y"), a1z2.element("Z^2")
    assert not elem_equal(P, Q)
    assert not oracles.iota_equal(P.nf, Q.nf, a1z2.alpha, a1z2.F)


def test_differing_by_relation_multiple(a1z2):
    Q = a1z2.element("Z*T + Y^2")
    P = a1z2.element(a1z2.poly("Z*T + Y^2") + a1z2.relation * a1z2.var("T"))
    assert elem_equal(P, Q)


def test_elements_of_different_presentations(a1z2):
    other = make_presentation(5, a=["X1^3"], F="Z^2")
    with pytest.raises(PresentationMismatch):
        elem_equal(a1z2.gen("Y"), other.gen("Y"))


def _perturb(pres, a, rng):
    """``a`` plus a random multiple of the relation, as a raw polynomial."""
    c = random_poly(pres.field, pres.vars, pres.vars, rng, 3)
    return a.nf + c * pres.relation


@pytest.mark.parametrize("pres", CORPUS[::3], ids=lambda P: P.name)
def test_normal_form_and_embedding_agree(pres):
    for k in range(60):
        rng = sample_rng(11, k)
        a = random_element(pres, rng)
        b = random_element(pres, rng) if rng.random() < 0.5 else pres.element(_perturb(pres, a, rng))
        raw = _perturb(pres, b, rng)
        assert elem_equal(a, b) == oracles.iota_equal(a.nf, raw, pres.alpha, pres.F)


def test_equality_is_an_equivalence_500():
    pres = CORPUS[14]
    for k in range(500):
        rng = sample_rng(5, k)
        a = random_element(pres, rng)
        b = pres.element(_perturb(pres, a, rng)) if rng.random() < 0.7 else random_element(pres, rng)
        c = pres.element(_perturb(pres, b, rng)) if rng.random() < 0.7 else random_element(pres, rng)
        assert elem_equal(a, a)
        assert elem_equal(a, b) == elem_equal(b, a)
        if elem_equal(a, b) and elem_equal(b, c):
            assert elem_equal(a, c)


@given(st.integers(0, 10 ** 6), st.sampled_from(CORPUS))
def test_arithmetic_respects_the_embedding(seed, pres):
    rng = sample_rng(seed, 0)
    a, b = random_element(pres, rng), random_element(pres, rng)
    product = a * b
    naive = a.nf * b.nf
    assert oracles.iota_equal(product.nf, naive, pres.alpha, pres.F)
    assert (a + b) - b == a


# -- base change ------------------------------------------------------------------------------------

def test_base_change_identity():
    P = make_presentation(3, a=["(X1^2 + 1)^2"], F="Z^2 + T^3")
    assert base_change(P, 1) is P


def test_base_change_splits_the_quadratic():
    P = base_change(make_presentation(3, a=["(X1^2 + 1)^2"], F="Z^2 + T^3"), 2)
    ((factors),) = P.alpha_factorization()
    assert [(g.total_degree(), e) for g, e in factors] == [(1, 2), (1, 2)]
    K = oracles.oracle_field(3, 2)
    assert int((K.evaluate([1, 0, 1], np.arange(9)) == 0).sum()) == 2


def test_already_split_stays_split():
    P = base_change(make_presentation(5, a=["X1^2"], F="Z"), 3)
    assert [[(str(g), e) for g, e in fs] for fs in P.alpha_factorization()] == [[("X1", 2)]]
    assert validate_presentation(P).passed


@pytest.mark.parametrize("d", [2, 3])
def test_base_change_preserves_equality(d):
    pres = CORPUS[7]
    target = base_change(pres, d)
    for k in range(40):
        rng = sample_rng(7, k)
        a = random_element(pres, rng)
        b = pres.element(_perturb(pres, a, rng))
        c = random_element(pres, rng)
        A, B, C = (base_change_element(x, target) for x in (a, b, c))
        assert elem_equal(A, B)
        assert elem_equal(A, C) == elem_equal(a, c)


# -- shifts -----------------------------------------------------------------------------------------

def test_shift_at_a_double_root():
    P = make_presentation(5, a=["X1^2*(X1 - 1)^2"], F="Z^2 + T^3")
    sh = shift_coordinate(P, 1, 1)
    assert sh.multiplicity == 2
    assert sh.alpha_prime == P.poly("(X1 + 1)^2")
    assert sh.alpha_prime.evaluate("X1", 0).constant_term() == 1


def test_shift_already_centred():
    sh = shift_coordinate(make_presentation(5, a=["X1^2"], F="Z"), 1, 0)
    assert sh.multiplicity == 2 and sh.alpha_prime == sh.presentation.poly("1")


def test_shift_not_a_root():
    with pytest.raises(NotARoot):
        shift_coordinate(make_presentation(5, a=["X1^2"], F="Z"), 1, 1)


def test_shift_needs_factored_alpha():
    with pytest.raises(AlphaNotFactored):
        shift_coordinate(make_presentation(5, 1, alpha="X1^2", F="Z"), 1, 0)


@pytest.mark.parametrize("pres", CORPUS, ids=lambda P: P.name)
def test_shift_and_back(pres):
    for i, a in enumerate(pres.alpha_factored, 1):
        for g, e in factor_univariate(a):
            if g.total_degree() == 1:
                lam = pres.field.neg(g.constant_term())
                sh = shift_coordinate(pres, i, lam)
                assert sh.multiplicity == e
                assert shift_presentation(sh.presentation, i, pres.field.neg(lam)) == pres


# -- file format -----------------------------------------------------------------------------------

@pytest.mark.parametrize("pres", CORPUS, ids=lambda P: P.name)
def test_format_roundtrip(pres):
    again = parse_presentation(format_presentation(pres))
    assert again == pres


def test_fixture_files_load():
    for path in sorted(FIXTURES.glob("*.gav")):
        pres = load_presentation(path)
        assert pres.name == path.stem


@pytest.mark.parametrize("text,fragment", [
    ("field 5\nm 1\nF = Z\n", "alpha"),
    ("field 5\nm 1\na_1 = X1^2\n", "F"),
    ("field 5\nm 1\na_1 = X1^2\nF = Z +\n", ":4"),
    ("field 5\nm 1\na_1 = X1^2\nF = Z\nbogus line\n", ":5"),
])
def test_format_errors_are_positional(text, fragment):
    with pytest.raises(PresentationFormatError) as info:
        parse_presentation(text, path="p.gav")
    assert fragment in str(info.value)


def test_shape_h_zero():
    require_shape_h_zero(load_presentation(FIXTURES / "zcp_r1.gav"))
    with pytest.raises(ShapeMismatch):
        require_shape_h_zero(CORPUS_BY_NAME["p3_xterm"])


def test_field_override_extends():
    pres = load_presentation(FIXTURES / "a1sq.gav", field_override=parse_field("5^2"))
    assert pres.field.q == 25


def test_reduce_keeps_extra_variables():
    pres = make_presentation(5, a=["X1^2"], F="Z^2")
    poly = parse_poly("X1^2*Y*U - Z^2*U", pres.vars + ("U",), pres.field)
    assert pres.reduce(poly).is_zero()


def test_random_elements_are_nonzero():
    pres = CORPUS[0]
    rng = random.Random(0)
    assert all(not random_element(pres, rng).is_zero() for _ in range(50))
