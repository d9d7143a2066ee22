"""Fields, polynomials, parsing, univariate factorization and Gröbner machinery."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from gav import MultiPoly, make_field, parse_field, parse_poly
from gav.errors import (ConstantPolynomial, InconsistentVariableLists, NonPrimeModulus,
                        NotUnivariate, PolySyntaxError, UnknownVariable, ZeroPolynomial)
from gav.groebner import IdealHandle, divide_with_witness, ideal_equal, poly_gcd
from gav.upoly import (factor_univariate, is_irreducible, root_multiplicity_profile,
                       squarefree_decomposition)

import oracles

XYZT = ("X1", "Y", "Z", "T")


def P(text, p=5, variables=XYZT):
    return parse_poly(text, variables, make_field(p))


def U(text, p):
    return parse_poly(text, ("X",), make_field(p))


def univariate(coeffs, p):
    return MultiPoly.from_univariate(make_field(p), ("X",), "X", [c % p for c in coeffs])


# -- fields -------------------------------------------------------------------------------------

@pytest.mark.parametrize("p,d", [(2, 1), (2, 4), (3, 2), (5, 3), (7, 2)])
def test_field_axioms_exhaustive_on_units(p, d):
    F = make_field(p, d)
    rng = random.Random(p * 100 + d)
    elems = list(F.elements())
    assert len(elems) == p ** d
    for _ in range(200):
        a, b, c = (rng.choice(elems) for _ in range(3))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, p ** d) == a
        assert F.pow(F.pth_root(a), p) == a


def test_field_literals():
    assert parse_field("5").q == 5
    assert parse_field("3^2").q == 9
    with pytest.raises(NonPrimeModulus):
        parse_field("4")
    with pytest.raises(NonPrimeModulus):
        make_field(6)


@pytest.mark.parametrize("p,d", [(2, 6), (3, 4), (5, 2), (2, 12)])
def test_extension_modulus_is_irreducible(p, d):
    F = make_field(p, d)
    if d <= 6:
        assert oracles.is_irreducible_exhaustive(list(F.modulus), p)
    assert len(F.modulus) == d + 1


def test_extension_unit_group_is_cyclic():
    """Both constructions of F_9 have exactly four fourth roots of unity."""
    F = make_field(3, 2)
    K = oracles.oracle_field(3, 2)
    ours = sum(1 for a in F.elements() if a and F.pow(a, 4) == 1)
    theirs = sum(1 for a in range(1, 9) if int(K.exp[(K.log[a] * 4) % 8]) == 1)
    assert ours == theirs == 4


# -- parsing and printing -------------------------------------------------------------------------

def test_parse_term_count():
    assert len(P("X1^2*Y - Z*T + 3")) == 3


def test_parse_zero():
    f = P("0")
    assert f.is_zero() and f.terms == {}


def test_parse_binomial_square_mod5():
    assert P("(X1-1)^2") == P("X1^2 + 3*X1 + 1")


@pytest.mark.parametrize("text,exc", [
    ("X1 +", PolySyntaxError),
    ("X1 ** ", PolySyntaxError),
    ("(Z", PolySyntaxError),
    ("Z $ T", PolySyntaxError),
    ("W2 + Z", UnknownVariable),
])
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        P(text)


def test_syntax_error_reports_position():
    with pytest.raises(PolySyntaxError) as info:
        P("Z + * T")
    assert info.value.position == 4


def test_extension_generator_literal():
    F = make_field(3, 2)
    w = parse_poly("w", ("X",), F)
    assert (w ** 8).constant_term() == 1 and (w ** 4).constant_term() != 1


polys = st.builds(
    lambda p, terms: MultiPoly(make_field(p), XYZT, {e: c % p for e, c in terms.items()}),
    st.sampled_from([2, 3, 5]),
    st.dictionaries(st.tuples(*[st.integers(0, 4)] * 4), st.integers(1, 4), max_size=6))


@given(polys)
def test_print_parse_roundtrip(f):
    assert parse_poly(str(f), XYZT, f.field) == f


def test_print_parse_roundtrip_500_seeded():
    rng = random.Random(0)
    for k in range(500):
        p = rng.choice([2, 3, 5])
        F = make_field(p, rng.choice([1, 1, 2]))
        terms = {tuple(rng.randint(0, 3) for _ in XYZT): rng.randrange(1, F.q)
                 for _ in range(rng.randint(0, 6))}
        f = MultiPoly(F, XYZT, terms)
        assert parse_poly(str(f), XYZT, F) == f, k


@given(polys, polys)
def test_ring_laws(f, g):
    if f.field != g.field:
        g = MultiPoly(f.field, XYZT, {e: c % f.field.p for e, c in g.terms.items()})
    assert f * g == g * f
    assert (f + g) * (f - g) == f * f - g * g
    assert (f - f).is_zero()


# -- squarefree decomposition ---------------------------------------------------------------------

@pytest.mark.parametrize("text,p,expected", [
    ("X^2", 5, [("X", 2)]),
    ("X^4 + X^2", 2, [("X^2 + X", 2)]),
    ("X^5 - 3", 5, [("X - 3", 5)]),
    ("X^5 - 1", 5, [("X - 1", 5)]),
])
def test_squarefree_examples(text, p, expected):
    sq = squarefree_decomposition(U(text, p))
    assert [(g, e) for g, e in sq.parts] == [(U(g, p), e) for g, e in expected]


@pytest.mark.parametrize("c", range(5))
def test_frobenius_power_is_a_single_part(c):
    sq = squarefree_decomposition(U(f"X^5 - {c}", 5))
    assert sq.parts == ((U(f"X - {c}", 5), 5),)


def test_squarefree_errors():
    with pytest.raises(ZeroPolynomial):
        squarefree_decomposition(U("0", 5))
    with pytest.raises(NotUnivariate):
        squarefree_decomposition(P("X1*Z"))


def _check_decomposition(u):
    sq = squarefree_decomposition(u)
    assert sq.product() == u
    exps = sq.exponents()
    assert list(exps) == sorted(set(exps))
    for g, _ in sq.parts:
        assert poly_gcd(g, g.derivative("X")).is_constant()
    for (g, _), (h, _) in zip(sq.parts, sq.parts[1:]):
        assert poly_gcd(g, h).is_constant()


def test_squarefree_1000_seeded():
    rng = random.Random(1)
    for _ in range(1000):
        p = rng.choice([2, 3, 5])
        n = rng.randint(1, 12)
        # bias towards repeated factors and p-th powers
        base = [rng.randrange(p) for _ in range(rng.randint(1, 4))] + [1]
        coeffs = [rng.randrange(p) for _ in range(n)] + [rng.randrange(1, p)]
        u = univariate(coeffs, p)
        if rng.random() < 0.5:
            u = u * univariate(base, p) ** rng.choice([2, p])
        if u.total_degree() > 0:
            _check_decomposition(u)


@given(st.sampled_from([2, 3, 5]), st.lists(st.integers(0, 4), min_size=2, max_size=5),
       st.integers(1, 6))
def test_squarefree_recovers_powers(p, coeffs, k):
    g = univariate(coeffs, p)
    if g.total_degree() < 1:
        return
    _check_decomposition(g ** k)


# -- factorization ------------------------------------------------------------------------------

@pytest.mark.parametrize("text,p,expected", [
    ("X^2 - 1", 5, [("X + 1", 1), ("X + 4", 1)]),
    ("(X^2+1)^2", 3, [("X^2 + 1", 2)]),
    ("X^2 + X", 2, [("X", 1), ("X + 1", 1)]),
])
def test_factor_examples(text, p, expected):
    got = sorted((str(g), e) for g, e in factor_univariate(U(text, p)))
    assert got == sorted((str(U(g, p)), e) for g, e in expected)


def test_x2_plus_1_has_no_root_in_f3():
    assert all((x * x + 1) % 3 for x in range(3))


def test_factor_outputs_irreducible_by_exhaustion():
    rng = random.Random(2)
    for _ in range(300):
        p = rng.choice([2, 3, 5])
        coeffs = [rng.randrange(p) for _ in range(rng.randint(1, 8))] + [1]
        u = univariate(coeffs, p)
        if u.total_degree() < 1:
            continue
        factors = factor_univariate(u)
        prod = MultiPoly.constant(u.field, ("X",), 1)
        for g, e in factors:
            prod = prod * g ** e
            dense = g.to_dense("X")
            assert dense[-1] == 1
            if len(dense) - 1 <= 4:
                assert oracles.is_irreducible_exhaustive(dense, p), str(g)
        assert prod.scale(u.to_dense("X")[-1]) == u


def test_factorization_is_seed_stable():
    u = U("X^8 + X^4 + X^3 + X + 1", 3)
    assert factor_univariate(u, seed=0) == factor_univariate(u, seed=0)
    assert sorted(map(str, factor_univariate(u, seed=0))) == sorted(map(str, factor_univariate(u, seed=7)))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_is_irreducible_matches_exhaustive(p):
    for n in range(1, 4):
        for coeffs in oracles.monic_polys(p, n):
            assert is_irreducible(univariate(coeffs, p)) == oracles.is_irreducible_exhaustive(coeffs, p)


# -- root multiplicity profiles -------------------------------------------------------------------

@pytest.mark.parametrize("text,p,expected", [
    ("X^2", 5, ((2, 1),)),
    ("(X^2+1)^2", 3, ((2, 2),)),
    ("(X^2-X)^2", 5, ((2, 2),)),
    ("X^2*(X+1)^3", 5, ((2, 1), (3, 1))),
])
def test_profile_examples(text, p, expected):
    assert root_multiplicity_profile(U(text, p)) == expected
    assert oracles.brute_force_profile(U(text, p).to_dense("X"), p) == expected


def test_profile_of_constant_is_an_error():
    with pytest.raises(ConstantPolynomial):
        root_multiplicity_profile(U("3", 5))


@given(st.sampled_from([2, 3, 5]), st.lists(st.integers(0, 4), min_size=2, max_size=7))
def test_profile_matches_brute_force(p, coeffs):
    u = univariate(coeffs, p)
    if u.total_degree() < 1:
        return
    assert root_multiplicity_profile(u) == oracles.brute_force_profile(u.to_dense("X"), p)


def test_profile_over_extension_field():
    F = make_field(3, 2)
    u = parse_poly("(X^2 + 1)^2", ("X",), F)
    assert root_multiplicity_profile(u) == ((2, 2),)
    assert [e for _, e in factor_univariate(u)] == [2, 2]


# -- Gröbner bases, division witnesses, ideal equality ----------------------------------------------

XZ = ("X", "Z")


def Q(text, variables=XZ, p=5):
    return parse_poly(text, variables, make_field(p))


def test_generator_reduces_to_zero():
    r, cof = divide_with_witness(Q("Z^2"), IdealHandle([Q("X^2"), Q("Z^2")]))
    assert r.is_zero() and cof == [Q("0"), Q("1")]


def test_non_member_has_remainder():
    r, _ = divide_with_witness(Q("X*Z"), IdealHandle([Q("X^2"), Q("Z^2")]))
    assert r == Q("X*Z")


def test_principal_ideal_witness():
    f = P("X1^2*Y - Z^2")
    r, cof = divide_with_witness(f, IdealHandle([f]))
    assert r.is_zero() and cof == [P("1")]


def test_inconsistent_variables():
    with pytest.raises(InconsistentVariableLists):
        divide_with_witness(Q("X"), IdealHandle([P("Z")]))
    with pytest.raises(InconsistentVariableLists):
        ideal_equal(IdealHandle([Q("X")]), IdealHandle([P("X1")]))


@pytest.mark.parametrize("first,second,equal", [
    (["X^2", "Z"], ["Z", "X^2"], True),
    (["X"], ["X^2"], False),
    (["X^2", "Z^2 + X*Z"], ["X^2", "Z^2 + X*Z + 3*X^2"], True),
])
def test_ideal_equal_examples(first, second, equal):
    assert ideal_equal(IdealHandle([Q(g) for g in first]), IdealHandle([Q(g) for g in second])) is equal


def test_ideal_equal_after_shear():
    V = ("X", "Z", "T")
    f = parse_poly("Z^2 + T^3", V, make_field(5))
    x2 = parse_poly("X^2", V, make_field(5))
    sheared = f.subs(T=parse_poly("T + X^2", V, make_field(5)))
    assert ideal_equal(IdealHandle([x2, sheared]), IdealHandle([x2, f]))


def _random_poly(rng, F, variables, terms=3, deg=3):
    return MultiPoly(F, variables, {tuple(rng.randint(0, deg) for _ in variables): rng.randrange(1, F.q)
                                    for _ in range(rng.randint(1, terms))})


def test_division_witness_identity_500():
    rng = random.Random(3)
    V = ("X", "Z", "T")
    for k in range(500):
        F = make_field(rng.choice([2, 3, 5]))
        gens = [_random_poly(rng, F, V, 3, 2) for _ in range(rng.randint(1, 3))]
        f = _random_poly(rng, F, V, 5, 3)
        ideal = IdealHandle(gens)
        r, cof = divide_with_witness(f, ideal)
        total = r
        for c, g in zip(cof, gens):
            total = total + c * g
        assert total == f, k
        assert ideal.reduce(r) == r


@given(st.integers(0, 10 ** 6))
def test_products_are_members(seed):
    rng = random.Random(seed)
    F = make_field(3)
    V = ("X", "Z", "T")
    gens = [_random_poly(rng, F, V, 2, 2) for _ in range(2)]
    ideal = IdealHandle(gens)
    member = gens[0] * _random_poly(rng, F, V) + gens[1] * _random_poly(rng, F, V)
    assert ideal.contains(member)


def test_gcd_of_multivariate():
    V = ("X", "Z", "T")
    F = make_field(5)
    a = parse_poly("(X + Z)*(Z^2 + T)", V, F)
    b = parse_poly("(X + Z)*(T + 1)", V, F)
    assert poly_gcd(a, b) == parse_poly("X + Z", V, F)
