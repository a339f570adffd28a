import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grossturing.grossnum import (
    G,
    LONG_DIVISION_CAP,
    ONE,
    ZERO,
    DivisionByZero,
    GrossExponent,
    GrossNumber,
    GrossSyntaxError,
    Monomial,
    Ordering,
    UnsupportedExponent,
    UnsupportedResult,
    classify,
    compare,
    div,
    format_gross,
    parse_gross,
    pow,
)

from .conftest import gross_numbers, nonzero_gross, positive_fracs

P = parse_gross
Ginv = pow(G, -1)
Ginv2 = pow(G, -2)


# -- the elementary identities -----------------------------------------------

IDENTITIES = [
    ("0*G = 0", lambda: 0 * G == 0),
    ("G*0 = 0", lambda: G * 0 == 0),
    ("G - G = 0", lambda: G - G == 0),
    ("G/G = 1", lambda: G / G == 1),
    ("G^0 = 1", lambda: pow(G, 0) == 1),
    ("1^G = 1", lambda: pow(1, G) == 1),
    ("0^G = 0", lambda: pow(0, G) == 0),
    ("0*G^-1 = 0", lambda: 0 * Ginv == 0),
    ("G^-1*0 = 0", lambda: Ginv * 0 == 0),
    ("G^-1 > 0", lambda: Ginv > 0),
    ("G^-2 > 0", lambda: Ginv2 > 0),
    ("G^-1 - G^-1 = 0", lambda: Ginv - Ginv == 0),
    ("G^-1/G^-1 = 1", lambda: Ginv / Ginv == 1),
    ("G^-2/G^-2 = 1", lambda: Ginv2 / Ginv2 == 1),
    ("(G^-1)^0 = 1", lambda: pow(Ginv, 0) == 1),
    ("G*G^-1 = 1", lambda: G * Ginv == 1),
    ("G*G^-2 = G^-1", lambda: G * Ginv2 == Ginv),
]

CHAIN = [
    "G/2", "G - 1", "G", "G + 1", "2*G + 1",
    "2*G^2 - 1", "2*G^2", "2*G^2 + 1", "2*G^2 + 2",
    "2^G - 1", "2^G", "2^G + 1", "10^G",
    "G^G - 1", "G^G", "G^G + 1",
]


@pytest.mark.parametrize("label,check", IDENTITIES, ids=[i[0] for i in IDENTITIES])
def test_identity(label, check):
    assert check()


def test_identity_count():
    assert len(IDENTITIES) == 17


def test_chain_strictly_increasing():
    values = [P(s) for s in CHAIN]
    assert len(values) == 16
    for a, b in zip(values, values[1:]):
        assert compare(a, b) is Ordering.LESS
    # and every pair, not only neighbours
    for i, a in enumerate(values):
        for b in values[i + 1 :]:
            assert a < b and b > a and a != b


# -- operation examples ------------------------------------------------------


def test_add_examples():
    assert G + G == 2 * G
    assert P("2*G^2 + 1") + 1 == P("2*G^2 + 2")
    assert G / 2 + G / 2 == G


def test_sub_examples():
    assert (G + 1) - 1 == G
    assert Ginv - Ginv == ZERO


def test_mul_examples():
    assert pow(2, G) * pow(3, G) == pow(6, G)
    assert pow(5, G) < pow(6, G) < pow(7, G)
    assert G * Ginv2 == Ginv


def test_div_examples():
    assert div(2 * G, 3) == GrossNumber.monomial(Fraction(2, 3), 1, 0, 1)
    assert div(G * G - 1, G - 1) == G + 1
    assert div(pow(6, G), pow(2, G)) == pow(3, G)


def test_div_errors():
    with pytest.raises(DivisionByZero):
        div(G, 0)
    with pytest.raises(UnsupportedResult):
        div(pow(2, G), pow(3, G))  # base 2/3 < 1
    with pytest.raises(UnsupportedResult):
        div(ONE, G + 1)  # 1/G - 1/G^2 + ... never terminates
    with pytest.raises(UnsupportedResult):
        div(pow(G, G), pow(G, 2 * G))  # negative infinite exponent part


def test_long_division_cap_is_sixty_four():
    assert LONG_DIVISION_CAP == 64
    # (G^64 - 1)/(G - 1) needs exactly 64 eliminations
    assert div(pow(G, 64) - 1, G - 1) == sum((pow(G, i) for i in range(64)), ZERO)
    with pytest.raises(UnsupportedResult):
        div(pow(G, 65) - 1, G - 1)


def test_pow_examples():
    assert pow(G, 0) == 1
    assert pow(0, G) == 0
    assert pow(G, G) == GrossNumber.monomial(1, 1, 1, 0)
    assert pow(4, G / 2) == pow(2, G)
    assert pow(8, G + Fraction(1, 3)) == 2 * pow(8, G)
    assert pow(pow(G, 2), G) == GrossNumber.monomial(1, 1, 2, 0)
    assert pow(G + 1, 2) == G * G + 2 * G + 1
    assert pow(G, -2) == Ginv2
    assert pow(Fraction(1, 2), 3) == Fraction(1, 8)


@pytest.mark.parametrize(
    "base,exp",
    [(0, 0), (G, G / 2 + Ginv), (2, Fraction(1, 2)), (G + 1, G), (Fraction(1, 2), G), (pow(G, -1), G), (-2, G)],
)
def test_pow_unsupported(base, exp):
    with pytest.raises(UnsupportedExponent):
        pow(base, exp)


def test_compare_examples():
    assert compare(G / 2, G - 1) is Ordering.LESS
    assert compare(pow(10, G), pow(G, G) - 1) is Ordering.LESS
    assert compare(Ginv, 0) is Ordering.GREATER
    assert compare(G, G) is Ordering.EQUAL


def test_classify():
    c = classify(Ginv2)
    assert c.kind == "infinitesimal"
    c = classify(3 + 2 * Ginv)
    assert c.kind == "finite" and c.finite_part == 3 and c.infinitesimal_part == 2 * Ginv
    assert classify(2 * G + 1).kind == "infinite"
    assert classify(ZERO).kind == "zero"


@given(gross_numbers)
def test_classify_partition(a):
    c = classify(a)
    assert c.infinite_part + c.finite_part + c.infinitesimal_part == a
    if c.kind == "infinitesimal":
        assert -1 < a < 1 and a != 0
    if c.kind == "infinite":
        assert a > 10**9 or a < -(10**9)


# -- text format -------------------------------------------------------------


@pytest.mark.parametrize(
    "text,canonical",
    [
        ("G - 1", "G - 1"),
        ("10^G", "10^G"),
        ("2*G^2 + 2", "2*G^2 + 2"),
        ("G^G - 1", "G^G - 1"),
        ("2^G*3^G", "6^G"),
        ("G - G", "0"),
        ("1/G", "G^-1"),
        ("①/2", "1/2*G"),
        ("-(3/2)^G", "-(3/2)^G"),
        ("G^(G/2 + 1)", "G^(1/2*G + 1)"),
        ("(G+1)*(G-1)", "G^2 - 1"),
    ],
)
def test_format_canonical(text, canonical):
    assert format_gross(P(text)) == canonical
    assert P(canonical) == P(text)


def test_parse_monomial_shape():
    (m,) = P("10^G").terms
    assert m == Monomial(1, 10, GrossExponent(0, 0))


@pytest.mark.parametrize("text,pos", [("G +", 3), ("2 $ 3", 2), ("(G", 2), ("G)", 1), ("", 0), ("G G", 2)])
def test_syntax_error_position(text, pos):
    with pytest.raises(GrossSyntaxError) as info:
        P(text)
    assert info.value.position == pos


def test_parse_propagates_unsupported():
    with pytest.raises(UnsupportedExponent):
        P("2^(1/2)")
    with pytest.raises(DivisionByZero):
        P("G/(G - G)")


@given(gross_numbers)
def test_format_parse_round_trip(a):
    assert P(format_gross(a)) == a
    assert format_gross(P(format_gross(a))) == format_gross(a)


# -- algebraic laws ----------------------------------------------------------


@given(gross_numbers, gross_numbers, gross_numbers)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * 1 == a and a + 0 == a


@given(gross_numbers, gross_numbers, gross_numbers)
def test_order_compatibility(a, b, c):
    assert (a < b) + (a == b) + (a > b) == 1
    if a > b:
        assert a + c > b + c
        if c > 0:
            assert a * c > b * c


@given(gross_numbers, positive_fracs)
def test_monotone_growth(a, eps):
    assert compare(a + eps, a) is Ordering.GREATER


@given(gross_numbers, nonzero_gross)
def test_div_inverts_mul(a, b):
    assert div(a * b, b) == a
    try:
        q = div(a, b)
    except UnsupportedResult:
        return
    assert q * b == a


@given(gross_numbers, gross_numbers)
def test_equality_is_normal_form_equality(a, b):
    assert (a == b) == (a.terms == b.terms) == (compare(a, b) is Ordering.EQUAL)
    if a == b:
        assert hash(a) == hash(b)


@settings(max_examples=50)
@given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
def test_finite_values_behave_like_fractions(n, d):
    q = Fraction(n, d)
    x = GrossNumber(q)
    assert x == q and hash(x) == hash(q)
    assert x.is_rational() and x.as_rational() == q
    assert (x < 0) == (q < 0)
    assert math.isclose(float(x.as_rational()), n / d)


def test_terms_sorted_by_decreasing_key():
    x = P("G^-1 + 3 + G + 2^G + G^G")
    keys = [m.key for m in x.terms]
    assert keys == sorted(keys, reverse=True) and len(set(keys)) == len(keys)


def test_monomial_invariants():
    with pytest.raises(ValueError):
        Monomial(0)
    with pytest.raises(UnsupportedResult):
        Monomial(1, Fraction(1, 2))
    with pytest.raises(UnsupportedResult):
        GrossExponent(-1, 0)
