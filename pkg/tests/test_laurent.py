import pytest
from hypothesis import given, strategies as st

from mikado.laurent import ONE, V, ZERO, LaurentPoly, monomial, parse_laurent

polys = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(LaurentPoly)


def test_canonical_form_drops_zeros():
    p = LaurentPoly({1: 2, 3: 0, -2: -1})
    assert p.terms == {1: 2, -2: -1}
    assert LaurentPoly([(2, 1), (2, -1)]) == ZERO
    assert (V - V).is_zero()


def test_quadratic_relation_coefficients():
    # (v^-2 - 1) and v^-2 multiply consistently
    a = monomial(-2) - ONE
    assert a * a == monomial(-4) - 2 * monomial(-2) + ONE
    assert str(a) == "v^-2 - 1"


def test_rendering():
    assert str(monomial(-2) + 2 + monomial(2)) == "v^-2 + 2 + v^2"
    assert str(V) == "v"
    assert str(3 * monomial(2)) == "3*v^2"
    assert str(ZERO) == "0"
    assert str(-V + 1) == "1 - v"


def test_parse_variants():
    assert parse_laurent("v^-2 + 2 + v^2") == monomial(-2) + 2 + monomial(2)
    assert parse_laurent("v^(-1)") == monomial(-1)
    assert parse_laurent("2v - 3") == 2 * V - 3
    assert parse_laurent("v**-1") == monomial(-1)
    assert parse_laurent("-v") == -V
    assert parse_laurent("0") == ZERO
    for bad in ["", "v^", "2 3", "*v", "x"]:
        with pytest.raises(ValueError):
            parse_laurent(bad)


def test_inverse_only_for_unit_monomials():
    assert monomial(3) ** -1 == monomial(-3)
    assert (-monomial(1)) ** -1 == -monomial(-1)
    with pytest.raises(ValueError):
        (V + 1) ** -1
    with pytest.raises(ValueError):
        (2 * V) ** -1


def test_helpers():
    p = parse_laurent("v^-3 + 2*v + v^4")
    assert p.truncate(lo=1) == 2 * V + monomial(4)
    assert p.truncate(hi=0) == monomial(-3)
    assert p.eval_at_one() == 4
    assert p.exponent_parities() == frozenset({"odd", "even"})
    assert p.min_exponent() == -3 and p.max_exponent() == 4
    assert LaurentPoly.from_dict(p.to_dict()) == p
    assert (V + 1).is_nonnegative() and not (V - 1).is_nonnegative()
    assert LaurentPoly.const(3) == 3 and ZERO == 0


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(polys, polys)
def test_bar_is_ring_involution(a, b):
    assert a.bar().bar() == a
    assert (a * b).bar() == a.bar() * b.bar()
    assert (a + b).bar() == a.bar() + b.bar()


@given(polys)
def test_parse_round_trip(a):
    assert parse_laurent(str(a)) == a
    assert hash(parse_laurent(str(a))) == hash(a)


@given(polys, st.integers(-5, 5))
def test_shift_is_monomial_product(a, e):
    assert a.shift(e) == a * monomial(e)
    assert a.shift(e).div_by_monomial(e) == a
