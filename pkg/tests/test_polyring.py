from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quivinv import (
    Monomial,
    MonomialOrder,
    PolynomialRing,
    RingError,
    arrow_var,
    fresh_var,
)

NVARS = 4
RING = PolynomialRing([fresh_var(n, 1, 1) for n in ("x", "y", "z", "w")])
ARROWISH = PolynomialRing(
    [arrow_var("c", i, j) for i in (1, 2) for j in (1, 2)]
    + [fresh_var("ec", i, j) for i in (1, 2) for j in (1, 2)]
)

monomials = st.builds(
    lambda exps: Monomial(tuple(exps)),
    st.lists(st.integers(min_value=0, max_value=5), min_size=NVARS, max_size=NVARS),
)

coefficients = st.builds(
    Fraction,
    st.integers(min_value=-9, max_value=9).filter(lambda n: n != 0),
    st.integers(min_value=1, max_value=9),
)

polynomials = st.builds(
    lambda terms: RING.polynomial(terms),
    st.lists(st.tuples(monomials, coefficients), max_size=5),
)

orders = st.sampled_from(
    [
        MonomialOrder.lex(),
        MonomialOrder.degrevlex(),
        MonomialOrder.block({0, 1}),
        MonomialOrder.block({2}, back="lex"),
    ]
)


class TestMonomial:
    def test_sparse_view_has_no_zeros(self):
        m = Monomial((0, 2, 0, 1))
        assert m.exponents == {1: 2, 3: 1}
        assert m.degree == 3

    def test_divide_and_lcm(self):
        a = Monomial((2, 1, 0, 0))
        b = Monomial((1, 0, 0, 0))
        assert b.divides(a) and not a.divides(b)
        assert a.divide(b) == Monomial((1, 1, 0, 0))
        assert a.lcm(Monomial((0, 3, 1, 0))) == Monomial((2, 3, 1, 0))
        with pytest.raises(RingError):
            b.divide(a)


class TestOrders:
    @given(orders, monomials, monomials)
    def test_total(self, order, a, b):
        key = order.key_function(NVARS)
        assert (key(a.exps) == key(b.exps)) == (a == b)

    @given(orders, monomials, monomials, monomials)
    def test_multiplicative(self, order, a, b, c):
        key = order.key_function(NVARS)
        if key(a.exps) < key(b.exps):
            assert key((a * c).exps) < key((b * c).exps)

    @given(orders, monomials)
    def test_one_is_least(self, order, a):
        key = order.key_function(NVARS)
        assert key((0,) * NVARS) <= key(a.exps)

    def test_degrevlex_tiebreak(self):
        # same degree: the monomial heavier in the last variable is smaller
        key = MonomialOrder.degrevlex().key_function(3)
        x2z = (2, 0, 1)
        xy2 = (1, 2, 0)
        assert key(xy2) > key(x2z)

    def test_lex_order(self):
        key = MonomialOrder.lex().key_function(2)
        assert key((1, 0)) > key((0, 5))

    @given(monomials, monomials)
    def test_block_order_eliminates_front(self, a, b):
        order = MonomialOrder.block({0, 1})
        key = order.key_function(NVARS)
        a_front = a.exps[0] + a.exps[1]
        b_front = b.exps[0] + b.exps[1]
        if a_front > 0 and b_front == 0:
            assert key(a.exps) > key(b.exps)


class TestArithmetic:
    def test_difference_of_squares(self):
        x = RING.var(0)
        assert (x + 1) * (x - 1) == x * x - 1

    def test_multiply_by_zero(self):
        x = RING.var(0)
        assert (x * RING.zero).is_zero

    def test_multiply_by_one(self):
        x, y = RING.var(0), RING.var(1)
        f = x * y + 2 * y
        assert f * RING.one == f

    @given(polynomials, polynomials, polynomials)
    @settings(max_examples=40)
    def test_ring_axioms(self, f, g, h):
        assert f * g == g * f
        assert (f + g) + h == f + (g + h)
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h

    def test_ring_mismatch_rejected(self):
        other = PolynomialRing([fresh_var("x", 1, 1)])
        with pytest.raises(RingError):
            RING.var(0) * other.var(0)

    def test_terms_sorted_descending_in_ambient_order(self):
        x, y = RING.var(0), RING.var(1)
        f = y + x * x + x
        keys = [RING._ambient_key(m.exps) for m, _ in f.terms]
        assert keys == sorted(keys, reverse=True)

    def test_zero_polynomial_has_empty_terms(self):
        x = RING.var(0)
        assert (x - x).terms == ()


class TestPrinting:
    def test_variable_formats(self):
        assert str(arrow_var("c", 1, 2)) == "x[c;1,2]"
        assert str(fresh_var("ec", 2, 1)) == "ec[2,1]"

    def test_canonical_polynomial_format(self):
        c11 = ARROWISH.var(0)
        c12 = ARROWISH.var(1)
        f = c11 * c11 - Fraction(1, 2) * c12 + 3
        assert str(f) == "x[c;1,1]^2 - 1/2*x[c;1,2] + 3"

    def test_fraction_one_denominator_omitted(self):
        x = RING.var(0)
        assert str(2 * x) == "2*x[1,1]"

    @given(polynomials)
    @settings(max_examples=60)
    def test_parse_round_trip(self, f):
        assert RING.parse(str(f)) == f

    def test_parse_mixed_variable_kinds(self):
        s = "x[c;1,1]*ec[1,2] - 2"
        f = ARROWISH.parse(s)
        assert str(f) == s

    def test_parse_unknown_variable(self):
        with pytest.raises(RingError, match="unknown variable"):
            RING.parse("q[1,1]")

    def test_parse_adjacency_is_multiplication(self):
        x, y = RING.var(0), RING.var(1)
        assert RING.parse("1/2 x[1,1]") == Fraction(1, 2) * x
        assert RING.parse("2 x[1,1] y[1,1] - 3") == 2 * x * y - 3

    def test_parse_sign_handling(self):
        x = RING.var(0)
        assert RING.parse("- -x[1,1]") == x
        assert RING.parse("3 - - 2") == RING.constant(5)
        with pytest.raises(RingError, match="dangling sign"):
            RING.parse("x[1,1] +")
        with pytest.raises(RingError, match="dangling sign"):
            RING.parse("-")
