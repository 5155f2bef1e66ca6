from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hodgefil.errors import (BadDenominator, InsufficientPrecision, ResidueObstruction, ZeroDivisor)
from hodgefil.series import (INF, LaurentSeries, add, antiderivative, derivative, div, mul, reduce_mod,
                             residue, residue_of_product)

P = LaurentSeries.parse
q = LaurentSeries.monomial(1)

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def series(draw, min_val=-6, max_val=6, max_len=10, exact=False):
    v = draw(st.integers(min_val, max_val))
    coeffs = draw(st.lists(fracs, min_size=1, max_size=max_len))
    if exact:
        return LaurentSeries(coeffs, v)
    prec = v + draw(st.integers(1, max_len + 4))
    return LaurentSeries(coeffs, v, prec)


@st.composite
def unit_series(draw):
    f = draw(series())
    if f.is_known_zero():
        f = f + LaurentSeries.monomial(f.prec - 1, 1, prec=f.prec)
    return f


def same_certain(f, g):
    p = min(f.prec, g.prec)
    return (f - g).truncate(p).is_known_zero()


# -- construction and normal form ----------------------------------------------

def test_normalization_strips_zeros():
    f = LaurentSeries([0, 0, 1, 2, 0], -3, 5)
    assert f.valuation == -1 and f.coeffs == (1, 2) and f.prec == 5


def test_zero_series_is_distinguished():
    z = LaurentSeries.zero()
    assert z.is_zero() and z.prec == INF
    assert LaurentSeries([0, 0], 0, 7).valuation == 7
    assert not LaurentSeries.zero(7).is_zero()


def test_coefficients_beyond_prec_are_dropped():
    f = LaurentSeries([1, 2, 3, 4], 0, 2)
    assert f.coeffs == (1, 2)
    with pytest.raises(InsufficientPrecision):
        f[2]


def test_immutable():
    with pytest.raises(AttributeError):
        q.prec = 3


def test_parse_and_format_roundtrip():
    text = "q^-3 + q^-2 + 3*q^-1 + 70 + 9*q + O(q^2)"
    f = P(text)
    assert str(f) == text
    assert P(str(f)) == f
    assert P("-1/2q^2 + 1/3q^3 + O(q^4)").coefficients(2, 3) == [Fraction(-1, 2), Fraction(1, 3)]
    assert P("0") == LaurentSeries.zero()


def test_json_roundtrip():
    f = P("2/3q^-2 - 5 + O(q^3)")
    assert LaurentSeries.from_json(f.to_json()) == f
    assert LaurentSeries.from_json(LaurentSeries.zero().to_json()).is_zero()
    short = f.to_json(max_terms=1)
    assert short["prec"] == -1 and short["coefficients"] == ["2/3"]


# -- add ------------------------------------------------------------------------

def test_add_cancellation():
    assert P("q - q^3 + O(q^5)") + P("q^3 + O(q^5)") == P("q + O(q^5)")


def test_add_identity():
    f = P("q^-1 + 2 + O(q^4)")
    assert f + LaurentSeries.zero() == f


def test_add_precision_is_min():
    assert (P("1 + q + O(q^3)") + P("q^2 + O(q^10)")).prec == 3


def test_add_omega_forms_67():
    f0 = P("q - 3q^3 - 3q^4 - 3q^5 + O(q^6)").shift(-1)
    f1 = P("q^2 - q^3 - q^4 + O(q^6)").shift(-1)
    s = f0 + f1
    assert s.coefficients(0, 2) == [1, 1, -3 - 1]


# -- mul ------------------------------------------------------------------------

def test_mul_geometric():
    geo = LaurentSeries([1] * 12, 0, 12)
    assert (1 - q) * geo == LaurentSeries([1], 0, 12)


def test_mul_monomials():
    assert LaurentSeries.monomial(-1) * q == LaurentSeries([1])


def test_mul_valuation_and_precision():
    f = P("q^-3 + q^-2 + O(q^2)")
    g = P("1 - 3q^2 + O(q^5)")
    h = f * g
    assert h.valuation == -3
    assert h.prec == min(2 + 0, 5 - 3)


def test_mul_by_exact_zero():
    assert (P("1 + O(q)") * LaurentSeries.zero()).is_zero()


# -- div ------------------------------------------------------------------------

def test_div_self_is_one():
    f = P("q^3 - 12q^4 + 54q^5 + O(q^9)")
    assert div(f, f) == LaurentSeries([1], 0, 6)


def test_div_by_zero():
    with pytest.raises(ZeroDivisor):
        div(q, LaurentSeries.zero())
    with pytest.raises(ZeroDivisionError):
        q / LaurentSeries.zero()


def test_div_unknown_leading_term():
    with pytest.raises(InsufficientPrecision):
        div(q, LaurentSeries.zero(5))


def test_div_exact_needs_terms():
    with pytest.raises(InsufficientPrecision):
        div(LaurentSeries([1]), 1 - q)
    assert div(LaurentSeries([1]), 1 - q, terms=5) == LaurentSeries([1] * 5, 0, 5)
    assert div(q, LaurentSeries.monomial(3, 2)) == LaurentSeries.monomial(-2, Fraction(1, 2))


def test_div_requested_terms_unavailable():
    with pytest.raises(InsufficientPrecision):
        div(P("1 + q + O(q^3)"), P("1 + O(q^3)"), terms=5)


def test_div_non_monic_denominator():
    f = P("1 + O(q^6)")
    g = P("3 + 2q + q^2 + O(q^6)")
    assert same_certain(div(f, g) * g, f)


# -- calculus -------------------------------------------------------------------

def test_derivative_examples():
    assert derivative(LaurentSeries([7])).is_known_zero()
    assert derivative(LaurentSeries.monomial(5)) == LaurentSeries.monomial(4, 5)
    assert derivative(P("1 + q + O(q^4)")).prec == 3


def test_antiderivative_examples():
    assert antiderivative(LaurentSeries([1])) == q
    omega0 = P("1 - 3q^2 - 3q^3 - 3q^4 + O(q^5)")
    assert (-antiderivative(omega0)).truncate(4) == P("-q + q^3 + O(q^4)")
    with pytest.raises(ResidueObstruction):
        antiderivative(LaurentSeries.monomial(-1))


def test_residue_examples():
    assert residue(LaurentSeries.monomial(-1)) == 1
    assert residue(P("1 + q + O(q^3)")) == 0
    with pytest.raises(InsufficientPrecision):
        residue(P("q^-4 + O(q^-2)"))


def test_residue_of_product_matches_product():
    f = P("q^-3 + q^-2 + 3q^-1 + 70 + 9q + O(q^2)")
    g = P("1 - 3q^2 - 3q^3 + O(q^5)")
    assert residue_of_product(f, g) == residue(f * g)


# -- reduce_mod -----------------------------------------------------------------

def test_reduce_mod_examples():
    assert reduce_mod(LaurentSeries([Fraction(1, 2)]), 67, (0, 0)) == [34]
    assert reduce_mod(LaurentSeries([Fraction(67, 3)]), 67, (0, 0)) == [0]
    with pytest.raises(BadDenominator) as exc:
        reduce_mod(LaurentSeries([1, Fraction(1, 67)]), 67, (0, 1))
    assert exc.value.datum == 1


def test_reduce_mod_window_and_precision():
    f = P("q^-1 + 2q + O(q^4)")
    assert reduce_mod(f, 5, (-2, 3)) == [0, 1, 0, 2, 0, 0]
    with pytest.raises(InsufficientPrecision):
        reduce_mod(f, 5, (0, 4))


# -- properties -----------------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(series(), series(), series())
def test_ring_axioms(f, g, h):
    assert same_certain((f + g) + h, f + (g + h))
    assert same_certain(mul(f, g), mul(g, f))
    assert same_certain(mul(f, add(g, h)), add(mul(f, g), mul(f, h)))


@settings(max_examples=200, deadline=None)
@given(series(), unit_series())
def test_div_inverts_mul(f, g):
    assert same_certain(div(mul(f, g), g), f)


@settings(max_examples=200, deadline=None)
@given(series())
def test_derivative_antiderivative_roundtrip(f):
    if f.prec <= -1:
        return
    if f[-1]:
        f = f - LaurentSeries.monomial(-1, f[-1])
    assert derivative(antiderivative(f)) == f


@settings(max_examples=200, deadline=None)
@given(series(min_val=-5))
def test_exact_derivatives_are_residue_free(f):
    d = derivative(f)
    if d.prec > -1:
        assert residue(d) == 0


@settings(max_examples=200, deadline=None)
@given(series(exact=True), series(exact=True), st.integers(1, 8), st.integers(1, 8))
def test_truncation_never_changes_certified_coefficients(f, g, cut_f, cut_g):
    """Results from truncated inputs agree with the exact results wherever certain."""
    assume(not f.is_zero() and not g.is_zero())
    ft = f.truncate(f.valuation + cut_f)
    gt = g.truncate(g.valuation + cut_g)
    for exact, approx in ((f + g, ft + gt), (f * g, ft * gt), (derivative(f), derivative(ft))):
        assert same_certain(exact, approx)
    quotient = div(ft, gt)
    terms = max(1, int(quotient.prec) - (f.valuation - g.valuation))
    assert same_certain(div(f, g, terms=terms), quotient)
