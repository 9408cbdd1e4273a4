import math

import pytest
import sympy as sp
from hypothesis import given, settings
import hypothesis.strategies as st

from gspbessel.zeta import (
    CoeffFunction,
    NotRegularizable,
    functional_matrix,
    indicator_units,
    monomial_tail,
    regularized,
    regularized_functional,
    t,
    zeta_integral,
)


def test_indicator_of_units():
    assert zeta_integral(indicator_units()).expr == 1
    assert regularized_functional(indicator_units(), 1, {}) == 1


def test_indicator_of_integers():
    f = CoeffFunction(0, 0, (), ((1, (1,)),))
    assert sp.simplify(zeta_integral(f).expr - 1 / (1 - t)) == 0


def test_linear_tail_is_t_derivative():
    f = CoeffFunction(0, 0, (), ((1, (0, 1)),))
    assert sp.simplify(zeta_integral(f).expr - t * sp.diff(1 / (1 - t), t)) == 0


def test_partial_sums_agree():
    f = CoeffFunction(-1, 2, (3, 0, sp.Rational(1, 2)), ((sp.Rational(1, 3), (1, 2)), (2, (5,))))
    Z = zeta_integral(f, chi_value=sp.Rational(1, 5)).expr
    u = sp.Rational(1, 7)
    partial = sum(f.coefficient(n) * sp.Rational(1, 5) ** n * u ** n for n in range(-1, 80))
    assert abs(float(Z.subs(t, u) - partial)) < 1e-30


@pytest.mark.parametrize("d", range(6))
def test_proof_value(d):
    assert regularized_functional(monomial_tail(d, sign=-1), 1, {1: d + 1}) == (-1) ** d * math.factorial(d)


@pytest.mark.parametrize("d", range(6))
def test_direct_tail_value(d):
    # measuring the tail in n itself gives d! without the sign
    assert regularized_functional(monomial_tail(d), 1, {1: d + 1}) == math.factorial(d)


@pytest.mark.parametrize("n", range(1, 6))
def test_full_rank(n):
    assert functional_matrix(n).rank() == n


def test_not_regularizable():
    with pytest.raises(NotRegularizable):
        regularized(monomial_tail(2), 1, {1: 2})
    with pytest.raises(NotRegularizable):
        regularized(monomial_tail(0, mu=2), 1, {})


def test_shift_rule():
    # I(x_lambda f) = chi(lambda)^-1 I(f) at s = 0, lambda = pi^k
    f = CoeffFunction(0, 1, (2,), ((sp.Rational(1, 2), (1, 1)),))
    chi = sp.Rational(3, 1)
    prof = {sp.Rational(1, 2): 2}
    base = regularized_functional(f, chi, prof)
    for k in (-2, 1, 3):
        assert regularized_functional(f.shifted(k), chi, prof) == chi ** (-k) * base


def test_json_round_trip():
    f = CoeffFunction(-1, 1, (1, 2), ((sp.Rational(1, 3), (0, 2)),))
    assert CoeffFunction.from_json(f.to_json()) == f


def test_invalid_coefficients():
    with pytest.raises(ValueError):
        CoeffFunction(2, 1)
    with pytest.raises(ValueError):
        CoeffFunction(0, 2, (1,))
    with pytest.raises(ValueError):
        CoeffFunction(0, 0, (), ((1, (1,)), (1, (2,))))


def test_profile_is_sharp():
    f = CoeffFunction(0, 0, (), ((sp.Rational(1, 3), (0, 0, 1)), (2, (1,))))
    assert f.degree_profile() == {sp.Rational(1, 3): 3, 2: 1}
    assert regularized(f, 1, f.degree_profile()).is_laurent_polynomial()
    with pytest.raises(NotRegularizable):
        regularized(f, 1, {sp.Rational(1, 3): 2, 2: 1})


mus = st.sampled_from([sp.Integer(1), sp.Integer(2), sp.Rational(1, 3), sp.Rational(-1, 2), sp.Integer(-1)])


@st.composite
def coeff_functions(draw):
    n0 = draw(st.integers(-3, 2))
    m0 = n0 + draw(st.integers(0, 3))
    explicit = tuple(draw(st.lists(st.integers(-4, 4), min_size=m0 - n0, max_size=m0 - n0)))
    values = draw(st.lists(mus, unique=True, max_size=3))
    tails = tuple((mu, tuple(draw(st.lists(st.integers(-3, 3), min_size=1, max_size=3)))) for mu in values)
    return CoeffFunction(n0, m0, explicit, tails)


@settings(max_examples=50)
@given(coeff_functions(), st.sampled_from([sp.Integer(1), sp.Rational(1, 2), sp.Integer(3)]))
def test_regularized_is_laurent(f, chi):
    assert regularized(f, chi, f.degree_profile()).is_laurent_polynomial()
