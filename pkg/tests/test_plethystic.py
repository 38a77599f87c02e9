import random

import pytest
from hypothesis import given, strategies as st

from motivic_dtpt.errors import FlooredValue, NonUnitConstantTerm, NonzeroConstantTerm
from motivic_dtpt.motive import ONE, MotiveLaurent
from motivic_dtpt.plethystic import euler_product_decompose, motive_power, plethystic_exp
from motivic_dtpt.series import collapse_to_s, points_series, points_via_power_structure
from motivic_dtpt.torus import TruncationPolicy, TwistedSeries, scale_variable

POL = TruncationPolicy(6)


def s_series(terms, pol=POL):
    return TwistedSeries(1, pol, {(m, 0): c for m, c in terms.items()})


def test_exp_examples():
    e = plethystic_exp(s_series({1: ONE}))
    assert all(e.coefficient((k, 0)) == ONE for k in range(7))
    e = plethystic_exp(s_series({1: MotiveLaurent({1: 1})}))
    assert e.coefficient((3, 0)) == MotiveLaurent({3: 1})
    e = plethystic_exp(s_series({1: MotiveLaurent({0: 1, 2: 1})}))
    assert e.coefficient((2, 0)) == MotiveLaurent({0: 1, 2: 1, 4: 1})
    with pytest.raises(NonzeroConstantTerm):
        plethystic_exp(s_series({0: ONE}))


def test_decompose_examples():
    a = TwistedSeries.one(1, POL).mul_linear((1, 0), ONE, -1).mul_linear((1, 0), MotiveLaurent({2: 1}), -1)
    assert euler_product_decompose(a).factors == (((1, 0), 0, 1), ((1, 0), 2, 1))
    one = TwistedSeries.one(2, POL)
    assert euler_product_decompose(one).factors == ()
    # 1 + sT = (1 - sT)^-1 (1 - s^2 T^2) ... peeled degree by degree
    b = TwistedSeries(2, TruncationPolicy(6), {(0, 0, 0): ONE, (1, 2, 0): ONE})
    dec = euler_product_decompose(b)
    assert dec.factors[0] == ((1, 2, 0), 0, 1)
    assert dec.expand() == b
    assert dec.to_json()[0] == {"exps": [1, 2, 0], "halfL": 0, "exponent": 1}
    with pytest.raises(NonUnitConstantTerm):
        euler_product_decompose(s_series({1: ONE}))
    with pytest.raises(FlooredValue):
        euler_product_decompose(s_series({0: ONE, 1: MotiveLaurent({0: 1}, floor=-2)}))


def test_power_examples():
    geo = plethystic_exp(s_series({1: ONE}))
    assert motive_power(geo, MotiveLaurent({2: 1})) == plethystic_exp(s_series({1: MotiveLaurent({2: 1})}))
    assert motive_power(geo, MotiveLaurent({0: 1, -2: 1})) == \
        plethystic_exp(s_series({1: MotiveLaurent({0: 1, -2: 1})}))
    assert motive_power(geo, MotiveLaurent()) == TwistedSeries.one(1, POL)


laurent = st.dictionaries(st.integers(-3, 3), st.integers(-2, 2), max_size=2).map(MotiveLaurent)
one_var = st.dictionaries(st.integers(1, 6), laurent, max_size=3).map(
    lambda d: s_series({0: ONE, **d}))


@given(one_var, laurent, laurent)
def test_power_laws(a, x, y):
    assert motive_power(a, x + y) == motive_power(a, x) * motive_power(a, y)
    assert motive_power(a, ONE) == a


@given(one_var, one_var, laurent)
def test_power_is_multiplicative(a, b, x):
    assert motive_power(a * b, x) == motive_power(a, x) * motive_power(b, x)


@given(one_var, st.integers(-3, 3), st.integers(-3, 3))
def test_power_composes(a, s, t):
    x, y = MotiveLaurent.monomial(s), MotiveLaurent.monomial(t)
    assert motive_power(a, x * y) == motive_power(motive_power(a, x), y)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("r", [1, 2, 3])
def test_points_from_affine_space(n, r):
    direct = collapse_to_s(points_series(n, r, TruncationPolicy(6 * n)))
    assert points_via_power_structure(n, r, 6) == direct


def test_power_structure_needs_signed_variable():
    """For odd r the power must be taken in -s; in s the result differs."""
    policy = TruncationPolicy(4)
    naive = motive_power(points_series("affine3", 1, policy), MotiveLaurent({0: 1, -2: 1}))
    assert naive != collapse_to_s(points_series(2, 1, TruncationPolicy(8)))


def test_round_trip_two_variables():
    rng = random.Random(7)
    pol = TruncationPolicy(5)
    for _ in range(10):
        terms = {(rng.randint(0, 3), rng.randint(0, 3), 0): MotiveLaurent({rng.randint(-3, 3): rng.randint(-3, 3)})
                 for _ in range(4)}
        terms.pop((0, 0, 0), None)
        f = TwistedSeries(2, pol, terms)
        dec = euler_product_decompose(plethystic_exp(f))
        assert {(m, t): c for m, t, c in dec.factors} == \
            {(m, t): c for m, v in f.terms.items() for t, c in v.items()}
