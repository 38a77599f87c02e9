import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from motivic_dtpt.errors import BadZeta
from motivic_dtpt.roots import (EpsRational, StabilityParam, chamber_split, enumerate_roots,
                                parse_eps, parse_zeta, phase_less, random_generic_zeta,
                                standard_zetas)


def dims(roots):
    return {r.dims for r in roots}


def test_enumeration_examples():
    assert dims(enumerate_roots(2, 1)) == {(0, 1), (1, 2), (1, 0), (1, 1)}
    assert dims(enumerate_roots(1, 2)) == {(1,), (2,)}
    assert dims(enumerate_roots(3, 0)) == {(0, 1, 0), (0, 0, 1), (0, 1, 1)}


@pytest.mark.parametrize("N", range(1, 6))
def test_enumeration_prefix_and_validity(N):
    for n in range(5):
        small, big = enumerate_roots(N, n), enumerate_roots(N, n + 1)
        assert big[:len(small)] == small
        assert len(set(small)) == len(small)
        for r in small:
            assert min(r.dims) >= 0 and sum(r.dims) > 0


def test_parse_eps():
    assert parse_eps("1/2-3*eps") == EpsRational(Fraction(1, 2), -3)
    assert parse_eps("-eps") == EpsRational(0, -1)
    assert parse_eps("2 + eps") == EpsRational(2, 1)
    assert parse_eps("-7") == EpsRational(-7)
    for bad in ("", "1+", "x", "1 2"):
        with pytest.raises(BadZeta):
            parse_eps(bad)
    with pytest.raises(BadZeta):
        parse_zeta("1,2", 3)


def test_eps_order():
    eps = EpsRational(0, 1)
    assert eps > 0 and -eps < 0 and EpsRational(1, -100) > EpsRational(Fraction(99, 100), 5)
    assert str(EpsRational(1, -1)) == "1-1*eps"


def test_standard_zeta_examples():
    pt, dt = standard_zetas(2)
    delta = (1, 1)
    assert pt.dot(delta) == EpsRational(0, 1)
    assert dt.dot(delta) == EpsRational(0, -1)
    pt1, dt1 = standard_zetas(1)
    roots = enumerate_roots(1, 3)
    assert chamber_split(roots, pt1).negative == []
    assert dims(chamber_split(roots, dt1).negative) == {(1,), (2,), (3,)}


def test_non_generic_report():
    split = chamber_split(enumerate_roots(2, 2), parse_zeta("1,-1"))
    assert not split.generic and (1, 1) in dims(split.zeros)


@pytest.mark.parametrize("N", range(1, 9))
def test_standard_chambers(N):
    roots = enumerate_roots(N, 8)
    pt, dt = standard_zetas(N)
    split_pt, split_dt = chamber_split(roots, pt), chamber_split(roots, dt)
    assert split_pt.generic and split_dt.generic
    plus = {r for r in roots if r.kind == "realPlus"}
    im = {r for r in roots if r.kind == "imaginary"}
    assert set(split_pt.negative) == plus
    assert set(split_dt.negative) == plus | im


@given(st.integers(0, 10 ** 6), st.integers(2, 4))
def test_phase_order_matches_slope_order(seed, N):
    rng = random.Random(seed)
    zeta = random_generic_zeta(N, 2, rng)
    roots = enumerate_roots(N, 2)
    a, b = rng.choice(roots), rng.choice(roots)
    split = chamber_split([a, b], zeta)
    assert phase_less(zeta, a, b) == (split.slopes[a] < split.slopes[b])


def test_json():
    r = enumerate_roots(2, 1)[0]
    assert r.to_json()["kind"] in ("realPlus", "realMinus", "imaginary")
    split = chamber_split(enumerate_roots(2, 1), standard_zetas(2)[0])
    assert split.to_json()["generic"]
