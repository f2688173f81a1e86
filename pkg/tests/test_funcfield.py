from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algzeta._numtheory import primes_up_to
from algzeta.errors import EqualPrimes, InvalidIndex, NotAUnit, NotPrime, SpecFormatError, ZeroArgument, ZeroPolynomial
from algzeta.funcfield import (
    MPoly,
    Place,
    PolyFp,
    RatFunc,
    abs_at,
    factor,
    is_irreducible,
    mult_order,
    multiplicity,
    ord_at,
    p_part,
    poly_gcd,
    residue_order,
    support,
)


def P(text, p=2):
    return PolyFp.parse(text, p)


def t_pow_minus_one(n, p):
    return PolyFp(p, [p - 1] + [0] * (n - 1) + [1])


def brute_irreducible(f):
    # trial division by every monic polynomial of degree 1..deg/2
    from itertools import product

    p, n = f.p, f.degree
    for k in range(1, n // 2 + 1):
        for tail in product(range(p), repeat=k):
            g = PolyFp(p, list(tail) + [1])
            if (f % g).is_zero():
                return False
    return n >= 1


def remultiply(f, fs):
    out = PolyFp(f.p, [f.lc])
    for g, k in fs:
        out = out * g**k
    return out


def test_parse_and_print():
    f = P("1,1,1")
    assert f.degree == 2 and str(f) == "1,1,1"
    assert str(PolyFp(2)) == "0" and PolyFp(2).degree == -1
    assert str(P("3,4", 3)) == "0,1"
    assert str(RatFunc.parse("1/0,1", 2)) == "1/0,1"
    with pytest.raises(SpecFormatError):
        RatFunc.parse("1/0", 2)


def test_arithmetic_mod_p():
    f, g = P("1,1", 3), P("2,1", 3)
    assert f * g == P("2,0,1", 3)
    assert (f * g) // f == g and ((f * g) % g).is_zero()
    assert f - f == PolyFp(3)
    assert poly_gcd(P("1,0,1"), P("1,1")) == P("1,1")


def test_factor_examples():
    assert factor(t_pow_minus_one(3, 2)) == [(P("1,1"), 1), (P("1,1,1"), 1)]
    assert factor(t_pow_minus_one(4, 2)) == [(P("1,1"), 4)]
    assert factor(P("0,1", 3)) == [(P("0,1", 3), 1)]
    assert sorted(g.degree for g, _ in factor(t_pow_minus_one(7, 2))) == [1, 3, 3]
    with pytest.raises(ZeroPolynomial):
        factor(PolyFp(2))


@pytest.mark.parametrize("p", [2, 3])
def test_cyclotomic_degree_law(p):
    for q in primes_up_to(100):
        if q == p:
            continue
        fs = factor(t_pow_minus_one(q, p))
        m = mult_order(p, q)
        degrees = sorted(g.degree for g, k in fs for _ in range(k))
        # (t - 1) once, then (q - 1) / m factors of degree m
        assert degrees == sorted([1] + [m] * ((q - 1) // m))
        assert fs[0][1] == 1 and all(k == 1 for _, k in fs)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.lists(st.integers(0, 6), min_size=2, max_size=14))
def test_factor_remultiplies(p, cs):
    f = PolyFp(p, cs)
    if f.degree < 1:
        return
    fs = factor(f)
    assert remultiply(f, fs) == f
    for g, _ in fs:
        assert g.lc == 1 and is_irreducible(g)
        if g.degree <= 6:
            assert brute_irreducible(g)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_irreducibility_agrees_with_trial_division(p):
    from itertools import product

    for n in range(1, 5 if p < 5 else 4):
        for tail in product(range(p), repeat=n):
            g = PolyFp(p, list(tail) + [1])
            assert is_irreducible(g) == brute_irreducible(g)


def test_ord_and_abs_examples():
    w = Place(2, P("1,1,1"))
    f = t_pow_minus_one(3, 2)
    assert ord_at(f, w) == 1 and abs_at(f, w) == -2
    assert ord_at(RatFunc.t(2), Place.infinity(2)) == -1
    for p in (2, 3, 5):
        for n in (1, 4, 9):
            assert abs_at(t_pow_minus_one(n, p), Place.infinity(p)) == n
    tm1 = P("2,1", 3)
    assert ord_at(RatFunc(PolyFp(3, [1]), tm1), Place(3, tm1)) == -1
    with pytest.raises(ZeroArgument):
        ord_at(PolyFp(2), w)


def test_places():
    assert str(Place.parse("inf", 2)) == "inf" and Place.infinity(2).degree == 1
    assert Place.parse("1,1,1", 2).degree == 2
    with pytest.raises(SpecFormatError):
        Place.parse("1,0,1", 2)  # (t+1)^2
    assert support(t_pow_minus_one(3, 2)) == [Place.infinity(2), Place(2, P("1,1")), Place(2, P("1,1,1"))]


def product_formula_sum(f):
    return sum(v.degree * ord_at(f, v) for v in support(f))


def test_product_formula_t_squared_minus_one():
    f = t_pow_minus_one(2, 3)
    assert sum(abs_at(f, v) for v in support(f)) == 0


@settings(max_examples=200, deadline=None)
@given(
    st.sampled_from([2, 3, 5]),
    st.lists(st.integers(0, 4), min_size=1, max_size=8),
    st.lists(st.integers(0, 4), min_size=1, max_size=8),
)
def test_product_formula(p, a, b):
    num, den = PolyFp(p, a), PolyFp(p, b)
    if num.is_zero() or den.is_zero():
        return
    f = RatFunc(num, den)
    assert product_formula_sum(f) == 0


@settings(max_examples=100, deadline=None)
@given(
    st.sampled_from([2, 3]),
    st.lists(st.integers(0, 2), min_size=1, max_size=6),
    st.lists(st.integers(0, 2), min_size=1, max_size=6),
)
def test_abs_is_multiplicative(p, a, b):
    f, g = PolyFp(p, a), PolyFp(p, b)
    if f.is_zero() or g.is_zero():
        return
    for v in set(support(f)) | set(support(g)) | {Place.infinity(p)}:
        assert abs_at(f * g, v) == abs_at(f, v) + abs_at(g, v)


def test_mult_order():
    assert mult_order(2, 7) == 3 and mult_order(2, 3) == 2 and mult_order(3, 2) == 1
    with pytest.raises(EqualPrimes):
        mult_order(5, 5)
    with pytest.raises(NotPrime):
        mult_order(2, 9)


def test_residue_order():
    t = RatFunc.t(2)
    assert residue_order(t, Place(2, P("1,1"))) == 1
    assert residue_order(t, Place(2, P("1,1,1"))) == 3
    assert residue_order(RatFunc.t(3), Place(3, P("2,1", 3))) == 1
    assert residue_order(RatFunc.t(2), Place(2, P("1,1,0,1"))) == 7
    with pytest.raises(NotAUnit):
        residue_order(t, Place(2, P("0,1")))


def test_residue_order_divides_field_size():
    for p in (2, 3):
        for g, _ in factor(t_pow_minus_one(40, p)):
            if g != P("0,1", p):
                ell = residue_order(RatFunc.t(p), Place(p, g))
                assert (p**g.degree - 1) % ell == 0


def test_p_part():
    assert [p_part(12, 2), p_part(5, 2), p_part(8, 2)] == [4, 1, 8]
    with pytest.raises(InvalidIndex):
        p_part(0, 2)


def test_multiplicity_large_power():
    assert multiplicity(t_pow_minus_one(1024, 2), P("1,1")) == 1024
    assert multiplicity(t_pow_minus_one(12, 3), P("2,1", 3)) == 3


def test_mpoly_ledrappier_relation():
    f = MPoly.parse("1:0,0; 1:1,0; 1:0,1", 2)
    assert f.nvars == 2 and str(f) == "1:0,0; 1:0,1; 1:1,0"
    assert f.evaluate([RatFunc.t(2), RatFunc.parse("1,1", 2)]).is_zero()
    assert f.padded(3).nvars == 3
    with pytest.raises(SpecFormatError):
        MPoly.parse("1:0,0; 1:1", 2)
