import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from bkdiamond.errors import PrecisionExhausted
from bkdiamond.intervals import BigInterval, cos_pi, pi_interval, sin_pi
from bkdiamond.qseries import PARTITIONS, delta_quotient
from bkdiamond.special import a_hat, a_hat_phases, bessel_I, dedekind_sum
from oracles import PI_60, bessel_partial_sum


# -- intervals ---------------------------------------------------------------


@pytest.mark.parametrize("p", [10, 53, 200])
def test_pi_enclosure(p):
    iv = pi_interval(p)
    lo = Fraction(PI_60)
    hi = lo + Fraction(1, 10 ** 59)
    # the enclosure must meet [lo, hi], which contains pi
    assert iv.lo <= BigInterval.exact(hi, 300).hi and iv.hi >= BigInterval.exact(lo, 300).lo
    assert iv.width() <= BigInterval.exact(Fraction(2) ** (2 - p), 300).lo


def test_pi_matches_published_digits():
    iv = pi_interval(200)
    # the 60-digit truncation and its successor bracket pi
    lo = Fraction(PI_60)
    hi = lo + Fraction(1, 10 ** 59)
    assert iv.lo >= BigInterval.exact(lo, 300).lo and iv.hi <= BigInterval.exact(hi, 300).hi


def test_pi_small_precision():
    iv = pi_interval(10)
    assert iv.contains(Fraction(314159, 100000))
    with pytest.raises(ValueError):
        pi_interval(1)


def test_arithmetic_encloses():
    a = BigInterval.exact(Fraction(1, 3), 64)
    b = BigInterval.exact(Fraction(-2, 7), 64)
    for iv, exact in [(a + b, Fraction(1, 3) - Fraction(2, 7)), (a * b, Fraction(-2, 21)),
                      (a / b, Fraction(-7, 6)), (a - b, Fraction(13, 21)), (-b, Fraction(2, 7)),
                      (b ** 2, Fraction(4, 49)), (abs(b), Fraction(2, 7))]:
        assert iv.contains(exact)
    with pytest.raises(ZeroDivisionError):
        a / (b - b)


def test_integer_isolation():
    iv = BigInterval.exact(Fraction(7, 2), 64).widen(Fraction(1, 4))
    assert iv.unique_integer() is None
    assert BigInterval.exact(5, 64).widen(Fraction(1, 4)).unique_integer() == 5


def test_json_round_trip():
    iv = pi_interval(100)
    data = iv.to_json()
    assert Fraction(data["lo"]) <= Fraction(*iv.lo.as_integer_ratio())
    assert Fraction(data["hi"]) >= Fraction(*iv.hi.as_integer_ratio())
    back = BigInterval.from_json(data)
    assert back.contains(iv) and back.prec == 100
    assert back.width() <= 4 * iv.width()


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=1000)


@given(rationals)
def test_cos_sin_pi_enclose(theta):
    ci, si = cos_pi(theta, 80), sin_pi(theta, 80)
    with mpmath.workprec(300):
        x = mpmath.mpf(theta.numerator) / theta.denominator
        c, s = mpmath.cospi(x), mpmath.sinpi(x)
        slack = mpmath.mpf(2) ** -250
        assert mpmath.mpf(ci.lo) - slack <= c <= mpmath.mpf(ci.hi) + slack
        assert mpmath.mpf(si.lo) - slack <= s <= mpmath.mpf(si.hi) + slack


# -- Dedekind sums -------------------------------------------------------------


def test_dedekind_examples():
    assert dedekind_sum(17, 1) == 0
    assert dedekind_sum(1, 2) == 0
    assert dedekind_sum(1, 3) == Fraction(1, 18)


def test_dedekind_reciprocity():
    for h in range(1, 31):
        for j in range(1, 31):
            if math.gcd(h, j) != 1:
                continue
            lhs = dedekind_sum(h, j) + dedekind_sum(j, h)
            rhs = Fraction(-1, 4) + (Fraction(h, j) + Fraction(j, h) + Fraction(1, h * j)) / 12
            assert lhs == rhs, (h, j)


@given(st.integers(-200, 200), st.integers(1, 60))
def test_dedekind_odd_and_periodic(h, j):
    assert dedekind_sum(-h, j) == -dedekind_sum(h, j)
    assert dedekind_sum(h + j, j) == dedekind_sum(h, j)


# -- A_j(n) --------------------------------------------------------------------


@pytest.mark.parametrize("q", [delta_quotient(1), delta_quotient(2), PARTITIONS])
def test_a_hat_first_term_is_one(q):
    for n in range(5):
        assert a_hat(1, n, q, 64).contains(1)


def test_a_hat_small_examples():
    v = a_hat(2, 0, delta_quotient(1), 64)
    assert -2 <= v.lo and v.hi <= 2
    # conjugate pairing: phases for h and j-h are negatives mod 2
    phases = a_hat_phases(delta_quotient(2), 5, 3)
    assert sorted((-t) % 2 for t in phases) == sorted(phases)
    a_hat(5, 3, delta_quotient(2), 64)  # imaginary part encloses 0, else raises


@pytest.mark.parametrize("k", [1, 2])
def test_a_hat_bounded_and_real(k):
    q = delta_quotient(k)
    for j in range(1, 51):
        for n in range(51):
            v = a_hat(j, n, q, 64)  # raises PrecisionExhausted if not real
            assert abs(v).hi <= j + Fraction(1, 10 ** 9)


def test_a_hat_depends_on_n_mod_j():
    q = delta_quotient(1)
    for j in (3, 7, 12):
        for n in range(j):
            a, b = a_hat(j, n, q, 64), a_hat(j, n + 5 * j, q, 64)
            assert a.lo == b.lo and a.hi == b.hi


def test_partition_kloosterman_known_values():
    # for p(n) the sum A_j(n) at j = 2 is (-1)^n
    for n in range(6):
        assert a_hat(2, n, PARTITIONS, 64).contains((-1) ** n)


def test_a_hat_rejects_bad_input():
    with pytest.raises(ValueError):
        a_hat(0, 1, PARTITIONS, 64)
    assert issubclass(PrecisionExhausted, ArithmeticError)


@given(st.integers(1, 40), st.integers(0, 60), st.sampled_from([1, 2]), st.sampled_from([32, 64, 128]))
def test_a_hat_nested(j, n, k, p):
    a = a_hat(j, n, delta_quotient(k), p)
    b = a_hat(j, n, delta_quotient(k), 2 * p)
    assert a.contains(b)


# -- Bessel I ------------------------------------------------------------------


def test_bessel_zero_argument():
    assert bessel_I(2, BigInterval.exact(0, 64)).contains(0)
    assert bessel_I(0, BigInterval.exact(0, 64)).contains(1)


def test_bessel_i1_upper_bound_at_one():
    v = bessel_I(1, BigInterval.exact(1, 128))
    bound = (BigInterval.exact(2, 128) / pi_interval(128)).sqrt() * BigInterval.exact(1, 128).exp()
    assert v.hi < bound.lo


def test_bessel_matches_exact_partial_sum():
    v = bessel_I(2, BigInterval.exact(10, 160))
    oracle = bessel_partial_sum(2, 10, 200)
    # the omitted terms r >= 200 are far below 10^-30 relative
    mid = Fraction(*v.mid().as_integer_ratio())
    assert abs(mid - oracle) < Fraction(1, 10 ** 30) * oracle
    assert Fraction(*v.width().as_integer_ratio()) < Fraction(1, 10 ** 30) * oracle
    assert v.contains(oracle)


@pytest.mark.parametrize("nu,s", [(0, 3), (1, 1), (2, 10), (Fraction(3, 2), 7), (2, 280), (3, Fraction(1, 3))])
def test_bessel_against_mpmath(nu, s):
    v = bessel_I(nu, BigInterval.exact(s, 128))
    with mpmath.workprec(300):
        ref = mpmath.besseli(mpmath.mpf(nu.numerator) / nu.denominator if isinstance(nu, Fraction) else nu,
                             mpmath.mpf(Fraction(s).numerator) / Fraction(s).denominator)
        assert mpmath.mpf(v.lo) <= ref <= mpmath.mpf(v.hi)


def test_bessel_monotone_grid():
    grid = [BigInterval.exact(Fraction(t, 4), 96) for t in range(0, 400)]
    vals = [bessel_I(2, s) for s in grid]
    assert all(a.hi <= b.lo for a, b in zip(vals[1:], vals[2:]))


@given(st.sampled_from([0, 1, 2, 3]), st.fractions(min_value=0, max_value=500, max_denominator=997),
       st.sampled_from([32, 64, 100]))
def test_bessel_nested(nu, s, p):
    a = bessel_I(nu, BigInterval.exact(s, p), p)
    b = bessel_I(nu, BigInterval.exact(s, 2 * p), 2 * p)
    assert a.contains(b)


def test_bessel_rejects_negative():
    with pytest.raises(ValueError):
        bessel_I(2, BigInterval.exact(-1, 64))
    with pytest.raises(ValueError):
        bessel_I(-1, BigInterval.exact(1, 64))
