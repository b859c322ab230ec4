import json

import pytest
from hypothesis import given, strategies as st

from bkdiamond.qseries import (EtaQuotient, ExactSeries, delta_coeffs, delta_quotient,
                               eta_quotient_coeffs, euler_factor_series, mul_trunc,
                               partition_coeffs)
from oracles import colored_partitions, naive_eta_product, partition_count


def test_euler_factor_pentagonal():
    assert list(euler_factor_series(1, 1, 5)) == [1, -1, -1, 0, 0, 1]


def test_euler_factor_sparse_m():
    assert list(euler_factor_series(2, 1, 1)) == [1, 0]


def test_euler_factor_inverse_cube_counts_colored_partitions():
    assert list(euler_factor_series(1, -3, 3)) == [1, 3, 9, 22]
    assert [colored_partitions(n, 3) for n in range(4)] == [1, 3, 9, 22]


def test_delta_1_first_terms():
    assert list(eta_quotient_coeffs(delta_quotient(1), 5)) == [1, 3, 8, 18, 38, 75]
    assert list(delta_coeffs(1, 2)) == [1, 3, 8]


def test_trivial_orders():
    assert list(delta_coeffs(2, 0)) == [1]
    assert list(eta_quotient_coeffs(delta_quotient(2), 0)) == [1]
    assert list(delta_coeffs(3, 1)) == [1, 3]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_delta_matches_naive_product(k):
    q = delta_quotient(k)
    assert list(delta_coeffs(k, 120)) == naive_eta_product(q.factors, 120)


def test_partitions_match_recursion():
    assert list(partition_coeffs(60)) == [partition_count(n) for n in range(61)]


def test_quotient_validation():
    with pytest.raises(ValueError):
        EtaQuotient(((1, 1), (1, 2)))
    with pytest.raises(ValueError):
        EtaQuotient(((2, 0),))
    with pytest.raises(ValueError):
        delta_quotient(0)


def test_derived_n0_and_period():
    q = delta_quotient(2)
    assert q.n0 == 6  # 2k + 2
    assert q.period == 10


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_positivity(k):
    assert min(delta_coeffs(k, 2000)) >= 1


def test_congruence_mod_3():
    c = delta_coeffs(1, 1001)
    assert all(c[2 * n + 1] % 3 == 0 for n in range(501))


factor_lists = st.lists(
    st.tuples(st.integers(1, 7), st.integers(-3, 3).filter(bool)),
    min_size=1, max_size=4, unique_by=lambda f: f[0])


@given(factor_lists, st.randoms(use_true_random=False), st.integers(0, 40))
def test_order_independence(factors, rnd, N):
    q = EtaQuotient(tuple(factors))
    order = list(range(len(factors)))
    rnd.shuffle(order)
    a = eta_quotient_coeffs(q, N, cached=False)
    b = eta_quotient_coeffs(q.permuted(order), N, cached=False)
    assert list(a) == list(b)
    assert a[0] == 1


@given(factor_lists, st.integers(0, 30))
def test_matches_naive_product_random(factors, N):
    q = EtaQuotient(tuple(factors))
    assert list(eta_quotient_coeffs(q, N, cached=False)) == naive_eta_product(q.factors, N)


@given(st.integers(1, 6), st.integers(1, 4), st.integers(0, 60))
def test_inversion(m, delta, N):
    prod = mul_trunc(euler_factor_series(m, delta, N).coeffs,
                     euler_factor_series(m, -delta, N).coeffs, N)
    assert prod == [1] + [0] * N


def test_json_and_csv_round_trip():
    s = delta_coeffs(1, 30)
    text = s.to_json()
    values = json.loads(text)
    assert values[:4] == ["1", "3", "8", "18"]
    back = ExactSeries.from_json(text, s.quotient)
    assert list(back) == list(s)
    lines = s.to_csv().splitlines()
    assert lines[0] == "n,coefficient"
    assert lines[3] == "2,8"


def test_cached_prefix_is_consistent():
    long = delta_coeffs(1, 300)
    short = delta_coeffs(1, 50)
    assert list(short) == list(long)[:51]
