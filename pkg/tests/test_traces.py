import pytest

from cyclosum.errors import HypothesisFails, NotOddPrime, SizeCapExceeded
from cyclosum.traces import (
    half_order_tail,
    predict_trace_count,
    q_star,
    trace_profile,
)


@pytest.mark.parametrize("p,m,trace_set,r", [
    (7, 19, (0, 1, 2, 3, 4), 6),
    (3, 11, (0, 2), 2),
    (5, 11, (0, 1, 3), 2),
    (2, 5, (0, 1), 1),
])
def test_trace_profiles(p, m, trace_set, r):
    tp = trace_profile(p, m)
    assert tp.trace_set == trace_set
    assert tp.t == len(trace_set)
    assert tp.r == r
    assert tp.factor_traces[0] == tp.ell % p
    assert len(tp.factor_traces) == 1 + tp.r


def test_small_doubleton_case():
    tp = trace_profile(5, 3)
    assert (tp.ell, tp.r, tp.t) == (2, 1, 2)


def test_trace_counts_are_never_singletons():
    import math
    for p in (2, 3, 5, 7, 11, 13):
        for m in range(2, 36):
            if math.gcd(p, m) != 1:
                continue
            try:
                tp = trace_profile(p, m)
            except SizeCapExceeded:
                continue
            assert tp.t >= 2, (p, m)
            # all m'-th roots sum to zero, visible on the factor traces
            assert (1 + sum(tp.factor_traces[1:])) % p == 0


def test_two_degree_case_counts_all_factors():
    # when the minimal extension is quadratic every factor trace is distinct
    tp = trace_profile(5, 3)
    assert tp.ell == 2 and tp.t == tp.r + 1
    tp = trace_profile(13, 7)  # 13 = -1 mod 7, three quadratic factors
    assert tp.ell == 2
    assert tp.r == 3
    assert tp.t == tp.r + 1


def test_profile_respects_size_cap():
    with pytest.raises(SizeCapExceeded):
        trace_profile(2, 53, size_cap=1 << 20)


@pytest.mark.parametrize("q,value", [(11, -11), (5, 5), (7, -7), (13, 13), (3, -3)])
def test_q_star(q, value):
    assert q_star(q).value == value
    assert q_star(q).value % 4 == 1


def test_q_star_rejects_even_or_composite():
    with pytest.raises(NotOddPrime):
        q_star(2)
    with pytest.raises(NotOddPrime):
        q_star(15)


def test_predicted_trace_counts_for_eleventh_roots():
    assert predict_trace_count(3, 11) == 2   # 3 divides q* - 1 = -12
    assert predict_trace_count(5, 11) == 3   # 5 does not
    assert predict_trace_count(3, 11) == trace_profile(3, 11).t
    assert predict_trace_count(5, 11) == trace_profile(5, 11).t


def test_predict_requires_half_order():
    with pytest.raises(HypothesisFails):
        predict_trace_count(7, 11)  # order of 7 mod 11 is 10, not 5
    with pytest.raises(HypothesisFails):
        predict_trace_count(3, 3)
    with pytest.raises(NotOddPrime):
        predict_trace_count(2, 11)


def test_half_order_tails():
    assert half_order_tail(3, 11) == 10
    assert half_order_tail(5, 11) == 10
    with pytest.raises(HypothesisFails):
        half_order_tail(3, 7)  # order of 3 mod 7 is 6, not 3


def test_prediction_matches_profiles_in_range():
    import math
    from cyclosum.ntheory import is_prime, multiplicative_order

    checked = 0
    for p in (3, 5, 7, 11, 13, 17, 19, 23):
        for q in (3, 5, 7, 11, 13, 17, 19, 23):
            if p == q or not is_prime(q):
                continue
            if multiplicative_order(p, q) != (q - 1) // 2:
                continue
            try:
                tp = trace_profile(p, q)
            except SizeCapExceeded:
                continue
            assert predict_trace_count(p, q) == tp.t, (p, q)
            checked += 1
    assert checked >= 8
