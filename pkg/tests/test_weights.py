import itertools

import pytest
from hypothesis import given, strategies as st

from qcanon import weights as W


def test_partial_weight_examples():
    assert W.wt_r("C", (3, 1), 1) == W.add_weights(W.delta("C", 3), W.delta("C", 1))
    assert W.wt_r("C", (1, -1), 1) == {}
    assert W.wt_r("C", (1, -1), 2) == W.delta("C", -1)
    assert W.delta("C", -1) == {1: -1}


def test_partial_weight_out_of_range():
    with pytest.raises(IndexError):
        W.wt_r("C", (1, -1), 0)
    with pytest.raises(IndexError):
        W.wt_r("C", (1, -1), 3)


def test_bruhat_examples():
    assert W.bruhat_leq("C", (-1, 1), (1, -1))
    assert W.bruhat_leq("C", (1, -1), (1, -1))
    assert not W.bruhat_leq("C", (3, 1), (1, -1))
    # wt_2 difference is the node-0 root
    diff = W.add_weights(W.wt_r("C", (1, -1), 2), W.wt_r("C", (-1, 1), 2), -1)
    assert diff == W.simple_root("C", 0)


def test_chain_rejects_non_decreasing():
    with pytest.raises(W.InvalidWeight):
        W.bruhat_leq_chain("C", (-1, 1), (1, -1), 3)


def test_chain_examples():
    assert W.bruhat_leq_chain("C", (1, -1), (3, -3), 3) == W.bruhat_leq("C", (1, -1), (3, -3))
    assert W.bruhat_leq_chain("C", (3, 1), (3, 1), 3)


def test_chain_agrees_with_partial_weight_order():
    # the two characterizations of the order agree on weakly decreasing pairs
    k = 3
    dec = [lam for lam in W.window_weights("C", 3, k) if W.is_weakly_decreasing(lam)]
    for mu, lam in itertools.product(dec, repeat=2):
        if W.freeze(W.wt("C", mu)) == W.freeze(W.wt("C", lam)):
            assert W.bruhat_leq_chain("C", mu, lam, k) == W.bruhat_leq("C", mu, lam), (mu, lam)


def test_sign_pattern():
    assert W.sign_pattern((1, -1)) == (1, -1)
    assert W.sign_pattern((-3, -1)) == (-1, -1)
    with pytest.raises(W.InvalidWeight):
        W.sign_pattern((2, 0))


def test_sharp_map_examples():
    assert W.sharp_map((1, -1)) == (2, -2)
    assert W.sharp_map((3, -3)) == (4, -4)
    assert W.sharp_map((5, 3)) == (6, 4)


@given(st.lists(st.integers(-5, 4).map(lambda x: 2 * x + 1), min_size=1, max_size=4))
def test_sharp_inverse(lam):
    assert W.sharp_inverse(W.sharp_map(tuple(lam))) == tuple(lam)


def test_interval_below_examples():
    assert W.interval_below("C", (-1, 1), 2) == [(-3, 3), (-1, 1)]
    # (-3,3) is minimal in the k=2 window
    assert W.interval_below("C", (-3, 3), 2) == [(-3, 3)]


def test_interval_below_is_exhaustive():
    k = 3
    win = W.window_weights("C", 2, k)
    for lam in win:
        expect = {mu for mu in win if W.bruhat_leq("C", mu, lam)}
        got = W.interval_below("C", lam, k)
        assert set(got) == expect
        # listed in an order refining the partial order
        for i, mu in enumerate(got):
            assert not any(W.bruhat_leq("C", nu, mu) and nu != mu for nu in got[i + 1:])


def test_small_helpers():
    assert W.w0_reverse((3, 1)) == (1, 3)
    assert W.typicality((1, -1)) == "atypical"
    assert W.typicality((3, 1)) == "typical"
    assert not W.finite_dim_test((4, 4, 0))
    assert W.finite_dim_test((0, 0))
    assert W.neg_w0((3, -1)) == (1, -3)


def test_parse_and_format():
    w = W.parse_weight("1/2,-1/2")
    assert w.doubled == (1, -1)
    assert W.format_weight((1, -1)) == "1/2,-1/2"
    assert W.parse_weight("1,0", "int").doubled == (2, 0)
    with pytest.raises(W.InvalidWeight):
        W.parse_weight("1/3")
    with pytest.raises(W.InvalidWeight):
        W.parse_weight("1,0")


@given(st.lists(st.integers(-4, 4).map(lambda x: 2 * x + 1), min_size=1, max_size=4))
def test_order_is_reflexive_and_weight_preserving(lam):
    lam = tuple(lam)
    assert W.bruhat_leq("C", lam, lam)
    for mu in W.interval_below("C", lam, 5):
        assert W.wt("C", mu) == W.wt("C", lam)
