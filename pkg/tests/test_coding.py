import random

import pytest
from hypothesis import given, strategies as st

from arithver.coding import (beta, beta_index, pair, seq_encode, split,
                             tuple_decode, tuple_encode)


def test_pair_known_values():
    # the standard diagonal enumeration: <0,0>=0, <0,1>=1, <1,0>=2, ...
    assert pair(0, 0) == 0
    assert pair(0, 1) == 1
    assert pair(1, 0) == 2
    assert pair(0, 2) == 3
    assert pair(1, 1) == 4
    assert pair(2, 0) == 5


def test_pair_rejects_negatives():
    with pytest.raises(ValueError):
        pair(-1, 0)
    with pytest.raises(ValueError):
        split(-1)


def test_split_pair_identity_small():
    for x in range(60):
        for y in range(60):
            assert split(pair(x, y)) == (x, y)


def test_pair_is_bijective_on_initial_segment():
    seen = {pair(x, y) for x in range(40) for y in range(40)}
    # the diagonal block up to x+y < 40 is exactly an initial segment
    diag = {pair(x, y) for x in range(40) for y in range(40) if x + y < 40}
    assert diag == set(range(40 * 41 // 2))
    assert len(seen) == 1600


@given(st.integers(0, 10 ** 40), st.integers(0, 10 ** 40))
def test_split_pair_identity_bignum(x, y):
    assert split(pair(x, y)) == (x, y)


@given(st.integers(0, 10 ** 40))
def test_pair_split_identity(z):
    x, y = split(z)
    assert pair(x, y) == z


def test_tuple_roundtrip():
    for xs in ([5], [3, 4], [0, 0, 0], [9, 1, 7, 2], list(range(8))):
        assert tuple_decode(tuple_encode(xs), len(xs)) == xs


def test_tuple_singleton_is_identity():
    assert tuple_encode([42]) == 42


def test_tuple_errors():
    with pytest.raises(ValueError):
        tuple_encode([])
    with pytest.raises(ValueError):
        tuple_decode(5, 0)


@given(st.lists(st.integers(0, 10 ** 12), min_size=1, max_size=6))
def test_tuple_roundtrip_random(xs):
    assert tuple_decode(tuple_encode(xs), len(xs)) == xs


def test_beta_decodes_sequences():
    for xs in ([0], [7], [1, 2, 3], [50, 0, 50, 0], [10 ** 9, 5, 10 ** 18]):
        w = seq_encode(xs)
        for i, a in enumerate(xs):
            assert beta_index(w, i) == a


def test_beta_consistent_with_split():
    w = seq_encode([4, 9, 2])
    b, c = split(w)
    for i in range(3):
        assert beta(b, c, i) == beta_index(w, i)


def test_seq_encode_rejects_empty():
    with pytest.raises(ValueError):
        seq_encode([])


def test_many_random_sequences_decode():
    rng = random.Random(7)
    for _ in range(500):
        xs = [rng.randrange(51) for _ in range(rng.randrange(1, 9))]
        w = seq_encode(xs)
        assert [beta_index(w, i) for i in range(len(xs))] == xs


@given(st.lists(st.integers(0, 10 ** 9), min_size=1, max_size=10))
def test_seq_encode_random(xs):
    w = seq_encode(xs)
    assert [beta_index(w, i) for i in range(len(xs))] == xs
