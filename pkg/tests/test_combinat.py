import itertools
import random
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from klrkit.combinat import (
    DimensionVector,
    betas_up_to_height,
    compose,
    count_sequences,
    enumerate_kostant,
    enumerate_sequences,
    sequence_permute,
    swap_adjacent,
    transposition,
)
from klrkit.root_system import build_root_system

A2 = build_root_system("A", 2)


def test_sequence_examples():
    assert enumerate_sequences(A2, (1, 1)) == [(1, 2), (2, 1)]
    assert len(enumerate_sequences(A2, (1, 2))) == 3
    assert enumerate_sequences(A2, (0, 0)) == [()]
    assert enumerate_sequences(build_root_system("D", 4), (0, 0, 0, 0)) == [()]


def test_kostant_examples():
    parts = enumerate_kostant(A2, (1, 1))
    assert sorted(p.describe(A2) == {"a1+a2": 1} or p.describe(A2) == {"a1": 1, "a2": 1}
                  for p in parts) == [True, True]
    assert len(parts) == 2
    assert len(enumerate_kostant(A2, (1, 2))) == 2
    for t, n in [("A", 3), ("D", 4)]:
        rs = build_root_system(t, n)
        for i in rs.vertices():
            beta = tuple(int(j == i) for j in rs.vertices())
            assert len(enumerate_kostant(rs, beta)) == 1


def test_permute_examples():
    assert sequence_permute((1, 2), transposition(2, 1)) == (2, 1)
    assert sequence_permute((3, 1, 2), (1, 2, 3)) == (3, 1, 2)
    w = compose(transposition(3, 1), transposition(3, 2))
    assert sequence_permute((1, 2, 2), w) == (2, 2, 1)
    with pytest.raises(ValueError):
        sequence_permute((1, 2), (1, 2, 3))
    with pytest.raises(ValueError):
        sequence_permute((1, 2), (1, 1))


SYSTEMS = [("A", 1), ("A", 2), ("A", 3), ("D", 4)]


@pytest.mark.parametrize("t,n", SYSTEMS)
def test_sequences_against_filter_oracle(t, n):
    rs = build_root_system(t, n)
    for d in range(0, 7):
        if n ** d > 5000:
            continue
        for beta in (b for b in betas_up_to_height(rs, d) if sum(b) == d):
            oracle = sorted(s for s in itertools.product(rs.vertices(), repeat=d)
                            if all(s.count(i) == beta[i - 1] for i in rs.vertices()))
            got = enumerate_sequences(rs, beta)
            assert got == oracle
            assert count_sequences(rs, beta) == len(oracle)


def kostant_count_oracle(rs, beta):
    """Vector coin change on the alpha-coordinates."""
    roots = list(rs.positive_alpha)

    @lru_cache(maxsize=None)
    def ways(rem, k):
        if not any(rem):
            return 1
        if k == len(roots):
            return 0
        total = 0
        r = roots[k]
        cur = rem
        while all(c >= 0 for c in cur):
            total += ways(cur, k + 1)
            cur = tuple(c - x for c, x in zip(cur, r))
        return total

    return ways(tuple(beta), 0)


@pytest.mark.parametrize("t,n", SYSTEMS + [("A", 4), ("D", 5)])
def test_kostant_against_coin_change(t, n):
    rs = build_root_system(t, n)
    for beta in betas_up_to_height(rs, 5 if n <= 4 else 4):
        parts = enumerate_kostant(rs, beta)
        assert len(parts) == kostant_count_oracle(rs, beta)
        assert len({p.multiplicities for p in parts}) == len(parts)
        target = rs.from_alpha(beta)
        for p in parts:
            assert p.total(rs) == target
            assert all(m > 0 for _, m in p.multiplicities)


def test_enumeration_is_deterministic():
    rs = build_root_system("D", 4)
    assert enumerate_kostant(rs, (1, 2, 1, 1)) == enumerate_kostant(rs, (1, 2, 1, 1))


perms = st.integers(1, 7).flatmap(lambda d: st.tuples(
    st.permutations(range(1, d + 1)), st.permutations(range(1, d + 1)),
    st.lists(st.integers(1, 3), min_size=d, max_size=d)))


@settings(max_examples=100, deadline=None)
@given(perms)
def test_right_action_axiom(data):
    w, v, s = data
    w, v, s = tuple(w), tuple(v), tuple(s)
    assert sequence_permute(sequence_permute(s, w), v) == sequence_permute(s, compose(w, v))


def test_swap_adjacent_is_transposition():
    rng = random.Random(4)
    for _ in range(30):
        d = rng.randint(2, 6)
        s = tuple(rng.randint(1, 3) for _ in range(d))
        k = rng.randint(1, d - 1)
        assert swap_adjacent(s, k) == sequence_permute(s, transposition(d, k))


def test_dimension_vector():
    dv = DimensionVector.parse("1, 2,0")
    assert dv.beta == (1, 2, 0) and dv.height == 3
    assert dv.as_weight(build_root_system("A", 3)) == build_root_system("A", 3).from_alpha((1, 2, 0))
    with pytest.raises(ValueError):
        DimensionVector((1, -1))
    with pytest.raises(ValueError):
        enumerate_sequences(A2, (1, 1, 1))


def test_betas_up_to_height():
    bs = betas_up_to_height(A2, 2)
    assert bs == [(0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]
