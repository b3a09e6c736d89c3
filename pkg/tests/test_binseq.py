from itertools import product

import pytest
from hypothesis import given, strategies as st

from antilist.binseq import (
    BitStream,
    all_streams,
    classical_diagonal,
    constant,
    inductive_sigma,
    prefix,
)
from antilist.errors import FixtureError, ProviderExhausted


def unroll(pre, per, n):
    """Independent bit oracle: write the stream out and slice."""
    bits = list(pre)
    while len(bits) < n:
        bits += per
    return tuple(bits[:n])


def literal_sigma(streams, n):
    """Re-evaluate the branch condition from scratch at every step."""
    sigma = []
    for k in range(1, n + 1):
        s = streams[k - 1]
        sigma.append(1 if tuple(sigma) + (0,) == unroll(s.preperiod, s.period, k) else 0)
    return tuple(sigma)


streams_st = st.builds(
    BitStream,
    st.lists(st.integers(0, 1), max_size=3).map(tuple),
    st.lists(st.integers(0, 1), min_size=1, max_size=3).map(tuple),
)


class TestBitStream:
    def test_at_follows_period_rule(self):
        s = BitStream((1,), (0, 1))
        assert [s.at(i) for i in range(1, 7)] == [1, 0, 1, 0, 1, 0]

    def test_rejects_empty_period_and_non_bits(self):
        with pytest.raises(ValueError):
            BitStream((), ())
        with pytest.raises(ValueError):
            BitStream((2,), (0,))

    def test_indexing_starts_at_one(self):
        with pytest.raises(IndexError):
            constant(0).at(0)

    @pytest.mark.parametrize("text", ["1:01", ":0", "0110:1", ":1"])
    def test_fixture_round_trip(self, text):
        assert str(BitStream.parse(text)) == text

    @pytest.mark.parametrize("bad", ["101", "1:", "1:2", "a:1", "1:0:1"])
    def test_fixture_errors(self, bad):
        with pytest.raises(FixtureError):
            BitStream.parse(bad)


class TestPrefix:
    def test_constant_zero(self):
        assert prefix(BitStream((), (0,)), 3) == (0, 0, 0)

    def test_unrolls_period(self):
        assert prefix(BitStream((1,), (0, 1)), 4) == (1, 0, 1, 0)

    def test_empty(self):
        assert prefix(BitStream((1,), (0, 1)), 0) == ()

    @given(streams_st, st.integers(0, 12))
    def test_matches_unrolling(self, s, n):
        assert prefix(s, n) == unroll(s.preperiod, s.period, n)


class TestClassicalDiagonal:
    def test_all_ones(self):
        assert classical_diagonal([constant(1)] * 3, 3) == (0, 0, 0)

    def test_mixed(self):
        streams = [constant(1), constant(0), BitStream((), (0, 1))]
        # s_i|_i = 1, 0, 0 by direct unrolling
        diag = [unroll(s.preperiod, s.period, i)[-1] for i, s in enumerate(streams, 1)]
        assert diag == [1, 0, 0]
        assert classical_diagonal(streams, 3) == (0, 1, 1)

    @given(streams_st)
    def test_depth_one(self, s):
        assert classical_diagonal([s], 1) == (1 - s.at(1),)

    def test_exhausted(self):
        with pytest.raises(ProviderExhausted, match="index 3"):
            classical_diagonal([constant(0)] * 2, 3)


class TestInductiveSigma:
    @given(streams_st)
    def test_base_case(self, s):
        word, trace = inductive_sigma([s], 1)
        assert word == (1 - s.at(1),)
        assert len(trace) == 1

    def test_worked_list(self):
        streams = [constant(1), constant(0), BitStream((), (0, 1))]
        assert literal_sigma(streams, 3) == (0, 1, 1)
        word, trace = inductive_sigma(streams, 3)
        assert word == (0, 1, 1)
        assert [s.branch for s in trace] == ["≠", "=", "="]
        assert trace[2].candidate == (0, 1, 0)
        assert trace[2].target == (0, 1, 0)

    def test_all_ones_list(self):
        streams = [constant(1)] * 4
        assert literal_sigma(streams, 4) == (0, 0, 0, 0)
        assert inductive_sigma(streams, 4)[0] == (0, 0, 0, 0)

    def test_callable_provider(self):
        rule = lambda i: BitStream((), (i % 2,))  # noqa: E731
        word, _ = inductive_sigma(rule, 5)
        assert word == literal_sigma([rule(i) for i in range(1, 6)], 5)

    def test_callable_provider_exhausted(self):
        items = [constant(0)]
        with pytest.raises(ProviderExhausted):
            inductive_sigma(lambda i: items[i - 1], 2)

    @given(st.lists(streams_st, min_size=1, max_size=6))
    def test_divergence_and_literal_agreement(self, streams):
        n = len(streams)
        word, trace = inductive_sigma(streams, n)
        assert word == literal_sigma(streams, n)
        assert len(trace) == n
        for k in range(1, n + 1):
            assert word[:k] != prefix(streams[k - 1], k)

    @given(st.lists(streams_st, min_size=1, max_size=5))
    def test_deterministic(self, streams):
        assert inductive_sigma(streams, len(streams)) == inductive_sigma(list(streams), len(streams))


def test_divergence_exhaustive_pre2_per2_depth3():
    family = all_streams(2, 2)
    assert len(family) == 42
    for lst in product(family, repeat=3):
        word, _ = inductive_sigma(lst, 3)
        for k in range(1, 4):
            assert word[:k] != prefix(lst[k - 1], k)


@pytest.mark.slow
def test_divergence_exhaustive_pre2_per2_depth4():
    # every shorter list is a prefix of some length-4 list, and sigma of a
    # prefix list is the prefix of sigma
    family = all_streams(2, 2)
    targets = {s: [prefix(s, k) for k in range(5)] for s in family}
    for lst in product(family, repeat=4):
        word, _ = inductive_sigma(lst, 4)
        for k in range(1, 5):
            assert word[:k] != targets[lst[k - 1]][k]
