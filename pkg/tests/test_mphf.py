from itertools import combinations_with_replacement

import pytest

from randlab.mphf import (
    FormatError,
    RatioTooLowError,
    build,
    deserialize,
    is_acyclic,
    query,
    serialize,
)
from randlab.rng import SplitMix64


def forest_oracle(n, edges):
    """Cycle-free iff no self-loops, no duplicate edges, and every
    connected component has exactly (vertices - 1) edges."""
    seen = set()
    for u, v in edges:
        if u == v:
            return False
        key = (min(u, v), max(u, v))
        if key in seen:
            return False
        seen.add(key)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def random_words(count, length, seed):
    rng = SplitMix64(seed)
    words = set()
    while len(words) < count:
        words.add(bytes(rng.uniform_below(256) for _ in range(length)))
    return sorted(words)


def test_is_acyclic_examples():
    assert is_acyclic(4, [(1, 2), (2, 3)]) is True
    assert is_acyclic(4, [(1, 2), (2, 3), (3, 1)]) is False
    assert is_acyclic(2, [(1, 1)]) is False  # self-loop counts as a cycle
    assert is_acyclic(3, [(0, 1), (1, 0)]) is False  # duplicate edge too
    assert is_acyclic(5, []) is True


def test_is_acyclic_vertex_range_checked():
    with pytest.raises(ValueError):
        is_acyclic(3, [(0, 3)])


def test_is_acyclic_exhaustive_against_forest_oracle():
    # All multigraphs on 6 vertices with up to 6 edges, self-loops included.
    slots = [(u, v) for u in range(6) for v in range(u, 6)]
    for k in range(7):
        for edges in combinations_with_replacement(slots, k):
            assert is_acyclic(6, edges) == forest_oracle(6, edges), edges


def test_build_three_words_is_ordered():
    fn, report = build([b"a", b"b", b"c"], 3.0, SplitMix64(1))
    assert fn.m == 3 and fn.n == 9
    assert [query(fn, w) for w in (b"a", b"b", b"c")] == [0, 1, 2]
    assert report.trials >= 1


def test_build_single_word():
    fn, report = build([b"hello"], 3.0, SplitMix64(0))
    assert query(fn, b"hello") == 0
    assert fn.m == 1 and fn.n == 3


def test_build_is_minimal_perfect_and_ordered():
    words = random_words(500, 8, seed=42)
    fn, _ = build(words, 3.0, SplitMix64(5))
    values = [query(fn, w) for w in words]
    assert values == list(range(500))  # ordered, hence bijective onto 0..m-1


def test_build_rejects_bad_input():
    with pytest.raises(ValueError):
        build([], 3.0, SplitMix64(0))
    with pytest.raises(ValueError):
        build([b"x", b"x"], 3.0, SplitMix64(0))
    with pytest.raises(ValueError):
        build([b"x", b""], 3.0, SplitMix64(0))  # empty word is a fixed self-loop
    with pytest.raises(ValueError):
        build([b"x", b"y"], 2.0, SplitMix64(0))  # ratio at the divergence point


def test_build_deterministic_for_fixed_seed():
    words = random_words(100, 6, seed=1)
    fn1, rep1 = build(words, 3.0, SplitMix64(9))
    fn2, rep2 = build(words, 3.0, SplitMix64(9))
    assert fn1 == fn2
    assert rep1.trials == rep2.trials


def test_query_out_of_domain_word():
    fn, _ = build([b"ab", b"cd"], 3.0, SplitMix64(2))
    with pytest.raises(ValueError):
        query(fn, b"toolong")
    # Words outside the build set still land in range.
    for probe in (b"zz", b"a", b""):
        assert 0 <= query(fn, probe) < fn.m


def test_variable_length_words():
    words = [b"a", b"ab", b"abc", b"b", b"ba"]
    fn, _ = build(words, 3.0, SplitMix64(3))
    assert [query(fn, w) for w in words] == list(range(len(words)))


def test_expected_trials_near_sqrt3():
    # Acceptance probability for n = 3m tends to 1/sqrt(3); at m = 300 the
    # mean trial count over 60 seeds should sit near 1.73.
    words = random_words(300, 8, seed=7)
    total = sum(build(words, 3.0, SplitMix64(seed))[1].trials for seed in range(60))
    assert 1.2 <= total / 60 <= 2.4


def test_serialize_round_trip():
    words = random_words(200, 5, seed=11)
    fn, _ = build(words, 3.0, SplitMix64(4))
    blob = serialize(fn)
    assert blob[:4] == b"CHM1"
    back = deserialize(blob)
    assert back == fn
    probes = random_words(100, 5, seed=99)
    assert all(query(back, w) == query(fn, w) for w in probes)


def test_deserialize_rejects_garbage():
    with pytest.raises(FormatError) as info:
        deserialize(b"")
    assert info.value.offset == 0
    with pytest.raises(FormatError):
        deserialize(b"NOPE" + bytes(40))
    fn, _ = build([b"q", b"r"], 3.0, SplitMix64(0))
    blob = serialize(fn)
    with pytest.raises(FormatError):
        deserialize(blob[:-1])  # truncation
    bad = bytearray(blob)
    bad[4] = 9  # unsupported version
    with pytest.raises(FormatError) as info:
        deserialize(bytes(bad))
    assert info.value.offset == 4


def test_deserialize_rejects_out_of_range_entries():
    fn, _ = build([b"q", b"r"], 3.0, SplitMix64(0))
    blob = bytearray(serialize(fn))
    blob[29:37] = (fn.n + 5).to_bytes(8, "little")  # first T1 entry too big
    with pytest.raises(FormatError) as info:
        deserialize(bytes(blob))
    assert info.value.offset == 29


def test_ratio_too_low_error_raised():
    # Two identical-length words at the minimum ratio still succeed, so force
    # failure with an adversarial degenerate: ratio just above 2 with m = 1
    # cannot fail, so check the error type is reachable via monkeypatched
    # trial budget instead of burning cycles.
    import randlab.mphf as m

    words = random_words(50, 4, seed=0)
    old = m.MAX_TRIALS
    m.MAX_TRIALS = 0
    try:
        with pytest.raises(RatioTooLowError):
            build(words, 3.0, SplitMix64(0))
    finally:
        m.MAX_TRIALS = old
