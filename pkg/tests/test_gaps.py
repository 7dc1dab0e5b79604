import io
import json
import math
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from gapforge.gaps import (
    andrica_lt_one_exact,
    andrica_value,
    cramer_ratio,
    cramer_ratio_at_upper,
    decade_andrica_maxima,
    extremes,
    gap_stream,
    merge_extremes,
    pair_arrays,
    write_csv,
)
from gapforge.sieve import PrimePair

GOLDEN = Path(__file__).parent / "golden"


def _pair_near(n):
    """Random consecutive pair with prev >= n, via the oracle."""
    prev = oracles.td_next_prime(max(n, 1))
    return PrimePair(prev, oracles.td_next_prime(prev))


class TestAndrica:
    # expected values computed with 40-digit mpmath square roots
    @pytest.mark.parametrize(
        "prev,nxt,expect",
        [
            (2, 3, 0.317837245195782),
            (7, 11, 0.670873479290809),
            (3, 5, 0.504017169930912),
        ],
    )
    def test_value_examples(self, prev, nxt, expect):
        got = andrica_value(PrimePair(prev, nxt))
        assert got.value == pytest.approx(expect, abs=1e-12)
        assert got.lt_one_certified

    @given(st.integers(min_value=2, max_value=10**12))
    @settings(max_examples=150, deadline=None)
    def test_float_accuracy(self, n):
        pair = _pair_near(n)
        got = andrica_value(pair).value
        want = float(oracles.hp_andrica(pair.prev, pair.next))
        assert got == pytest.approx(want, abs=1e-12)

    @given(st.integers(min_value=2, max_value=10**9))
    @settings(max_examples=200, deadline=None)
    def test_certified_matches_big_integer(self, n):
        pair = _pair_near(n)
        exact = andrica_lt_one_exact(pair.prev, pair.next)
        # independent big-integer route: next < prev + 2*sqrt(prev) + 1
        lhs = (pair.next - pair.prev - 1) ** 2 if pair.gap > 1 else -1
        assert exact == (lhs < 4 * pair.prev)

    def test_certified_boundary_cases(self):
        # synthetic square endpoints sit exactly on the boundary:
        # sqrt(9) - sqrt(4) == 1, so the strict test must say False,
        # while one step inside it flips to True
        assert andrica_lt_one_exact(4, 9) is False
        assert andrica_lt_one_exact(4, 8) is True


class TestCramer:
    @pytest.mark.parametrize(
        "prev,nxt,expect",
        [
            (3, 5, 1.657070899381),
            (7, 11, 1.056366025158),
            (113, 127, 0.626448786192),
        ],
    )
    def test_examples(self, prev, nxt, expect):
        assert cramer_ratio(PrimePair(prev, nxt)) == pytest.approx(expect, rel=1e-11)

    def test_prev_two_default_computes(self):
        assert cramer_ratio(PrimePair(2, 3)) == pytest.approx(
            1 / math.log(2) ** 2, rel=1e-12
        )

    def test_prev_two_rejectable(self):
        with pytest.raises(ValueError):
            cramer_ratio(PrimePair(2, 3), reject_prev_two=True)

    def test_upper_normalization(self):
        assert cramer_ratio_at_upper(PrimePair(2, 3)) == pytest.approx(
            float(oracles.hp_cramer_next(2, 3)), rel=1e-12
        )

    def test_monotone_in_gap(self):
        # same prev, larger (hypothetical) gap -> larger ratio
        base = cramer_ratio(PrimePair(113, 127))
        assert cramer_ratio(PrimePair(113, 131)) > base


class TestGapStream:
    def test_small(self):
        recs = list(gap_stream(2, 12))
        assert [(r.pair.prev, r.pair.next) for r in recs] == [
            (2, 3),
            (3, 5),
            (5, 7),
            (7, 11),
        ]

    def test_empty(self):
        assert list(gap_stream(14, 16)) == []

    def test_count_100(self):
        assert len(list(gap_stream(2, 100))) == 24

    @given(st.integers(min_value=3, max_value=3000))
    @settings(max_examples=30, deadline=None)
    def test_shard_invariance_at_prime_cut(self, cut_seed):
        # splitting at a prime loses no pair and duplicates none
        cut = oracles.td_next_prime(cut_seed)
        lo, hi = 2, 6000
        whole = [(r.pair.prev, r.pair.next) for r in gap_stream(lo, hi)]
        left = [(r.pair.prev, r.pair.next) for r in gap_stream(lo, cut)]
        right = [(r.pair.prev, r.pair.next) for r in gap_stream(cut, hi)]
        assert left + right == whole


class TestExtremes:
    def test_small(self):
        ext = extremes(2, 12)
        assert ext.max_gap_pair == PrimePair(7, 11)

    def test_range_100(self):
        ext = extremes(2, 100)
        assert ext.max_gap_pair == PrimePair(89, 97)
        assert ext.max_andrica_pair == PrimePair(7, 11)

    def test_empty_range(self):
        with pytest.raises(ValueError):
            extremes(14, 16)

    def test_merge_matches_whole(self):
        whole = extremes(2, 1000)
        merged = merge_extremes(extremes(2, 541), extremes(541, 1000))
        assert merged == whole

    def test_merge_associative(self):
        a, b, c = extremes(2, 100), extremes(101, 500), extremes(503, 2000)
        left = merge_extremes(merge_extremes(a, b), c)
        right = merge_extremes(a, merge_extremes(b, c))
        assert left == right


class TestDecades:
    def test_against_golden_prefix(self):
        golden = json.loads((GOLDEN / "scan_1e8.json").read_text())
        arrays = pair_arrays(2, 10**6)
        got = decade_andrica_maxima(arrays)
        for g, want in zip(got, golden["andrica_decades"]):
            if want["decade_lo"] > 10**5:
                break
            assert g.decade_lo == want["decade_lo"]
            assert list(g.pair) == want["pair"]
            assert g.value == pytest.approx(want["value"], abs=1e-12)


class TestCsv:
    def test_format(self):
        buf = io.StringIO()
        write_csv(gap_stream(2, 12), buf)
        lines = buf.getvalue().strip().split("\n")
        assert lines[0] == "prev,next,gap,andrica,cramer"
        assert len(lines) == 5
        first = lines[1].split(",")
        assert first[:3] == ["2", "3", "1"]
        assert len(first[3].split(".")[1]) == 12
        assert len(first[4].split(".")[1]) == 12


class TestPairArrays:
    def test_matches_stream(self):
        arrays = pair_arrays(5, 500)
        pairs = [(int(a), int(b)) for a, b in zip(arrays.prev, arrays.next)]
        assert pairs == oracles.td_pairs(5, 500)


class TestCertifiedAndricaBulk:
    def test_1e5_random_pairs_against_big_integer_route(self):
        import random
        from math import isqrt

        arrays = pair_arrays(2, 10**7)
        rng = random.Random(7)
        idx = rng.sample(range(arrays.prev.size), 100_000)
        for i in idx:
            prev, nxt = int(arrays.prev[i]), int(arrays.next[i])
            got = andrica_lt_one_exact(prev, nxt)
            # independent route: gap - 1 < 2*sqrt(prev) via isqrt(4*prev)
            # (4*prev is never a perfect square for prime prev)
            want = (nxt - prev - 1) <= isqrt(4 * prev)
            assert got == want, (prev, nxt)
