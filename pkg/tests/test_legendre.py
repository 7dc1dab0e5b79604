import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from gapforge.legendre import (
    check_legendre_gap_conjecture,
    check_legendre_gap_corollary,
    check_map_injective,
    check_strong_legendre_equivalence,
    entries_to_json,
    is_legendre_prime,
    legendre_map,
    legendre_primes_first,
    legendre_primes_up_to,
)

ANCHORS = json.loads((Path(__file__).parent / "golden" / "anchors.json").read_text())


class TestPredicate:
    def test_known_members(self):
        ok, wit = is_legendre_prime(5)
        assert ok and wit == 2
        ok, wit = is_legendre_prime(17)
        assert ok and wit == 4 and wit * wit == 16

    def test_non_member(self):
        ok, wit = is_legendre_prime(7)
        assert not ok and wit is None

    def test_two_by_fiat(self):
        assert is_legendre_prime(2) == (True, 1)

    def test_rejects_composite(self):
        with pytest.raises(ValueError):
            is_legendre_prime(9)

    @given(st.integers(min_value=3, max_value=20000))
    @settings(max_examples=150, deadline=None)
    def test_matches_oracle(self, n):
        p = oracles.td_next_prime(n)
        assert is_legendre_prime(p)[0] == oracles.td_is_legendre(p)


class TestEnumeration:
    def test_list_130(self):
        got = [e.value for e in legendre_primes_up_to(130)]
        assert got == [2, 5, 11, 17, 29, 37, 53, 67, 83, 101, 127]
        assert got == ANCHORS["legendre_up_to_130"]

    def test_list_4(self):
        assert [e.value for e in legendre_primes_up_to(4)] == [2]

    def test_list_1000_matches_predicate_oracle(self):
        got = [e.value for e in legendre_primes_up_to(1000)]
        assert got == ANCHORS["legendre_up_to_1000"]
        assert len(got) == 31

    def test_indices_and_witnesses(self):
        entries = legendre_primes_up_to(130)
        assert [e.index for e in entries] == list(range(1, 12))
        for e in entries[1:]:
            prev = oracles.td_prev_prime(e.value)
            assert prev < e.square_witness**2 < e.value

    def test_first_n(self):
        assert [e.value for e in legendre_primes_first(5)] == [2, 5, 11, 17, 29]


class TestMap:
    @pytest.mark.parametrize("n,expect", [(2, 5), (3, 11), (5, 29), (1, 2)])
    def test_examples(self, n, expect):
        assert legendre_map(n).image.value == expect

    def test_first_ten_match_oracle(self):
        assert [legendre_map(n).image.value for n in range(1, 11)] == ANCHORS[
            "legendre_map_1_to_10"
        ]

    @given(st.integers(min_value=1, max_value=1000))
    @settings(max_examples=60, deadline=None)
    def test_image_is_first_legendre_above_square(self, n):
        entry = legendre_map(n)
        img = entry.image.value
        assert img > n * n
        assert oracles.td_is_legendre(img)
        # no Legendre prime in (n^2, img): any prime there would have a
        # square <= n^2 below it only if it followed another prime > n^2
        for p in oracles.td_primes_in_open(n * n, img):
            assert not oracles.td_is_legendre(p)

    def test_index_consistency(self):
        entry = legendre_map(11)
        assert entry.image.value == 127
        assert entry.image.index == 11


class TestInjectivity:
    def test_small_empty(self):
        assert check_map_injective(6) == []

    def test_hundred_empty(self):
        assert check_map_injective(100) == []

    def test_single(self):
        assert check_map_injective(1) == []

    def test_equivalence_with_interval_counting(self):
        # empty violation list <=> every ((n-1)^2, n^2) holds a prime
        n_max = 300
        assert check_map_injective(n_max) == []
        for n in range(2, n_max + 1):
            assert len(oracles.td_primes_in_open((n - 1) ** 2, n * n)) >= 1


class TestGapCorollary:
    def test_first_values_hold(self):
        # n=2: 2 < 3 < 5 ; n=3: 3 < 6 < 8 ; n=5: 5 < 12 < 14
        assert check_legendre_gap_corollary(5) == []

    def test_report_is_deterministic(self):
        a = check_legendre_gap_corollary(200)
        b = check_legendre_gap_corollary(200)
        assert a == b

    def test_violations_verified_against_oracle(self):
        # any reported failure must be a genuine bound failure
        ls = [e.value for e in legendre_primes_first(200)]
        viol = check_legendre_gap_corollary(200)
        reported = {(v.location, v.detail.split(":")[0]) for v in viol}
        for i in range(1, 200):
            n = i + 1
            d = ls[i] - ls[i - 1]
            lower_bad = not (n < d)
            upper_bad = not (d < 3 * n - 1)
            loc = (ls[i - 1], ls[i])
            assert ((loc, "lower bound failed at ordinal n=%d" % n) in reported) == lower_bad
            assert ((loc, "upper bound failed at ordinal n=%d" % n) in reported) == upper_bad


class TestGapConjecture:
    def test_small(self):
        rep = check_legendre_gap_conjecture(130)
        assert rep.violations == []
        assert rep.skipped_no_predecessor == 1
        assert rep.checked == 10

    def test_pair_127(self):
        # (113,127): (14-1)^2 = 169 < 508
        rep = check_legendre_gap_conjecture(127)
        assert rep.violations == []

    def test_oracle_cross_check(self):
        rep = check_legendre_gap_conjecture(5000)
        assert rep.violations == []
        # independent exact route over the oracle's own Legendre list
        for p in oracles.td_legendre_up_to(5000):
            if p == 2:
                continue
            gap = p - oracles.td_prev_prime(p)
            assert gap <= 1 or (gap - 1) ** 2 < 4 * p


class TestStrongEquivalence:
    def test_limit_130(self):
        rep = check_strong_legendre_equivalence(130)
        assert rep.consecutive_pairs == []
        assert rep.deficient_squares == []
        assert rep.corroborated

    def test_every_square_window_has_two_primes(self):
        rep = check_strong_legendre_equivalence(10000)
        assert rep.deficient_squares == []
        assert rep.consecutive_pairs == []
        assert rep.corroborated

    def test_degenerate(self):
        rep = check_strong_legendre_equivalence(5)
        assert rep.corroborated


class TestJsonExport:
    def test_round_trip(self):
        entries = legendre_primes_up_to(130)
        lines = entries_to_json(entries).split("\n")
        assert len(lines) == 11
        first = json.loads(lines[0])
        assert first == {"index": 1, "value": 2, "square_witness": 1}
        last = json.loads(lines[-1])
        assert last["value"] == 127 and last["square_witness"] == 11
