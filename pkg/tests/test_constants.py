import json
from fractions import Fraction
from pathlib import Path

import pytest

import oracles
from gapforge.constants import (
    TheoremId,
    bertrand_constant,
    brocard2_constant,
    cramer_constant,
    exponential_constant,
    fractional_constant,
    p465,
    strong3_constant,
    strong_brocard_constant,
)
from gapforge.errors import ResourceLimitError
from gapforge.sieve import PrimePair

ANCHORS = json.loads((Path(__file__).parent / "golden" / "anchors.json").read_text())
P465 = ANCHORS["p_465"]


class TestBertrand:
    def test_k1(self):
        c = bertrand_constant(1)
        assert c.value == P465  # straddle 3 < 4 < 5, and 5 < p_465
        assert "3 < 4 < 5" in " ".join(c.trace)

    def test_k2(self):
        c = bertrand_constant(2)
        assert "7 < 8 < 11" in " ".join(c.trace)
        assert c.value == P465

    def test_large_k_switches_to_straddle_prime(self):
        # pick k with 4k just above p_465: straddle prime exceeds p_465
        k = (ANCHORS["p_465"] + 3) // 4
        assert ANCHORS["p_465"] < 4 * k < ANCHORS["p_466"] + 20
        c = bertrand_constant(k)
        assert c.value == oracles.td_next_prime(4 * k)
        assert c.value > P465

    def test_monotone_in_k(self):
        vals = [bertrand_constant(k).value for k in range(1, 40)]
        assert all(a <= b for a, b in zip(vals, vals[1:]))

    def test_pure(self):
        assert bertrand_constant(7) == bertrand_constant(7)


class TestFractional:
    @pytest.mark.parametrize("k", [2, 4, 100])
    def test_brackets_match_oracle(self, k):
        c = fractional_constant(k)
        lo, hi = ANCHORS["exp_sqrt_brackets"][str(k)]
        assert f"{lo} < exp(sqrt(k)) < {hi}" in " ".join(c.trace)
        assert c.value == max(hi, P465)

    def test_k2_value(self):
        assert fractional_constant(2).value == P465  # bracket (3, 5)

    def test_k100_value(self):
        assert fractional_constant(100).value == 22027

    def test_fraction_input(self):
        assert fractional_constant(Fraction(9, 2)).value == P465

    def test_domain(self):
        with pytest.raises(ValueError):
            fractional_constant(1)


class TestStrong3:
    def test_g21(self):
        assert strong3_constant(21).value == 2646

    def test_g1000(self):
        assert strong3_constant(1000).value == 9 * 10**6

    def test_g722_boundary(self):
        # 722^2 = 521284 < 2^19, so the floor is 1, not 2
        assert strong3_constant(722).value == 3 * 722 * 722 * 2
        # the flip to floor 2 happens at 725^2 = 525625 >= 2^19
        assert strong3_constant(724).value == 3 * 724 * 724 * 2
        assert strong3_constant(725).value == 3 * 725 * 725 * 3

    def test_domain(self):
        with pytest.raises(ValueError):
            strong3_constant(20)

    def test_strictly_increasing(self):
        vals = [strong3_constant(g).value for g in range(21, 200)]
        assert all(a < b for a, b in zip(vals, vals[1:]))

    def test_floor_step_validates(self):
        for g in (21, 722, 725, 10**6):
            c = strong3_constant(g)
            r = c.value // (3 * g * g) - 1
            assert r**19 <= g * g < (r + 1) ** 19


class TestBrocard2:
    @pytest.mark.parametrize(
        "prev,nxt", [(2, 3), (3, 5), (7, 11)]
    )
    def test_matches_oracle(self, prev, nxt):
        c = brocard2_constant(PrimePair(prev, nxt))
        assert c.value == ANCHORS["brocard2"][f"{prev},{nxt}"]

    def test_floor_is_exact_for_root(self):
        pair = PrimePair(3, 5)
        c = brocard2_constant(pair)
        t = c.value - 1
        # t^19 * gap^40 <= 2^21 * next^40 < (t+1)^19 * gap^40
        assert t**19 * 2**40 <= 2**21 * 5**40 < (t + 1) ** 19 * 2**40
        assert any("early quotient floor" in s for s in c.trace)


class TestStrongBrocard:
    @pytest.mark.parametrize("k,expect", [(1, 3), (2, 6), (10, 226)])
    def test_examples(self, k, expect):
        assert strong_brocard_constant(k, 2).value == expect
        assert ANCHORS["strong_brocard"][str(k)] == expect

    def test_k2_root_check(self):
        assert 5**17 <= 2**40 < 6**17

    def test_growth_dominates_when_large(self):
        assert strong_brocard_constant(1, 100).value == 101


class TestCramer:
    def test_eps1_c1(self):
        c = cramer_constant(1, 1)
        assert c.value == ANCHORS["cramer_eps1_c1_prime"] == 1031

    def test_tiny_c_crosses_below_10(self):
        assert cramer_constant(1, "0.001").value == 2

    def test_eps_small_exceeds_primality_bound(self):
        # eps = 0.1 puts the crossover near 1.4e47, far beyond any
        # published deterministic witness set; the op must refuse
        # rather than emit an unproven prime
        with pytest.raises(ResourceLimitError):
            cramer_constant(Fraction(1, 10), 1)

    def test_threshold_is_genuinely_minimal(self):
        c = cramer_constant(1, 1)
        floor = ANCHORS["cramer_eps1_c1_crossover_floor"]
        assert floor < c.value
        # the previous prime sits below the crossover, so it fails
        assert oracles.td_prev_prime(c.value) <= floor

    def test_domain(self):
        with pytest.raises(ValueError):
            cramer_constant(2, 1)
        with pytest.raises(ValueError):
            cramer_constant(1, 0)


class TestExponential:
    def test_default_x0(self):
        c = exponential_constant(3)
        assert c.value == 2

    def test_x0_bracket(self):
        c = exponential_constant(Fraction(40, 19), x0=100)
        assert c.value == 101

    def test_domain(self):
        with pytest.raises(ValueError):
            exponential_constant(2)  # below 40/19


class TestTraceAndPurity:
    def test_all_traces_nonempty(self):
        cs = [
            bertrand_constant(3),
            fractional_constant(2),
            strong3_constant(25),
            brocard2_constant(PrimePair(3, 5)),
            strong_brocard_constant(4, 2),
            cramer_constant(1, 1),
            exponential_constant(3),
        ]
        for c in cs:
            assert len(c.trace) >= 1
            assert isinstance(c.value, int)

    def test_theorem_ids(self):
        assert bertrand_constant(1).theorem_id is TheoremId.BERTRAND_K
        assert p465() == P465

    def test_json_line(self):
        d = json.loads(strong3_constant(21).to_json())
        assert d["theorem_id"] == "STRONG3_G"
        assert d["value"] == "2646"
        assert d["params"] == {"g": "21"}
