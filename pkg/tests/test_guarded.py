import threading
from fractions import Fraction

import pytest

from gapforge.errors import PrecisionExhaustedError
from gapforge.guarded import certified_floor, guarded_compare, iv_number, iv_pow


class TestGuardedCompare:
    def test_clear_cut(self):
        v = guarded_compare(
            lambda ctx: iv_number(ctx, 2),
            lambda ctx: ctx.sqrt(iv_number(ctx, 5)),
            "<",
        )
        assert v.holds is True and not v.near_boundary

    def test_false_side(self):
        v = guarded_compare(
            lambda ctx: ctx.sqrt(iv_number(ctx, 5)),
            lambda ctx: iv_number(ctx, 2),
            "<",
        )
        assert v.holds is False

    def test_exact_endpoint_decides_strict(self):
        # sqrt(4) collapses to the exact point [2, 2], so '<' is a
        # certified False rather than a near-boundary flag
        v = guarded_compare(
            lambda ctx: ctx.sqrt(iv_number(ctx, 4)),
            lambda ctx: iv_number(ctx, 2),
            "<",
            cap_bits=256,
        )
        assert v.holds is False and not v.near_boundary

    def test_true_tie_flags_near_boundary(self):
        # exp(log(3)) == 3 but the interval always straddles 3
        v = guarded_compare(
            lambda ctx: ctx.exp(ctx.log(iv_number(ctx, 3))),
            lambda ctx: iv_number(ctx, 3),
            "<",
            cap_bits=256,
        )
        assert v.holds is None and v.near_boundary

    def test_tight_comparison_resolves_with_more_bits(self):
        # 2^(1/2) vs 1.41421356237309504880168872420969807856967...
        tight = Fraction(141421356237309504880168872, 10**26)
        v = guarded_compare(
            lambda ctx: iv_number(ctx, tight),
            lambda ctx: ctx.sqrt(iv_number(ctx, 2)),
            "<",
            start_bits=16,
            cap_bits=2048,
        )
        assert v.holds is True
        assert v.bits > 16  # needed refinement

    def test_strict_cap_raises(self):
        with pytest.raises(PrecisionExhaustedError):
            guarded_compare(
                lambda ctx: ctx.exp(ctx.log(iv_number(ctx, 3))),
                lambda ctx: iv_number(ctx, 3),
                "<",
                cap_bits=128,
                strict_cap=True,
            )

    def test_lte_certifies_equality(self):
        v = guarded_compare(
            lambda ctx: iv_number(ctx, 2),
            lambda ctx: iv_number(ctx, 2),
            "<=",
        )
        assert v.holds is True

    def test_gt_flips(self):
        v = guarded_compare(
            lambda ctx: ctx.sqrt(iv_number(ctx, 5)),
            lambda ctx: iv_number(ctx, 2),
            ">",
        )
        assert v.holds is True

    def test_pow_helper(self):
        v = guarded_compare(
            lambda ctx: iv_pow(ctx, 29, Fraction(2, 3)),
            lambda ctx: iv_number(ctx, 10),
            "<",
        )
        assert v.holds is True  # 29^(2/3) = 9.439...


class TestCertifiedFloor:
    def test_exp_floor(self):
        assert certified_floor(lambda ctx: ctx.exp(iv_number(ctx, 2))) == 7

    def test_exact_square_root_collapses(self):
        assert certified_floor(lambda ctx: ctx.sqrt(iv_number(ctx, 49))) == 7

    def test_integer_straddle_raises(self):
        with pytest.raises(PrecisionExhaustedError):
            certified_floor(
                lambda ctx: ctx.exp(ctx.log(iv_number(ctx, 7))), cap_bits=256
            )

    def test_threads_do_not_interfere(self):
        results = []
        errors = []

        def work(k):
            try:
                for _ in range(30):
                    m = certified_floor(
                        lambda ctx: ctx.exp(ctx.sqrt(iv_number(ctx, k)))
                    )
                    results.append((k, m))
            except Exception as e:  # pragma: no cover
                errors.append(e)

        threads = [threading.Thread(target=work, args=(k,)) for k in (2, 4, 100)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert not errors
        expect = {2: 4, 4: 7, 100: 22026}
        assert all(m == expect[k] for k, m in results)
