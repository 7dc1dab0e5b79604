"""Computable thresholds for the verified theorems, with derivation traces.

Every constant is a pure function of its parameters; anything built
from integer powers goes through exact floor roots, and anything built
from transcendental values (exp(sqrt k), the Cramer crossover) is
bracketed with certified interval arithmetic before a prime is chosen.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import mpmath

from .errors import PrecisionExhaustedError, ResourceLimitError
from .guarded import certified_floor, iv_number
from .sieve import (
    MAX_PRIME_TEST,
    PrimePair,
    floor_pow_rational,
    floor_root,
    next_prime_after,
    nth_prime,
    prev_prime_before,
)


class TheoremId(str, Enum):
    BERTRAND_K = "BERTRAND_K"
    FRACTIONAL_K = "FRACTIONAL_K"
    STRONG3_G = "STRONG3_G"
    BROCARD2_M = "BROCARD2_M"
    STRONG_BROCARD_K = "STRONG_BROCARD_K"
    CRAMER_EPS = "CRAMER_EPS"
    EXPONENTIAL_K = "EXPONENTIAL_K"


@dataclass(frozen=True)
class TheoremConstant:
    theorem_id: TheoremId
    params: tuple  # ((name, value), ...) with int/Fraction values
    value: int
    trace: tuple  # human-readable derivation steps

    def to_json(self) -> str:
        return json.dumps(
            {
                "theorem_id": self.theorem_id.value,
                "params": {k: str(v) for k, v in self.params},
                "value": str(self.value),
                "trace": list(self.trace),
            }
        )


_P465 = None


def p465() -> int:
    """The 465th prime, the fixed tail threshold in the Dusart-based bounds."""
    global _P465
    if _P465 is None:
        _P465 = nth_prime(465)
    return _P465


def bertrand_constant(k: int) -> TheoremConstant:
    """max(p_r, p_465) where p_{r-1} < 4k < p_r."""
    if k < 1:
        raise ValueError("k must be >= 1")
    m = 4 * k  # composite for every k >= 1, so the straddle is strict
    p_hi = next_prime_after(m)
    p_lo = prev_prime_before(m)
    value = max(p_hi, p465())
    trace = (
        f"4k = {m}",
        f"straddling primes: {p_lo} < {m} < {p_hi}",
        f"p_465 = {p465()}",
        f"C(k) = max({p_hi}, {p465()}) = {value}",
    )
    return TheoremConstant(TheoremId.BERTRAND_K, (("k", k),), value, trace)


def _as_fraction(x) -> Fraction:
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)  # exact binary value of the float
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational parameter")


def fractional_constant(k, *, cap_bits: int = 4096) -> TheoremConstant:
    """max(p_r, p_465) where p_{r-1} < exp(sqrt(k)) < p_r.

    exp(sqrt k) is transcendental for rational k >= 2, so the certified
    floor always terminates below the precision cap in practice.
    """
    kf = _as_fraction(k)
    if kf < 2:
        raise ValueError("k must be >= 2")
    m = certified_floor(
        lambda ctx: ctx.exp(ctx.sqrt(iv_number(ctx, kf))), cap_bits=cap_bits
    )
    p_hi = next_prime_after(m)  # smallest prime > exp(sqrt k)
    p_lo = prev_prime_before(m + 1)  # largest prime <= m, i.e. < exp(sqrt k)
    value = max(p_hi, p465())
    trace = (
        f"k = {kf}",
        f"floor(exp(sqrt(k))) = {m} (certified interval bracketing)",
        f"prime bracket: {p_lo} < exp(sqrt(k)) < {p_hi}",
        f"C(k) = max({p_hi}, {p465()}) = {value}",
    )
    return TheoremConstant(
        TheoremId.FRACTIONAL_K, (("k", kf),), value, trace
    )


def strong3_constant(g: int) -> TheoremConstant:
    """3 * g^2 * (floor(g^(2/19)) + 1), defined for g > 20."""
    if g <= 20:
        raise ValueError("g must be > 20")
    r = floor_pow_rational(g, 2, 19)
    value = 3 * g * g * (r + 1)
    trace = (
        f"g = {g}",
        f"floor(g^(2/19)) = {r}  [{r}^19 <= {g}^2 < {r + 1}^19]",
        f"C(g) = 3*{g}^2*({r}+1) = {value}",
    )
    return TheoremConstant(TheoremId.STRONG3_G, (("g", g),), value, trace)


def brocard2_constant(pair: PrimePair) -> TheoremConstant:
    """floor((2^21 * p^40 / gap^40)^(1/19)) + 1 for the pair's upper prime p.

    The quotient is floored before the 19th root; that is lossless for
    the root since t^19 <= 2^21*p^40/gap^40 iff t^19*gap^40 <= 2^21*p^40
    and both sides of the root comparison are integers.
    """
    p, gap = pair.next, pair.gap
    q = (2**21 * p**40) // gap**40
    t = floor_root(q, 19)
    value = t + 1
    trace = (
        f"pair = ({pair.prev}, {p}), gap = {gap}",
        f"Q = floor(2^21 * {p}^40 / {gap}^40) = {q}",
        f"floor(Q^(1/19)) = {t} (early quotient floor is exact for the root)",
        f"C(m) = {t} + 1 = {value}",
    )
    return TheoremConstant(
        TheoremId.BROCARD2_M, (("prev", pair.prev), ("next", p)), value, trace
    )


def strong_brocard_constant(k: int, c_growth: int) -> TheoremConstant:
    """floor(max(C_growth, k^(40/17))) + 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    t = floor_pow_rational(k, 40, 17)
    value = max(c_growth, t) + 1
    trace = (
        f"k = {k}, growth threshold C = {c_growth}",
        f"floor(k^(40/17)) = {t}",
        f"C(k) = max({c_growth}, {t}) + 1 = {value}",
    )
    return TheoremConstant(
        TheoremId.STRONG_BROCARD_K, (("k", k), ("C_growth", c_growth)), value, trace
    )


def cramer_constant(epsilon, c, *, cap_bits: int = 4096) -> TheoremConstant:
    """Smallest prime P with c*ln(x)^2 < (0.5+eps)*x^(eps/(1+eps)) for all x >= P.

    In u = ln x the margin h(u) = alpha*u - 2*ln u + ln((0.5+eps)/c)
    (alpha = eps/(1+eps)) decreases to a single minimum and then
    increases, so the inequality holds beyond its last zero. The zero
    is bracketed by doubling and bisection at adaptive precision, then
    rounded up to the next prime.
    """
    eps = _as_fraction(epsilon)
    cf = _as_fraction(c)
    if not (0 < eps <= 1):
        raise ValueError("epsilon must lie in (0, 1]")
    if cf <= 0:
        raise ValueError("c must be positive")
    alpha = eps / (1 + eps)

    def crossover_at(dps: int):
        with mpmath.workdps(dps):
            al = mpmath.mpf(alpha.numerator) / alpha.denominator
            off = mpmath.log(
                (mpmath.mpf(1) / 2 + mpmath.mpf(eps.numerator) / eps.denominator)
                / (mpmath.mpf(cf.numerator) / cf.denominator)
            )
            h = lambda u: al * u - 2 * mpmath.log(u) + off
            u_min = max(2 / al, mpmath.log(2))
            if h(u_min) > 0 and h(mpmath.log(2)) > 0:
                return None  # holds on all of x >= 2
            u_hi = u_min + 1
            while h(u_hi) <= 0:
                u_hi *= 2
            u_lo = u_min
            for _ in range(20 * dps):
                mid = (u_lo + u_hi) / 2
                if h(mid) > 0:
                    u_hi = mid
                else:
                    u_lo = mid
                if u_hi - u_lo < mpmath.mpf(10) ** (-dps + 5):
                    break
            return mpmath.exp(u_lo), mpmath.exp(u_hi)

    cap_digits = max(50, cap_bits // 3)
    dps = 30
    crossing = crossover_at(dps)
    if crossing is None:
        value = 2
        trace = (
            f"eps = {eps}, C = {cf}, exponent eps/(1+eps) = {alpha}",
            "margin positive for every x >= 2; smallest admissible prime is 2",
        )
        return TheoremConstant(
            TheoremId.CRAMER_EPS, (("epsilon", eps), ("C", cf)), value, trace
        )

    while True:
        x_lo, x_hi = crossing
        n_lo = int(mpmath.floor(x_lo))
        n_hi = int(mpmath.floor(x_hi))
        if n_lo == n_hi:
            break
        dps *= 2
        if dps > cap_digits:
            raise PrecisionExhaustedError(
                f"crossover bracket straddles an integer at {dps} digits"
            )
        crossing = crossover_at(dps)

    crossover_floor = n_lo
    if crossover_floor + 1 >= MAX_PRIME_TEST:
        raise ResourceLimitError(
            f"crossover near {crossover_floor} exceeds the deterministic "
            f"primality bound {MAX_PRIME_TEST}; refusing unproven primality"
        )
    value = next_prime_after(crossover_floor)
    trace = (
        f"eps = {eps}, C = {cf}, exponent eps/(1+eps) = {alpha}",
        f"last crossover of C*ln(x)^2 vs (0.5+eps)*x^(eps/(1+eps)) in "
        f"({crossover_floor}, {crossover_floor + 1})",
        f"smallest prime beyond the crossover: {value}",
    )
    return TheoremConstant(
        TheoremId.CRAMER_EPS, (("epsilon", eps), ("C", cf)), value, trace
    )


def exponential_constant(k, x0: int = 1) -> TheoremConstant:
    """p_r with p_{r-1} <= x0 < p_r: the gap-power chain threshold.

    x0 is the (unpublished) short-interval threshold, exposed as a
    configuration parameter with default 1; k is recorded because the
    chain needs k >= 40/19.
    """
    kf = _as_fraction(k)
    if kf < Fraction(40, 19):
        raise ValueError("k must be >= 40/19")
    if x0 < 1:
        raise ValueError("x0 must be >= 1")
    value = next_prime_after(x0)
    trace = (
        f"k = {kf}, x0 = {x0}",
        f"C(k) = smallest prime > x0 = {value}",
    )
    return TheoremConstant(
        TheoremId.EXPONENTIAL_K, (("k", kf), ("x0", x0)), value, trace
    )
