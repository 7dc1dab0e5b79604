"""Certified real comparisons via adaptive-precision interval arithmetic.

A comparison is decided only when the two operand intervals are
disjoint; otherwise precision doubles up to a cap, and an undecided
instance is flagged near-boundary instead of being rounded into a
verdict. Each thread owns its interval context, so campaigns can run
guarded checks concurrently.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from mpmath.ctx_iv import MPIntervalContext

from .errors import PrecisionExhaustedError

DEFAULT_START_BITS = 64
DEFAULT_CAP_BITS = 1024

_tls = threading.local()


def _context() -> MPIntervalContext:
    ctx = getattr(_tls, "ctx", None)
    if ctx is None:
        ctx = MPIntervalContext()
        _tls.ctx = ctx
    return ctx


def iv_number(ctx: MPIntervalContext, x):
    """Exact interval for an int or Fraction."""
    if isinstance(x, Fraction):
        return ctx.mpf(x.numerator) / ctx.mpf(x.denominator)
    return ctx.mpf(x)


def iv_pow(ctx: MPIntervalContext, base, exponent):
    return iv_number(ctx, base) ** iv_number(ctx, exponent)


@dataclass(frozen=True)
class GuardedVerdict:
    holds: bool | None  # None: undecided at the cap
    near_boundary: bool
    bits: int
    lhs: str
    rhs: str


def guarded_compare(
    build_lhs: Callable,
    build_rhs: Callable,
    op: str = "<",
    *,
    start_bits: int = DEFAULT_START_BITS,
    cap_bits: int = DEFAULT_CAP_BITS,
    strict_cap: bool = False,
) -> GuardedVerdict:
    """Certify lhs <op> rhs where the builders map a context to intervals.

    op is one of '<', '<=', '>', '>='. With strict_cap, an instance
    still ambiguous at cap_bits raises PrecisionExhaustedError instead
    of returning a near-boundary verdict.
    """
    if op in (">", ">="):
        return guarded_compare(
            build_rhs,
            build_lhs,
            "<" if op == ">" else "<=",
            start_bits=start_bits,
            cap_bits=cap_bits,
            strict_cap=strict_cap,
        )
    if op not in ("<", "<="):
        raise ValueError(f"unsupported comparison {op!r}")

    ctx = _context()
    bits = max(start_bits, 8)
    lhs = rhs = None
    while bits <= cap_bits:
        old = ctx.prec
        try:
            ctx.prec = bits
            lhs = build_lhs(ctx)
            rhs = build_rhs(ctx)
        finally:
            ctx.prec = old
        if op == "<":
            if lhs.b < rhs.a:
                return GuardedVerdict(True, False, bits, str(lhs), str(rhs))
            if lhs.a >= rhs.b:
                return GuardedVerdict(False, False, bits, str(lhs), str(rhs))
        else:
            if lhs.b <= rhs.a:
                return GuardedVerdict(True, False, bits, str(lhs), str(rhs))
            if lhs.a > rhs.b:
                return GuardedVerdict(False, False, bits, str(lhs), str(rhs))
        bits *= 2
    if strict_cap:
        raise PrecisionExhaustedError(
            f"comparison undecided at {cap_bits} bits: {lhs} vs {rhs}"
        )
    return GuardedVerdict(None, True, cap_bits, str(lhs), str(rhs))


def certified_floor(build_value: Callable, *, start_bits: int = DEFAULT_START_BITS,
                    cap_bits: int = DEFAULT_CAP_BITS) -> int:
    """floor(x) when the interval for x can be pinned between integers.

    Raises PrecisionExhaustedError if x hugs an integer at the cap
    (e.g. when x might actually be one).
    """
    from mpmath import mpf  # endpoints are plain mpf values

    ctx = _context()
    bits = max(start_bits, 8)
    while bits <= cap_bits:
        old = ctx.prec
        try:
            ctx.prec = bits
            val = build_value(ctx)
        finally:
            ctx.prec = old
        fa = int(_floor_mpf(val.a))
        fb = int(_floor_mpf(val.b))
        if fa == fb:
            return fa
        bits *= 2
    raise PrecisionExhaustedError(
        f"floor undecided at {cap_bits} bits: interval {val}"
    )


def _floor_mpf(x) -> int:
    import mpmath

    return int(mpmath.floor(x))
