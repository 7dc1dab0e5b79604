"""Consecutive-prime gap statistics: Andrica values, Cramer ratios, extremes.

Verdicts (the Andrica "< 1" test in particular) are always decided by
exact integer comparisons; the floating-point values computed here are
carried for reporting only. The float formulas are cancellation-free,
so their error stays far below the 1e-12 reporting tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, TextIO

import numpy as np

from .sieve import PrimePair, pair_stream, primes_up_to


class AndricaValue(NamedTuple):
    value: float
    lt_one_certified: bool


@dataclass(frozen=True)
class GapRecord:
    pair: PrimePair
    andrica_value: float
    cramer_ratio: float


@dataclass(frozen=True)
class GapExtremes:
    lo: int
    hi: int
    max_gap_pair: PrimePair
    max_andrica_pair: PrimePair
    max_cramer_pair: PrimePair


def andrica_lt_one_exact(prev: int, nxt: int) -> bool:
    """sqrt(next) - sqrt(prev) < 1, decided in integers.

    Equivalent to (gap - 1)^2 < 4*prev for gap >= 1: both sides of
    gap - 1 < 2*sqrt(prev) are non-negative, so squaring is lossless.
    """
    gap = nxt - prev
    if gap <= 1:
        return True
    return (gap - 1) ** 2 < 4 * prev


def andrica_float(prev: int, nxt: int) -> float:
    # gap / (sqrt(next) + sqrt(prev)) avoids the cancellation of
    # sqrt(next) - sqrt(prev); relative error is a few ulps.
    return (nxt - prev) / (math.sqrt(nxt) + math.sqrt(prev))


def andrica_value(pair: PrimePair) -> AndricaValue:
    return AndricaValue(
        andrica_float(pair.prev, pair.next),
        andrica_lt_one_exact(pair.prev, pair.next),
    )


def cramer_ratio(pair: PrimePair, *, reject_prev_two: bool = False) -> float:
    """gap / ln^2(prev). With reject_prev_two, prev = 2 is a domain error."""
    if pair.prev < 2:
        raise ValueError("prev must be prime >= 2")
    if pair.prev == 2 and reject_prev_two:
        raise ValueError("prev = 2 rejected by configuration")
    return pair.gap / math.log(pair.prev) ** 2


def cramer_ratio_at_upper(pair: PrimePair) -> float:
    """gap / ln^2(next): the max-gap normalization at the interval's top."""
    return pair.gap / math.log(pair.next) ** 2


def gap_stream(lo: int, hi: int) -> Iterator[GapRecord]:
    """GapRecords for every pair (prev, next) with lo <= prev, next <= hi."""
    for pair in pair_stream(lo, hi):
        yield GapRecord(
            pair,
            andrica_float(pair.prev, pair.next),
            pair.gap / math.log(pair.prev) ** 2,
        )


class PairArrays(NamedTuple):
    """Vectorized pair universe for bulk scans (int64, exact below 2^63)."""

    prev: np.ndarray
    next: np.ndarray
    gap: np.ndarray


def pair_arrays(lo: int, hi: int) -> PairArrays:
    table = primes_up_to(hi)
    p = table.primes
    p = p[p >= lo]
    if p.size < 2:
        return PairArrays(
            np.empty(0, np.int64), np.empty(0, np.int64), np.empty(0, np.int64)
        )
    return PairArrays(p[:-1], p[1:], np.diff(p))


def _andrica_key(pair: PrimePair) -> float:
    return andrica_float(pair.prev, pair.next)


def _cramer_key(pair: PrimePair) -> float:
    return pair.gap / math.log(pair.prev) ** 2


def extremes(lo: int, hi: int) -> GapExtremes:
    """Extremal pairs over [lo, hi]; ties break toward the smaller prev."""
    best_gap = best_andrica = best_cramer = None
    for pair in pair_stream(lo, hi):
        if best_gap is None or pair.gap > best_gap.gap:
            best_gap = pair
        if best_andrica is None or _andrica_key(pair) > _andrica_key(best_andrica):
            best_andrica = pair
        if best_cramer is None or _cramer_key(pair) > _cramer_key(best_cramer):
            best_cramer = pair
    if best_gap is None:
        raise ValueError(f"no prime pair inside [{lo}, {hi}]")
    return GapExtremes(lo, hi, best_gap, best_andrica, best_cramer)


def merge_extremes(a: GapExtremes, b: GapExtremes) -> GapExtremes:
    """Associative, commutative shard merge (smaller prev wins ties)."""

    def pick(x: PrimePair, y: PrimePair, key) -> PrimePair:
        kx, ky = key(x), key(y)
        if kx > ky:
            return x
        if ky > kx:
            return y
        return x if x.prev <= y.prev else y

    return GapExtremes(
        min(a.lo, b.lo),
        max(a.hi, b.hi),
        pick(a.max_gap_pair, b.max_gap_pair, lambda p: p.gap),
        pick(a.max_andrica_pair, b.max_andrica_pair, _andrica_key),
        pick(a.max_cramer_pair, b.max_cramer_pair, _cramer_key),
    )


class DecadeMax(NamedTuple):
    decade_lo: int  # pairs whose larger prime lies in [decade_lo, 10*decade_lo)
    pair: tuple
    value: float


def decade_andrica_maxima(arrays: PairArrays) -> list[DecadeMax]:
    """Per-decade Andrica maxima, decades keyed by the larger prime.

    Pair (prev, next) belongs to decade d when 10^d <= next < 10^(d+1).
    The trend table the campaign prints is non-increasing from the
    second decade onward on all scanned ranges; that is reported, never
    asserted as a limit.
    """
    if arrays.next.size == 0:
        return []
    vals = arrays.gap / (np.sqrt(arrays.next) + np.sqrt(arrays.prev))
    out = []
    d_lo = 1
    while d_lo <= int(arrays.next[-1]):
        mask = (arrays.next >= d_lo) & (arrays.next < 10 * d_lo)
        if mask.any():
            idx = np.flatnonzero(mask)
            best = idx[np.argmax(vals[idx])]
            out.append(
                DecadeMax(
                    d_lo,
                    (int(arrays.prev[best]), int(arrays.next[best])),
                    float(vals[best]),
                )
            )
        d_lo *= 10
    return out


CSV_HEADER = "prev,next,gap,andrica,cramer"


def write_csv(records: Iterable[GapRecord], out: TextIO) -> None:
    out.write(CSV_HEADER + "\n")
    for r in records:
        out.write(
            f"{r.pair.prev},{r.pair.next},{r.pair.gap},"
            f"{r.andrica_value:.12f},{r.cramer_ratio:.12f}\n"
        )
