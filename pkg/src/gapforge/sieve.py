"""Prime generation, primality, and exact integer root primitives.

Everything downstream leans on three guarantees made here:

* primality answers are deterministic over the full supported range
  (Miller-Rabin with published witness sets, never probabilistic),
* interval scans treat every interval as open on both ends,
* roots and rational powers are exact integer floors, never floats.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from math import isqrt

import numpy as np

from .errors import ResourceLimitError

# Budgets. A flat sieve of DEFAULT_SIEVE_LIMIT costs ~limit/2 bytes of flags.
DEFAULT_SIEVE_LIMIT = 2_200_000_000
DEFAULT_SEGMENT_ODDS = 1 << 20
DEFAULT_FULL_SCAN_SPAN = 1 << 31
MAX_BASE_PRIME = 1 << 26

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Deterministic Miller-Rabin witness tiers: (bound, witnesses) means the
# witness set is exhaustive for all n < bound. The last tier covers well
# beyond 2^64 (Sorenson & Webster).
_MR_TIERS = (
    (2_047, (2,)),
    (1_373_653, (2, 3)),
    (9_080_191, (31, 73)),
    (25_326_001, (2, 3, 5)),
    (3_215_031_751, (2, 3, 5, 7)),
    (4_759_123_141, (2, 7, 61)),
    (1_122_004_669_633, (2, 13, 23, 1662803)),
    (2_152_302_898_747, (2, 3, 5, 7, 11)),
    (3_474_749_660_383, (2, 3, 5, 7, 11, 13)),
    (341_550_071_728_321, (2, 3, 5, 7, 11, 13, 17)),
    (3_825_123_056_546_413_051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (318_665_857_834_031_151_167_461, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
)
MAX_PRIME_TEST = _MR_TIERS[-1][0]


@dataclass(frozen=True)
class PrimeTable:
    """All primes in [2, limit], strictly increasing.

    ``primes`` is an int64 array; index with :meth:`at` to get a Python
    int safe for big-integer arithmetic. Immutable after construction
    and safe to share across threads.
    """

    limit: int
    primes: np.ndarray

    def __len__(self) -> int:
        return int(self.primes.size)

    def at(self, i: int) -> int:
        return int(self.primes[i])

    def __contains__(self, n: int) -> bool:
        i = int(np.searchsorted(self.primes, n))
        return i < self.primes.size and int(self.primes[i]) == n


@dataclass(frozen=True)
class PrimePair:
    """Two consecutive primes prev < next with no prime between them."""

    prev: int
    next: int

    def __post_init__(self):
        if not (0 < self.prev < self.next):
            raise ValueError(f"not an increasing pair: ({self.prev}, {self.next})")

    @property
    def gap(self) -> int:
        return self.next - self.prev

    def validate(self) -> None:
        """Full adjacency check; costs two primality walks."""
        if not (is_prime(self.prev) and is_prime(self.next)):
            raise ValueError(f"pair members not both prime: {self}")
        if next_prime_after(self.prev) != self.next:
            raise ValueError(f"pair not adjacent: {self}")

    def as_tuple(self) -> tuple:
        return (self.prev, self.next)


@dataclass(frozen=True)
class IntervalScan:
    """Primes strictly inside (lo, hi): count plus first witnesses.

    ``early_exited`` marks a scan stopped at ``stop_after`` hits, so
    ``count`` is then a certified lower bound rather than the full count.
    """

    lo: int
    hi: int
    count: int
    witnesses: tuple
    early_exited: bool


def is_prime(n: int) -> bool:
    """Deterministic primality for 0 <= n < MAX_PRIME_TEST (beyond 2^64)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 41 * 41:
        return True
    if n >= MAX_PRIME_TEST:
        raise ResourceLimitError(
            f"{n} exceeds the deterministic witness bound {MAX_PRIME_TEST}"
        )
    witnesses = None
    for bound, ws in _MR_TIERS:
        if n < bound:
            witnesses = ws
            break
    d = n - 1
    r = ((d & -d).bit_length()) - 1
    d >>= r
    for a in witnesses:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(limit: int, *, budget: int | None = None) -> PrimeTable:
    """Sieve of Eratosthenes over [2, limit]."""
    if limit < 0:
        raise ValueError("limit must be non-negative")
    cap = budget if budget is not None else DEFAULT_SIEVE_LIMIT
    if limit > cap:
        raise ResourceLimitError(f"sieve limit {limit} exceeds budget {cap}")
    if limit < 2:
        return PrimeTable(limit, np.empty(0, dtype=np.int64))
    # Odd-only flags: index i represents 2i+1.
    size = (limit + 1) // 2
    flags = np.ones(size, dtype=bool)
    flags[0] = False  # 1
    for p in range(3, isqrt(limit) + 1, 2):
        if flags[p // 2]:
            flags[p * p // 2 :: p] = False
    odds = 2 * np.flatnonzero(flags).astype(np.int64) + 1
    primes = np.concatenate((np.array([2], dtype=np.int64), odds))
    return PrimeTable(limit, primes)


# Cache of small base primes for segmented scans, grown geometrically.
_base_lock = threading.Lock()
_base_table: PrimeTable | None = None


def _base_primes(limit: int) -> np.ndarray:
    """Odd primes <= limit, cached across calls."""
    global _base_table
    if limit > MAX_BASE_PRIME:
        raise ResourceLimitError(
            f"base-prime demand {limit} exceeds cap {MAX_BASE_PRIME}"
        )
    with _base_lock:
        if _base_table is None or _base_table.limit < limit:
            target = max(1 << 16, 1 << limit.bit_length())
            _base_table = primes_up_to(min(target, MAX_BASE_PRIME))
        t = _base_table
    idx = int(np.searchsorted(t.primes, limit, side="right"))
    return t.primes[1:idx]  # skip 2


def nth_prime(i: int, *, budget: int | None = None) -> int:
    """p_i under 1-based indexing (p_1 = 2)."""
    if i < 1:
        raise ValueError("index must be >= 1")
    if i < 6:
        return (2, 3, 5, 7, 11)[i - 1]
    # Rosser-style upper bound, valid for i >= 6.
    bound = int(i * (math.log(i) + math.log(math.log(i)))) + 10
    cap = budget if budget is not None else DEFAULT_SIEVE_LIMIT
    if bound > cap:
        raise ResourceLimitError(f"p_{i} lies beyond the sieve budget {cap}")
    table = primes_up_to(bound, budget=cap)
    if len(table) < i:  # bound estimate failed; should not happen
        raise ResourceLimitError(f"sieve to {bound} found only {len(table)} primes")
    return table.at(i - 1)


def next_prime_after(n: int) -> int:
    """Smallest prime > n."""
    if n < 2:
        return 2
    c = n + 1
    if c % 2 == 0:
        if c == 2:
            return 2
        c += 1
    while True:
        if is_prime(c):
            return c
        c += 2


def prev_prime_before(n: int) -> int:
    """Largest prime < n; requires n >= 3."""
    if n <= 2:
        raise ValueError("no prime below 2")
    if n == 3:
        return 2
    c = n - 1
    if c % 2 == 0:
        if c == 2:
            return 2
        c -= 1
    while c >= 3:
        if is_prime(c):
            return c
        c -= 2
    return 2


def primes_in_open_interval(
    lo: int,
    hi: int,
    stop_after: int | None = None,
    *,
    segment_odds: int | None = None,
    full_span_budget: int | None = None,
) -> IntervalScan:
    """Count primes p with lo < p < hi, both endpoints strictly excluded.

    With ``stop_after`` the scan may stop once that many primes are
    found (walking candidates upward with deterministic primality);
    the result is then flagged early-exited. Without it, a segmented
    sieve seeded by primes up to isqrt(hi) covers the whole interval,
    which must fit the full-scan span budget.
    """
    if lo >= hi:
        raise ValueError(f"need lo < hi, got ({lo}, {hi})")
    first = max(lo + 1, 2)
    last = hi - 1
    if first > last:
        return IntervalScan(lo, hi, 0, (), False)

    if stop_after is not None:
        if stop_after < 1:
            raise ValueError("stop_after must be >= 1")
        return _scan_walk(lo, hi, first, last, stop_after)
    return _scan_segmented(lo, hi, first, last, segment_odds, full_span_budget)


def _scan_walk(lo: int, hi: int, first: int, last: int, stop_after: int) -> IntervalScan:
    found = []
    c = first
    if c == 2:
        found.append(2)
        c = 3
    elif c % 2 == 0:
        c += 1
    while c <= last and len(found) < stop_after:
        if is_prime(c):
            found.append(c)
        c += 2
    early = len(found) >= stop_after and c <= last
    return IntervalScan(lo, hi, len(found), tuple(found[:8]), early)


def _scan_segmented(
    lo: int,
    hi: int,
    first: int,
    last: int,
    segment_odds: int | None,
    full_span_budget: int | None,
) -> IntervalScan:
    span_cap = full_span_budget if full_span_budget is not None else DEFAULT_FULL_SCAN_SPAN
    if last - first + 1 > span_cap:
        raise ResourceLimitError(
            f"full scan of width {last - first + 1} exceeds budget {span_cap}"
        )
    base = _base_primes(isqrt(last))
    seg_odds = segment_odds if segment_odds is not None else DEFAULT_SEGMENT_ODDS

    count = 0
    witnesses: list[int] = []
    if first <= 2 <= last:
        count += 1
        witnesses.append(2)

    start = max(first, 3)
    if start % 2 == 0:
        start += 1
    base_list = [int(p) for p in base]
    while start <= last:
        seg_last = min(start + 2 * (seg_odds - 1), last)
        if seg_last % 2 == 0:
            seg_last -= 1
        n_flags = (seg_last - start) // 2 + 1
        flags = np.ones(n_flags, dtype=bool)
        for p in base_list:
            if p * p > seg_last:
                break
            m = max(p * p, ((start + p - 1) // p) * p)
            if m % 2 == 0:
                m += p
            if m > seg_last:
                continue
            flags[(m - start) // 2 :: p] = False
        count += int(np.count_nonzero(flags))
        if len(witnesses) < 8:
            for off in np.flatnonzero(flags)[: 8 - len(witnesses)]:
                witnesses.append(start + 2 * int(off))
        start = seg_last + 2
    return IntervalScan(lo, hi, count, tuple(witnesses[:8]), False)


def floor_root(m: int, b: int) -> int:
    """Largest t with t**b <= m, by exact integer arithmetic.

    Uses stdlib isqrt for b = 2 and binary search above a bit-length
    bracket otherwise; never touches floating point.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    if b < 1:
        raise ValueError("b must be >= 1")
    if b == 1 or m == 0:
        return m
    if b == 2:
        return isqrt(m)
    if m.bit_length() <= b:
        return 1
    hi = 1 << ((m.bit_length() - 1) // b + 1)  # hi**b > m
    lo = hi >> 1  # lo**b <= m
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid**b <= m:
            lo = mid
        else:
            hi = mid
    return lo


# Guard against m**a blowups; ~5e6 bits is already a ~1.5 MB integer.
MAX_POW_BITS = 5_000_000


def floor_pow_rational(m: int, a: int, b: int) -> int:
    """floor(m ** (a/b)) for positive integers, exact."""
    if m < 1 or a < 1 or b < 1:
        raise ValueError("m, a, b must all be positive")
    g = math.gcd(a, b)
    a //= g
    b //= g
    if a * m.bit_length() > MAX_POW_BITS:
        raise ResourceLimitError(f"m**{a} would exceed {MAX_POW_BITS} bits")
    return floor_root(m**a, b)


def pair_stream(lo: int, hi: int):
    """Yield consecutive PrimePairs wholly inside [lo, hi], in order."""
    if not (2 <= lo < hi):
        raise ValueError(f"need 2 <= lo < hi, got ({lo}, {hi})")
    prev = lo if is_prime(lo) else next_prime_after(lo)
    if prev > hi:
        return
    while True:
        nxt = next_prime_after(prev)
        if nxt > hi:
            return
        yield PrimePair(prev, nxt)
        prev = nxt
