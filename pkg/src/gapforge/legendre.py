"""Legendre primes: primes with a perfect square between them and their
predecessor, the map n -> first Legendre prime above n^2, and the
associated consistency checks.

All square comparisons go through exact integer roots; 2 is included
as the first Legendre prime by convention (it has no predecessor, its
witness is recorded as 1).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import isqrt

from .records import ViolationRecord
from .sieve import is_prime, next_prime_after, prev_prime_before, primes_up_to


@dataclass(frozen=True)
class LegendrePrime:
    value: int
    index: int  # 1-based position in the Legendre-prime ordering
    square_witness: int  # largest a with prev_prime < a^2 < value (1 for value 2)


@dataclass(frozen=True)
class LegendreMapEntry:
    n: int
    image: LegendrePrime  # first Legendre prime above n^2


def is_legendre_prime(p: int) -> tuple[bool, int | None]:
    """Whether prime p has a square strictly between it and its
    predecessor; returns the largest such root a as witness."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return True, 1
    a = isqrt(p - 1)  # largest a with a^2 < p
    if a * a > prev_prime_before(p):
        return True, a
    return False, None


def _witness(p: int) -> int:
    return 1 if p == 2 else isqrt(p - 1)


def _image_stream():
    """Legendre primes in increasing order, with duplicates collapsed.

    Every Legendre prime p is the first prime above its witness square,
    so walking a = 1, 2, 3, ... and taking next_prime_after(a^2)
    enumerates exactly the Legendre primes (a duplicate image means no
    prime separates two consecutive squares, which would itself be a
    violation caught by the injectivity check).
    """
    a = 1
    last = None
    while True:
        q = next_prime_after(a * a)
        if q != last:
            yield q
            last = q
        a += 1


def legendre_primes_up_to(limit: int) -> list[LegendrePrime]:
    """All Legendre primes <= limit, 1-based indices."""
    if limit < 2:
        raise ValueError("limit must be >= 2")
    out = []
    for q in _image_stream():
        if q > limit:
            break
        out.append(LegendrePrime(q, len(out) + 1, _witness(q)))
    return out


def legendre_primes_first(count: int) -> list[LegendrePrime]:
    """The first `count` Legendre primes."""
    if count < 1:
        raise ValueError("count must be >= 1")
    out = []
    for q in _image_stream():
        out.append(LegendrePrime(q, len(out) + 1, _witness(q)))
        if len(out) == count:
            return out


def legendre_map(n: int) -> LegendreMapEntry:
    """First Legendre prime l with n^2 < l (and none in (n^2, l)).

    The first prime above n^2 is itself a Legendre prime (n^2 sits
    between it and its predecessor), so the image is next_prime_after(n^2).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    q = next_prime_after(n * n)
    index = len({next_prime_after(a * a) for a in range(1, isqrt(q - 1) + 1)})
    return LegendreMapEntry(n, LegendrePrime(q, index, _witness(q)))


def map_images(n_max: int) -> list[int]:
    """Images of 1..n_max under the square-to-next-prime map."""
    return [next_prime_after(n * n) for n in range(1, n_max + 1)]


def check_map_injective(n_max: int) -> list[ViolationRecord]:
    """Empty iff the images of 1..n_max are pairwise distinct.

    Images are non-decreasing, so a collision always shows up between
    consecutive arguments; each collision means the open interval
    (n^2, (n+1)^2) contains no prime.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    violations = []
    prev_img = None
    for n in range(1, n_max + 1):
        img = next_prime_after(n * n)
        if prev_img is not None and img == prev_img:
            violations.append(
                ViolationRecord(
                    check_id="LEGENDRE_INJECTIVE",
                    location=(n - 1, n),
                    lhs=str(prev_img),
                    rhs=str(img),
                    detail=f"map({n - 1}) = map({n}); no prime in ({(n - 1) ** 2}, {n ** 2}]-square window",
                )
            )
        prev_img = img
    return violations


def check_legendre_gap_corollary(n_max: int) -> list[ViolationRecord]:
    """n < l_n - l_{n-1} < 3n - 1 over consecutive Legendre primes.

    n is the ordinal in the Legendre-prime ordering. Stated without
    proof in the source material, so this reports rather than asserts.
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    ls = legendre_primes_first(n_max)
    violations = []
    for i in range(1, len(ls)):
        n = i + 1
        d = ls[i].value - ls[i - 1].value
        if not d > n:
            violations.append(
                ViolationRecord(
                    check_id="LEGENDRE_GAP_COROLLARY",
                    location=(ls[i - 1].value, ls[i].value),
                    lhs=str(d),
                    rhs=str(n),
                    detail=f"lower bound failed at ordinal n={n}: gap {d} <= n",
                )
            )
        if not d < 3 * n - 1:
            violations.append(
                ViolationRecord(
                    check_id="LEGENDRE_GAP_COROLLARY",
                    location=(ls[i - 1].value, ls[i].value),
                    lhs=str(d),
                    rhs=str(3 * n - 1),
                    detail=f"upper bound failed at ordinal n={n}: gap {d} >= 3n-1",
                )
            )
    return violations


@dataclass(frozen=True)
class ConjectureReport:
    violations: list
    checked: int
    skipped_no_predecessor: int


def check_legendre_gap_conjecture(limit: int) -> ConjectureReport:
    """gap < 2*sqrt(p) + 1 for every pair whose upper member is a
    Legendre prime <= limit; exact via (gap-1)^2 < 4p."""
    if limit < 5:
        raise ValueError("limit must be >= 5")
    violations = []
    checked = 0
    skipped = 0
    for lp in legendre_primes_up_to(limit):
        p = lp.value
        if p == 2:
            skipped += 1
            continue
        prev = prev_prime_before(p)
        gap = p - prev
        checked += 1
        if gap > 1 and (gap - 1) ** 2 >= 4 * p:
            violations.append(
                ViolationRecord(
                    check_id="LEGENDRE_GAP_CONJECTURE",
                    location=(prev, p),
                    lhs=str((gap - 1) ** 2),
                    rhs=str(4 * p),
                    detail="gap >= 2*sqrt(p) + 1",
                )
            )
    return ConjectureReport(violations, checked, skipped)


@dataclass(frozen=True)
class StrongLegendreReport:
    limit: int
    consecutive_pairs: list  # (l_i, l_{i+1}) that are adjacent primes
    deficient_squares: list  # (n, count, witnesses) with < 2 primes in ((n-1)^2, n^2)
    corroborated: bool


def check_strong_legendre_equivalence(limit: int) -> StrongLegendreReport:
    """Cross-check the two faces of the strong two-primes-per-square claim.

    Face A: consecutive Legendre primes that are also consecutive in
    the full prime sequence. Face B: squares ((n-1)^2, n^2), n^2 <= limit,
    holding fewer than two primes. Each face-A pair (p, q) with witness
    root a yields the deficient window ((a-1)^2, a^2); each one-prime
    face-B window at n yields the pair (that prime, next_prime_after(n^2)).
    The report corroborates when the two findings map onto each other.
    """
    if limit < 5:
        raise ValueError("limit must be >= 5")
    table = primes_up_to(limit)
    primes = [int(p) for p in table.primes]
    prime_set = set(primes)
    succ = {primes[i]: primes[i + 1] for i in range(len(primes) - 1)}

    ls = [lp.value for lp in legendre_primes_up_to(limit)]
    consecutive = [
        (ls[i], ls[i + 1])
        for i in range(len(ls) - 1)
        if succ.get(ls[i]) == ls[i + 1]
    ]

    deficient = []
    n = 2
    while n * n <= limit:
        inside = [p for p in range((n - 1) ** 2 + 1, n * n) if p in prime_set]
        if len(inside) < 2:
            deficient.append((n, len(inside), tuple(inside[:8])))
        n += 1

    # Corroboration: every consecutive pair (p, q) puts < 2 primes in the
    # window topped by q's witness square, and every one-prime window maps
    # back to a consecutive pair. Zero-prime windows falsify plain
    # Legendre (caught by the injectivity check) and stand alone here.
    ok = True
    deficient_ns = {d[0] for d in deficient}
    pair_set = set(consecutive)
    for p, q in consecutive:
        a = isqrt(q - 1)  # a^2 is the largest square under q, and p < a^2
        if a not in deficient_ns:
            ok = False
    for n_def, cnt, wit in deficient:
        if cnt == 1:
            q = next_prime_after(n_def * n_def)
            if q <= limit and (wit[0], q) not in pair_set:
                ok = False

    return StrongLegendreReport(limit, consecutive, deficient, ok)


def entries_to_json(entries: list[LegendrePrime]) -> str:
    """JSON lines {index, value, square_witness}, one entry per line."""
    return "\n".join(
        json.dumps(
            {"index": e.index, "value": e.value, "square_witness": e.square_witness}
        )
        for e in entries
    )
