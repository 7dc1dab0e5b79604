"""Inequality catalog and interval checkers over consecutive-prime pairs.

Two evaluation routes exist for every catalog inequality:

* EXACT_INTEGER: the inequality cleared to a big-integer comparison
  (strictness preserved exactly), used for verdicts;
* GUARDED_REAL: certified interval arithmetic on the original real
  form, used for cross-checking and for the one entry (the Dusart
  bound) that has no integer reformulation.

Interval checkers count primes inside open intervals with exact
integer endpoints derived by floor roots, so a verdict is never
decided by floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Callable, Iterable

import numpy as np

from .errors import GapforgeError
from .guarded import GuardedVerdict, guarded_compare, iv_number
from .records import IntervalReport, ViolationRecord
from .sieve import (
    PrimePair,
    PrimeTable,
    floor_root,
    is_prime,
    next_prime_after,
    pair_stream,
    primes_in_open_interval,
    primes_up_to,
)

EXACT_INTEGER = "EXACT_INTEGER"
GUARDED_REAL = "GUARDED_REAL"


class UnsupportedModeError(GapforgeError):
    """EXACT_INTEGER requested for an inequality without an integer form."""


@dataclass(frozen=True)
class InequalitySpec:
    ineq_id: str
    params: tuple = ()  # ((name, value), ...), values int or Fraction
    comparison_mode: str = EXACT_INTEGER

    def param(self, name: str):
        for k, v in self.params:
            if k == name:
                return v
        raise KeyError(name)


def make_spec(ineq_id: str, mode: str = None, **params) -> InequalitySpec:
    """Build a spec with params normalized to exact rationals."""
    entry = CATALOG[ineq_id]
    norm = []
    for name in entry.param_names:
        if name not in params:
            raise ValueError(f"{ineq_id} requires parameter {name!r}")
        v = params.pop(name)
        norm.append((name, v if isinstance(v, int) else Fraction(v)))
    if params:
        raise ValueError(f"unknown parameters for {ineq_id}: {sorted(params)}")
    if mode is None:
        mode = EXACT_INTEGER if entry.exact_capable else GUARDED_REAL
    if mode == EXACT_INTEGER and not entry.exact_capable:
        raise UnsupportedModeError(f"{ineq_id} has no exact integer form")
    spec = InequalitySpec(ineq_id, tuple(norm), mode)
    entry.validate(spec)
    return spec


# --- exact verdicts: True means the stated relation holds for the pair ---


def _exact_bertrand(spec, prev, nxt):
    k = spec.param("k")
    return 2 * (nxt - prev) < nxt - 2 * k + 1


def _exact_exp(spec, prev, nxt):
    # gap < (k - 1/2) * p^((k-1)/k), k = a/b  <=>  (2b*gap)^a < (2a-b)^a * p^(a-b)
    k = Fraction(spec.param("k"))
    a, b = k.numerator, k.denominator
    gap = nxt - prev
    return (2 * b * gap) ** a < (2 * a - b) ** a * nxt ** (a - b)


def _exact_legendre(spec, prev, nxt):
    gap = nxt - prev
    return gap <= 1 or (gap - 1) ** 2 < 4 * nxt


def _exact_opp_next(spec, prev, nxt):
    return (nxt - prev) ** 2 < nxt


def _exact_opp_prev(spec, prev, nxt):
    return (nxt - prev) ** 2 < prev


def _exact_cramer_eps(spec, prev, nxt):
    # gap < (1/2 + e) * p^(e/(1+e)), e = a/b  <=>  (2b*gap)^(a+b) < (2a+b)^(a+b) * p^a
    e = Fraction(spec.param("epsilon"))
    a, b = e.numerator, e.denominator
    gap = nxt - prev
    return (2 * b * gap) ** (a + b) < (2 * a + b) ** (a + b) * nxt**a


def _exact_fractional(spec, prev, nxt):
    # gap < min(prev/(k-1), next/k), k = a/b
    k = Fraction(spec.param("k"))
    a, b = k.numerator, k.denominator
    gap = nxt - prev
    return (a - b) * gap < b * prev and a * gap < b * nxt


def _exact_bhp(spec, prev, nxt):
    return (nxt - prev) ** 40 < nxt**21


def _exact_weak_brocard_filter(spec, prev, nxt):
    # Filter semantics: True = the pair passes the large-gap filter.
    return (nxt - prev) ** 20 > 3**20 * prev


# --- guarded builders: (lhs, rhs, op) on the original real forms ---


def _guard_bertrand(spec, prev, nxt):
    k = spec.param("k")
    return (
        lambda ctx: iv_number(ctx, nxt - prev),
        lambda ctx: (iv_number(ctx, nxt) - iv_number(ctx, 2 * k - 1)) / 2,
        "<",
    )


def _guard_exp(spec, prev, nxt):
    k = Fraction(spec.param("k"))
    return (
        lambda ctx: iv_number(ctx, nxt - prev),
        lambda ctx: (iv_number(ctx, k) - iv_number(ctx, Fraction(1, 2)))
        * iv_number(ctx, nxt) ** iv_number(ctx, (k - 1) / k),
        "<",
    )


def _guard_legendre(spec, prev, nxt):
    return (
        lambda ctx: iv_number(ctx, nxt - prev),
        lambda ctx: 2 * ctx.sqrt(iv_number(ctx, nxt)) + 1,
        "<",
    )


def _guard_opp_next(spec, prev, nxt):
    return (
        lambda ctx: iv_number(ctx, nxt - prev),
        lambda ctx: ctx.sqrt(iv_number(ctx, nxt)),
        "<",
    )


def _guard_opp_prev(spec, prev, nxt):
    return (
        lambda ctx: iv_number(ctx, nxt - prev),
        lambda ctx: ctx.sqrt(iv_number(ctx, prev)),
        "<",
    )


def _guard_cramer_eps(spec, prev, nxt):
    e = Fraction(spec.param("epsilon"))
    return (
        lambda ctx: iv_number(ctx, nxt - prev),
        lambda ctx: (iv_number(ctx, Fraction(1, 2)) + iv_number(ctx, e))
        * iv_number(ctx, nxt) ** iv_number(ctx, e / (1 + e)),
        "<",
    )


def _guard_dusart(spec, prev, nxt):
    return (
        lambda ctx: iv_number(ctx, nxt),
        lambda ctx: iv_number(ctx, prev)
        * (1 + 1 / ctx.log(iv_number(ctx, prev)) ** 2),
        "<=",
    )


def _guard_bhp(spec, prev, nxt):
    return (
        lambda ctx: iv_number(ctx, nxt - prev),
        lambda ctx: iv_number(ctx, nxt) ** iv_number(ctx, Fraction(21, 40)),
        "<",
    )


def _guard_weak_brocard_filter(spec, prev, nxt):
    return (
        lambda ctx: iv_number(ctx, nxt - prev),
        lambda ctx: 3 * iv_number(ctx, prev) ** iv_number(ctx, Fraction(1, 20)),
        ">",
    )


# --- interval forms for the equivalence lemmas (exact integer bounds) ---
# Each returns (lo, hi) of the open interval whose prime content is
# equivalent to the gap inequality, or a tuple of such intervals.


def _floor_scaled_root(m_base: int, coeff_num: int, a: int, scale: int) -> int:
    """floor( (coeff_num^a * m_base)^(1/a) / scale ) exactly."""
    return floor_root(coeff_num**a * m_base, a) // scale


def _iv_bertrand(spec, prev, nxt):
    k = spec.param("k")
    return ((nxt + 2 * k - 1) // 2, nxt)  # next odd, 2k-1 odd: sum even, exact


def _iv_exp(spec, prev, nxt):
    k = Fraction(spec.param("k"))
    a, b = k.numerator, k.denominator
    # floor((k - 1/2) * next^((k-1)/k)) = floor_root((2a-b)^a * next^(a-b), a) // (2b)
    r = _floor_scaled_root(nxt ** (a - b), 2 * a - b, a, 2 * b)
    return (nxt - r - 1, nxt)


def _iv_legendre(spec, prev, nxt):
    r = isqrt(4 * nxt)  # floor(2*sqrt(next)), irrational for prime next
    return (nxt - r - 2, nxt)


def _iv_opp_next(spec, prev, nxt):
    return (nxt - isqrt(nxt) - 1, nxt)


def _iv_opp_prev(spec, prev, nxt):
    return (prev, prev + isqrt(prev) + 1)


def _iv_cramer_eps(spec, prev, nxt):
    e = Fraction(spec.param("epsilon"))
    a, b = e.numerator, e.denominator
    r = _floor_scaled_root(nxt**a, 2 * a + b, a + b, 2 * b)
    return (nxt - r - 1, nxt)


def _iv_fractional(spec, prev, nxt):
    k = Fraction(spec.param("k"))
    a, b = k.numerator, k.denominator
    upper = (prev, (a * prev - 1) // (a - b) + 1)  # q < a*prev/(a-b)
    lower = ((a - b) * nxt // a, nxt)  # q > (a-b)*next/a
    return (upper, lower)


def _validate_k_int(spec):
    k = spec.param("k")
    if not isinstance(k, int) or k < 1:
        raise ValueError("k must be a positive integer")


def _validate_k_exp(spec):
    k = Fraction(spec.param("k"))
    if k < Fraction(40, 19):
        raise ValueError("k must be >= 40/19")


def _validate_eps(spec):
    e = Fraction(spec.param("epsilon"))
    if not (0 < e <= 1):
        raise ValueError("epsilon must lie in (0, 1]")


def _validate_k_frac(spec):
    k = Fraction(spec.param("k"))
    if k < 2:
        raise ValueError("k must be >= 2")


def _validate_none(spec):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    ineq_id: str
    param_names: tuple
    exact_capable: bool
    description: str
    exact_verdict: Callable = None
    guard_builders: Callable = None
    interval_form: Callable = None
    validate: Callable = _validate_none


CATALOG = {
    e.ineq_id: e
    for e in (
        CatalogEntry(
            "GAP_BERTRAND",
            ("k",),
            True,
            "gap < (p - 2k + 1)/2",
            _exact_bertrand,
            _guard_bertrand,
            _iv_bertrand,
            _validate_k_int,
        ),
        CatalogEntry(
            "GAP_EXP",
            ("k",),
            True,
            "gap < (k - 0.5) * p^((k-1)/k)",
            _exact_exp,
            _guard_exp,
            _iv_exp,
            _validate_k_exp,
        ),
        CatalogEntry(
            "GAP_LEGENDRE",
            (),
            True,
            "gap < 2*sqrt(p) + 1",
            _exact_legendre,
            _guard_legendre,
            _iv_legendre,
        ),
        CatalogEntry(
            "GAP_OPP_NEXT",
            (),
            True,
            "gap < sqrt(p_next)",
            _exact_opp_next,
            _guard_opp_next,
            _iv_opp_next,
        ),
        CatalogEntry(
            "GAP_OPP_PREV",
            (),
            True,
            "gap < sqrt(p_prev)",
            _exact_opp_prev,
            _guard_opp_prev,
            _iv_opp_prev,
        ),
        CatalogEntry(
            "GAP_CRAMER_EPS",
            ("epsilon",),
            True,
            "gap < (0.5 + eps) * p^(eps/(1+eps))",
            _exact_cramer_eps,
            _guard_cramer_eps,
            _iv_cramer_eps,
            _validate_eps,
        ),
        CatalogEntry(
            "GAP_FRACTIONAL",
            ("k",),
            True,
            "gap < min(p_prev/(k-1), p_next/k)",
            _exact_fractional,
            None,  # conjunction of two bounds; special-cased in guarded_verdict
            _iv_fractional,
            _validate_k_frac,
        ),
        CatalogEntry(
            "GAP_DUSART",
            (),
            False,
            "p_next <= p_prev * (1 + 1/ln^2(p_prev))",
            None,
            _guard_dusart,
            None,
        ),
        CatalogEntry(
            "GAP_BHP",
            (),
            True,
            "gap < p_next^(21/40)",
            _exact_bhp,
            _guard_bhp,
            None,
        ),
        CatalogEntry(
            "FILTER_WEAK_BROCARD",
            (),
            True,
            "gap > 3 * p_prev^(1/20)  (filter: records are hits, not failures)",
            _exact_weak_brocard_filter,
            _guard_weak_brocard_filter,
            None,
        ),
    )
}

# Entries whose interval form participates in the equivalence checks.
EQUIVALENCE_ENTRIES = (
    "GAP_BERTRAND",
    "GAP_EXP",
    "GAP_LEGENDRE",
    "GAP_OPP_NEXT",
    "GAP_OPP_PREV",
    "GAP_CRAMER_EPS",
    "GAP_FRACTIONAL",
)


def exact_verdict(spec: InequalitySpec, prev: int, nxt: int) -> bool:
    entry = CATALOG[spec.ineq_id]
    if not entry.exact_capable:
        raise UnsupportedModeError(f"{spec.ineq_id} has no exact integer form")
    return entry.exact_verdict(spec, prev, nxt)


def guarded_verdict(
    spec: InequalitySpec, prev: int, nxt: int, *, cap_bits: int = 1024
) -> GuardedVerdict:
    if spec.ineq_id == "GAP_FRACTIONAL":
        # Conjunction of the two halves of min(prev/(k-1), next/k).
        k = Fraction(spec.param("k"))
        gap = nxt - prev
        first = guarded_compare(
            lambda ctx: iv_number(ctx, gap),
            lambda ctx: iv_number(ctx, prev) / iv_number(ctx, k - 1),
            "<",
            cap_bits=cap_bits,
        )
        second = guarded_compare(
            lambda ctx: iv_number(ctx, gap),
            lambda ctx: iv_number(ctx, nxt) / iv_number(ctx, k),
            "<",
            cap_bits=cap_bits,
        )
        nb = first.near_boundary or second.near_boundary
        if first.holds is False or second.holds is False:
            holds = False
            nb = False  # one certified failure decides the conjunction
        elif first.holds is None or second.holds is None:
            holds = None
        else:
            holds = True
        return GuardedVerdict(
            holds, nb, max(first.bits, second.bits), first.lhs,
            f"min({second.rhs}, {first.rhs})",
        )
    entry = CATALOG[spec.ineq_id]
    lhs, rhs, op = entry.guard_builders(spec, prev, nxt)
    return guarded_compare(lhs, rhs, op, cap_bits=cap_bits)


def _render_sides(spec: InequalitySpec, prev: int, nxt: int) -> tuple:
    """Exact decimal rendering of the cleared comparison for records."""
    gap = nxt - prev
    i = spec.ineq_id
    if i == "GAP_BERTRAND":
        k = spec.param("k")
        return str(2 * gap), str(nxt - 2 * k + 1)
    if i == "GAP_EXP":
        k = Fraction(spec.param("k"))
        a, b = k.numerator, k.denominator
        return str((2 * b * gap) ** a), str((2 * a - b) ** a * nxt ** (a - b))
    if i == "GAP_LEGENDRE":
        return str((gap - 1) ** 2 if gap > 1 else 0), str(4 * nxt)
    if i == "GAP_OPP_NEXT":
        return str(gap * gap), str(nxt)
    if i == "GAP_OPP_PREV":
        return str(gap * gap), str(prev)
    if i == "GAP_CRAMER_EPS":
        e = Fraction(spec.param("epsilon"))
        a, b = e.numerator, e.denominator
        return str((2 * b * gap) ** (a + b)), str((2 * a + b) ** (a + b) * nxt**a)
    if i == "GAP_FRACTIONAL":
        k = Fraction(spec.param("k"))
        a, b = k.numerator, k.denominator
        return (
            f"{(a - b) * gap},{a * gap}",
            f"{b * prev},{b * nxt}",
        )
    if i == "GAP_BHP":
        return str(gap**40), str(nxt**21)
    if i == "FILTER_WEAK_BROCARD":
        return str(gap**20), str(3**20 * prev)
    return str(gap), "?"


@dataclass
class CheckRun:
    """Outcome of one gap-inequality sweep.

    ``violations`` lists pairs falsifying the inequality at or above
    ``threshold`` (for FILTER_WEAK_BROCARD: pairs passing the filter);
    ``below_threshold`` collects falsifying pairs under the threshold.
    """

    check_id: str
    violations: list
    below_threshold: list
    near_boundary: int
    pairs_checked: int


def record_json_lines(records, params: dict, verdict: str) -> list:
    """Serialize records as JSON lines with their check parameters."""
    import json

    out = []
    for r in records:
        d = r.to_dict() if hasattr(r, "to_dict") else dict(r)
        d["params"] = {k: str(v) for k, v in sorted(dict(params).items())}
        d["verdict"] = verdict
        out.append(json.dumps(d, sort_keys=True))
    return out


def check_run_json_lines(run: CheckRun, params: dict = ()) -> str:
    """One JSON line per finding: {check_id, params, location, lhs,
    rhs, verdict, near_boundary}."""
    lines = record_json_lines(run.violations, dict(params), "violated")
    lines += record_json_lines(run.below_threshold, dict(params), "below_threshold")
    return "\n".join(lines)


def check_gap_inequality(
    spec: InequalitySpec,
    lo: int,
    hi: int,
    *,
    threshold: int = 0,
    cap_bits: int = 1024,
    pairs: Iterable[PrimePair] = None,
) -> CheckRun:
    """Evaluate the catalog inequality on every consecutive pair in [lo, hi].

    A pair is a violation when the stated relation fails (for the weak
    Brocard filter: when it holds, since hits are the reportable
    events). Pairs with prev below ``threshold`` go to the
    below-threshold list. GUARDED_REAL instances undecidable at
    ``cap_bits`` are flagged near-boundary and excluded from both lists.
    """
    entry = CATALOG[spec.ineq_id]
    violations: list[ViolationRecord] = []
    below: list[ViolationRecord] = []
    near = 0
    checked = 0
    filter_mode = spec.ineq_id == "FILTER_WEAK_BROCARD"
    stream = pairs if pairs is not None else pair_stream(lo, hi)
    for pair in stream:
        checked += 1
        prev, nxt = pair.prev, pair.next
        if spec.comparison_mode == EXACT_INTEGER:
            holds = exact_verdict(spec, prev, nxt)
            nb = False
            lhs_s = rhs_s = None
        else:
            gv = guarded_verdict(spec, prev, nxt, cap_bits=cap_bits)
            holds, nb = gv.holds, gv.near_boundary
            lhs_s, rhs_s = gv.lhs, gv.rhs
        if nb:
            near += 1
            continue
        notable = holds if filter_mode else not holds
        if notable:
            if lhs_s is None:
                lhs_s, rhs_s = _render_sides(spec, prev, nxt)
            rec = ViolationRecord(
                check_id=spec.ineq_id,
                location=(prev, nxt),
                lhs=lhs_s,
                rhs=rhs_s,
            )
            (below if prev < threshold else violations).append(rec)
    return CheckRun(spec.ineq_id, violations, below, near, checked)


def table_pairs(table: PrimeTable, lo: int, hi: int):
    """Consecutive pairs wholly inside [lo, hi], read off a prime table."""
    pr = table.primes
    i0 = int(np.searchsorted(pr, lo, side="left"))
    for i in range(i0, pr.size - 1):
        a, b = int(pr[i]), int(pr[i + 1])
        if b > hi:
            break
        yield PrimePair(a, b)


def table_pairs_bounded(table: PrimeTable, lo: int, hi: int, global_hi: int):
    """Pairs with prev in [lo, hi) and next <= global_hi.

    This is the shard convention: keying by prev makes any partition of
    [lo, global_hi) compose into exactly the wholly-inside pair set.
    """
    pr = table.primes
    i0 = int(np.searchsorted(pr, lo, side="left"))
    for i in range(i0, pr.size - 1):
        a = int(pr[i])
        if a >= hi:
            break
        b = int(pr[i + 1])
        if b > global_hi:
            break
        yield PrimePair(a, b)


@dataclass
class EquivalenceRun:
    ineq_id: str
    mismatches: list
    pairs_checked: int


def _equivalence_bertrand_bulk(
    spec: InequalitySpec,
    lo: int,
    hi: int,
    table: PrimeTable,
    global_hi: int,
    prev_keyed: bool = False,
) -> EquivalenceRun:
    """Vectorized Bertrand-lemma equivalence sweep (int64-safe)."""
    k = spec.param("k")
    pr = table.primes
    i0 = int(np.searchsorted(pr, lo, side="left"))
    prev = pr[i0:-1]
    nxt = pr[i0 + 1 :]
    if prev_keyed:
        mask = (prev < hi) & (nxt <= global_hi)
    else:
        mask = nxt <= hi
    prev, nxt = prev[mask], nxt[mask]
    gap_ok = 2 * (nxt - prev) < nxt - 2 * k + 1
    bounds = (nxt + 2 * k - 1) // 2
    lo_idx = np.searchsorted(pr, bounds, side="right")
    hi_idx = np.searchsorted(pr, nxt, side="left")
    iv_ok = (hi_idx - lo_idx) >= 1
    mismatches = [
        ViolationRecord(
            check_id=f"EQUIV_{spec.ineq_id}",
            location=(int(prev[i]), int(nxt[i])),
            lhs=f"gap_route={bool(gap_ok[i])}",
            rhs=f"interval_route={bool(iv_ok[i])}",
        )
        for i in np.flatnonzero(gap_ok != iv_ok)
    ]
    return EquivalenceRun(spec.ineq_id, mismatches, int(prev.size))


def interval_verdict(
    spec: InequalitySpec, prev: int, nxt: int, table: PrimeTable = None
) -> bool:
    """Prime-in-interval route of the equivalence lemma for one pair."""
    form = CATALOG[spec.ineq_id].interval_form(spec, prev, nxt)
    intervals = form if isinstance(form[0], tuple) else (form,)
    for lo, hi in intervals:
        if lo >= hi - 1:
            return False  # empty open interval
        if table is not None and hi <= table.limit + 1:
            a = int(np.searchsorted(table.primes, lo, side="right"))
            b = int(np.searchsorted(table.primes, hi, side="left"))
            if b - a < 1:
                return False
        else:
            scan = primes_in_open_interval(lo, hi, stop_after=1)
            if scan.count < 1:
                return False
    return True


def check_equivalence(
    spec: InequalitySpec,
    lo: int,
    hi: int,
    *,
    table: PrimeTable = None,
    global_hi: int = None,
) -> EquivalenceRun:
    """Interval verdict vs gap-inequality verdict on every pair in [lo, hi].

    The lemma being exercised: the open interval holds a prime exactly
    when the gap inequality holds for the bracketing pair. The interval
    route rescans with the sieve/table; the gap route is pure integer
    arithmetic, so the two sides are computed independently.

    With global_hi the pair universe switches to the shard convention
    (prev in [lo, hi), next <= global_hi).
    """
    if spec.ineq_id not in EQUIVALENCE_ENTRIES:
        raise ValueError(f"{spec.ineq_id} has no interval equivalence form")
    top = global_hi if global_hi is not None else hi
    if table is None and top <= 50_000_000:
        table = primes_up_to(top)
    covered = table is not None and top <= table.limit
    if spec.ineq_id == "GAP_BERTRAND" and covered:
        return _equivalence_bertrand_bulk(
            spec, lo, hi, table, top, prev_keyed=global_hi is not None
        )
    if covered:
        stream = (
            table_pairs_bounded(table, lo, hi, top)
            if global_hi is not None
            else table_pairs(table, lo, hi)
        )
    else:
        stream = pair_stream(lo, hi)
    mismatches = []
    checked = 0
    for pair in stream:
        checked += 1
        g = exact_verdict(spec, pair.prev, pair.next)
        iv = interval_verdict(spec, pair.prev, pair.next, table)
        if g != iv:
            mismatches.append(
                ViolationRecord(
                    check_id=f"EQUIV_{spec.ineq_id}",
                    location=(pair.prev, pair.next),
                    lhs=f"gap_route={g}",
                    rhs=f"interval_route={iv}",
                )
            )
    return EquivalenceRun(spec.ineq_id, mismatches, checked)


# --- interval claim checkers ---


def scan_interval(
    lo: int,
    hi: int,
    required: int,
    early_exit: bool,
    location,
    table: PrimeTable = None,
) -> IntervalReport:
    """Scan the open interval (lo, hi) for at least `required` primes."""
    if lo >= hi - 1:
        return IntervalReport(lo, hi, required, 0, (), False, required == 0, location)
    if table is not None and hi <= table.limit + 1:
        a = int(np.searchsorted(table.primes, lo, side="right"))
        b = int(np.searchsorted(table.primes, hi, side="left"))
        found = b - a
        wit = tuple(int(p) for p in table.primes[a : a + min(found, 8)])
        return IntervalReport(
            lo, hi, required, found, wit, False, found >= required, location
        )
    scan = primes_in_open_interval(lo, hi, stop_after=required if early_exit else None)
    return IntervalReport(
        lo,
        hi,
        required,
        scan.count,
        scan.witnesses,
        scan.early_exited,
        scan.count >= required,
        location,
    )


def verify_power_interval(
    a_exp: int,
    b_exp: int,
    n_lo: int,
    n_hi: int,
    required: int = 1,
    *,
    early_exit: bool = True,
    only_failures: bool = False,
) -> list:
    """Check ((n-1)^(a/b), n^(a/b)) for >= required primes, per n.

    Membership is the exact big-integer test (n-1)^a < p^b < n^a: the
    candidate range is [floor_root((n-1)^a, b) + 1, floor_root(n^a - 1, b)]
    and the scan is over the corresponding open integer interval.
    """
    if a_exp < 1 or b_exp < 1 or Fraction(a_exp, b_exp) < 1:
        raise ValueError("exponent a/b must be >= 1")
    if n_lo < 2:
        raise ValueError("n_lo must be >= 2")
    out = []
    for n in range(n_lo, n_hi + 1):
        lo = floor_root((n - 1) ** a_exp, b_exp)
        hi = floor_root(n**a_exp - 1, b_exp) + 1
        rep = scan_interval(lo, hi, required, early_exit, n)
        if not only_failures or not rep.satisfied:
            out.append(rep)
    return out


def verify_bertrand_direct(
    k: int, n_lo: int, n_hi: int, *, only_failures: bool = False
) -> list:
    """Primes in (n/2, n - 2k) per integer n; n/2 cleared by doubling.

    For integer candidates p > n/2 iff p > floor(n/2), so the open
    integer interval (n//2, n - 2k) is exact for either parity.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    out = []
    for n in range(n_lo, n_hi + 1):
        rep = scan_interval(n // 2, n - 2 * k, 1, True, n)
        if not only_failures or not rep.satisfied:
            out.append(rep)
    return out


def verify_auxiliary_bertrand(
    k: int,
    p_lo: int,
    p_hi: int,
    *,
    only_failures: bool = False,
    table: PrimeTable = None,
) -> list:
    """Primes in ((p + 2k - 1)/2, p) for every odd prime p in [p_lo, p_hi].

    For odd p the bound (p + 2k - 1)/2 is an exact integer. With a
    covering prime table and only_failures the whole sweep is one pair
    of vectorized rank lookups.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if table is None and p_hi <= 50_000_000:
        table = primes_up_to(p_hi)
    start = max(p_lo, 3)
    if table is not None and only_failures:
        pr = table.primes
        i0 = int(np.searchsorted(pr, start, side="left"))
        i1 = int(np.searchsorted(pr, p_hi, side="right"))
        ps = pr[i0:i1]
        bounds = (ps + 2 * k - 1) // 2
        lo_idx = np.searchsorted(pr, bounds, side="right")
        hi_idx = np.searchsorted(pr, ps, side="left")
        bad = np.flatnonzero(hi_idx - lo_idx < 1)
        return [
            scan_interval(int(bounds[i]), int(ps[i]), 1, True, int(ps[i]), table)
            for i in bad
        ]
    out = []
    p = start if is_prime(start) else next_prime_after(start)
    while p <= p_hi:
        rep = scan_interval((p + 2 * k - 1) // 2, p, 1, True, p, table)
        if not only_failures or not rep.satisfied:
            out.append(rep)
        p = next_prime_after(p)
    return out


@dataclass(frozen=True)
class OppermannReport:
    n: int
    below_half: IntervalReport  # (n^2, n^2 + n)
    above_half: IntervalReport  # (n^2 + n, (n+1)^2)

    @property
    def satisfied(self) -> bool:
        return self.below_half.satisfied and self.above_half.satisfied


def verify_oppermann(
    n_lo: int, n_hi: int, *, only_failures: bool = False
) -> list:
    """Both square-to-square half-intervals nonempty of primes, per n."""
    if n_lo < 2:
        raise ValueError("n_lo must be >= 2")
    out = []
    for n in range(n_lo, n_hi + 1):
        sq = n * n
        lower = scan_interval(sq, sq + n, 1, True, ("lower", n))
        upper = scan_interval(sq + n, sq + 2 * n + 1, 1, True, ("upper", n))
        rep = OppermannReport(n, lower, upper)
        if not only_failures or not rep.satisfied:
            out.append(rep)
    return out


def verify_fractional(
    k,
    n_lo: int,
    n_hi: int,
    required: int = 2,
    *,
    only_failures: bool = False,
    table: PrimeTable = None,
) -> list:
    """>= required primes in ((k-1)n/k, kn/(k-1)) per n, exact rational bounds."""
    kf = Fraction(k)
    if kf < 2:
        raise ValueError("k must be >= 2")
    a, b = kf.numerator, kf.denominator
    hi_bound = (a * n_hi - 1) // (a - b) + 1
    if table is None and hi_bound <= 50_000_000:
        table = primes_up_to(hi_bound)
    out = []
    for n in range(n_lo, n_hi + 1):
        lo = (a - b) * n // a  # open: p > (a-b)n/a
        hi = (a * n - 1) // (a - b) + 1  # open: p < an/(a-b)
        rep = scan_interval(lo, hi, required, table is None, n, table)
        if not only_failures or not rep.satisfied:
            out.append(rep)
    return out


def verify_brocard_cubes(
    p_hi: int,
    required: int = 4,
    k_strong: int = None,
    *,
    p_lo: int = 2,
    only_failures: bool = False,
) -> list:
    """>= required primes in (prev^3, next^3) per consecutive pair.

    With k_strong the requirement becomes 2*k_strong.
    """
    if k_strong is not None:
        required = 2 * k_strong
    out = []
    for pair in pair_stream(p_lo, p_hi):
        rep = scan_interval(
            pair.prev**3, pair.next**3, required, True, pair.as_tuple()
        )
        if not only_failures or not rep.satisfied:
            out.append(rep)
    return out


def weak_brocard_filter_hits(p_hi: int, *, p_lo: int = 2, use_upper: bool = False):
    """Pairs whose gap exceeds 3 * prev^(1/20) (exact 20th-power form).

    use_upper switches to the 3 * next^(1/20) variant of the filter.
    """
    c = 3**20
    for pair in pair_stream(p_lo, p_hi):
        ref = pair.next if use_upper else pair.prev
        if pair.gap**20 > c * ref:
            yield pair


def verify_weak_brocard_squares(
    p_hi: int,
    *,
    p_lo: int = 2,
    use_upper: bool = False,
    only_failures: bool = False,
) -> list:
    """>= 2 primes in (prev^2, next^2) for filter-passing pairs."""
    out = []
    for pair in weak_brocard_filter_hits(p_hi, p_lo=p_lo, use_upper=use_upper):
        rep = scan_interval(pair.prev**2, pair.next**2, 2, True, pair.as_tuple())
        if not only_failures or not rep.satisfied:
            out.append(rep)
    return out


@dataclass(frozen=True)
class GrowthProfile:
    n_lo: int
    n_hi: int
    reports: list  # IntervalReport per n, required = ceil(n^(17/40))
    failures: list  # n values where count^40 >= n^17 fails
    min_threshold: int  # smallest n0 in range with no failure at any n >= n0

    @property
    def largest_failure(self):
        return max(self.failures) if self.failures else None


def growth_profile_cubes(
    n_lo: int, n_hi: int, *, exact_limit: int = 64
) -> GrowthProfile:
    """Prime counts in ((n-1)^3, n^3) against the n^0.425 growth floor.

    The certified requirement per n is the least c with c^40 >= n^17
    (an exact root computation). Windows with n <= exact_limit are
    counted in full; larger ones early-exit at the requirement, so a
    satisfied report certifies the bound while a failed one has always
    scanned its whole window.
    """
    if n_lo < 2:
        raise ValueError("n_lo must be >= 2")
    reports = []
    failures = []
    for n in range(n_lo, n_hi + 1):
        t = floor_root(n**17, 40)
        need = t if t**40 >= n**17 else t + 1
        rep = scan_interval((n - 1) ** 3, n**3, need, n > exact_limit, n)
        reports.append(rep)
        if not rep.satisfied:
            failures.append(n)
    min_threshold = max(failures) + 1 if failures else n_lo
    return GrowthProfile(n_lo, n_hi, reports, failures, min_threshold)
