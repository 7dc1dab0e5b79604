"""Campaign orchestration: configuration, sharded execution, checkpoints.

A campaign is a list of checks, each over a range. Ranges split into a
fixed number of shards (independent of the thread count, so summaries
are invariant under --threads); workers run shards concurrently and
the coordinator merges outcomes in shard order. Completed shards are
appended to the checkpoint file with a digest over their payload, so a
resumed campaign replays finished work instead of recomputing it and
refuses to trust a tampered file.
"""

from __future__ import annotations

import hashlib
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import constants as consts
from . import engine, gaps, legendre
from .errors import CheckpointCorruptionError, ConfigError
from .records import IntervalReport
from .sieve import (
    PrimePair,
    PrimeTable,
    is_prime,
    next_prime_after,
    nth_prime,
    primes_up_to,
)

SCHEMA = "gapforge/1"
N_SHARDS = 16
TABLE_BUDGET = 400_000_000  # largest hi for which a flat table is built


@dataclass
class CheckSpec:
    check_id: str
    lo: int
    hi: int
    params: dict = field(default_factory=dict)

    def canonical(self) -> dict:
        return {
            "check_id": self.check_id,
            "lo": self.lo,
            "hi": self.hi,
            "params": {k: str(v) for k, v in sorted(self.params.items())},
        }


@dataclass
class CampaignConfig:
    checks: list
    x0_threshold: int = 1
    guard_precision_cap: int = 1024
    threads: int = 1
    checkpoint_path: str = None
    output_format: str = "json"
    resume: bool = False
    reset: bool = False
    quiet: bool = True


@dataclass
class CheckSummary:
    check_id: str
    params: dict
    lo: int
    hi: int
    checked: int
    violations: list
    below_threshold: list
    near_boundary: int
    extras: dict
    wall_time: float

    def to_dict(self, with_wall_time: bool = True) -> dict:
        d = {
            "check_id": self.check_id,
            "params": {k: str(v) for k, v in sorted(self.params.items())},
            "range": [self.lo, self.hi],
            "checked": self.checked,
            "violations": self.violations,
            "below_threshold_findings": self.below_threshold,
            "near_boundary_count": self.near_boundary,
            "extras": self.extras,
        }
        if with_wall_time:
            d["wall_time"] = round(self.wall_time, 6)
        return d


@dataclass
class VerificationSummary:
    checks: list
    x0_threshold: int
    threads: int

    @property
    def total_violations(self) -> int:
        return sum(len(c.violations) for c in self.checks)

    @property
    def total_below_threshold(self) -> int:
        return sum(len(c.below_threshold) for c in self.checks)

    @property
    def total_near_boundary(self) -> int:
        return sum(c.near_boundary for c in self.checks)

    def to_dict(self, with_wall_time: bool = True) -> dict:
        return {
            "schema": SCHEMA,
            "x0_threshold": self.x0_threshold,
            "checks": [c.to_dict(with_wall_time) for c in self.checks],
            "totals": {
                "checked": sum(c.checked for c in self.checks),
                "violations": self.total_violations,
                "below_threshold_findings": self.total_below_threshold,
                "near_boundary": self.total_near_boundary,
            },
        }

    def comparable(self) -> dict:
        """Summary content with wall times stripped, for equality checks."""
        return self.to_dict(with_wall_time=False)


def emit_report(summary: VerificationSummary, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(summary.to_dict(), indent=1, sort_keys=True)
    if fmt == "csv":
        lines = [
            "check_id,lo,hi,checked,violations,below_threshold,near_boundary,wall_time"
        ]
        for c in summary.checks:
            lines.append(
                f"{c.check_id},{c.lo},{c.hi},{c.checked},{len(c.violations)},"
                f"{len(c.below_threshold)},{c.near_boundary},{c.wall_time:.6f}"
            )
        return "\n".join(lines)
    if fmt == "jsonl":
        # one line per finding, then one summary line
        lines = []
        for c in summary.checks:
            for v, verdict in ((c.violations, "violated"),
                               (c.below_threshold, "below_threshold")):
                for d in v:
                    rec = dict(d)
                    rec["params"] = c.params
                    rec["verdict"] = verdict
                    lines.append(json.dumps(rec, sort_keys=True))
        lines.append(
            json.dumps(
                {"schema": SCHEMA, "summary": summary.to_dict(with_wall_time=True)},
                sort_keys=True,
            )
        )
        return "\n".join(lines)
    raise ConfigError(f"unknown output format {fmt!r}")


# ---------------------------------------------------------------------------
# shared resources


class Resources:
    """Read-only shared state for one campaign run (tables are immutable)."""

    def __init__(self, cfg: CampaignConfig):
        self.cfg = cfg
        self._tables: dict[int, PrimeTable] = {}

    def table(self, hi: int) -> PrimeTable | None:
        if hi > TABLE_BUDGET:
            return None
        key = int(hi)
        if key not in self._tables:
            self._tables[key] = primes_up_to(key)
        return self._tables[key]


def _shard_pair_arrays(table: PrimeTable, lo: int, hi: int, global_hi: int):
    """Vector views of pairs with prev in [lo, hi) and next <= global_hi."""
    pr = table.primes
    i0 = int(np.searchsorted(pr, lo, side="left"))
    i1 = int(np.searchsorted(pr, hi, side="left"))
    i1 = min(i1, pr.size - 1)
    prev = pr[i0:i1]
    nxt = pr[i0 + 1 : i1 + 1]
    mask = nxt <= global_hi
    return prev[mask], nxt[mask]


def _shard_pairs_walk(lo: int, hi: int, global_hi: int):
    """Pairs with prev in [lo, hi) and next <= global_hi, by walking."""
    start = max(lo, 2)
    p = start if is_prime(start) else next_prime_after(start)
    while p < hi:
        q = next_prime_after(p)
        if q > global_hi:
            return
        yield PrimePair(p, q)
        p = q


def _iter_shard_pairs(check: CheckSpec, shard, res: Resources):
    lo, hi = shard
    table = res.table(check.hi)
    if table is not None:
        return engine.table_pairs_bounded(table, lo, hi, check.hi)
    return _shard_pairs_walk(lo, hi, check.hi)


# ---------------------------------------------------------------------------
# violation dict helpers


def _interval_violation(check_id: str, rep: IntervalReport, detail: str = "") -> dict:
    return {
        "check_id": check_id,
        "location": list(rep.location)
        if isinstance(rep.location, tuple)
        else rep.location,
        "lhs": str(rep.found),
        "rhs": str(rep.required),
        "near_boundary": False,
        "detail": detail or f"open interval ({rep.lo}, {rep.hi})",
    }


def _split_by_threshold(reports, check_id, threshold, key=None):
    """Partition unsatisfied interval reports by a location threshold."""
    vio, below = [], []
    for rep in reports:
        loc = key(rep) if key else rep.location
        ref = loc[0] if isinstance(loc, (tuple, list)) else loc
        d = _interval_violation(check_id, rep)
        (below if ref < threshold else vio).append(d)
    return vio, below


# ---------------------------------------------------------------------------
# check runners: (check, shard, res) -> outcome dict


# entries whose claim is conditioned on the short-interval threshold x0
_X0_CONDITIONED = {"GAP_EXP", "GAP_BHP"}


def _run_gap_catalog(check: CheckSpec, shard, res: Resources) -> dict:
    params = dict(check.params)
    threshold = params.pop("threshold", None)
    if threshold is None:
        threshold = (
            res.cfg.x0_threshold if check.check_id in _X0_CONDITIONED else 0
        )
    threshold = int(threshold)
    spec = engine.make_spec(check.check_id, **params)
    run = engine.check_gap_inequality(
        spec,
        shard[0],
        shard[1],
        threshold=threshold,
        cap_bits=res.cfg.guard_precision_cap,
        pairs=_iter_shard_pairs(check, shard, res),
    )
    return {
        "checked": run.pairs_checked,
        "violations": [v.to_dict() for v in run.violations],
        "below": [v.to_dict() for v in run.below_threshold],
        "near": run.near_boundary,
        "extras": {},
    }


def _run_dusart(check: CheckSpec, shard, res: Resources) -> dict:
    """Vectorized screen for next <= prev*(1 + 1/ln^2 prev), guarded re-check.

    The float64 margin is certified sound outside |margin| < prev*1e-9,
    far wider than the ~1e-13 relative rounding error; the few
    candidates inside the band go through interval arithmetic.
    """
    threshold = int(check.params.get("threshold", nth_prime(464)))
    table = res.table(check.hi)
    if table is None:
        return _run_gap_catalog(
            CheckSpec("GAP_DUSART", check.lo, check.hi, {"threshold": threshold}),
            shard,
            res,
        )
    prev, nxt = _shard_pair_arrays(table, shard[0], shard[1], check.hi)
    checked = int(prev.size)
    if checked == 0:
        return {"checked": 0, "violations": [], "below": [], "near": 0, "extras": {}}
    fp = prev.astype(np.float64)
    margin = fp + fp / np.log(fp) ** 2 - nxt.astype(np.float64)
    tol = fp * 1e-9
    suspect = np.flatnonzero(margin <= tol)
    spec = engine.make_spec("GAP_DUSART")
    vio, below, near = [], [], 0
    for i in suspect:
        a, b = int(prev[i]), int(nxt[i])
        gv = engine.guarded_verdict(spec, a, b, cap_bits=res.cfg.guard_precision_cap)
        if gv.near_boundary:
            near += 1
            continue
        if not gv.holds:
            d = {
                "check_id": "GAP_DUSART",
                "location": [a, b],
                "lhs": str(b),
                "rhs": gv.rhs,
                "near_boundary": False,
                "detail": "",
            }
            (below if a < threshold else vio).append(d)
    return {
        "checked": checked,
        "violations": vio,
        "below": below,
        "near": near,
        "extras": {},
    }


def _run_andrica(check: CheckSpec, shard, res: Resources) -> dict:
    """Exact certified Andrica sweep; extras carry the decade maxima."""
    table = res.table(check.hi)
    vio = []
    extras = {"decades": [], "max_pair": None, "max_value": None}
    if table is not None:
        prev, nxt = _shard_pair_arrays(table, shard[0], shard[1], check.hi)
        checked = int(prev.size)
        if checked:
            gap = nxt - prev
            bad = np.flatnonzero((gap - 1) ** 2 >= 4 * prev)
            for i in bad:
                a, b = int(prev[i]), int(nxt[i])
                vio.append(
                    {
                        "check_id": "ANDRICA",
                        "location": [a, b],
                        "lhs": str((b - a - 1) ** 2),
                        "rhs": str(4 * a),
                        "near_boundary": False,
                        "detail": "sqrt(next) - sqrt(prev) >= 1",
                    }
                )
            arrays = gaps.PairArrays(prev, nxt, gap)
            decs = gaps.decade_andrica_maxima(arrays)
            extras["decades"] = [
                {"decade_lo": d.decade_lo, "pair": list(d.pair), "value": d.value}
                for d in decs
            ]
            if decs:
                best = max(decs, key=lambda d: (d.value, -d.pair[0]))
                extras["max_pair"] = list(best.pair)
                extras["max_value"] = best.value
    else:
        checked = 0
        best_pair, best_val = None, None
        for pair in _shard_pairs_walk(shard[0], shard[1], check.hi):
            checked += 1
            if not gaps.andrica_lt_one_exact(pair.prev, pair.next):
                vio.append(
                    {
                        "check_id": "ANDRICA",
                        "location": [pair.prev, pair.next],
                        "lhs": str((pair.gap - 1) ** 2),
                        "rhs": str(4 * pair.prev),
                        "near_boundary": False,
                        "detail": "sqrt(next) - sqrt(prev) >= 1",
                    }
                )
            v = gaps.andrica_float(pair.prev, pair.next)
            if best_val is None or v > best_val:
                best_pair, best_val = pair, v
        if best_pair is not None:
            extras["max_pair"] = [best_pair.prev, best_pair.next]
            extras["max_value"] = best_val
            extras["decades"] = []
    return {
        "checked": checked,
        "violations": vio,
        "below": [],
        "near": 0,
        "extras": extras,
    }


def _merge_andrica_extras(acc: dict, new: dict) -> dict:
    if not acc:
        return new
    by_decade = {d["decade_lo"]: d for d in acc.get("decades", [])}
    for d in new.get("decades", []):
        cur = by_decade.get(d["decade_lo"])
        if cur is None or d["value"] > cur["value"] or (
            d["value"] == cur["value"] and d["pair"][0] < cur["pair"][0]
        ):
            by_decade[d["decade_lo"]] = d
    merged = {
        "decades": [by_decade[k] for k in sorted(by_decade)],
        "max_pair": acc.get("max_pair"),
        "max_value": acc.get("max_value"),
    }
    if new.get("max_value") is not None and (
        merged["max_value"] is None
        or new["max_value"] > merged["max_value"]
        or (
            new["max_value"] == merged["max_value"]
            and new["max_pair"][0] < merged["max_pair"][0]
        )
    ):
        merged["max_pair"] = new["max_pair"]
        merged["max_value"] = new["max_value"]
    return merged


def _run_cramer_stat(check: CheckSpec, shard, res: Resources) -> dict:
    """Max of gap / ln^2(next) over the shard, against the benchmark 1.0.

    The normalizer is evaluated at the pair's upper prime, matching the
    largest-gap-below-x framing of the conjecture; pairs at or above
    1.0 would be recorded as findings.
    """
    table = res.table(check.hi)
    vio = []
    if table is not None:
        prev, nxt = _shard_pair_arrays(table, shard[0], shard[1], check.hi)
        checked = int(prev.size)
        if checked == 0:
            return {
                "checked": 0,
                "violations": [],
                "below": [],
                "near": 0,
                "extras": {"max_ratio": None, "max_pair": None},
            }
        ratio = (nxt - prev) / np.log(nxt.astype(np.float64)) ** 2
        i_best = int(np.argmax(ratio))
        best_val = float(ratio[i_best])
        best_pair = [int(prev[i_best]), int(nxt[i_best])]
        for i in np.flatnonzero(ratio >= 1.0):
            vio.append(
                {
                    "check_id": "CRAMER_STAT",
                    "location": [int(prev[i]), int(nxt[i])],
                    "lhs": f"{float(ratio[i]):.12f}",
                    "rhs": "1.0",
                    "near_boundary": False,
                    "detail": "gap/ln^2(next) at or above 1",
                }
            )
    else:
        checked = 0
        best_val, best_pair = None, None
        for pair in _shard_pairs_walk(shard[0], shard[1], check.hi):
            checked += 1
            v = gaps.cramer_ratio_at_upper(pair)
            if best_val is None or v > best_val:
                best_val, best_pair = v, [pair.prev, pair.next]
            if v >= 1.0:
                vio.append(
                    {
                        "check_id": "CRAMER_STAT",
                        "location": [pair.prev, pair.next],
                        "lhs": f"{v:.12f}",
                        "rhs": "1.0",
                        "near_boundary": False,
                        "detail": "gap/ln^2(next) at or above 1",
                    }
                )
    return {
        "checked": checked,
        "violations": vio,
        "below": [],
        "near": 0,
        "extras": {"max_ratio": best_val, "max_pair": best_pair},
    }


def _merge_cramer_extras(acc: dict, new: dict) -> dict:
    if not acc:
        return new
    if new.get("max_ratio") is None:
        return acc
    if (
        acc.get("max_ratio") is None
        or new["max_ratio"] > acc["max_ratio"]
        or (
            new["max_ratio"] == acc["max_ratio"]
            and new["max_pair"][0] < acc["max_pair"][0]
        )
    ):
        return new
    return acc


def _run_oppermann(check: CheckSpec, shard, res: Resources) -> dict:
    reports = engine.verify_oppermann(shard[0], shard[1] - 1, only_failures=True)
    vio = []
    for rep in reports:
        for half in (rep.below_half, rep.above_half):
            if not half.satisfied:
                vio.append(
                    _interval_violation("OPPERMANN", half, f"half {half.location}")
                )
    return {
        "checked": shard[1] - shard[0],
        "violations": vio,
        "below": [],
        "near": 0,
        "extras": {},
    }


def _run_bertrand_direct(check: CheckSpec, shard, res: Resources) -> dict:
    k = int(check.params["k"])
    threshold = int(
        check.params.get("threshold", consts.bertrand_constant(k).value)
    )
    reports = engine.verify_bertrand_direct(
        k, shard[0], shard[1] - 1, only_failures=True
    )
    vio, below = _split_by_threshold(reports, "BERTRAND_DIRECT", threshold)
    return {
        "checked": shard[1] - shard[0],
        "violations": vio,
        "below": below,
        "near": 0,
        "extras": {"threshold": threshold},
    }


def _run_aux_bertrand(check: CheckSpec, shard, res: Resources) -> dict:
    k = int(check.params["k"])
    threshold = int(
        check.params.get("threshold", consts.bertrand_constant(k).value)
    )
    table = res.table(check.hi)
    reports = engine.verify_auxiliary_bertrand(
        k, shard[0], shard[1] - 1, only_failures=True, table=table
    )
    vio, below = _split_by_threshold(reports, "AUX_BERTRAND", threshold)
    if table is not None:
        pr = table.primes
        checked = int(
            np.searchsorted(pr, shard[1] - 1, side="right")
            - np.searchsorted(pr, max(shard[0], 3), side="left")
        )
    else:
        checked = 0
        p = max(shard[0], 3)
        p = p if is_prime(p) else next_prime_after(p)
        while p <= shard[1] - 1:
            checked += 1
            p = next_prime_after(p)
    return {
        "checked": checked,
        "violations": vio,
        "below": below,
        "near": 0,
        "extras": {"threshold": threshold},
    }


def _run_lemma_equiv(check: CheckSpec, shard, res: Resources) -> dict:
    params = dict(check.params)
    entry = params.pop("entry")
    params.pop("threshold", None)
    spec = engine.make_spec(entry, **params)
    table = res.table(check.hi)
    run = engine.check_equivalence(
        spec, shard[0], shard[1], table=table, global_hi=check.hi
    )
    return {
        "checked": run.pairs_checked,
        "violations": [v.to_dict() for v in run.mismatches],
        "below": [],
        "near": 0,
        "extras": {},
    }


def _run_fractional(check: CheckSpec, shard, res: Resources) -> dict:
    k = Fraction(check.params["k"])
    required = int(check.params.get("required", 2))
    threshold = int(
        check.params.get("threshold", consts.fractional_constant(k).value)
    )
    a, b = k.numerator, k.denominator
    hi_bound = (a * check.hi - 1) // (a - b) + 1
    table = res.table(hi_bound)
    reports = engine.verify_fractional(
        k, shard[0], shard[1] - 1, required, only_failures=True, table=table
    )
    vio, below = _split_by_threshold(reports, "FRACTIONAL", threshold)
    return {
        "checked": shard[1] - shard[0],
        "violations": vio,
        "below": below,
        "near": 0,
        "extras": {"threshold": threshold},
    }


def _run_power_interval(check: CheckSpec, shard, res: Resources) -> dict:
    a = int(check.params["a"])
    b = int(check.params.get("b", 1))
    required = int(check.params.get("required", 1))
    threshold = int(check.params.get("threshold", res.cfg.x0_threshold))
    reports = engine.verify_power_interval(
        a, b, shard[0], shard[1] - 1, required, only_failures=True
    )
    vio, below = _split_by_threshold(reports, check.check_id, threshold)
    return {
        "checked": shard[1] - shard[0],
        "violations": vio,
        "below": below,
        "near": 0,
        "extras": {},
    }


def _run_brocard_cubes(check: CheckSpec, shard, res: Resources) -> dict:
    required = int(check.params.get("required", 4))
    k_strong = check.params.get("k")
    threshold = int(check.params.get("threshold", 0))
    if k_strong is not None and "threshold" not in check.params:
        c_growth = int(check.params.get("c_growth", 2))
        threshold = consts.strong_brocard_constant(int(k_strong), c_growth).value
    checked = 0
    vio, below = [], []
    check_id = "STRONG_BROCARD" if k_strong is not None else "BROCARD_CUBES"
    for pair in _shard_pairs_walk(shard[0], shard[1], check.hi):
        checked += 1
        need = 2 * int(k_strong) if k_strong is not None else required
        rep = engine.scan_interval(
            pair.prev**3, pair.next**3, need, True, pair.as_tuple()
        )
        if not rep.satisfied:
            d = _interval_violation(check_id, rep)
            (below if pair.prev < threshold else vio).append(d)
    return {
        "checked": checked,
        "violations": vio,
        "below": below,
        "near": 0,
        "extras": {"threshold": threshold},
    }


def _run_weak_brocard(check: CheckSpec, shard, res: Resources) -> dict:
    use_upper = bool(check.params.get("use_upper", False))
    checked = 0
    hits = 0
    vio = []
    c = 3**20
    for pair in _shard_pairs_walk(shard[0], shard[1], check.hi):
        checked += 1
        ref = pair.next if use_upper else pair.prev
        if pair.gap**20 <= c * ref:
            continue
        hits += 1
        rep = engine.scan_interval(pair.prev**2, pair.next**2, 2, True, pair.as_tuple())
        if not rep.satisfied:
            vio.append(_interval_violation("WEAK_BROCARD", rep))
    return {
        "checked": checked,
        "violations": vio,
        "below": [],
        "near": 0,
        "extras": {"filter_hits": hits},
    }


def _merge_sum_extras(keys):
    def merge(acc, new):
        if not acc:
            return new
        out = dict(acc)
        for k in keys:
            out[k] = acc.get(k, 0) + new.get(k, 0)
        return out

    return merge


def _run_growth_cubes(check: CheckSpec, shard, res: Resources) -> dict:
    prof = engine.growth_profile_cubes(shard[0], shard[1] - 1)
    vio = [
        _interval_violation("GROWTH_CUBES", rep, f"count^40 < n^17 at n={rep.location}")
        for rep in prof.reports
        if not rep.satisfied
    ]
    return {
        "checked": shard[1] - shard[0],
        "violations": vio,
        "below": [],
        "near": 0,
        "extras": {
            "failures": prof.failures,
            "min_threshold": prof.min_threshold,
        },
    }


def _merge_growth_extras(acc, new):
    if not acc:
        return new
    failures = sorted(set(acc.get("failures", [])) | set(new.get("failures", [])))
    return {
        "failures": failures,
        # shards see only their slice; recompute from merged failures
        "min_threshold": (max(failures) + 1) if failures else acc["min_threshold"],
    }


def _run_legendre_injective(check: CheckSpec, shard, res: Resources) -> dict:
    viol = legendre.check_map_injective(check.hi)
    return {
        "checked": check.hi,
        "violations": [v.to_dict() for v in viol],
        "below": [],
        "near": 0,
        "extras": {},
    }


def _run_legendre_corollary(check: CheckSpec, shard, res: Resources) -> dict:
    viol = legendre.check_legendre_gap_corollary(check.hi)
    return {
        "checked": check.hi - 1,
        "violations": [v.to_dict() for v in viol],
        "below": [],
        "near": 0,
        "extras": {},
    }


def _run_legendre_conjecture(check: CheckSpec, shard, res: Resources) -> dict:
    rep = legendre.check_legendre_gap_conjecture(check.hi)
    return {
        "checked": rep.checked,
        "violations": [v.to_dict() for v in rep.violations],
        "below": [],
        "near": 0,
        "extras": {"skipped_no_predecessor": rep.skipped_no_predecessor},
    }


def _run_strong_legendre(check: CheckSpec, shard, res: Resources) -> dict:
    rep = legendre.check_strong_legendre_equivalence(check.hi)
    vio = []
    for p, q in rep.consecutive_pairs:
        vio.append(
            {
                "check_id": "STRONG_LEGENDRE_EQUIV",
                "location": [p, q],
                "lhs": "consecutive-in-primes",
                "rhs": "expected-separated",
                "near_boundary": False,
                "detail": "adjacent square-witnessed primes are prime neighbours",
            }
        )
    return {
        "checked": check.hi,
        "violations": vio,
        "below": [],
        "near": 0,
        "extras": {
            "deficient_squares": [list(d[:2]) for d in rep.deficient_squares],
            "corroborated": rep.corroborated,
        },
    }


@dataclass(frozen=True)
class CheckDef:
    """axis "pairs": shard by prev prime, next bounded by the inclusive hi.
    axis "ints": shard the integer/prime location axis, hi inclusive.
    axis "single": one shard, no splitting."""

    runner: object
    axis: str
    param_names: tuple = ()
    merge_extras: object = None


REGISTRY = {
    "ANDRICA": CheckDef(_run_andrica, "pairs", ("threshold",), _merge_andrica_extras),
    "CRAMER_STAT": CheckDef(_run_cramer_stat, "pairs", (), _merge_cramer_extras),
    "GAP_DUSART": CheckDef(_run_dusart, "pairs", ("threshold",)),
    "OPPERMANN": CheckDef(_run_oppermann, "ints", ()),
    "BERTRAND_DIRECT": CheckDef(_run_bertrand_direct, "ints", ("k", "threshold")),
    "AUX_BERTRAND": CheckDef(_run_aux_bertrand, "ints", ("k", "threshold")),
    "LEMMA_EQUIV": CheckDef(
        _run_lemma_equiv, "pairs", ("entry", "k", "epsilon", "threshold")
    ),
    "FRACTIONAL": CheckDef(
        _run_fractional, "ints", ("k", "required", "threshold")
    ),
    "POWER_INTERVAL": CheckDef(
        _run_power_interval, "ints", ("a", "b", "required", "threshold")
    ),
    "INGHAM3": CheckDef(_run_power_interval, "ints", ("threshold",)),
    "STRONG3": CheckDef(_run_power_interval, "ints", ("threshold",)),
    "QUASI_LEGENDRE": CheckDef(_run_power_interval, "ints", ("threshold",)),
    "BROCARD_CUBES": CheckDef(
        _run_brocard_cubes, "pairs", ("required", "threshold")
    ),
    "STRONG_BROCARD": CheckDef(
        _run_brocard_cubes, "pairs", ("k", "c_growth", "threshold")
    ),
    "WEAK_BROCARD": CheckDef(
        _run_weak_brocard, "pairs", ("use_upper",), _merge_sum_extras(["filter_hits"])
    ),
    "GROWTH_CUBES": CheckDef(_run_growth_cubes, "ints", (), _merge_growth_extras),
    "LEGENDRE_INJECTIVE": CheckDef(_run_legendre_injective, "single", ()),
    "LEGENDRE_GAP_COROLLARY": CheckDef(_run_legendre_corollary, "single", ()),
    "LEGENDRE_GAP_CONJECTURE": CheckDef(_run_legendre_conjecture, "single", ()),
    "STRONG_LEGENDRE_EQUIV": CheckDef(_run_strong_legendre, "single", ()),
}

# catalog gap checks run through the generic runner
for _gap_id in engine.CATALOG:
    if _gap_id == "GAP_DUSART":
        continue
    _names = engine.CATALOG[_gap_id].param_names + ("threshold",)
    REGISTRY[_gap_id] = CheckDef(_run_gap_catalog, "pairs", _names)

# fixed-exponent conveniences resolve to POWER_INTERVAL parameters
_POWER_ALIASES = {
    "INGHAM3": {"a": 3, "b": 1, "required": 1},
    "STRONG3": {"a": 3, "b": 1, "required": 2},
    "QUASI_LEGENDRE": {"a": 40, "b": 19, "required": 1},
}


_REQUIRED_PARAMS = {
    "LEMMA_EQUIV": ("entry",),
    "BERTRAND_DIRECT": ("k",),
    "AUX_BERTRAND": ("k",),
    "FRACTIONAL": ("k",),
    "POWER_INTERVAL": ("a",),
    "STRONG_BROCARD": ("k",),
    "GAP_BERTRAND": ("k",),
    "GAP_EXP": ("k",),
    "GAP_CRAMER_EPS": ("epsilon",),
    "GAP_FRACTIONAL": ("k",),
}


def validate_config(cfg: CampaignConfig) -> None:
    if not cfg.checks:
        raise ConfigError("campaign has no checks")
    if cfg.threads < 1:
        raise ConfigError("threads must be >= 1")
    if cfg.guard_precision_cap < 64:
        raise ConfigError("precision cap must be >= 64")
    if cfg.output_format not in ("json", "csv", "jsonl"):
        raise ConfigError(f"unknown output format {cfg.output_format!r}")
    for check in cfg.checks:
        if check.check_id not in REGISTRY:
            raise ConfigError(f"unknown check id {check.check_id!r}")
        cdef = REGISTRY[check.check_id]
        if check.lo >= check.hi and cdef.axis != "single":
            raise ConfigError(
                f"{check.check_id}: empty range [{check.lo}, {check.hi}]"
            )
        extra = set(check.params) - set(cdef.param_names) - set(
            _POWER_ALIASES.get(check.check_id, {})
        )
        if extra:
            raise ConfigError(
                f"{check.check_id}: unknown parameters {sorted(extra)}"
            )
        missing = set(_REQUIRED_PARAMS.get(check.check_id, ())) - set(check.params)
        if missing:
            raise ConfigError(
                f"{check.check_id}: missing parameters {sorted(missing)}"
            )


def _plan_shards(check: CheckSpec) -> list:
    """Half-open [a, b) shards over the location axis.

    The configured hi is inclusive: pair-axis runners bound next by
    check.hi themselves, and integer-axis runners receive shards over
    [lo, hi + 1) and sweep [a, b - 1] each. The layout depends only on
    the check, never on the thread count.
    """
    cdef = REGISTRY[check.check_id]
    if cdef.axis == "single":
        return [(check.lo, check.hi)]
    top = check.hi + 1 if cdef.axis == "ints" else check.hi
    width = top - check.lo
    n = min(N_SHARDS, max(1, width))
    bounds = [check.lo + (width * i) // n for i in range(n)] + [top]
    return [(bounds[i], bounds[i + 1]) for i in range(n) if bounds[i] < bounds[i + 1]]


def _digest(payload: dict) -> str:
    return hashlib.sha256(
        json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    ).hexdigest()


class _Checkpoint:
    def __init__(self, path: str, plan_key: str):
        self.path = Path(path)
        self.plan_key = plan_key
        self.done: dict[tuple, dict] = {}

    def load(self) -> None:
        if not self.path.exists():
            return
        for line_no, line in enumerate(self.path.read_text().splitlines(), 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                key = (rec["check_index"], rec["shard_lo"], rec["shard_hi"])
                payload = {
                    "plan": rec["plan"],
                    "check_id": rec["check_id"],
                    "check_index": rec["check_index"],
                    "shard_lo": rec["shard_lo"],
                    "shard_hi": rec["shard_hi"],
                    "outcome": rec["outcome"],
                }
                if rec["digest"] != _digest(payload):
                    raise ValueError("digest mismatch")
            except (KeyError, ValueError, json.JSONDecodeError) as e:
                raise CheckpointCorruptionError(
                    f"{self.path}:{line_no}: {e}; rerun with --reset to discard"
                ) from e
            if rec["plan"] == self.plan_key:
                self.done[key] = rec["outcome"]

    def append(self, check_id: str, check_index: int, shard, outcome: dict) -> None:
        payload = {
            "plan": self.plan_key,
            "check_id": check_id,
            "check_index": check_index,
            "shard_lo": shard[0],
            "shard_hi": shard[1],
            "outcome": outcome,
        }
        rec = dict(payload)
        rec["digest"] = _digest(payload)
        with self.path.open("a") as f:
            f.write(json.dumps(rec, sort_keys=True) + "\n")


def run_campaign(cfg: CampaignConfig) -> VerificationSummary:
    validate_config(cfg)
    res = Resources(cfg)
    plan_key = _digest({"checks": [c.canonical() for c in cfg.checks]})

    ckpt = None
    if cfg.checkpoint_path:
        ckpt = _Checkpoint(cfg.checkpoint_path, plan_key)
        if cfg.reset and ckpt.path.exists():
            ckpt.path.unlink()
        if cfg.resume:
            ckpt.load()

    summaries = []
    for idx, check in enumerate(cfg.checks):
        cdef = REGISTRY[check.check_id]
        params = dict(_POWER_ALIASES.get(check.check_id, {}))
        params.update(check.params)
        eff = CheckSpec(check.check_id, check.lo, check.hi, params)
        shards = _plan_shards(eff)
        outcomes: dict[tuple, dict] = {}
        t0 = time.perf_counter()

        todo = []
        for shard in shards:
            key = (idx, shard[0], shard[1])
            if ckpt is not None and key in ckpt.done:
                outcomes[shard] = ckpt.done[key]
            else:
                todo.append(shard)

        def run_shard(shard):
            return shard, cdef.runner(eff, shard, res)

        if todo:
            if cfg.threads == 1 or len(todo) == 1:
                results = map(run_shard, todo)
                for shard, outcome in results:
                    outcomes[shard] = outcome
                    if ckpt is not None:
                        ckpt.append(check.check_id, idx, shard, outcome)
            else:
                with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
                    for shard, outcome in pool.map(run_shard, todo):
                        outcomes[shard] = outcome
                        if ckpt is not None:
                            ckpt.append(check.check_id, idx, shard, outcome)
        wall = time.perf_counter() - t0

        merged_vio, merged_below = [], []
        checked = 0
        near = 0
        extras: dict = {}
        for shard in shards:
            out = outcomes[shard]
            checked += out["checked"]
            near += out["near"]
            merged_vio.extend(out["violations"])
            merged_below.extend(out["below"])
            if cdef.merge_extras is not None:
                extras = cdef.merge_extras(extras, out["extras"])
            elif out["extras"]:
                extras = out["extras"]
        if not cfg.quiet:
            print(
                f"[{check.check_id}] range [{check.lo}, {check.hi}] "
                f"checked={checked} violations={len(merged_vio)}",
                file=sys.stderr,
            )
        summaries.append(
            CheckSummary(
                check.check_id,
                {k: str(v) for k, v in params.items()},
                check.lo,
                check.hi,
                checked,
                merged_vio,
                merged_below,
                near,
                extras,
                wall,
            )
        )
    return VerificationSummary(summaries, cfg.x0_threshold, cfg.threads)


# ---------------------------------------------------------------------------
# config file parsing: flat key-value lines plus one `check ...` per check


_GLOBAL_KEYS = {
    "x0": ("x0_threshold", int),
    "threads": ("threads", int),
    "precision_cap": ("guard_precision_cap", int),
    "format": ("output_format", str),
    "checkpoint": ("checkpoint_path", str),
}

_PARAM_PARSERS = {
    "k": lambda s: int(s) if "/" not in s and "." not in s else Fraction(s),
    "epsilon": Fraction,
    "g": int,
    "a": int,
    "b": int,
    "required": int,
    "threshold": int,
    "c_growth": int,
    "use_upper": lambda s: s.lower() in ("1", "true", "yes"),
    "entry": str,
}


def parse_config_text(text: str) -> CampaignConfig:
    cfg = CampaignConfig(checks=[])
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("check "):
            parts = line.split()
            if len(parts) < 2:
                raise ConfigError(f"line {line_no}: malformed check line")
            check_id = parts[1]
            kv = {}
            for tok in parts[2:]:
                if "=" not in tok:
                    raise ConfigError(f"line {line_no}: expected key=value, got {tok!r}")
                key, val = tok.split("=", 1)
                kv[key] = val
            try:
                lo = int(kv.pop("from", 2))
                hi = int(kv.pop("to"))
            except KeyError:
                raise ConfigError(f"line {line_no}: check needs to=<N>")
            params = {}
            for key, val in kv.items():
                if key not in _PARAM_PARSERS:
                    raise ConfigError(f"line {line_no}: unknown parameter {key!r}")
                params[key] = _PARAM_PARSERS[key](val)
            cfg.checks.append(CheckSpec(check_id, lo, hi, params))
        elif "=" in line:
            key, val = (s.strip() for s in line.split("=", 1))
            if key not in _GLOBAL_KEYS:
                raise ConfigError(f"line {line_no}: unknown setting {key!r}")
            attr, conv = _GLOBAL_KEYS[key]
            setattr(cfg, attr, conv(val))
        else:
            raise ConfigError(f"line {line_no}: cannot parse {raw!r}")
    return cfg


def parse_config_file(path: str) -> CampaignConfig:
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"config file {path} does not exist")
    return parse_config_text(p.read_text())
