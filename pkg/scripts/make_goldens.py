#!/usr/bin/env python3
"""Regenerate the frozen expected values under tests/golden/.

Uses only local brute-force oracles (tests/oracles.py) plus a
self-contained numpy sieve for the large-range statistics, never the
package itselfns. Run with --full to redo the 1e8 scan (about a
minute); without it only the small anchors file is rewritten.
"""

import argparse
import json
import sys
from math import isqrt
from pathlib import Path

import mpmath
import numpy as np

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

import oracles  # noqa: E402

GOLDEN = ROOT / "tests" / "golden"


def small_anchors() -> dict:
    primes = oracles.td_primes_up_to(3500)
    data = {
        "p_463": primes[462],
        "p_464": primes[463],
        "p_465": primes[464],
        "p_466": primes[465],
        "legendre_up_to_130": oracles.td_legendre_up_to(130),
        "legendre_up_to_1000": oracles.td_legendre_up_to(1000),
        "legendre_map_1_to_10": [oracles.td_next_prime(n * n) for n in range(1, 11)],
        "exp_sqrt_brackets": {},
        "brocard2": {},
        "strong_brocard": {},
        "cramer_eps1_c1_prime": None,
        "floor_10_pow_40_17": oracles.td_floor_root(10**40, 17),
    }
    for k in (2, 4, 100):
        with mpmath.workdps(40):
            x = mpmath.exp(mpmath.sqrt(k))
            m = int(mpmath.floor(x))
        data["exp_sqrt_brackets"][str(k)] = [
            oracles.td_prev_prime(m + 1),
            oracles.td_next_prime(m),
        ]
    for prev, nxt in ((2, 3), (3, 5), (7, 11)):
        q = (2**21 * nxt**40) // (nxt - prev) ** 40
        data["brocard2"][f"{prev},{nxt}"] = oracles.td_floor_root(q, 19) + 1
    for k in (1, 2, 10):
        t = oracles.td_floor_root(k**40, 17)
        data["strong_brocard"][str(k)] = max(2, t) + 1
    # Smallest prime P with ln^2 x < 1.5 sqrt(x) for all x >= P: bisect
    # the upper crossover of the monotone margin, then step to a prime.
    with mpmath.workdps(60):
        f = lambda x: mpmath.mpf(3) / 2 * mpmath.sqrt(x) - mpmath.log(x) ** 2
        lo, hi = mpmath.mpf(100), mpmath.mpf(10**6)
        assert f(lo) < 0 < f(hi)
        for _ in range(300):
            mid = (lo + hi) / 2
            if f(mid) > 0:
                hi = mid
            else:
                lo = mid
        p = int(mpmath.floor(hi)) + 1
    while not oracles.td_is_prime(p):
        p += 1
    data["cramer_eps1_c1_prime"] = p
    data["cramer_eps1_c1_crossover_floor"] = int(mpmath.floor(lo))
    return data


def sieve_primes(limit: int) -> np.ndarray:
    size = (limit + 1) // 2
    flags = np.ones(size, dtype=bool)
    flags[0] = False
    for p in range(3, isqrt(limit) + 1, 2):
        if flags[p // 2]:
            flags[p * p // 2 :: p] = False
    odds = 2 * np.flatnonzero(flags).astype(np.int64) + 1
    return np.concatenate((np.array([2], dtype=np.int64), odds))


def scan_1e8(limit: int = 10**8) -> dict:
    pr = sieve_primes(limit)
    prev, nxt = pr[:-1], pr[1:]
    gap = (nxt - prev).astype(np.float64)

    # max of gap / ln^2(next), float argmax refined with mpmath
    ratio = gap / np.log(nxt.astype(np.float64)) ** 2
    order = np.argsort(ratio)[-20:]
    best_pair, best_val = None, None
    with mpmath.workdps(40):
        for i in order:
            v = (int(nxt[i]) - int(prev[i])) / mpmath.log(int(nxt[i])) ** 2
            if best_val is None or v > best_val:
                best_val, best_pair = v, (int(prev[i]), int(nxt[i]))
    assert best_val < 1

    # per-decade Andrica maxima, decade keyed by digits of next
    andr = gap / (np.sqrt(nxt.astype(np.float64)) + np.sqrt(prev.astype(np.float64)))
    decades = []
    d_lo = 1
    while d_lo <= int(nxt[-1]):
        mask = (nxt >= d_lo) & (nxt < 10 * d_lo)
        if mask.any():
            idx = np.flatnonzero(mask)
            best = idx[np.argmax(andr[idx])]
            a, b = int(prev[best]), int(nxt[best])
            with mpmath.workdps(40):
                v = mpmath.sqrt(b) - mpmath.sqrt(a)
            decades.append(
                {"decade_lo": d_lo, "pair": [a, b], "value": float(v)}
            )
        d_lo *= 10
    gmax = max(decades, key=lambda d: d["value"])
    return {
        "limit": limit,
        "cramer_max": {
            "pair": list(best_pair),
            "value": float(best_val),
            "value_30dps": mpmath.nstr(best_val, 30),
        },
        "andrica_decades": decades,
        "max_andrica_pair": gmax["pair"],
        "max_gap": int(gap.max()),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--full", action="store_true", help="redo the 1e8 scan")
    args = ap.parse_args()
    GOLDEN.mkdir(parents=True, exist_ok=True)
    (GOLDEN / "anchors.json").write_text(
        json.dumps(small_anchors(), indent=1) + "\n"
    )
    print("wrote anchors.json")
    if args.full:
        (GOLDEN / "scan_1e8.json").write_text(
            json.dumps(scan_1e8(), indent=1) + "\n"
        )
        print("wrote scan_1e8.json")


if __name__ == "__main__":
    main()
