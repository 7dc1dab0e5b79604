"""Command-line front end.

Exit codes: 0 all checks satisfied above thresholds, 1 violations above
threshold, 2 configuration error, 3 resource or precision error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import campaign as camp
from . import constants as consts
from . import gaps, legendre
from .errors import (
    CheckpointCorruptionError,
    ConfigError,
    GapforgeError,
    PrecisionExhaustedError,
    ResourceLimitError,
)
from .sieve import PrimePair

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_CONFIG = 2
EXIT_RESOURCE = 3


def _fraction(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}") from e


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gapforge",
        description="verify prime-gap inequalities and prime-in-interval "
        "claims with exact arithmetic",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sg = sub.add_parser("scan-gaps", help="dump gap records as CSV")
    sg.add_argument("--from", dest="lo", type=int, default=2)
    sg.add_argument("--to", dest="hi", type=int, required=True)
    sg.add_argument(
        "--decades", action="store_true", help="print per-decade maxima instead"
    )

    vf = sub.add_parser("verify", help="run a single check over a range")
    vf.add_argument("check_id")
    vf.add_argument("--from", dest="lo", type=int, default=2)
    vf.add_argument("--to", dest="hi", type=int, required=True)
    vf.add_argument("--k", type=_fraction)
    vf.add_argument("--epsilon", type=_fraction)
    vf.add_argument("--g", type=int)
    vf.add_argument("--required", type=int)
    vf.add_argument("--entry", help="catalog entry for LEMMA_EQUIV")
    vf.add_argument("--threshold", type=int)
    vf.add_argument("--x0", type=int, default=1)
    vf.add_argument("--threads", type=int, default=1)
    vf.add_argument("--format", choices=("json", "csv", "jsonl"), default="json")

    ct = sub.add_parser("constants", help="compute a theorem constant")
    ct.add_argument("theorem_id", choices=[t.value for t in consts.TheoremId])
    ct.add_argument("--k", type=_fraction)
    ct.add_argument("--epsilon", type=_fraction)
    ct.add_argument("--c", type=_fraction, help="Cramer bound constant")
    ct.add_argument("--g", type=int)
    ct.add_argument("--pair", help="prev,next for the pair-indexed constant")
    ct.add_argument("--c-growth", dest="c_growth", type=int, default=2)
    ct.add_argument("--x0", type=int, default=1)

    lg = sub.add_parser("legendre", help="square-witnessed prime utilities")
    lg_sub = lg.add_subparsers(dest="legendre_command", required=True)
    ll = lg_sub.add_parser("list")
    ll.add_argument("--to", dest="hi", type=int, required=True)
    ll.add_argument("--format", choices=("plain", "json"), default="plain")
    lm = lg_sub.add_parser("map")
    lm.add_argument("n", type=int)
    lc = lg_sub.add_parser("check")
    lc.add_argument("--to", dest="hi", type=int, required=True)

    cp = sub.add_parser("campaign", help="run a campaign from a config file")
    cp.add_argument("config")
    cp.add_argument("--threads", type=int)
    cp.add_argument("--format", choices=("json", "csv", "jsonl"))
    cp.add_argument("--checkpoint")
    cp.add_argument("--resume", action="store_true")
    cp.add_argument("--reset", action="store_true")
    cp.add_argument("--x0", type=int)
    return ap


def _cmd_scan_gaps(args) -> int:
    if args.decades:
        arrays = gaps.pair_arrays(args.lo, args.hi)
        for d in gaps.decade_andrica_maxima(arrays):
            print(
                f"[{d.decade_lo}, {10 * d.decade_lo}): max {d.value:.12f} "
                f"at ({d.pair[0]}, {d.pair[1]})"
            )
        return EXIT_OK
    gaps.write_csv(gaps.gap_stream(args.lo, args.hi), sys.stdout)
    return EXIT_OK


def _cmd_verify(args) -> int:
    params = {}
    for name in ("k", "epsilon", "g", "required", "entry", "threshold"):
        val = getattr(args, name)
        if val is not None:
            if isinstance(val, Fraction) and val.denominator == 1:
                val = int(val)
            params[name] = val
    check = camp.CheckSpec(args.check_id, args.lo, args.hi, params)
    cfg = camp.CampaignConfig(
        checks=[check],
        x0_threshold=args.x0,
        threads=args.threads,
        output_format=args.format,
    )
    summary = camp.run_campaign(cfg)
    print(camp.emit_report(summary, args.format))
    return EXIT_VIOLATIONS if summary.total_violations else EXIT_OK


def _cmd_constants(args) -> int:
    tid = args.theorem_id
    if tid == "BERTRAND_K":
        if args.k is None:
            raise ConfigError("BERTRAND_K needs --k")
        c = consts.bertrand_constant(int(args.k))
    elif tid == "FRACTIONAL_K":
        if args.k is None:
            raise ConfigError("FRACTIONAL_K needs --k")
        c = consts.fractional_constant(args.k)
    elif tid == "STRONG3_G":
        if args.g is None:
            raise ConfigError("STRONG3_G needs --g")
        c = consts.strong3_constant(args.g)
    elif tid == "BROCARD2_M":
        if not args.pair:
            raise ConfigError("BROCARD2_M needs --pair prev,next")
        prev, nxt = (int(x) for x in args.pair.split(","))
        c = consts.brocard2_constant(PrimePair(prev, nxt))
    elif tid == "STRONG_BROCARD_K":
        if args.k is None:
            raise ConfigError("STRONG_BROCARD_K needs --k")
        c = consts.strong_brocard_constant(int(args.k), args.c_growth)
    elif tid == "CRAMER_EPS":
        if args.epsilon is None or args.c is None:
            raise ConfigError("CRAMER_EPS needs --epsilon and --c")
        c = consts.cramer_constant(args.epsilon, args.c)
    else:  # EXPONENTIAL_K
        if args.k is None:
            raise ConfigError("EXPONENTIAL_K needs --k")
        c = consts.exponential_constant(args.k, args.x0)
    print(c.to_json())
    return EXIT_OK


def _cmd_legendre(args) -> int:
    if args.legendre_command == "list":
        entries = legendre.legendre_primes_up_to(args.hi)
        if args.format == "json":
            print(legendre.entries_to_json(entries))
        else:
            print(json.dumps([e.value for e in entries], separators=(",", ":")))
        return EXIT_OK
    if args.legendre_command == "map":
        entry = legendre.legendre_map(args.n)
        print(
            json.dumps(
                {
                    "n": entry.n,
                    "value": entry.image.value,
                    "index": entry.image.index,
                    "square_witness": entry.image.square_witness,
                }
            )
        )
        return EXIT_OK
    # check: injectivity, ordinal gap bounds, gap conjecture, adjacency
    inj = legendre.check_map_injective(args.hi)
    coro = legendre.check_legendre_gap_corollary(args.hi)
    conj = legendre.check_legendre_gap_conjecture(max(args.hi, 5))
    out = {
        "injective_violations": [v.to_dict() for v in inj],
        "gap_corollary_violations": [v.to_dict() for v in coro],
        "gap_conjecture_violations": [v.to_dict() for v in conj.violations],
        "gap_conjecture_checked": conj.checked,
        "skipped_no_predecessor": conj.skipped_no_predecessor,
    }
    print(json.dumps(out, indent=1))
    return EXIT_VIOLATIONS if (inj or conj.violations) else EXIT_OK


def _cmd_campaign(args) -> int:
    cfg = camp.parse_config_file(args.config)
    if args.threads is not None:
        cfg.threads = args.threads
    if args.format is not None:
        cfg.output_format = args.format
    if args.checkpoint is not None:
        cfg.checkpoint_path = args.checkpoint
    if args.x0 is not None:
        cfg.x0_threshold = args.x0
    cfg.resume = args.resume
    cfg.reset = args.reset
    cfg.quiet = False
    summary = camp.run_campaign(cfg)
    print(camp.emit_report(summary, cfg.output_format))
    return EXIT_VIOLATIONS if summary.total_violations else EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "scan-gaps":
            return _cmd_scan_gaps(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "constants":
            return _cmd_constants(args)
        if args.command == "legendre":
            return _cmd_legendre(args)
        if args.command == "campaign":
            return _cmd_campaign(args)
        raise ConfigError(f"unknown command {args.command!r}")
    except (ConfigError, CheckpointCorruptionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (ResourceLimitError, PrecisionExhaustedError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except GapforgeError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
