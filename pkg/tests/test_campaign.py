import json
import subprocess
import sys
from fractions import Fraction

import pytest

import oracles
from gapforge.campaign import (
    CampaignConfig,
    CheckSpec,
    emit_report,
    parse_config_text,
    run_campaign,
    validate_config,
)
from gapforge.errors import CheckpointCorruptionError, ConfigError


def _cfg(checks, **kw):
    return CampaignConfig(checks=checks, **kw)


class TestValidation:
    def test_empty_checks(self):
        with pytest.raises(ConfigError):
            validate_config(_cfg([]))

    def test_unknown_check(self):
        with pytest.raises(ConfigError):
            validate_config(_cfg([CheckSpec("NO_SUCH", 2, 10)]))

    def test_bad_threads(self):
        with pytest.raises(ConfigError):
            validate_config(_cfg([CheckSpec("ANDRICA", 2, 10)], threads=0))

    def test_low_precision_cap(self):
        with pytest.raises(ConfigError):
            validate_config(
                _cfg([CheckSpec("ANDRICA", 2, 10)], guard_precision_cap=32)
            )

    def test_missing_required_param(self):
        with pytest.raises(ConfigError):
            validate_config(_cfg([CheckSpec("GAP_BERTRAND", 2, 10)]))

    def test_unknown_param(self):
        with pytest.raises(ConfigError):
            validate_config(_cfg([CheckSpec("ANDRICA", 2, 10, {"zap": 1})]))

    def test_empty_range(self):
        with pytest.raises(ConfigError):
            validate_config(_cfg([CheckSpec("ANDRICA", 10, 10)]))


class TestRunners:
    def test_andrica_small(self):
        s = run_campaign(_cfg([CheckSpec("ANDRICA", 2, 10**6)]))
        c = s.checks[0]
        assert c.violations == []
        assert c.checked == 78497  # pairs among the 78498 primes below 1e6
        assert c.extras["max_pair"] == [7, 11]

    def test_opp_next_example(self):
        s = run_campaign(_cfg([CheckSpec("GAP_OPP_NEXT", 2, 200)]))
        locs = [v["location"] for v in s.checks[0].violations]
        assert [7, 11] in locs

    def test_dusart_small(self):
        s = run_campaign(_cfg([CheckSpec("GAP_DUSART", 2, 10**5)]))
        c = s.checks[0]
        assert c.violations == []  # all failures sit below p_464 = 3301
        below_locs = [v["location"] for v in c.below_threshold]
        assert [7, 11] in below_locs
        assert c.near_boundary == 0

    def test_dusart_matches_oracle_flags(self):
        s = run_campaign(_cfg([CheckSpec("GAP_DUSART", 2, 3000)]))
        got = {tuple(v["location"]) for v in s.checks[0].below_threshold}
        want = {
            (a, b)
            for a, b in oracles.td_pairs(2, 3000)
            if not oracles.hp_dusart_holds(a, b)
        }
        assert got == want

    def test_cramer_stat(self):
        s = run_campaign(_cfg([CheckSpec("CRAMER_STAT", 2, 10**6)]))
        c = s.checks[0]
        assert c.violations == []
        assert c.extras["max_pair"] == [2, 3]
        assert c.extras["max_ratio"] == pytest.approx(0.8285354496902231, rel=1e-12)

    def test_oppermann(self):
        s = run_campaign(_cfg([CheckSpec("OPPERMANN", 2, 500)]))
        assert s.checks[0].violations == []
        assert s.checks[0].checked == 499  # inclusive n range [2, 500]

    def test_strong_brocard_threshold_split(self):
        s = run_campaign(_cfg([CheckSpec("STRONG_BROCARD", 2, 100, {"k": 3})]))
        c = s.checks[0]
        # C(3) = floor(3^(40/17)) + 1 = 14: (2,3) holds 5 < 6 primes but
        # sits below the threshold
        assert c.extras["threshold"] == 14
        assert any(v["location"] == [2, 3] for v in c.below_threshold)
        assert c.violations == []

    def test_growth_cubes(self):
        s = run_campaign(_cfg([CheckSpec("GROWTH_CUBES", 2, 200)]))
        c = s.checks[0]
        assert c.violations == []
        assert c.extras["min_threshold"] == 2

    def test_power_alias(self):
        s = run_campaign(_cfg([CheckSpec("INGHAM3", 2, 100)]))
        assert s.checks[0].violations == []
        s = run_campaign(_cfg([CheckSpec("QUASI_LEGENDRE", 2, 100)]))
        assert s.checks[0].violations == []

    def test_lemma_equiv(self):
        s = run_campaign(
            _cfg([CheckSpec("LEMMA_EQUIV", 2, 20000, {"entry": "GAP_BERTRAND", "k": 2})])
        )
        c = s.checks[0]
        assert c.violations == []
        assert c.checked == len(oracles.td_pairs(2, 20000))

    def test_weak_brocard(self):
        s = run_campaign(_cfg([CheckSpec("WEAK_BROCARD", 2, 1000)]))
        c = s.checks[0]
        assert c.violations == []
        want_hits = sum(
            1 for a, b in oracles.td_pairs(2, 1000) if (b - a) ** 20 > 3**20 * a
        )
        assert c.extras["filter_hits"] == want_hits

    def test_legendre_single_checks(self):
        s = run_campaign(
            _cfg(
                [
                    CheckSpec("LEGENDRE_INJECTIVE", 1, 200),
                    CheckSpec("LEGENDRE_GAP_CONJECTURE", 1, 1000),
                    CheckSpec("STRONG_LEGENDRE_EQUIV", 1, 1000),
                ]
            )
        )
        assert all(c.violations == [] for c in s.checks)
        assert s.checks[2].extras["corroborated"] is True


class TestShardingInvariance:
    def test_thread_count_invariance(self):
        checks = [
            CheckSpec("ANDRICA", 2, 200000),
            CheckSpec("GAP_OPP_NEXT", 2, 5000),
            CheckSpec("OPPERMANN", 2, 300),
        ]
        s1 = run_campaign(_cfg([CheckSpec(c.check_id, c.lo, c.hi, dict(c.params)) for c in checks], threads=1))
        s4 = run_campaign(_cfg([CheckSpec(c.check_id, c.lo, c.hi, dict(c.params)) for c in checks], threads=4))
        assert s1.comparable() == s4.comparable()

    def test_sharded_equals_engine_direct(self):
        from gapforge.engine import check_gap_inequality, make_spec

        s = run_campaign(_cfg([CheckSpec("GAP_OPP_NEXT", 2, 30000)], threads=3))
        run = check_gap_inequality(make_spec("GAP_OPP_NEXT"), 2, 30000)
        assert [tuple(v["location"]) for v in s.checks[0].violations] == [
            v.location for v in run.violations
        ]
        assert s.checks[0].checked == run.pairs_checked

    def test_violations_sorted_by_location(self):
        s = run_campaign(_cfg([CheckSpec("GAP_OPP_NEXT", 2, 30000)], threads=4))
        locs = [tuple(v["location"]) for v in s.checks[0].violations]
        assert locs == sorted(locs)


class TestCheckpointing:
    def _campaign(self, tmp_path, threads=1):
        return _cfg(
            [
                CheckSpec("ANDRICA", 2, 100000),
                CheckSpec("GAP_OPP_NEXT", 2, 10000),
                CheckSpec("OPPERMANN", 2, 200),
            ],
            threads=threads,
            checkpoint_path=str(tmp_path / "camp.ckpt"),
        )

    def test_resume_equivalence(self, tmp_path):
        base = run_campaign(self._campaign(tmp_path))
        ckpt = tmp_path / "camp.ckpt"
        lines = ckpt.read_text().splitlines()
        assert len(lines) > 3
        # simulate an interrupt: keep only the first few shard records
        ckpt.write_text("\n".join(lines[:5]) + "\n")
        cfg = self._campaign(tmp_path)
        cfg.resume = True
        resumed = run_campaign(cfg)
        assert resumed.comparable() == base.comparable()

    def test_resume_skips_completed_work(self, tmp_path):
        cfg = self._campaign(tmp_path)
        run_campaign(cfg)
        n_lines = len((tmp_path / "camp.ckpt").read_text().splitlines())
        cfg2 = self._campaign(tmp_path)
        cfg2.resume = True
        run_campaign(cfg2)
        # nothing recomputed, nothing appended
        assert len((tmp_path / "camp.ckpt").read_text().splitlines()) == n_lines

    def test_tamper_detection(self, tmp_path):
        cfg = self._campaign(tmp_path)
        run_campaign(cfg)
        ckpt = tmp_path / "camp.ckpt"
        lines = ckpt.read_text().splitlines()
        rec = json.loads(lines[0])
        rec["outcome"]["checked"] += 1  # falsify a count
        lines[0] = json.dumps(rec, sort_keys=True)
        ckpt.write_text("\n".join(lines) + "\n")
        cfg2 = self._campaign(tmp_path)
        cfg2.resume = True
        with pytest.raises(CheckpointCorruptionError):
            run_campaign(cfg2)

    def test_reset_discards(self, tmp_path):
        cfg = self._campaign(tmp_path)
        run_campaign(cfg)
        (tmp_path / "camp.ckpt").write_text("garbage\n")
        cfg2 = self._campaign(tmp_path)
        cfg2.resume = True
        cfg2.reset = True
        out = run_campaign(cfg2)
        assert out.total_violations > 0  # OPP_NEXT violations exist

    def test_threaded_resume(self, tmp_path):
        base = run_campaign(self._campaign(tmp_path, threads=4))
        ckpt = tmp_path / "camp.ckpt"
        lines = ckpt.read_text().splitlines()
        ckpt.write_text("\n".join(lines[: len(lines) // 2]) + "\n")
        cfg = self._campaign(tmp_path, threads=4)
        cfg.resume = True
        resumed = run_campaign(cfg)
        assert resumed.comparable() == base.comparable()


class TestReports:
    def test_json_round_trip(self):
        s = run_campaign(_cfg([CheckSpec("GAP_OPP_NEXT", 2, 300)]))
        parsed = json.loads(emit_report(s, "json"))
        assert parsed["schema"] == "gapforge/1"
        assert parsed["checks"][0]["check_id"] == "GAP_OPP_NEXT"
        assert parsed["totals"]["violations"] == len(s.checks[0].violations)

    def test_csv_one_row_per_check(self):
        s = run_campaign(
            _cfg([CheckSpec("GAP_OPP_NEXT", 2, 300), CheckSpec("ANDRICA", 2, 300)])
        )
        lines = emit_report(s, "csv").splitlines()
        assert len(lines) == 3
        assert lines[0].startswith("check_id,")

    def test_unknown_format(self):
        s = run_campaign(_cfg([CheckSpec("ANDRICA", 2, 300)]))
        with pytest.raises(ConfigError):
            emit_report(s, "xml")


class TestConfigParsing:
    def test_full_file(self):
        text = """
        # demo campaign
        x0 = 7
        threads = 2
        format = csv
        check ANDRICA from=2 to=1000
        check GAP_BERTRAND from=2 to=500 k=2
        check FRACTIONAL to=300 k=5/2 required=2
        """
        cfg = parse_config_text(text)
        assert cfg.x0_threshold == 7
        assert cfg.threads == 2
        assert cfg.output_format == "csv"
        assert len(cfg.checks) == 3
        assert cfg.checks[1].params == {"k": 2}
        assert cfg.checks[2].params == {"k": Fraction(5, 2), "required": 2}
        assert cfg.checks[2].lo == 2

    def test_bad_lines(self):
        with pytest.raises(ConfigError):
            parse_config_text("check\n")
        with pytest.raises(ConfigError):
            parse_config_text("check ANDRICA to=10 zap=3\n")
        with pytest.raises(ConfigError):
            parse_config_text("bogus_setting = 1\n")
        with pytest.raises(ConfigError):
            parse_config_text("not a config\n")
        with pytest.raises(ConfigError):
            parse_config_text("check ANDRICA from=2\n")


class TestCliProcess:
    def test_exit_codes(self, tmp_path):
        # violations above threshold -> 1
        r = subprocess.run(
            [sys.executable, "-m", "gapforge", "verify", "GAP_OPP_NEXT", "--to", "200"],
            capture_output=True,
            text=True,
        )
        assert r.returncode == 1
        # clean check -> 0
        r = subprocess.run(
            [sys.executable, "-m", "gapforge", "verify", "ANDRICA", "--to", "1000"],
            capture_output=True,
            text=True,
        )
        assert r.returncode == 0
        # config error -> 2
        r = subprocess.run(
            [sys.executable, "-m", "gapforge", "verify", "NO_SUCH", "--to", "10"],
            capture_output=True,
            text=True,
        )
        assert r.returncode == 2

    def test_campaign_file(self, tmp_path):
        cfgfile = tmp_path / "c.cfg"
        cfgfile.write_text("check ANDRICA from=2 to=1000\n")
        r = subprocess.run(
            [sys.executable, "-m", "gapforge", "campaign", str(cfgfile)],
            capture_output=True,
            text=True,
        )
        assert r.returncode == 0
        parsed = json.loads(r.stdout)
        assert parsed["schema"] == "gapforge/1"

    def test_scan_gaps_csv(self):
        r = subprocess.run(
            [sys.executable, "-m", "gapforge", "scan-gaps", "--to", "12"],
            capture_output=True,
            text=True,
        )
        assert r.returncode == 0
        lines = r.stdout.strip().splitlines()
        assert lines[0] == "prev,next,gap,andrica,cramer"
        assert lines[1].startswith("2,3,1,")


class TestJsonlReport:
    def test_jsonl_lines(self):
        s = run_campaign(_cfg([CheckSpec("GAP_OPP_NEXT", 2, 200)]))
        lines = emit_report(s, "jsonl").splitlines()
        findings = [json.loads(x) for x in lines[:-1]]
        assert all(f["verdict"] == "violated" for f in findings)
        assert len(findings) == len(s.checks[0].violations)
        tail = json.loads(lines[-1])
        assert tail["schema"] == "gapforge/1"


class TestX0Threshold:
    def test_bhp_below_x0_classified_separately(self):
        # default x0 = 1: small-prime failures count as violations
        s = run_campaign(_cfg([CheckSpec("GAP_BHP", 2, 2000)]))
        assert len(s.checks[0].violations) > 0
        # with x0 raised, the same findings move to the other section
        s2 = run_campaign(
            _cfg([CheckSpec("GAP_BHP", 2, 2000)], x0_threshold=2000)
        )
        assert s2.checks[0].violations == []
        assert len(s2.checks[0].below_threshold) == len(s.checks[0].violations)

    def test_explicit_threshold_wins(self):
        s = run_campaign(
            _cfg([CheckSpec("GAP_BHP", 2, 2000, {"threshold": 10})],
                 x0_threshold=2000)
        )
        # explicit threshold=10 overrides the x0 default: prev 7 < 10
        # lands below, prev 23 >= 10 stays a violation
        assert [7, 11] in [v["location"] for v in s.checks[0].below_threshold]
        assert [23, 29] in [v["location"] for v in s.checks[0].violations]


class TestResourceExitCode:
    def test_resource_error_is_exit_3(self):
        # the refused Cramer crossover (beyond deterministic primality)
        r = subprocess.run(
            [sys.executable, "-m", "gapforge", "constants", "CRAMER_EPS",
             "--epsilon", "1/10", "--c", "1"],
            capture_output=True,
            text=True,
        )
        assert r.returncode == 3
        assert "deterministic" in r.stderr


class TestArbitraryPartitioning:
    def test_random_partitions_compose(self):
        import random

        from gapforge.campaign import Resources, _run_gap_catalog

        res = Resources(CampaignConfig(checks=[CheckSpec("ANDRICA", 2, 10)]))
        check = CheckSpec("GAP_OPP_NEXT", 2, 20000)
        whole = _run_gap_catalog(check, (2, 20000), res)
        rng = random.Random(3)
        for _ in range(10):
            cuts = sorted(rng.sample(range(3, 20000), 3))
            bounds = [2] + cuts + [20000]
            parts = [
                _run_gap_catalog(check, (bounds[i], bounds[i + 1]), res)
                for i in range(len(bounds) - 1)
            ]
            vio = sum((p["violations"] for p in parts), [])
            assert vio == whole["violations"]
            assert sum(p["checked"] for p in parts) == whole["checked"]
