"""End-to-end checks of the logerg command-line tool.

Usage: test_cli.py <path-to-logerg> <golden-dir>
"""
import csv
import filecmp
import json
import math
import os
import shutil
import subprocess
import sys
import tempfile
import unittest

BIN = None
GOLDEN = None


def run(*args, cwd=None):
    return subprocess.run([BIN, *args], capture_output=True, text=True, cwd=cwd)


def rows(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(line for line in f if not line.startswith("#")))


class Base(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.mkdtemp(prefix="logerg_cli_")

    def tearDown(self):
        shutil.rmtree(self.tmp, ignore_errors=True)

    def out(self, name):
        return os.path.join(self.tmp, name)

    def ok(self, *args):
        r = run(*args)
        self.assertEqual(r.returncode, 0, r.stdout + r.stderr)
        return r


class Simulate(Base):
    def test_minimal_run_writes_two_files(self):
        self.ok("simulate", "--out", self.out("a"))
        self.assertEqual(sorted(os.listdir(self.out("a"))), ["manifest.json", "path_0000.csv"])
        with open(self.out("a/path_0000.csv")) as f:
            header = json.loads(f.readline()[2:])
        self.assertEqual(header["kind"], "price")
        self.assertIn("seed", header)
        self.assertEqual(len(rows(self.out("a/path_0000.csv"))), 1001)

    def test_ensemble_files_or_wide(self):
        self.ok("simulate", "--paths", "100", "--out", self.out("many"))
        self.assertEqual(len([f for f in os.listdir(self.out("many")) if f.startswith("path_")]), 100)
        self.ok("simulate", "--paths", "100", "--wide", "--out", self.out("wide"))
        self.assertEqual(sorted(os.listdir(self.out("wide"))), ["manifest.json", "paths.csv"])
        with open(self.out("wide/paths.csv")) as f:
            cols = f.readline().strip().split(",")
        self.assertEqual(len(cols), 101)

    def test_rerun_is_byte_identical(self):
        args = ["--seed", "11", "simulate", "--paths", "3", "--model", "ito", "--drift", "0.2", "--out", self.out("r")]
        self.ok(*args)
        shutil.copytree(self.out("r"), self.out("first"))
        self.ok(*args)
        names = sorted(os.listdir(self.out("r")))
        match, mismatch, errors = filecmp.cmpfiles(self.out("r"), self.out("first"), names, shallow=False)
        self.assertEqual(mismatch + errors, [])

    def test_manifest_reproduces_run(self):
        self.ok("--seed", "5", "simulate", "--paths", "2", "--sigma", "0.35", "--out", self.out("m1"))
        self.ok("--config", self.out("m1/manifest.json"), "simulate", "--out", self.out("m2"))
        for name in ["path_0000.csv", "path_0001.csv"]:
            self.assertTrue(filecmp.cmp(self.out("m1/" + name), self.out("m2/" + name), shallow=False))
        with open(self.out("m2/manifest.json")) as f:
            m = json.load(f)
        self.assertEqual(m["config"]["seed"], 5)
        self.assertEqual(m["config"]["simulate"]["sigma"], 0.35)

    def test_flags_override_file_over_defaults(self):
        cfg = self.out("cfg.json")
        with open(cfg, "w") as f:
            json.dump({"seed": 3, "simulate": {"mu": 0.3, "horizon": 2}}, f)
        self.ok("--config", cfg, "simulate", "--mu", "0.5", "--out", self.out("p"))
        with open(self.out("p/manifest.json")) as f:
            s = json.load(f)["config"]
        self.assertEqual(s["seed"], 3)
        self.assertEqual(s["simulate"]["mu"], 0.5)
        self.assertEqual(s["simulate"]["horizon"], 2)
        self.assertEqual(s["simulate"]["sigma"], 0.2)

    def test_diagnostic_curve(self):
        self.ok("simulate", "--paths", "50", "--diagnostic-horizons", "0.5", "1", "--out", self.out("d"))
        d = rows(self.out("d/diagnostic.csv"))
        self.assertEqual([float(r["horizon"]) for r in d], [0.5, 1.0])


class Trade(Base):
    def write_path(self, name, values, dt=1e-3):
        with open(self.out(name), "w") as f:
            f.write("t,value\n")
            for k, v in enumerate(values):
                f.write(f"{k * dt!r},{v!r}\n")
        return self.out(name)

    def test_sine_fixture_signals(self):
        n = 1000
        z = self.write_path("z.csv", [math.sin(2 * math.pi * k / n) for k in range(n + 1)])
        p = self.write_path("p.csv", [100 + 10 * math.sin(2 * math.pi * k / n) + 20 * k / n for k in range(n + 1)])
        self.ok("trade", "--z-csv", z, "--price-csv", p, "--out", self.out("t"))
        sig = rows(self.out("t/signals_0000.csv"))
        self.assertEqual([s["direction"] for s in sig], ["short", "long"])
        self.assertAlmostEqual(float(sig[0]["exit_time"]), 0.25, delta=1e-3)
        self.assertAlmostEqual(float(sig[1]["entry_time"]), 0.5, delta=1e-3)
        self.assertAlmostEqual(float(sig[1]["exit_time"]), 0.75, delta=1e-3)
        summary = rows(self.out("t/summary.csv"))
        self.assertEqual(summary[0]["recurrences"], "3")

    def test_empty_excursions_give_zero_profit(self):
        z = self.write_path("z.csv", [1.0 + 0.1 * k for k in range(11)], dt=0.1)
        self.ok("--format", "json", "trade", "--z-csv", z, "--out", self.out("e"))
        with open(self.out("e/summary.json")) as f:
            s = json.load(f)
        self.assertEqual(s["paths"][0]["excursions"], 0)
        self.assertEqual(s["paths"][0]["profit"], 0.0)
        self.assertEqual(s["aggregate"]["total_profit"], 0.0)

    def test_seeded_ensemble_matches_golden(self):
        self.ok("--seed", "7", "trade", "--paths", "3", "--out", self.out("g"))
        for name in sorted(os.listdir(GOLDEN)):
            self.assertTrue(filecmp.cmp(os.path.join(GOLDEN, name), self.out("g/" + name), shallow=False), name)

    def test_plot_data(self):
        self.ok("trade", "--out", self.out("f"))
        fig1 = rows(self.out("f/fig1_0000.csv"))
        self.assertEqual(list(fig1[0].keys()), ["t", "price"])
        fig2 = rows(self.out("f/fig2_0000.csv"))
        self.assertEqual(list(fig2[0].keys()), ["t", "z", "recurrence"])
        marked = [r for r in fig2 if r["recurrence"] == "1"]
        self.assertGreater(len(marked), 1)
        for r in marked:
            self.assertLessEqual(abs(float(r["z"])), 1e-12)
        zs = [float(r["z"]) for r in fig2]
        self.assertTrue(any(v > 0 for v in zs) and any(v < 0 for v in zs))

    def test_missing_input(self):
        r = run("trade", "--price-csv", self.out("nope.csv"), "--out", self.out("x"))
        self.assertEqual(r.returncode, 2)
        self.assertIn("nope.csv", r.stderr)


class Rotate(Base):
    def test_tables(self):
        self.ok("rotate", "--out", self.out("r"))
        eq = rows(self.out("r/equidistribution.csv"))
        self.assertEqual(len(eq), 3)
        for r in eq:
            self.assertLessEqual(abs(float(r["frequency"]) - (float(r["b"]) - float(r["a"]))), 0.005)
        kac = rows(self.out("r/kac.csv"))
        self.assertEqual([float(r["arc_length"]) for r in kac], [0.1, 0.25, 0.5])
        for r in kac:
            self.assertLessEqual(abs(float(r["mean_return"]) * float(r["arc_length"]) - 1), 0.02)
        bk = {r["function"]: r for r in rows(self.out("r/birkhoff.csv"))}
        self.assertEqual(bk["constant_0.37"]["average"], "0.37")
        self.assertLessEqual(abs(float(bk["trig_poly_0.37"]["average"]) - 0.37), 1e-3)

    def test_fig3_tracks_price(self):
        self.ok("rotate", "--n", "1000", "--out", self.out("f"))
        fig3 = rows(self.out("f/fig3.csv"))
        self.assertEqual(list(fig3[0].keys()), ["t", "price", "z", "theta", "circle_x", "circle_re", "circle_im"])
        for r in fig3[::50]:
            x = float(r["circle_x"])
            self.assertTrue(0 <= x < 1)
            self.assertAlmostEqual(x, float(r["theta"]) % 1.0, delta=1e-12)
            self.assertAlmostEqual(float(r["circle_re"]), math.cos(2 * math.pi * x), delta=1e-12)

    def test_json_format(self):
        self.ok("--format", "json", "rotate", "--n", "1000", "--out", self.out("j"))
        with open(self.out("j/rotation.json")) as f:
            rep = json.load(f)
        self.assertEqual(set(rep), {"equidistribution", "kac", "birkhoff"})


class Price(Base):
    def test_single_point(self):
        self.ok("price", "--out", self.out("p"))
        r = rows(self.out("p/sweep.csv"))
        self.assertEqual(len(r), 1)
        self.assertAlmostEqual(float(r[0]["ergodic_bs_price"]), -2.8466585651151706862, delta=1e-12)

    def test_cross_grid(self):
        self.ok("--format", "json", "price", "--preset", "cross", "--out", self.out("c"))
        r = rows(self.out("c/sweep.csv"))
        self.assertEqual(len(r), 27)
        self.assertEqual(len({(x["tau"], x["z"], x["X"]) for x in r}), 27)
        for x in r:
            self.assertNotEqual(x["relative_gap"], "")
        with open(self.out("c/sweep.json")) as f:
            self.assertEqual(len(json.load(f)), 27)

    def test_domain_error_row(self):
        r = self.ok("price", "--K", "0.5", "15.154262241479262", "--out", self.out("d"))
        self.assertIn("1 with engine domain errors", r.stdout)
        data = rows(self.out("d/sweep.csv"))
        bad = [x for x in data if float(x["K"]) == 0.5][0]
        self.assertEqual(bad["ergodic_bs_price"], "")
        self.assertIn("K must exceed 1", bad["ergodic_bs_error"])
        good = [x for x in data if float(x["K"]) != 0.5][0]
        self.assertEqual(good["ergodic_bs_error"], "")


class Validate(Base):
    def test_single_criterion_passes(self):
        r = run("validate", "--only", "11", cwd=self.tmp)
        self.assertEqual(r.returncode, 0, r.stdout)
        self.assertEqual(os.listdir(self.tmp), [])

    def test_corrupted_tolerance_fails(self):
        r = run("validate", "--only", "6", "--tolerance-scale", "0")
        self.assertEqual(r.returncode, 1)
        self.assertIn("FAIL", r.stdout)

    def test_report_lists_every_criterion(self):
        r = run("validate", "--out", self.out("v"))
        self.assertIn(r.returncode, (0, 1))
        ids = [int(line.split()[1]) for line in r.stdout.splitlines() if line.startswith("criterion")]
        self.assertEqual(ids, list(range(1, 13)))
        with open(self.out("v/validation.json")) as f:
            self.assertEqual([c["id"] for c in json.load(f)], list(range(1, 13)))
        self.assertEqual(r.returncode, 0 if "FAIL" not in r.stdout else 1)


class Usage(Base):
    def test_exit_codes(self):
        self.assertEqual(run().returncode, 2)
        self.assertEqual(run("simulate", "--bogus").returncode, 2)
        self.assertEqual(run("--format", "xml", "simulate").returncode, 2)
        self.assertEqual(run("simulate", "--paths", "0").returncode, 2)
        self.assertEqual(run("--help").returncode, 0)

    def test_invalid_parameters(self):
        r = run("simulate", "--sigma", "-1", "--out", self.out("x"))
        self.assertEqual(r.returncode, 2)
        self.assertIn("sigma", r.stderr)
        self.assertFalse(os.path.exists(self.out("x")))

    def test_bad_config(self):
        cfg = self.out("bad.json")
        with open(cfg, "w") as f:
            f.write("{not json")
        self.assertEqual(run("--config", cfg, "simulate").returncode, 2)
        self.assertEqual(run("--config", self.out("missing.json"), "simulate").returncode, 2)
        with open(cfg, "w") as f:
            json.dump({"simulate": {"no_such_option": 1}}, f)
        self.assertEqual(run("--config", cfg, "simulate", "--out", self.out("y")).returncode, 2)

    def test_unwritable_output(self):
        blocker = self.out("file")
        open(blocker, "w").close()
        r = run("simulate", "--out", os.path.join(blocker, "sub"))
        self.assertEqual(r.returncode, 2)


if __name__ == "__main__":
    BIN = os.path.abspath(sys.argv[1])
    GOLDEN = os.path.abspath(sys.argv[2])
    unittest.main(argv=[sys.argv[0], "-v"])
