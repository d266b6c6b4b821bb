"""
Command line tests for pymeniscus.cli

Created on 18 Oct 2026

@author: semuadmin
"""

import io
import json
import os
import tempfile
import unittest
from contextlib import redirect_stdout

import numpy as np

from pymeniscus.cli import equilibrium, main, nondim, poincare, run_sweep, simulate, stability
from pymeniscus.exceptions import MeniscusParseError, ParameterError, VolumeUnattainable
from pymeniscus.meniscusconfig import config_from_dict
from pymeniscus.meniscuswriter import load_snapshot, read_diag

RUN_DOC = {
    "mode": "periodic",
    "profile": {"kind": "stationary", "shape": [0.9, 0.2]},
    "k": 0.1,
    "t_end": 0.01,
    "L": 2.0,
    "Lambda0": 0.5,
    "grid_n": 31,
    "stepper": {"dt": 0.001},
    "snapshot_stride": 5,
}


class CLITest(unittest.TestCase):
    def setUp(self):
        self.maxDiff = None
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = self.tmp.name

    def tearDown(self):
        self.tmp.cleanup()

    def _config(self, name: str, doc: dict) -> str:
        path = os.path.join(self.dir, name)
        with open(path, "w", encoding="utf-8") as stream:
            json.dump(doc, stream)
        return path

    def _main(self, argv: list) -> tuple:
        out = io.StringIO()
        with redirect_stdout(out):
            code = main(argv)
        return code, out.getvalue()

    def testsimulate(self):
        outdir = os.path.join(self.dir, "run")
        res = simulate(config_from_dict(RUN_DOC), outdir)
        self.assertEqual(res["steps"], 10)
        self.assertEqual(res["rejected"], 0)
        self.assertEqual(res["status"], "ok")
        self.assertEqual(res["t"], 0.01)
        self.assertEqual(len(read_diag(os.path.join(outdir, "diagnostics.csv"))), 10)
        for name in ("final.json", "profiles.svg", "energy.svg"):
            self.assertTrue(os.path.exists(os.path.join(outdir, name)))
        EXPECTED_RESULT = ["step_00000005.json", "step_00000010.json"]
        self.assertEqual(sorted(os.listdir(os.path.join(outdir, "snapshots"))), EXPECTED_RESULT)

    def testsimulaterestart(self):
        cfg = config_from_dict(RUN_DOC)
        first = os.path.join(self.dir, "first")
        simulate(cfg, first, plots=False)
        second = os.path.join(self.dir, "second")
        snap = os.path.join(first, "snapshots", "step_00000005.json")
        res = simulate(cfg, second, restart=snap, plots=False)
        self.assertEqual(res["steps"], 10)
        self.assertEqual(len(read_diag(os.path.join(second, "diagnostics.csv"))), 5)
        straight, _ = load_snapshot(os.path.join(first, "final.json"))
        resumed, _ = load_snapshot(os.path.join(second, "final.json"))
        np.testing.assert_array_equal(resumed.H, straight.H)
        self.assertEqual(resumed.Lambda, straight.Lambda)
        self.assertFalse(os.path.exists(os.path.join(second, "profiles.svg")))

    def testmainsimulate(self):
        cfg = self._config("run.json", RUN_DOC)
        outdir = os.path.join(self.dir, "out")
        code, text = self._main(["-q", "simulate", cfg, "--out", outdir, "--no-plots"])
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(text)["status"], "ok")
        self.assertTrue(os.path.exists(os.path.join(outdir, "final.json")))

    def testmainconfigerror(self):
        doc = dict(RUN_DOC, gamma=1.0)
        code, _ = self._main(["-q", "simulate", self._config("bad.json", doc), "--out", self.dir])
        self.assertEqual(code, 2)
        code, _ = self._main(["-q", "simulate", os.path.join(self.dir, "missing.json")])
        self.assertEqual(code, 2)
        with open(os.path.join(self.dir, "broken.json"), "w", encoding="utf-8") as stream:
            stream.write("{")
        code, _ = self._main(["-q", "poincare", os.path.join(self.dir, "broken.json")])
        self.assertEqual(code, 2)

    def testmainruntimeerror(self):
        cfg = self._config("run.json", RUN_DOC)
        code, _ = self._main(["-q", "equilibrium", cfg, "--volume", "100"])
        self.assertEqual(code, 3)

    def testequilibrium(self):
        res = equilibrium(config_from_dict(RUN_DOC))
        self.assertEqual(res["Lambda_bar"], 0.5)
        self.assertAlmostEqual(res["coeff2"], -1.0 / 30.0, places=15)
        self.assertAlmostEqual(res["apex"], 1.075, places=15)
        self.assertAlmostEqual(res["lagrange"], 2.0 / 15.0, places=15)
        res2 = equilibrium(config_from_dict(RUN_DOC), V0=res["volume"])
        self.assertAlmostEqual(res2["Lambda_bar"], 0.5, delta=1e-12)
        self.assertAlmostEqual(res2["volume"], res["volume"], delta=1e-13)
        with self.assertRaises(VolumeUnattainable):
            equilibrium(config_from_dict(RUN_DOC), V0=100.0)

    def testmainequilibrium(self):
        cfg = self._config("run.json", RUN_DOC)
        outdir = os.path.join(self.dir, "eq")
        code, text = self._main(["-q", "equilibrium", cfg, "--out", outdir])
        self.assertEqual(code, 0)
        self.assertEqual(
            sorted(json.loads(text)),
            ["L", "Lambda_bar", "apex", "coeff2", "lagrange", "min_h", "volume"],
        )
        self.assertTrue(os.path.exists(os.path.join(outdir, "equilibrium.csv")))

    def testmainequilibriumvolume(self):
        cfg = self._config("run.json", RUN_DOC)
        vol = equilibrium(config_from_dict(RUN_DOC))["volume"]
        code, text = self._main(["-q", "equilibrium", cfg, "--volume", repr(vol), "--out", self.dir])
        self.assertEqual(code, 0)
        self.assertAlmostEqual(json.loads(text)["Lambda_bar"], 0.5, delta=1e-12)

    def testequilibriumprofile(self):
        res = equilibrium(config_from_dict(RUN_DOC), outdir=self.dir)
        with open(os.path.join(self.dir, "equilibrium.csv"), encoding="utf-8") as stream:
            lines = stream.read().splitlines()
        self.assertEqual(lines[0], "x,h")
        rows = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
        self.assertEqual(rows.shape, (31, 2))
        self.assertEqual(rows[0, 0], 0.5)
        self.assertEqual(rows[-1, 0], 2.0)
        self.assertAlmostEqual(rows[-1, 1], res["apex"], places=15)
        # h(Lambda_bar) = g(0.5) = 1.0
        self.assertAlmostEqual(rows[0, 1], 1.0, places=14)
        np.testing.assert_allclose(rows[:, 1], res["coeff2"] * (rows[:, 0] - 2.0) ** 2 + res["apex"], rtol=1e-15)

    def testpoincare(self):
        doc = dict(RUN_DOC, poincare={"n": 60})
        res = poincare(config_from_dict(doc))
        # lambda / (2 k b) = (2/15) / 0.2
        self.assertAlmostEqual(res["bc_ratio"], 2.0 / 3.0, places=14)
        self.assertEqual(res["n"], 60)
        self.assertGreater(res["mu"], 0.0)
        self.assertAlmostEqual(res["constant_C"], 1.0 / res["mu"], places=14)
        with self.assertRaisesRegex(MeniscusParseError, "at least 50 nodes required"):
            poincare(config_from_dict(dict(RUN_DOC, poincare={"n": 30})))
        with self.assertRaisesRegex(MeniscusParseError, "Default bc_ratio needs k > 0"):
            poincare(config_from_dict(dict(RUN_DOC, k=0.0)))
        res = poincare(config_from_dict(dict(RUN_DOC, k=0.0, poincare={"n": 60, "bc_ratio": 1.0})))
        self.assertEqual(res["bc_ratio"], 1.0)

    def teststability(self):
        doc = dict(
            RUN_DOC,
            t_end=0.004,
            grid_n=101,
            stepper={"dt": 1e-4},
            energies={"a": 0.75, "b": 1.0, "c": 0.0},
            snapshot_stride=0,
        )
        outdir = os.path.join(self.dir, "stab")
        code, text = self._main(["-q", "stability", self._config("stab.json", doc), "--out", outdir])
        self.assertEqual(code, 0)
        res = json.loads(text)
        self.assertEqual(res["steps"], 40)
        self.assertGreater(res["omega_energy"], 0.0)
        for key in ("omega_lambda", "omega_h1", "r_squared_energy", "Lambda_bar", "E_bar"):
            self.assertIn(key, res)
        with open(os.path.join(outdir, "stability.json"), encoding="utf-8") as stream:
            self.assertEqual(json.load(stream), res)
        self.assertTrue(os.path.exists(os.path.join(outdir, "energy.svg")))
        lo, hi = res["window_energy"]
        self.assertLess(lo, hi)
        self.assertLessEqual(hi, 0.004 + 1e-12)

    def teststabilityrefinement(self):
        omegas = {}
        for n in (201, 401):
            doc = dict(
                RUN_DOC,
                t_end=0.2,
                grid_n=n,
                stepper={"dt": 1e-3},
                energies={"a": 0.75, "b": 1.0, "c": 0.0},
                output_stride=50,
                snapshot_stride=0,
            )
            res = stability(config_from_dict(doc), os.path.join(self.dir, f"n{n}"), plots=False)
            self.assertGreaterEqual(res["r_squared_energy"], 0.99)
            self.assertGreaterEqual(res["r_squared_lambda"], 0.99)
            # the fit stops ahead of the rounding floor of E - E_bar
            self.assertLess(res["window_energy"][1], 0.2)
            omegas[n] = (res["omega_energy"], res["omega_lambda"])
        for coarse, fine in zip(omegas[201], omegas[401]):
            self.assertGreater(coarse, 0.0)
            self.assertLess(abs(coarse - fine) / fine, 0.05)

    def teststabilityerrors(self):
        doc = {
            "mode": "halfline",
            "profile": {"kind": "constant_descent", "H0": 1.0, "t0": 2.0, "n": 1},
            "k": 0.1,
            "t_end": 0.1,
            "X_max": 5.0,
            "grid_n": 51,
        }
        with self.assertRaisesRegex(MeniscusParseError, "need periodic mode and a stationary solid"):
            stability(config_from_dict(doc), self.dir)

    def testnondim(self):
        params = {"H": 0.1, "sigma": 2.0, "mu_L": 0.5, "theta": 0.02, "beta_phys": 0.0, "t0": 1.0, "epsilon": 0.1}
        path = self._config("params.json", params)
        res = nondim(path)
        self.assertAlmostEqual(res["k"], 0.2, places=15)
        self.assertEqual(res["length_scale"], 1.0)
        self.assertEqual(res["time_scale"], 0.25)
        code, text = self._main(["-q", "nondim", path])
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(text), res)
        bad = self._config("bad.json", dict(params, epsilon=0.5))
        code, _ = self._main(["-q", "nondim", bad])
        self.assertEqual(code, 2)

    def testsweep(self):
        good = self._config("good.json", RUN_DOC)
        bad = self._config("bad.json", dict(RUN_DOC, gamma=1.0))
        outdir = os.path.join(self.dir, "sweep")
        codes = run_sweep([good, bad], outdir)
        self.assertEqual(codes, {good: 0, bad: 2})
        self.assertTrue(os.path.exists(os.path.join(outdir, "good", "final.json")))
        code, text = self._main(["-q", "sweep", good, bad, "--out", outdir])
        self.assertEqual(code, 2)
        self.assertEqual(json.loads(text), {good: 0, bad: 2})

    def testsweepduplicates(self):
        os.makedirs(os.path.join(self.dir, "x"))
        first = self._config("run.json", RUN_DOC)
        second = self._config(os.path.join("x", "run.json"), RUN_DOC)
        with self.assertRaisesRegex(ParameterError, "distinct file names"):
            run_sweep([first, second], self.dir)


if __name__ == "__main__":
    # import sys;sys.argv = ['', 'Test.testName']
    unittest.main()
