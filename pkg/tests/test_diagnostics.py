"""
Diagnostics tests for pymeniscus.diagnostics

Created on 18 Oct 2026

@author: semuadmin
"""

import unittest
from types import SimpleNamespace

import numpy as np
from scipy.integrate import trapezoid

from pymeniscus.diagnostics import (
    DiagnosticsRecord,
    decay_window,
    discrete_poincare,
    dissipation_rate,
    energy_excess,
    fit_decay,
    h1_distance,
    total_energy,
    total_mass,
)
from pymeniscus.equilibrium import InterfaceEnergies, steady_profile
from pymeniscus.exceptions import (
    DegenerateFilm,
    GridTooSmall,
    NonPositiveSeries,
    ParameterError,
    SingularConstraint,
)
from pymeniscus.filmstepper import FilmState, perturbed_state, steady_state
from pymeniscus.meniscustypes_core import DIAG_COLUMNS
from pymeniscus.solidprofile import SolidProfile
from pymeniscus.spatialdisc import Grid


class DiagnosticsTest(unittest.TestCase):
    def setUp(self):
        self.maxDiff = None
        self.flat = SolidProfile("stationary", shape=[0.9, 0.2])
        self.level = SolidProfile("stationary", shape=[1.0])

    def tearDown(self):
        pass

    def testmass(self):
        state = FilmState(np.ones(41), 0.0, 0.0, Grid(41, 0.0, 2.0))
        self.assertAlmostEqual(total_mass(state, self.level), 2.0, places=12)
        state = FilmState(np.ones(31), 0.5, 0.0, Grid(31, 0.5, 2.0))
        self.assertAlmostEqual(total_mass(state, self.level), 2.0, places=12)

    def testmassstretched(self):
        # heights live on the reference grid, the volume on (Lambda, L)
        state = FilmState(np.ones(31), 1.0, 0.0, Grid(31, 0.5, 2.0))
        self.assertAlmostEqual(total_mass(state, self.level), 2.0, places=12)

    def testenergysteady(self):
        state = steady_state(self.flat, 0.1, 0.5, 2.0, 201)
        # int (x - 2)^2 / 225 over (0.5, 2)
        res = total_energy(state, self.flat, InterfaceEnergies())
        self.assertAlmostEqual(res, 0.005, places=6)

    def testenergyclosureslopes(self):
        state = perturbed_state(self.flat, 0.1, 0.5, 2.0, 51, 1e-2, "random", seed=2)
        grid = state.physical_grid
        hx = np.empty(51)
        hx[1:-1] = (state.H[2:] - state.H[:-2]) / (2.0 * grid.dx)
        # g_x - k at the contact point, zero slope at L
        hx[0], hx[-1] = 0.2 - 0.1, 0.0
        expected = float(trapezoid(hx**2, dx=grid.dx))
        res = total_energy(state, self.flat, InterfaceEnergies(), k=0.1)
        self.assertAlmostEqual(res, expected, places=15)
        self.assertNotAlmostEqual(res, total_energy(state, self.flat, InterfaceEnergies()), places=12)
        steady = steady_state(self.flat, 0.1, 0.5, 2.0, 201)
        self.assertAlmostEqual(total_energy(steady, self.flat, InterfaceEnergies(), k=0.1), 0.005, places=6)

    def testenergysolidterms(self):
        state = FilmState(np.ones(21), 0.5, 0.0, Grid(21, 0.5, 2.0))
        res = total_energy(state, self.flat, InterfaceEnergies(0.75, 1.0, 0.0))
        self.assertAlmostEqual(res, 0.75 * 0.04 * 0.5, places=12)
        res = total_energy(state, self.flat, InterfaceEnergies(0.0, 1.0, 0.5))
        self.assertAlmostEqual(res, 0.5 * 0.04 * 1.5, places=12)

    def testdissipation(self):
        eps = 1e-3
        grid = Grid(101, 0.0, 1.0)
        state = FilmState(1.0 + eps * grid.nodes**3, 0.0, 0.0, grid)
        # 2 int h^3 (6 eps)^2 with h ~ 1
        self.assertAlmostEqual(dissipation_rate(state, 1.0), 72.0 * eps**2, delta=72.0 * eps**2 * 1e-2)
        self.assertGreater(dissipation_rate(state, 1.0, beta=2.0), dissipation_rate(state, 1.0))
        flat = FilmState(np.full(21, 0.7), 0.0, 0.0, Grid(21, 0.0, 1.0))
        self.assertLess(dissipation_rate(flat, 1.0), 1e-15)

    def testdissipationdegenerate(self):
        H = np.ones(21)
        H[4] = -0.1
        state = SimpleNamespace(H=H, physical_grid=Grid(21, 0.0, 1.0))
        with self.assertRaisesRegex(DegenerateFilm, "Film rupture, min height -0.1"):
            dissipation_rate(state, 1.0)

    def testh1distance(self):
        state = steady_state(self.flat, 0.1, 0.5, 2.0, 101)
        sol = steady_profile(self.flat, 0.1, 0.5, 2.0)
        self.assertLess(h1_distance(state, sol), 1e-12)
        bumped = FilmState(state.H + 0.01, state.Lambda, state.t, state.grid)
        self.assertAlmostEqual(h1_distance(bumped, sol), 0.01 * np.sqrt(1.5), places=10)
        self.assertEqual(energy_excess(0.3, 0.25), 0.3 - 0.25)

    def testfitdecay(self):
        t = np.linspace(0.0, 5.0, 50)
        res = fit_decay(np.column_stack((t, 3.0 * np.exp(-0.7 * t))))
        self.assertAlmostEqual(res.omega, 0.7, places=12)
        self.assertAlmostEqual(res.prefactor, 3.0, places=10)
        self.assertAlmostEqual(res.r_squared, 1.0, places=12)
        self.assertEqual(res.window, (0.0, 5.0))

    def testfitdecaywindow(self):
        t = np.linspace(0.0, 5.0, 50)
        # fast transient outside the window
        v = 3.0 * np.exp(-0.7 * t) + np.where(t < 1.0, 5.0, 0.0)
        res = fit_decay(list(zip(t, v)), window=(1.0, 4.0))
        self.assertAlmostEqual(res.omega, 0.7, places=12)
        self.assertGreaterEqual(res.window[0], 1.0)
        self.assertLessEqual(res.window[1], 4.0)

    def testfitdecayconstant(self):
        t = np.linspace(0.0, 1.0, 20)
        res = fit_decay(np.column_stack((t, np.full(20, 2.0))))
        self.assertAlmostEqual(res.omega, 0.0, places=12)
        self.assertAlmostEqual(res.prefactor, 2.0, places=12)

    def testfitdecayerrors(self):
        t = np.linspace(0.0, 1.0, 20)
        v = np.exp(-t)
        v[7] = 0.0
        with self.assertRaisesRegex(NonPositiveSeries, "Decay series has non-positive value"):
            fit_decay(np.column_stack((t, v)))
        with self.assertRaisesRegex(ParameterError, "Decay fit needs 10 points, got 9"):
            fit_decay(np.column_stack((t[:9], np.exp(-t[:9]))))
        with self.assertRaisesRegex(ParameterError, "got 0"):
            fit_decay(np.column_stack((t, np.exp(-t))), window=(2.0, 3.0))

    def testdecaywindow(self):
        t = np.linspace(0.0, 10.0, 101)
        series = np.column_stack((t, 3.0 * np.exp(-0.7 * t)))
        # first value at or below 0.03 is at t = 6.6
        lo, hi = decay_window(series)
        self.assertAlmostEqual(hi, 6.5, places=12)
        self.assertAlmostEqual(lo, 3.25, places=12)
        # a series that never reaches its floor keeps its full span
        lo, hi = decay_window(series[:30])
        self.assertEqual((lo, hi), (float(t[0] + 0.5 * t[29]), float(t[29])))

    def testdecaywindowroundoff(self):
        # a rounding bias turns the tail negative
        t = np.linspace(0.0, 10.0, 201)
        series = np.column_stack((t, 2.0 * np.exp(-3.0 * t) - 1e-9))
        with self.assertRaises(NonPositiveSeries):
            fit_decay(series)
        window = decay_window(series)
        self.assertLess(window[1], np.log(100.0) / 3.0)
        res = fit_decay(series, window)
        self.assertAlmostEqual(res.omega, 3.0, places=5)
        self.assertGreater(res.r_squared, 0.999999)

    def testdecaywindowscale(self):
        t = np.linspace(0.0, 1.0, 20)
        v = np.array([1.0, 0.5, 0.3, -1e-12] + [0.2] * 16)
        self.assertEqual(decay_window(np.column_stack((t, v)))[1], float(t[2]))
        # 1e3 rounding units of 1e4 is about 2.2e-9
        small = np.column_stack((t, 1e-9 * np.exp(-t)))
        with self.assertRaisesRegex(ParameterError, "Decay series starts at 1e-09, at or below its floor"):
            decay_window(small, scale=1e4)
        self.assertEqual(decay_window(small)[1], 1.0)
        with self.assertRaisesRegex(ParameterError, "Decay series is empty"):
            decay_window([])

    def testpoincare(self):
        coarse = discrete_poincare(Grid(200, 0.0, 1.0), 1.0, n_modes=3)
        fine = discrete_poincare(Grid(400, 0.0, 1.0), 1.0)
        finest = discrete_poincare(Grid(800, 0.0, 1.0), 1.0)
        for res in (coarse, fine, finest):
            self.assertGreater(res.mu, 0.0)
        self.assertLessEqual(abs(coarse.mu - fine.mu), 0.02 * fine.mu)
        self.assertLessEqual(abs(fine.mu - finest.mu), 0.02 * finest.mu)
        self.assertEqual(coarse.n, 200)
        self.assertAlmostEqual(coarse.constant_C, 1.0 / coarse.mu, places=14)
        self.assertEqual(len(coarse.spectrum), 3)
        self.assertEqual(coarse.spectrum[0], coarse.mu)
        self.assertTrue(np.all(np.diff(coarse.spectrum) >= 0))
        self.assertTrue(np.isfinite(coarse.trace_constant))
        self.assertGreater(coarse.trace_constant, 0.0)

    def testpoincarezeromean(self):
        # without the mean constraint an admissible quadratic has phi_xxx = 0
        constrained = discrete_poincare(Grid(100, 0.0, 1.0), 1.0)
        free = discrete_poincare(Grid(100, 0.0, 1.0), 1.0, zero_mean=False)
        self.assertGreater(constrained.mu, 0.0)
        self.assertEqual(free.mu, 0.0)
        self.assertEqual(free.constant_C, np.inf)
        self.assertEqual(free.trace_constant, np.inf)
        self.assertEqual(free.spectrum, [0.0])

    def testpoincaresingular(self):
        # zero slopes at both ends with no mean constraint admit constants
        with self.assertRaisesRegex(SingularConstraint, "Constraints leave constant functions admissible"):
            discrete_poincare(Grid(100, 0.0, 1.0), 0.0, zero_mean=False)
        self.assertGreater(discrete_poincare(Grid(100, 0.0, 1.0), 0.0).mu, 0.0)

    def testpoincaretoosmall(self):
        with self.assertRaisesRegex(GridTooSmall, "Grid has 30 nodes, at least 50 required"):
            discrete_poincare(Grid(30, 0.0, 1.0), 1.0)

    def testrecord(self):
        rec = DiagnosticsRecord(0.1, 2.0, 0.005, 1e-05, 0.5, 1.0, 3, 0.001)
        EXPECTED_RESULT = ["0.1", "2.0", "0.005", "1e-05", "0.5", "1.0", "3", "0.001"]
        self.assertEqual(rec.to_row(), EXPECTED_RESULT)
        self.assertEqual(list(rec.to_dict()), list(DIAG_COLUMNS))
        self.assertEqual(rec.to_dict()["lambda"], "0.5")

    def testrecordfromstate(self):
        state = steady_state(self.flat, 0.1, 0.5, 2.0, 51)
        rec = DiagnosticsRecord.from_state(state, self.flat, InterfaceEnergies(), newton_iters=2, dt=1e-3)
        self.assertEqual(rec.Lambda, 0.5)
        self.assertEqual(rec.newton_iters, 2)
        self.assertEqual(rec.min_h, float(np.min(state.H)))
        self.assertAlmostEqual(rec.mass, total_mass(state, self.flat), places=15)


if __name__ == "__main__":
    # import sys;sys.argv = ['', 'Test.testName']
    unittest.main()
