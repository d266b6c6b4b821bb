"""
Refinement study tests for pymeniscus.convergence

Created on 18 Oct 2026

@author: semuadmin
"""

import unittest

import numpy as np

from pymeniscus.convergence import (
    ConvergenceReport,
    manufactured_solution,
    manufactured_source,
    spatial_convergence,
    temporal_convergence,
)
from pymeniscus.equilibrium import InterfaceEnergies
from pymeniscus.exceptions import ParameterError
from pymeniscus.filmstepper import StepperConfig, perturbed_state
from pymeniscus.solidprofile import SolidProfile


class ConvergenceTest(unittest.TestCase):
    def setUp(self):
        self.maxDiff = None
        self.flat = SolidProfile("stationary", shape=[0.9, 0.2])

    def tearDown(self):
        pass

    def testmanufactured(self):
        x = np.linspace(0.0, 1.0, 11)
        np.testing.assert_allclose(manufactured_solution(x, 0.0), 1.0 + 0.1 * np.cos(np.pi * x), atol=1e-15)
        # at x = 1/2 only m'(1) u_x u_xxx = -3 A^2 pi^4 remains
        self.assertAlmostEqual(float(manufactured_source(0.5, 0.0)), -0.03 * np.pi**4, places=12)
        # at x = 0: u_t = -0.1, m(1.1) pi^4 0.1
        self.assertAlmostEqual(
            float(manufactured_source(0.0, 0.0)), -0.1 + 1.1**3 * np.pi**4 * 0.1, places=12
        )

    def testspatialorder(self):
        res = spatial_convergence()
        self.assertEqual(res.kind, "spatial")
        self.assertEqual(res.sizes, [0.05, 0.025, 0.0125, 0.00625])
        self.assertEqual(len(res.orders), 3)
        for order in res.orders:
            self.assertGreaterEqual(order, 1.8)
            self.assertLessEqual(order, 2.2)
        self.assertTrue(np.all(np.diff(res.errors) < 0))

    def testtemporalorder(self):
        initial = perturbed_state(self.flat, 0.1, 0.5, 2.0, 31, 1e-2)
        res = temporal_convergence(
            initial,
            self.flat,
            0.1,
            StepperConfig(dt=2e-3),
            0.016,
            levels=4,
            energies=InterfaceEnergies(0.75, 1.0, 0.0),
        )
        self.assertEqual(res.kind, "temporal")
        self.assertEqual(res.sizes, [2e-3, 1e-3, 5e-4])
        self.assertEqual(len(res.errors), 3)
        # BDF1 halves the difference per level
        for order in res.orders:
            self.assertGreaterEqual(order, 0.8)
            self.assertLessEqual(order, 1.4)
        self.assertEqual(len(res.extra["energy_defects"]), 4)
        self.assertTrue(np.all(np.isfinite(res.extra["energy_defects"])))
        self.assertEqual(len(res.extra["energy_orders"]), 2)
        for order in res.extra["energy_orders"]:
            self.assertGreaterEqual(order, 0.9)

    def testtemporallevels(self):
        initial = perturbed_state(self.flat, 0.1, 0.5, 2.0, 31, 1e-2)
        with self.assertRaisesRegex(ParameterError, "at least 3 levels, got 2"):
            temporal_convergence(initial, self.flat, 0.1, StepperConfig(dt=2e-3), 0.016, levels=2)

    def testreportdict(self):
        rep = ConvergenceReport("temporal", [0.1, 0.05], [1e-3, 2.5e-4], [2.0], {"energy_defects": [1.0]})
        EXPECTED_RESULT = {
            "kind": "temporal",
            "sizes": [0.1, 0.05],
            "errors": [1e-3, 2.5e-4],
            "orders": [2.0],
            "energy_defects": [1.0],
        }
        self.assertEqual(rep.to_dict(), EXPECTED_RESULT)


if __name__ == "__main__":
    # import sys;sys.argv = ['', 'Test.testName']
    unittest.main()
