"""
Spatial discretisation tests for pymeniscus.spatialdisc

Created on 18 Oct 2026

@author: semuadmin
"""

import unittest

import numpy as np

from pymeniscus.exceptions import DegenerateFilm, GridTooSmall, ParameterError
from pymeniscus.meniscushelpers import observed_order
from pymeniscus.spatialdisc import (
    GhostClosure,
    Grid,
    assemble_ghosts,
    first_derivative,
    flux_divergence,
    left_ghost,
    mobility,
    mobility_deriv,
    pad,
    right_ghost,
    third_derivative,
)


class SpatialDiscTest(unittest.TestCase):
    def setUp(self):
        self.maxDiff = None
        self.grid = Grid(21, 0.0, 1.0)
        self.x = self.grid.nodes

    def tearDown(self):
        pass

    def testgrid(self):
        self.assertAlmostEqual(self.grid.dx, 0.05, places=15)
        self.assertEqual(self.grid.faces.size, 20)
        self.assertAlmostEqual(float(np.sum(self.grid.volumes)), 1.0, places=14)
        self.assertEqual(self.grid.volumes[0], 0.025)

    def testgridtoosmall(self):
        EXPECTED_ERROR = "Grid has 5 nodes, at least 7 required"
        with self.assertRaisesRegex(GridTooSmall, EXPECTED_ERROR):
            Grid(5, 0.0, 1.0)
        with self.assertRaisesRegex(ParameterError, "is empty"):
            Grid(11, 1.0, 1.0)
        with self.assertRaises(GridTooSmall):
            third_derivative(np.ones(5), self.grid)

    def testmobility(self):
        self.assertEqual(float(mobility(2.0)), 8.0)
        self.assertEqual(float(mobility(1.0, beta=3.0)), 2.0)
        self.assertEqual(float(mobility_deriv(2.0)), 12.0)
        self.assertEqual(float(mobility_deriv(1.0, beta=3.0)), 5.0)

    def testthirdderivative(self):
        np.testing.assert_allclose(third_derivative(np.full(21, 1.3), self.grid), 0.0, atol=1e-9)
        np.testing.assert_allclose(third_derivative(self.x**2, self.grid), 0.0, atol=1e-8)
        np.testing.assert_allclose(third_derivative(self.x**3, self.grid), 6.0, rtol=0, atol=1e-8)

    def testthirdderivativeclosure(self):
        closure = GhostClosure(0.0, 6.0, 3.0, 6.0)
        res = third_derivative(self.x**3, self.grid, closure)
        np.testing.assert_allclose(res, 6.0, rtol=0, atol=1e-8)

    def testfirstderivative(self):
        H = 1.0 + 0.5 * self.x**2
        np.testing.assert_allclose(first_derivative(H, self.grid), self.x, atol=1e-12)
        res = first_derivative(H, self.grid, GhostClosure(0.25, 0.0, -0.5, 0.0))
        self.assertEqual(res[0], 0.25)
        self.assertEqual(res[-1], -0.5)

    def testghosts(self):
        # H = 1 with slope 0.5 imposed at the left end
        H = np.ones(21)
        dx = self.grid.dx
        l2, l1, r1, r2 = assemble_ghosts(H, self.grid, GhostClosure(left_slope=0.5))
        slope = (-H[2] + 8.0 * H[1] - 8.0 * l1 + l2) / (12.0 * dx)
        third = (H[2] - 2.0 * H[1] + 2.0 * l1 - l2) / (2.0 * dx**3)
        self.assertAlmostEqual(slope, 0.5, places=12)
        self.assertAlmostEqual(third, 0.0, places=8)
        self.assertAlmostEqual(r1, 1.0, places=14)
        self.assertAlmostEqual(r2, 1.0, places=14)
        self.assertAlmostEqual(l1, left_ghost(1.0, 0.5, 0.0, dx), places=14)

    def testghostmirror(self):
        H = 1.0 + 0.1 * self.x + 0.2 * self.x**3
        dx = self.grid.dx
        closure = GhostClosure(0.1, 1.2, 0.7, 1.2)
        P = pad(H, self.grid, closure)
        self.assertEqual(P.size, 25)
        exact = lambda x: 1.0 + 0.1 * x + 0.2 * x**3
        np.testing.assert_allclose(P[:2], exact(np.array([-2.0, -1.0]) * dx), atol=1e-12)
        np.testing.assert_allclose(P[-2:], exact(1.0 + np.array([1.0, 2.0]) * dx), atol=1e-12)
        self.assertAlmostEqual(P[-2], right_ghost(H[-2], 0.7, 1.2, dx), places=12)

    def testdivergencesteady(self):
        res = flux_divergence(np.full(21, 0.8), self.grid, GhostClosure())
        np.testing.assert_allclose(res, 0.0, atol=1e-10)
        H = 1.0 + 0.1 * self.x
        res = flux_divergence(H, self.grid, GhostClosure(0.1, 0.0, 0.1, 0.0))
        np.testing.assert_allclose(res, 0.0, atol=1e-8)

    def testdivergenceconservative(self):
        # interior faces telescope, only the boundary fluxes remain
        H = 1.0 + 0.05 * np.cos(np.pi * self.x) + 0.02 * self.x**3
        closure = GhostClosure(0.0, 0.3, 0.06, 0.12)
        res = flux_divergence(H, self.grid, closure)
        total = float(np.sum(res * self.grid.volumes))
        expected = mobility(H[-1]) * 0.12 - mobility(H[0]) * 0.3
        self.assertAlmostEqual(total, float(expected), places=9)

    def testdivergenceorder(self):
        # d/dx (h^3 h_xxx) for h = 1 + eps x^3 is 54 eps^2 x^2 h^2
        eps = 0.1
        errors = []
        for n in (21, 41, 81):
            grid = Grid(n, 0.0, 1.0)
            x = grid.nodes
            H = 1.0 + eps * x**3
            closure = GhostClosure(0.0, 6.0 * eps, 3.0 * eps, 6.0 * eps)
            res = flux_divergence(H, grid, closure)
            exact = 54.0 * eps**2 * x**2 * H**2
            errors.append(float(np.max(np.abs(res - exact)[1:-1])))
        for order in observed_order(errors):
            self.assertGreaterEqual(order, 1.8)
            self.assertLessEqual(order, 2.2)

    def testdivergencedegenerate(self):
        H = np.ones(21)
        H[7] = 0.0
        with self.assertRaisesRegex(DegenerateFilm, "Film rupture, min height 0.0"):
            flux_divergence(H, self.grid, GhostClosure())

    def testdivergenceslip(self):
        # slip raises the mobility, hence the flux
        H = 1.0 + 0.05 * np.cos(np.pi * self.x)
        noslip = flux_divergence(H, self.grid, GhostClosure())
        slip = flux_divergence(H, self.grid, GhostClosure(), beta=3.0)
        self.assertGreater(np.max(np.abs(slip)), np.max(np.abs(noslip)))


if __name__ == "__main__":
    # import sys;sys.argv = ['', 'Test.testName']
    unittest.main()
