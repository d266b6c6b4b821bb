"""
Solid profile tests for pymeniscus.SolidProfile

Created on 18 Oct 2026

@author: semuadmin
"""

import unittest

import numpy as np

from pymeniscus.exceptions import NonSmooth, OutOfDomain, ParameterError
from pymeniscus.solidprofile import (
    SolidProfile,
    eval_g,
    eval_g_derivs,
    validate_profile,
)


class SolidProfileTest(unittest.TestCase):
    def setUp(self):
        self.maxDiff = None
        self.descent = SolidProfile("constant_descent", H0=1.0, t0=1.0, n=1)
        self.wedge = SolidProfile("wedge", htilde=[1.0, -1.0], c=2.0)
        self.flat = SolidProfile("stationary", shape=[0.5, 0.2])

    def tearDown(self):
        pass

    def testeval(self):
        self.assertEqual(eval_g(self.descent, 0.3, 0.0), 1.0)
        self.assertAlmostEqual(eval_g(self.descent, 0.3, 0.5), 0.5, places=14)
        wedge = SolidProfile("wedge", htilde=[0.5], c=2.0)
        self.assertEqual(eval_g(wedge, 0.0, 0.0), 0.5)
        self.assertAlmostEqual(eval_g(wedge, -0.25, 0.0), 1.0, places=14)
        self.assertAlmostEqual(eval_g(self.flat, 1.0, 3.0), 0.7, places=14)

    def testevalarray(self):
        x = np.linspace(0.0, 1.0, 5)
        res = eval_g(self.flat, x, 0.0)
        np.testing.assert_allclose(res, 0.5 + 0.2 * x, atol=1e-15)

    def testderivs(self):
        prof = SolidProfile("constant_descent", H0=1.0, t0=2.0, n=1)
        EXPECTED_RESULT = (0.0, -0.5, 0.0)
        self.assertEqual(eval_g_derivs(prof, 0.7, 0.0), EXPECTED_RESULT)
        res = eval_g_derivs(self.wedge, 0.1, 0.0)
        for r, e in zip(res, (2.0, -1.0, 0.0)):
            self.assertAlmostEqual(r, e, places=14)
        poly = SolidProfile("polynomial", coeffs=[1.0, 0.0, 0.5])
        res = eval_g_derivs(poly, 1.0, 0.0)
        for r, e in zip(res, (1.0, 0.0, 1.0)):
            self.assertAlmostEqual(r, e, places=14)

    def testwedgeapex(self):
        EXPECTED_ERROR = "Wedge derivative requested at apex x=0"
        with self.assertRaisesRegex(NonSmooth, EXPECTED_ERROR):
            self.wedge.derivs(0.0, 0.0)
        self.assertEqual(self.wedge.derivs(0.0, 0.0, side=1)[0], 2.0)
        self.assertEqual(self.wedge.derivs(0.0, 0.0, side=-1)[0], -2.0)
        self.assertEqual(self.wedge.derivs(-0.3, 0.0)[0], -2.0)

    def testhighdescent(self):
        prof = SolidProfile("constant_descent", H0=2.0, t0=2.0, n=3)
        self.assertAlmostEqual(prof.g(0.0, 1.0), 2.0 * (1.0 - 0.125), places=14)
        self.assertAlmostEqual(prof.velocity(1.0), -2.0 * 3.0 * 1.0 / 8.0, places=14)

    def testarea(self):
        area, darea = self.flat.area(1.0, 0.0)
        self.assertAlmostEqual(area, 0.6, places=14)
        self.assertAlmostEqual(darea, 0.7, places=14)
        area, darea = self.descent.area(0.5, 0.5)
        self.assertAlmostEqual(area, 0.25, places=14)
        self.assertAlmostEqual(darea, 0.5, places=14)

    def testproperties(self):
        self.assertTrue(self.flat.stationary)
        self.assertFalse(self.descent.stationary)
        self.assertTrue(self.wedge.separable)
        poly = SolidProfile("polynomial", coeffs=[1.0, 0.1])
        self.assertTrue(poly.stationary)

    def testdictroundtrip(self):
        for prof in (self.descent, self.wedge, self.flat):
            res = SolidProfile.from_dict(prof.to_dict())
            self.assertEqual(res.to_dict(), prof.to_dict())
            self.assertEqual(res.g(0.3, 0.2), prof.g(0.3, 0.2))
        EXPECTED_RESULT = {"kind": "constant_descent", "H0": 1.0, "t0": 1.0, "n": 1}
        self.assertEqual(self.descent.to_dict(), EXPECTED_RESULT)

    def testrepr(self):
        EXPECTED_RESULT = "<SolidProfile(stationary, shape=[0.5, 0.2])>"
        self.assertEqual(str(self.flat), EXPECTED_RESULT)
        EXPECTED_RESULT = "SolidProfile('stationary', shape=[0.5, 0.2])"
        self.assertEqual(repr(self.flat), EXPECTED_RESULT)

    def testimmutable(self):
        EXPECTED_ERROR = "Object is immutable. Updates to kind not permitted after initialisation."
        with self.assertRaisesRegex(ParameterError, EXPECTED_ERROR):
            self.flat.kind = "wedge"

    def testbadparams(self):
        with self.assertRaisesRegex(ParameterError, "Unknown profile kind cone"):
            SolidProfile("cone", c=1.0)
        with self.assertRaisesRegex(ParameterError, "H0 and t0 must be positive"):
            SolidProfile("constant_descent", H0=1.0, t0=0.0, n=1)
        with self.assertRaisesRegex(ParameterError, "Descent exponent must be an integer"):
            SolidProfile("constant_descent", H0=1.0, t0=1.0, n=1.5)
        with self.assertRaisesRegex(ParameterError, "Missing parameter 'c' for profile kind wedge"):
            SolidProfile("wedge", htilde=[1.0])

    def testoutofdomain(self):
        prof = SolidProfile("stationary", domain_hint=(0.0, 1.0), horizon=(0.0, 2.0), shape=[1.0])
        with self.assertRaises(OutOfDomain):
            prof.g(1.5, 0.0)
        with self.assertRaises(OutOfDomain):
            prof.g(0.5, 3.0)
        with self.assertRaises(OutOfDomain):
            prof.derivs(-0.5, 0.0)

    def testvalidatefail(self):
        res = validate_profile(self.descent, (0.0, 1.0), (0.0, 2.0))
        self.assertFalse(res.passed)
        self.assertFalse(res.positive)
        self.assertTrue(res.separable)
        self.assertLess(res.min_g, 0.0)
        self.assertEqual(res.argmin[1], 2.0)
        self.assertRegex(res.failures[0], "first at t=1.0")

    def testvalidatepass(self):
        res = validate_profile(self.wedge, (0.0, 1.0), (0.0, 0.5))
        self.assertTrue(res.passed)
        self.assertAlmostEqual(res.min_g, 0.5, places=14)
        self.assertEqual(res.argmin, (0.0, 0.5))

    def testvalidatesamples(self):
        with self.assertRaisesRegex(ParameterError, "At least 2 samples"):
            validate_profile(self.flat, (0.0, 1.0), (0.0, 1.0), samples=1)


if __name__ == "__main__":
    # import sys;sys.argv = ['', 'Test.testName']
    unittest.main()
