"""
SolidProfile class.

Closed-form lower boundary g(x,t) of the rigid solid. The solid only
moves vertically, so every supported kind is additively separable,
g(x,t) = s(x) + d(t), and the mixed derivative g_xt vanishes identically.

Supported kinds (configuration tag in brackets):

- ConstantDescent [constant_descent]: g = H0 (1 - (t/t0)^n)
- Wedge [wedge]: g = htilde(t) + c |x|
- PolynomialInX [polynomial]: g = sum_j coeffs[j] x^j + descent(t)
- Stationary [stationary]: g = shape(x)

Time and space functions are polynomials given by ascending
coefficient lists, so all derivatives are exact.

Created on 18 Oct 2026

:author: semuadmin
:copyright: SEMU Consulting © 2026
:license: BSD 3-Clause
"""

# pylint: disable=invalid-name, too-many-instance-attributes

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import Polynomial

from pymeniscus.exceptions import NonSmooth, OutOfDomain, ParameterError
from pymeniscus.meniscushelpers import integrate
from pymeniscus.meniscustypes_core import (
    CONSTANT_DESCENT,
    POLYNOMIAL,
    PROFILE_KINDS,
    SOLID_SUBGRID,
    STATIONARY,
    WEDGE,
)


@dataclass(frozen=True)
class ValidationReport:
    """
    Result of :func:`validate_profile`.
    """

    min_g: float
    argmin: tuple
    positive: bool
    separable: bool
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """
        True if no structural assumption is violated.

        :return: pass flag
        :rtype: bool
        """

        return not self.failures


class SolidProfile:
    """
    SolidProfile class.
    """

    def __init__(
        self,
        kind: str,
        domain_hint: tuple = (-np.inf, np.inf),
        horizon: tuple = (0.0, np.inf),
        **params,
    ):
        """
        Constructor.

        Keyword parameters by kind:

        - constant_descent: H0, t0, n
        - wedge: htilde (time coefficients), c
        - polynomial: coeffs (space coefficients), descent (time coefficients, [0])
        - stationary: shape (space coefficients)

        :param str kind: profile kind, one of PROFILE_KINDS
        :param tuple domain_hint: spatial interval of validity (-inf, inf)
        :param tuple horizon: time interval of validity (0, inf)
        :raises: ParameterError if kind or parameters invalid
        """

        # object is mutable during initialisation only
        super().__setattr__("_immutable", False)

        if kind not in PROFILE_KINDS:
            raise ParameterError(
                f"Unknown profile kind {kind} - should be one of {PROFILE_KINDS}"
            )
        self.kind = kind
        self.domain_hint = (float(domain_hint[0]), float(domain_hint[1]))
        self.horizon = (float(horizon[0]), float(horizon[1]))
        self._params = dict(params)
        self._space, self._time, self._abs = self._build(kind, params)
        self._dspace = self._space.deriv(1)
        self._ddspace = self._space.deriv(2)
        self._dtime = self._time.deriv(1)
        self._immutable = True

    @staticmethod
    def _build(kind: str, params: dict) -> tuple:
        """
        Decompose profile into (space polynomial, time polynomial, |x| flag).

        :param str kind: profile kind
        :param dict params: kind parameters
        :return: tuple of (Polynomial, Polynomial, bool)
        :rtype: tuple
        :raises: ParameterError
        """

        try:
            if kind == CONSTANT_DESCENT:
                H0 = float(params["H0"])
                t0 = float(params["t0"])
                n = params["n"]
                if t0 <= 0 or H0 <= 0:
                    raise ParameterError(f"H0 and t0 must be positive, got {H0}, {t0}")
                if int(n) != n or n < 1:
                    raise ParameterError(f"Descent exponent must be an integer >= 1, got {n}")
                tcoef = np.zeros(int(n) + 1)
                tcoef[0] = H0
                tcoef[-1] = -H0 / t0 ** int(n)
                return Polynomial([0.0]), Polynomial(tcoef), False
            if kind == WEDGE:
                return (
                    Polynomial([0.0, float(params["c"])]),
                    Polynomial(np.atleast_1d(np.asarray(params["htilde"], dtype=float))),
                    True,
                )
            if kind == POLYNOMIAL:
                return (
                    Polynomial(np.asarray(params["coeffs"], dtype=float)),
                    Polynomial(np.atleast_1d(np.asarray(params.get("descent", [0.0]), dtype=float))),
                    False,
                )
            # STATIONARY
            return (
                Polynomial(np.asarray(params["shape"], dtype=float)),
                Polynomial([0.0]),
                False,
            )
        except KeyError as err:
            raise ParameterError(f"Missing parameter {err} for profile kind {kind}") from err

    def _check(self, x, t):
        """
        Check query point against validity intervals.

        :raises: OutOfDomain
        """

        xa = np.asarray(x, dtype=float)
        if np.any(xa < self.domain_hint[0]) or np.any(xa > self.domain_hint[1]):
            raise OutOfDomain(f"x={x} outside profile domain {self.domain_hint}")
        if t < self.horizon[0] or t > self.horizon[1]:
            raise OutOfDomain(f"t={t} outside profile horizon {self.horizon}")

    def _sx(self, x):
        """Space argument, |x| for the wedge."""

        return np.abs(x) if self._abs else x

    def g(self, x, t: float):
        """
        Evaluate g(x,t).

        :param x: position (float or ndarray)
        :param float t: time
        :return: g(x,t)
        :rtype: float or ndarray
        :raises: OutOfDomain
        """

        self._check(x, t)
        val = self._space(self._sx(np.asarray(x, dtype=float))) + self._time(t)
        return float(val) if np.ndim(val) == 0 else val

    def derivs(self, x, t: float, side: int = 0) -> tuple:
        """
        Exact derivatives (g_x, g_t, g_xx) at (x,t).

        For the wedge, ``side`` (+1 or -1) selects the one-sided slope at
        the apex; with side=0 an apex query raises NonSmooth.

        :param x: position (float or ndarray)
        :param float t: time
        :param int side: branch at a wedge apex (0)
        :return: tuple of (gx, gt, gxx)
        :rtype: tuple
        :raises: OutOfDomain, NonSmooth at a wedge apex
        """

        self._check(x, t)
        xa = np.asarray(x, dtype=float)
        if self._abs:
            if side == 0 and np.any(xa == 0.0):
                raise NonSmooth("Wedge derivative requested at apex x=0 - query one side")
            sgn = np.where(xa == 0.0, np.sign(side), np.sign(xa))
            gx = sgn * self._dspace(np.abs(xa))
            gxx = self._ddspace(np.abs(xa))
        else:
            gx = self._dspace(xa)
            gxx = self._ddspace(xa)
        gt = self.velocity(t)
        if np.ndim(gx) == 0:
            return float(gx), gt, float(gxx)
        return gx, np.full_like(gx, gt), gxx

    def velocity(self, t: float) -> float:
        """
        Vertical solid velocity g_t, independent of x.

        :param float t: time
        :return: g_t
        :rtype: float
        """

        return float(self._dtime(t))

    def area(self, Lambda: float, t: float, intervals: int = SOLID_SUBGRID) -> tuple:
        """
        Area under the solid on (0, Lambda), composite trapezoid on
        its own subgrid, and its exact derivative with respect to Lambda.

        :param float Lambda: contact point
        :param float t: time
        :param int intervals: subgrid intervals (512)
        :return: tuple of (area, d area / d Lambda)
        :rtype: tuple
        """

        s = np.linspace(0.0, 1.0, intervals + 1)
        x = s * Lambda
        if self._abs:
            # avoid the apex kink in the derivative; g is continuous there
            gx = np.sign(x) * self._dspace(np.abs(x))
        else:
            gx = self._dspace(x)
        gv = self.g(x, t)
        ds = 1.0 / intervals
        area = Lambda * integrate(gv, ds)
        darea = integrate(gv, ds) + Lambda * integrate(s * gx, ds)
        return area, darea

    @property
    def separable(self) -> bool:
        """
        g_xt vanishes identically for every supported kind.

        :return: True
        :rtype: bool
        """

        return True

    @property
    def stationary(self) -> bool:
        """
        True if g does not depend on time.

        :return: stationary flag
        :rtype: bool
        """

        return not np.any(self._dtime.coef)

    def to_dict(self) -> dict:
        """
        Tagged-record representation used in run configuration.

        :return: dict e.g. {"kind": "constant_descent", "H0": 1.0, "t0": 3.0, "n": 1}
        :rtype: dict
        """

        out = {"kind": self.kind}
        for key, val in self._params.items():
            out[key] = list(val) if isinstance(val, (list, tuple, np.ndarray)) else val
        return out

    @classmethod
    def from_dict(cls, record: dict) -> "SolidProfile":
        """
        Construct from tagged record.

        :param dict record: tagged record
        :return: SolidProfile
        :rtype: SolidProfile
        """

        params = dict(record)
        kind = params.pop("kind", None)
        return cls(kind, **params)

    def __str__(self) -> str:
        """
        Human readable representation.

        :return: human readable representation
        :rtype: str
        """

        atts = ", ".join(f"{k}={v}" for k, v in self._params.items())
        return f"<SolidProfile({self.kind}, {atts})>"

    def __repr__(self) -> str:
        """
        Machine readable representation.

        :return: machine readable representation
        :rtype: str
        """

        atts = ", ".join(f"{k}={v!r}" for k, v in self._params.items())
        return f"SolidProfile('{self.kind}', {atts})"

    def __setattr__(self, name, value):
        """
        Override setattr to make object immutable after instantiation.

        :param str name: attribute name
        :param object value: attribute value
        :raises: ParameterError
        """

        if self._immutable:
            raise ParameterError(
                f"Object is immutable. Updates to {name} not permitted after initialisation."
            )

        super().__setattr__(name, value)


def eval_g(profile: SolidProfile, x, t: float):
    """
    Evaluate the solid profile g(x,t).

    :param SolidProfile profile: solid profile
    :param x: position
    :param float t: time
    :return: g(x,t)
    :rtype: float or ndarray
    :raises: OutOfDomain
    """

    return profile.g(x, t)


def eval_g_derivs(profile: SolidProfile, x, t: float) -> tuple:
    """
    Exact derivatives of the solid profile.

    :param SolidProfile profile: solid profile
    :param x: position
    :param float t: time
    :return: tuple of (gx, gt, gxx)
    :rtype: tuple
    :raises: OutOfDomain, NonSmooth
    """

    return profile.derivs(x, t)


def validate_profile(
    profile: SolidProfile, x_range: tuple, t_range: tuple, samples: int = 11
) -> ValidationReport:
    """
    Check the structural assumptions of the solid on a sample grid:
    positivity g > 0 and time independence of the slope g_x.

    :param SolidProfile profile: solid profile
    :param tuple x_range: (x_min, x_max)
    :param tuple t_range: (t_min, t_max)
    :param int samples: samples per axis, at least 2 (11)
    :return: validation report; failures are carried, not raised
    :rtype: ValidationReport
    :raises: ParameterError if samples < 2
    """

    if samples < 2:
        raise ParameterError(f"At least 2 samples per axis required, got {samples}")
    xs = np.linspace(x_range[0], x_range[1], samples)
    ts = np.linspace(t_range[0], t_range[1], samples)
    gvals = np.array([profile.g(xs, t) for t in ts])
    idx = np.unravel_index(np.argmin(gvals), gvals.shape)
    min_g = float(gvals[idx])
    argmin = (float(xs[idx[1]]), float(ts[idx[0]]))
    failures = []
    positive = min_g > 0
    if not positive:
        bad_t = ts[np.any(gvals <= 0, axis=1)]
        failures.append(
            f"g <= 0 (min {min_g} at x={argmin[0]}, t={argmin[1]}), first at t={bad_t[0]}"
        )
    # slope must not change in time; skip a wedge apex sample
    xs_s = xs[xs != 0.0] if profile.kind == WEDGE else xs
    separable = profile.separable
    if xs_s.size:
        gx0 = profile.derivs(xs_s, ts[0])[0]
        for t in ts[1:]:
            if not np.array_equal(profile.derivs(xs_s, t)[0], gx0):
                separable = False
                break
    if not separable:
        failures.append("g_x depends on t (solid not in purely vertical motion)")
    return ValidationReport(min_g, argmin, positive, separable, failures)
