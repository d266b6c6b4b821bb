"""
Interior (squeeze) flow under the solid and flux matching at the
contact point.

In the interior region 0 < x < Lambda the horizontal velocity is
u = A y (1 - y/g) for no-slip; A solves

    A_x + r1 A + r2 = 0,  A(0, t) = 0

with r1 = 2 g_x / g, r2 = 6 g_t / g^2 (no-slip) or, for a Navier slip
coefficient beta,

    r1 = g_x (1/beta + g/3) / (g (1/beta + g/6)),
    r2 = g_t / (g (1/beta + g/6)).

For a purely vertical solid motion the no-slip solution is explicit,
A = -6 x g_t / g^2.

Created on 18 Oct 2026

:author: semuadmin
:copyright: SEMU Consulting © 2026
:license: BSD 3-Clause
"""

# pylint: disable=invalid-name

import logging
from dataclasses import dataclass

import numpy as np

from pymeniscus.exceptions import (
    DegenerateFilm,
    IntegrationFailure,
    ParameterError,
    ProfileViolation,
)
from pymeniscus.meniscustypes_core import RK4_STEPS
from pymeniscus.solidprofile import SolidProfile

logger = logging.getLogger(__name__)

NOSLIP = None
"""Distinguished slip value for the no-slip limit beta = infinity."""


@dataclass(frozen=True)
class InteriorSolution:
    """
    Sampled interior velocity coefficient A on [0, Lambda].
    """

    x: np.ndarray
    A: np.ndarray
    beta: object
    t: float

    @property
    def at_contact(self) -> float:
        """
        A(Lambda, t).

        :return: value at contact point
        :rtype: float
        """

        return float(self.A[-1])


def _positive_g(profile: SolidProfile, x, t: float, side: int = 0):
    """
    Evaluate g and derivatives, insisting on g > 0.

    :raises: ProfileViolation
    """

    g = profile.g(x, t)
    if np.any(np.asarray(g) <= 0):
        raise ProfileViolation(f"Solid touches the bottom, g={np.min(g)} at t={t}")
    gx, gt, _ = profile.derivs(x, t, side)
    return g, gx, gt


def solve_A_noslip(profile: SolidProfile, x, t: float):
    """
    Explicit no-slip interior coefficient A = -6 x g_t / g^2.

    :param SolidProfile profile: solid profile
    :param x: position (float or ndarray)
    :param float t: time
    :return: A(x,t)
    :rtype: float or ndarray
    :raises: ProfileViolation if g <= 0
    """

    g = profile.g(x, t)
    if np.any(np.asarray(g) <= 0):
        raise ProfileViolation(f"Solid touches the bottom, g={np.min(g)} at t={t}")
    A = -6.0 * np.asarray(x, dtype=float) * profile.velocity(t) / g**2
    return float(A) if np.ndim(A) == 0 else A


def ode_coefficients(g, gx, gt, beta=NOSLIP) -> tuple:
    """
    Coefficients (r1, r2) of the interior ODE.

    :param g: solid height
    :param gx: solid slope
    :param gt: solid velocity
    :param beta: slip coefficient in (0, inf), or NOSLIP (None)
    :return: tuple of (r1, r2)
    :rtype: tuple
    """

    if beta is NOSLIP:
        return 2.0 * gx / g, 6.0 * gt / g**2
    ib = 1.0 / beta
    den = g * (ib + g / 6.0)
    return gx * (ib + g / 3.0) / den, gt / den


def ode_residual(profile: SolidProfile, x, t: float, A, dAdx, beta=NOSLIP):
    """
    Pointwise residual A_x + r1 A + r2 of the interior ODE.

    :param SolidProfile profile: solid profile
    :param x: positions
    :param float t: time
    :param A: A samples
    :param dAdx: A_x samples
    :param beta: slip coefficient or NOSLIP
    :return: residual samples
    :rtype: ndarray
    """

    g, gx, gt = _positive_g(profile, x, t)
    r1, r2 = ode_coefficients(g, gx, gt, beta)
    return dAdx + r1 * A + r2


def solve_A_slip(
    profile: SolidProfile,
    beta,
    Lambda: float,
    t: float,
    steps: int = RK4_STEPS,
) -> InteriorSolution:
    """
    Integrate the general-slip interior ODE from A(0)=0 to x=Lambda with
    the classical fourth order Runge-Kutta method, fixed step Lambda/steps.

    :param SolidProfile profile: solid profile
    :param beta: slip coefficient in (0, inf), or NOSLIP (None)
    :param float Lambda: contact point
    :param float t: time
    :param int steps: number of RK4 steps (512)
    :return: sampled interior solution on steps+1 nodes
    :rtype: InteriorSolution
    :raises: ParameterError, ProfileViolation, IntegrationFailure
    """

    if beta is not NOSLIP and beta <= 0:
        raise ParameterError(f"Slip coefficient must be positive, got {beta}")
    if steps < 1:
        raise ParameterError(f"At least one integration step required, got {steps}")
    x = np.linspace(0.0, Lambda, steps + 1)
    # slopes are taken on the branch containing Lambda at a wedge apex
    side = int(np.sign(Lambda)) or 1

    def rhs(s: float, a: float) -> float:
        r1, r2 = ode_coefficients(*_positive_g(profile, s, t, side), beta)
        return -r1 * a - r2

    h = Lambda / steps
    A = np.zeros(steps + 1)
    for i in range(steps):
        s, a = x[i], A[i]
        k1 = rhs(s, a)
        k2 = rhs(s + 0.5 * h, a + 0.5 * h * k1)
        k3 = rhs(s + 0.5 * h, a + 0.5 * h * k2)
        k4 = rhs(s + h, a + h * k3)
        A[i + 1] = a + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
        if not np.isfinite(A[i + 1]):
            raise IntegrationFailure(f"Interior ODE blew up at x={x[i + 1]}")
    logger.debug("Interior ODE beta=%s Lambda=%s t=%s A(Lambda)=%s", beta, Lambda, t, A[-1])
    return InteriorSolution(x, A, beta, t)


def contact_third_derivative(A_at_Lambda: float, h_at_Lambda: float) -> float:
    """
    Third derivative of the film imposed at the contact point,
    h_xxx = A / (3 h). The film flux h^3 h_xxx / 3 is then two thirds of
    the interior flux A h^2 / 6.

    :param float A_at_Lambda: A(Lambda, t)
    :param float h_at_Lambda: film height at the contact point
    :return: h_xxx at x = Lambda
    :rtype: float
    :raises: DegenerateFilm if h <= 0
    """

    if h_at_Lambda <= 0:
        raise DegenerateFilm(f"Film height {h_at_Lambda} at contact point")
    return A_at_Lambda / (3.0 * h_at_Lambda)


def interior_flux(A: float, h: float) -> float:
    """
    Flux through the contact point from the interior region, A h^2 / 6.

    :param float A: interior coefficient at the contact point
    :param float h: film height
    :return: flux
    :rtype: float
    :raises: DegenerateFilm if h <= 0
    """

    if h <= 0:
        raise DegenerateFilm(f"Film height {h} at contact point")
    return A * h * h / 6.0


def exterior_flux(h: float, hxxx: float) -> float:
    """
    Flux through the contact point from the film region, h^3 h_xxx / 3.

    :param float h: film height
    :param float hxxx: third derivative of the film
    :return: flux
    :rtype: float
    :raises: DegenerateFilm if h <= 0
    """

    if h <= 0:
        raise DegenerateFilm(f"Film height {h} at contact point")
    return h * h * h * hxxx / 3.0


def contact_flux_value(profile: SolidProfile, Lambda: float, t: float) -> float:
    """
    Contact flux condition in the rescaled time convention,
    h h_xxx = A / 3 = -2 Lambda g_t / g^2 at x = Lambda.

    :param SolidProfile profile: solid profile
    :param float Lambda: contact point
    :param float t: time
    :return: value of h h_xxx at the contact point
    :rtype: float
    :raises: ProfileViolation
    """

    A = solve_A_noslip(profile, Lambda, t)
    return A / 3.0
