"""
Steady states of the periodic meniscus.

With the solid at rest the energy minimiser under a volume constraint
is the parabola

    h(x) = coeff2 (x - L)^2 + apex,
    coeff2 = (g_x - k) / (2 (Lambda - L)),
    apex   = g(Lambda) - (g_x - k) (Lambda - L) / 2,

with all solid data taken at the equilibrium contact point Lambda.
Energy stationarity gives the Lagrange multiplier
lambda = 2 b (g_x - k) / (L - Lambda) and Young's relation
b k^2 + g_x^2 (a - b - c) = 0.

Created on 18 Oct 2026

:author: semuadmin
:copyright: SEMU Consulting © 2026
:license: BSD 3-Clause
"""

# pylint: disable=invalid-name

import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from pymeniscus.exceptions import (
    DegenerateFilm,
    EnergyConstraintViolation,
    NonmonotoneVolume,
    ParameterError,
    ProfileViolation,
    VolumeUnattainable,
)
from pymeniscus.meniscustypes_core import BRENT_RTOL, BRENT_XTOL, VOLUME_RTOL, VOLUME_SCAN_POINTS
from pymeniscus.solidprofile import SolidProfile

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InterfaceEnergies:
    """
    Interfacial energy coefficients: a (liquid-solid), b (liquid-gas),
    c (gas-solid).
    """

    a: float = 0.0
    b: float = 1.0
    c: float = 0.0

    def __post_init__(self):
        if self.b <= 0 or self.a < 0 or self.c < 0:
            raise ParameterError(
                f"Energies need a, c >= 0 and b > 0, got a={self.a}, b={self.b}, c={self.c}"
            )
        if (self.b + self.c - self.a) / self.b <= 0:
            raise EnergyConstraintViolation(
                f"(b+c-a)/b must be positive, got {(self.b + self.c - self.a) / self.b}"
            )

    @property
    def gamma(self) -> float:
        """
        sqrt((b+c-a)/b), the ratio k / g_x at equilibrium.

        :return: gamma
        :rtype: float
        """

        return float(np.sqrt((self.b + self.c - self.a) / self.b))

    def to_dict(self) -> dict:
        """
        Configuration record.

        :return: dict
        :rtype: dict
        """

        return {"a": self.a, "b": self.b, "c": self.c}


@dataclass(frozen=True)
class EquilibriumSolution:
    """
    Steady parabola on (Lambda_bar, L) and its Lagrange multiplier.
    """

    Lambda_bar: float
    L: float
    coeff2: float
    apex: float
    lagrange: float
    min_h: float

    def evaluate(self, x):
        """
        h(x) = coeff2 (x - L)^2 + apex.

        :param x: position(s)
        :return: heights
        """

        return self.coeff2 * (np.asarray(x, dtype=float) - self.L) ** 2 + self.apex

    def slope(self, x):
        """
        h'(x) = 2 coeff2 (x - L).

        :param x: position(s)
        :return: slopes
        """

        return 2.0 * self.coeff2 * (np.asarray(x, dtype=float) - self.L)

    @property
    def volume(self) -> float:
        """
        Exact film volume on (Lambda_bar, L).

        :return: volume
        :rtype: float
        """

        w = self.L - self.Lambda_bar
        return self.coeff2 * w**3 / 3.0 + self.apex * w


def _parabola(profile: SolidProfile, k: float, Lambda_bar: float, L: float, t: float = 0.0) -> tuple:
    """
    Parabola coefficients (coeff2, apex, g_x - k) without validity checks.
    """

    g = profile.g(Lambda_bar, t)
    slope = profile.derivs(Lambda_bar, t, side=1)[0] - k
    coeff2 = slope / (2.0 * (Lambda_bar - L))
    apex = g - slope * (Lambda_bar - L) / 2.0
    return coeff2, apex, slope


def steady_profile(
    profile: SolidProfile,
    k: float,
    Lambda_bar: float,
    L: float,
    energies: "InterfaceEnergies" = None,
) -> EquilibriumSolution:
    """
    Steady parabola through the contact point with slope g_x - k and
    zero slope at L.

    :param SolidProfile profile: stationary solid profile
    :param float k: contact angle
    :param float Lambda_bar: equilibrium contact point
    :param float L: symmetry point
    :param InterfaceEnergies energies: energies for the multiplier (b=1)
    :return: equilibrium solution
    :rtype: EquilibriumSolution
    :raises: ParameterError, ProfileViolation, DegenerateFilm
    """

    if not Lambda_bar < L:
        raise ParameterError(f"Contact point {Lambda_bar} must lie left of L={L}")
    if profile.g(Lambda_bar, 0.0) <= 0:
        raise ProfileViolation(f"Solid touches the bottom at {Lambda_bar}")
    coeff2, apex, _ = _parabola(profile, k, Lambda_bar, L)
    # vertex sits at L, so the minimum is at an end point
    min_h = float(min(coeff2 * (Lambda_bar - L) ** 2 + apex, apex))
    if min_h <= 0:
        raise DegenerateFilm(f"Equilibrium film touches the bottom, min height {min_h}")
    energies = InterfaceEnergies() if energies is None else energies
    lam = lagrange_multiplier(profile, k, Lambda_bar, L, energies)
    return EquilibriumSolution(float(Lambda_bar), float(L), float(coeff2), float(apex), lam, min_h)


def lagrange_multiplier(
    profile: SolidProfile, k: float, Lambda_bar: float, L: float, energies: InterfaceEnergies
) -> float:
    """
    lambda = 2 b (g_x - k) / (L - Lambda_bar); h'' = -lambda / (2 b).

    :param SolidProfile profile: solid profile
    :param float k: contact angle
    :param float Lambda_bar: equilibrium contact point
    :param float L: symmetry point
    :param InterfaceEnergies energies: energies
    :return: Lagrange multiplier
    :rtype: float
    """

    gx = profile.derivs(Lambda_bar, 0.0, side=1)[0]
    return float(2.0 * energies.b * (gx - k) / (L - Lambda_bar))


def young_angle(energies: InterfaceEnergies, gx: float) -> float:
    """
    Contact angle from Young's relation, k = sqrt(1 - (a-c)/b) g_x.

    :param InterfaceEnergies energies: energies
    :param float gx: solid slope at the contact point (> 0)
    :return: contact angle k
    :rtype: float
    :raises: EnergyConstraintViolation, ParameterError if gx <= 0
    """

    radicand = 1.0 - (energies.a - energies.c) / energies.b
    if radicand <= 0:
        raise EnergyConstraintViolation(f"(b+c-a)/b must be positive, got {radicand}")
    if gx <= 0:
        raise ParameterError(f"Young's relation needs a positive solid slope, got {gx}")
    return float(np.sqrt(radicand) * gx)


def profile_convexity(energies: InterfaceEnergies, gx: float) -> int:
    """
    Sign of the steady curvature h'' for a Young-consistent contact
    angle: +1 convex (gamma > 1, i.e. c > a), -1 concave (gamma < 1),
    0 flat.

    :param InterfaceEnergies energies: energies
    :param float gx: solid slope at the contact point
    :return: curvature sign
    :rtype: int
    """

    # h'' = g_x (1 - gamma) / (Lambda - L) with Lambda < L
    return int(np.sign(gx * (energies.gamma - 1.0)))


def volume(Lambda_bar: float, profile: SolidProfile, k: float, L: float) -> float:
    """
    Liquid volume of the equilibrium with contact point Lambda_bar,
    area under the solid plus the parabola integral.

    :param float Lambda_bar: contact point
    :param SolidProfile profile: stationary solid profile
    :param float k: contact angle
    :param float L: symmetry point
    :return: volume
    :rtype: float
    """

    coeff2, apex, _ = _parabola(profile, k, Lambda_bar, L)
    w = L - Lambda_bar
    return float(profile.area(Lambda_bar, 0.0)[0] + coeff2 * w**3 / 3.0 + apex * w)


def equilibrium_positions(
    V0: float,
    profile: SolidProfile,
    k: float,
    L: float,
    Lambda_range: tuple = None,
    points: int = VOLUME_SCAN_POINTS,
) -> list:
    """
    All contact points Lambda_bar with volume(Lambda_bar) = V0: scan for
    sign changes, then polish each bracket with Brent's method.

    :param float V0: liquid volume
    :param SolidProfile profile: stationary solid profile
    :param float k: contact angle
    :param float L: symmetry point
    :param tuple Lambda_range: scan interval (0, L)
    :param int points: scan points (1000)
    :return: sorted roots
    :rtype: list
    :raises: VolumeUnattainable
    """

    lo, hi = (0.0, L) if Lambda_range is None else Lambda_range
    hi = min(hi, L - (L - lo) * 1e-6)
    lams = np.linspace(lo, hi, points)
    vals = np.array([volume(lam, profile, k, L) for lam in lams]) - V0

    def fun(lam: float) -> float:
        return volume(lam, profile, k, L) - V0

    roots = [float(lam) for lam, v in zip(lams, vals) if v == 0.0]
    for i in np.nonzero(vals[:-1] * vals[1:] < 0)[0]:
        root = brentq(fun, lams[i], lams[i + 1], xtol=BRENT_XTOL, rtol=BRENT_RTOL, maxiter=200)
        roots.append(float(root))
    if not roots:
        raise VolumeUnattainable(
            f"Volume {V0} outside the attainable range "
            f"[{np.min(vals) + V0}, {np.max(vals) + V0}] on [{lo}, {hi}]"
        )
    for lam in roots:
        if abs(fun(lam)) > VOLUME_RTOL * abs(V0):  # pragma: no cover
            logger.warning("Volume root %s misses target by %s", lam, fun(lam))
    return sorted(roots)


def solve_equilibrium_position(
    V0: float,
    profile: SolidProfile,
    k: float,
    L: float,
    Lambda_range: tuple = None,
    strict: bool = False,
) -> float:
    """
    Equilibrium contact point for liquid volume V0.

    If the volume is not monotone in Lambda and several roots exist,
    the smallest is returned and the others are logged; with
    ``strict`` NonmonotoneVolume is raised carrying all roots.

    :param float V0: liquid volume
    :param SolidProfile profile: stationary solid profile
    :param float k: contact angle
    :param float L: symmetry point
    :param tuple Lambda_range: scan interval (0, L)
    :param bool strict: raise on multiple roots (False)
    :return: Lambda_bar
    :rtype: float
    :raises: VolumeUnattainable, NonmonotoneVolume
    """

    roots = equilibrium_positions(V0, profile, k, L, Lambda_range)
    if len(roots) > 1:
        msg = f"Volume {V0} is attained at {len(roots)} contact points {roots}"
        if strict:
            raise NonmonotoneVolume(msg, roots)
        logger.warning("%s - using the smallest", msg)
    return roots[0]
