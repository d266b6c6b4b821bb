"""
Moving-to-fixed domain transforms and contact point boundary data.

Two maps are provided:

- LinearMap, which sends (Lambda, L) onto the fixed interval (Lambda_bar, L)
  and pins the symmetry point L. The stepper uses this map.
- CutoffMap Q_Lambda(x) = (x-Lambda) xi(x-Lambda) + x (1 - xi(x-Lambda)),
  which only moves points within 2 delta of the contact point and is a
  bijection while |Lambda| <= delta^2.

Created on 18 Oct 2026

:author: semuadmin
:copyright: SEMU Consulting © 2026
:license: BSD 3-Clause
"""

# pylint: disable=invalid-name

from dataclasses import dataclass

import numpy as np

from pymeniscus.exceptions import (
    ConstraintViolation,
    MapDegenerate,
    OutOfDomain,
    ParameterError,
    ProfileViolation,
)
from pymeniscus.meniscushelpers import cutoff, cutoff_deriv
from pymeniscus.solidprofile import SolidProfile


@dataclass(frozen=True)
class LinearMap:
    """
    Linear map of (Lambda, L) onto (Lambda_bar, L).
    """

    Lambda: float
    Lambda_bar: float
    L: float

    def __post_init__(self):
        if not (self.Lambda < self.L and self.Lambda_bar < self.L):
            raise MapDegenerate(
                f"Contact points {self.Lambda}, {self.Lambda_bar} must lie left of L={self.L}"
            )

    @property
    def jacobian(self) -> float:
        """
        d xbar / dx = (L - Lambda_bar) / (L - Lambda).

        :return: Jacobian
        :rtype: float
        """

        return (self.L - self.Lambda_bar) / (self.L - self.Lambda)

    def forward(self, x):
        """
        Map physical x in [Lambda, L] to xbar in [Lambda_bar, L].

        :param x: position (float or ndarray)
        :return: xbar
        :raises: OutOfDomain
        """

        xa = np.asarray(x, dtype=float)
        if np.any(xa < self.Lambda) or np.any(xa > self.L):
            raise OutOfDomain(f"x={x} outside [{self.Lambda}, {self.L}]")
        xb = (xa * (self.L - self.Lambda_bar) + self.L * (self.Lambda_bar - self.Lambda)) / (
            self.L - self.Lambda
        )
        # endpoints are pinned exactly
        xb = np.where(xa == self.Lambda, self.Lambda_bar, np.where(xa == self.L, self.L, xb))
        return float(xb) if np.ndim(xb) == 0 else xb

    def inverse(self, xbar):
        """
        Map reference xbar in [Lambda_bar, L] back to physical x.

        :param xbar: reference position (float or ndarray)
        :return: x
        :raises: OutOfDomain
        """

        xb = np.asarray(xbar, dtype=float)
        if np.any(xb < self.Lambda_bar) or np.any(xb > self.L):
            raise OutOfDomain(f"xbar={xbar} outside [{self.Lambda_bar}, {self.L}]")
        x = self.L - (self.L - xb) * (self.L - self.Lambda) / (self.L - self.Lambda_bar)
        x = np.where(xb == self.Lambda_bar, self.Lambda, np.where(xb == self.L, self.L, x))
        return float(x) if np.ndim(x) == 0 else x

    def rates(self, Lambda_dot: float, x) -> tuple:
        """
        Coordinate rates (d xbar/dx, d xbar/dt) at physical x.

        :param float Lambda_dot: contact point velocity
        :param x: physical position
        :return: tuple of (dxbar_dx, dxbar_dt)
        :rtype: tuple
        :raises: OutOfDomain
        """

        xa = np.asarray(x, dtype=float)
        if np.any(xa < self.Lambda) or np.any(xa > self.L):
            raise OutOfDomain(f"x={x} outside [{self.Lambda}, {self.L}]")
        dt = -Lambda_dot * (self.L - xa) * (self.L - self.Lambda_bar) / (self.L - self.Lambda) ** 2
        return self.jacobian, float(dt) if np.ndim(dt) == 0 else dt


@dataclass(frozen=True)
class CutoffMap:
    """
    Cut-off based map Q_Lambda. Its slope bound is
    |xi_delta'| <= 2 / delta for the smoothstep cut-off.
    """

    delta: float
    Lambda: float

    def __post_init__(self):
        if self.delta <= 0:
            raise ParameterError(f"Cut-off width must be positive, got {self.delta}")

    @property
    def admissible(self) -> bool:
        """
        |Lambda| <= delta^2, under which Q_Lambda is a bijection.

        :return: admissibility flag
        :rtype: bool
        """

        return abs(self.Lambda) <= self.delta**2

    def xi(self, s):
        """
        Cut-off xi_delta(s).
        """

        return cutoff(s, self.delta)

    def xi_prime(self, s):
        """
        Cut-off derivative xi_delta'(s).
        """

        return cutoff_deriv(s, self.delta)

    def _check(self, x):
        if not self.admissible:
            raise ConstraintViolation(
                f"|Lambda|={abs(self.Lambda)} exceeds delta^2={self.delta**2}"
            )
        if np.any(np.asarray(x) < self.Lambda):
            raise OutOfDomain(f"x={x} left of contact point {self.Lambda}")

    def forward(self, x):
        """
        Q_Lambda(x) = x - Lambda xi_delta(x - Lambda).

        :param x: physical position(s) >= Lambda
        :return: xbar
        :raises: ConstraintViolation, OutOfDomain
        """

        self._check(x)
        xa = np.asarray(x, dtype=float)
        s = xa - self.Lambda
        q = np.where(s >= 2.0 * self.delta, xa, s * self.xi(s) + xa * (1.0 - self.xi(s)))
        return float(q) if np.ndim(q) == 0 else q

    def slope(self, x):
        """
        dQ/dx = 1 - Lambda xi_delta'(x - Lambda).

        :param x: physical position(s) >= Lambda
        :return: slope
        :raises: ConstraintViolation, OutOfDomain
        """

        self._check(x)
        return 1.0 - self.Lambda * self.xi_prime(np.asarray(x, dtype=float) - self.Lambda)

    def time_rate(self, x, Lambda_dot: float):
        """
        Advection coefficient of the transformed time derivative,
        d_t h = d_t H + Lambda_dot (Lambda xi' - xi) d_xbar H.

        :param x: physical position(s) >= Lambda
        :param float Lambda_dot: contact point velocity
        :return: Lambda_dot (Lambda xi' - xi)
        """

        self._check(x)
        s = np.asarray(x, dtype=float) - self.Lambda
        return Lambda_dot * (self.Lambda * self.xi_prime(s) - self.xi(s))


@dataclass(frozen=True)
class BoundaryData:
    """
    Contact point data psi1 = g, psi2 = g_x - k, psi3 = -2 Lambda g_t / g^3.
    """

    psi1: float
    psi2: float
    psi3: float


def linear_map(x, lmap: LinearMap):
    """
    Map physical position onto the reference interval.

    :param x: physical position in [Lambda, L]
    :param LinearMap lmap: map
    :return: xbar
    :raises: OutOfDomain
    """

    return lmap.forward(x)


def linear_map_rates(lmap: LinearMap, Lambda_dot: float, x) -> tuple:
    """
    Coordinate rates of the linear map.

    :param LinearMap lmap: map
    :param float Lambda_dot: contact point velocity
    :param x: physical position
    :return: tuple of (dxbar_dx, dxbar_dt)
    :rtype: tuple
    :raises: OutOfDomain
    """

    return lmap.rates(Lambda_dot, x)


def cutoff_map(x, cmap: CutoffMap):
    """
    Cut-off map Q_Lambda.

    :param x: physical position >= Lambda
    :param CutoffMap cmap: map
    :return: xbar
    :raises: ConstraintViolation, OutOfDomain
    """

    return cmap.forward(x)


def boundary_data(profile: SolidProfile, Lambda: float, t: float, k: float) -> BoundaryData:
    """
    Contact point boundary data (psi1, psi2, psi3).

    :param SolidProfile profile: solid profile
    :param float Lambda: contact point
    :param float t: time
    :param float k: contact angle
    :return: boundary data
    :rtype: BoundaryData
    :raises: ProfileViolation if g(Lambda) <= 0
    """

    g = profile.g(Lambda, t)
    if g <= 0:
        raise ProfileViolation(f"Solid touches the bottom at contact point, g={g}")
    gx, gt, _ = profile.derivs(Lambda, t, side=1)
    return BoundaryData(g, gx - k, -2.0 * Lambda * gt / g**3)


def perturbation_boundary_data(
    profile: SolidProfile, Lambda: float, Lambda_bar: float, L: float, k: float, t: float = 0.0
) -> tuple:
    """
    Boundary data of the perturbation phi = H - h_bar at the fixed
    contact point, psi1 = g(Lambda) - g(Lambda_bar),
    psi2 = ((L-Lambda)/(L-Lambda_bar)) (g_x(Lambda)-k) - (g_x(Lambda_bar)-k).

    :param SolidProfile profile: stationary solid profile
    :param float Lambda: current contact point
    :param float Lambda_bar: equilibrium contact point
    :param float L: symmetry point
    :param float k: contact angle
    :param float t: time (0)
    :return: tuple of (psi1, psi2)
    :rtype: tuple
    """

    gx = profile.derivs(Lambda, t, side=1)[0]
    gxb = profile.derivs(Lambda_bar, t, side=1)[0]
    psi1 = profile.g(Lambda, t) - profile.g(Lambda_bar, t)
    psi2 = (L - Lambda) / (L - Lambda_bar) * (gx - k) - (gxb - k)
    return psi1, psi2


def lift_profile(H: np.ndarray, xbar: np.ndarray, data: BoundaryData, delta: float) -> np.ndarray:
    """
    Lift the contact point data off H,
    U = H - (psi2 xbar + psi3 xbar^3) xi_delta(xbar) - (1 - xi_delta(xbar)).

    :param ndarray H: heights on the reference grid
    :param ndarray xbar: reference grid, starting at 0
    :param BoundaryData data: contact point data
    :param float delta: cut-off half width
    :return: lifted field U
    :rtype: ndarray
    :raises: ParameterError if the grid does not start at 0
    """

    if xbar[0] != 0.0:
        raise ParameterError(f"Reference grid must start at 0, starts at {xbar[0]}")
    xi = cutoff(xbar, delta)
    a = data.psi2 * xbar + data.psi3 * xbar**3
    return np.asarray(H, dtype=float) - a * xi - (1.0 - xi)


def unlift_profile(U: np.ndarray, xbar: np.ndarray, data: BoundaryData, delta: float) -> np.ndarray:
    """
    Inverse of :func:`lift_profile`.

    :param ndarray U: lifted field
    :param ndarray xbar: reference grid, starting at 0
    :param BoundaryData data: contact point data
    :param float delta: cut-off half width
    :return: heights H
    :rtype: ndarray
    """

    xi = cutoff(xbar, delta)
    a = data.psi2 * xbar + data.psi3 * xbar**3
    return np.asarray(U, dtype=float) + a * xi + (1.0 - xi)
