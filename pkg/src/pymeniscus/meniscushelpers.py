"""
Collection of pymeniscus helper methods which can be used
outside the solver and diagnostics classes

Created on 18 Oct 2026

:author: semuadmin
:copyright: SEMU Consulting © 2026
:license: BSD 3-Clause
"""

# pylint: disable=invalid-name

import numpy as np
from scipy.integrate import trapezoid

from pymeniscus.exceptions import GridTooSmall, ParameterError
from pymeniscus.meniscustypes_core import MIN_GRID_NODES


def bump(r):
    """
    Smooth one-sided bump phi(r) = exp(-1/r) for r > 0, else 0.

    :param r: argument (float or ndarray)
    :return: phi(r)
    :rtype: float or ndarray
    """

    r = np.asarray(r, dtype=float)
    safe = np.where(r > 0, r, 1.0)
    return np.where(r > 0, np.exp(-1.0 / safe), 0.0)


def smoothstep(r):
    """
    C-infinity smoothstep S(r) = phi(r) / (phi(r) + phi(1-r)).

    S is exactly 0 for r <= 0 and exactly 1 for r >= 1.

    :param r: argument (float or ndarray)
    :return: S(r)
    :rtype: float or ndarray
    """

    p = bump(r)
    q = bump(1.0 - np.asarray(r, dtype=float))
    return p / (p + q)


def smoothstep_deriv(r):
    """
    Derivative of the smoothstep, S'(r).

    Uses S' = psi (1/r^2 + 1/(1-r)^2) / (1+psi)^2 with psi = phi(1-r)/phi(r)
    on 0 < r < 1; zero elsewhere.

    :param r: argument (float or ndarray)
    :return: S'(r)
    :rtype: float or ndarray
    """

    r = np.asarray(r, dtype=float)
    inside = (r > 0) & (r < 1)
    rs = np.where(inside, r, 0.5)
    expo = np.clip(1.0 / rs - 1.0 / (1.0 - rs), -700.0, 700.0)
    psi = np.exp(expo)
    val = psi * (1.0 / rs**2 + 1.0 / (1.0 - rs) ** 2) / (1.0 + psi) ** 2
    return np.where(inside, val, 0.0)


def cutoff(s, delta: float):
    """
    Cut-off function xi_delta(s) = S((2 delta - s) / delta).

    Equal to 1 on s <= delta and 0 on s >= 2 delta.

    :param s: argument (float or ndarray)
    :param float delta: cut-off half width
    :return: xi_delta(s)
    :rtype: float or ndarray
    """

    if delta <= 0:
        raise ParameterError(f"Cut-off width must be positive, got {delta}")
    return smoothstep((2.0 * delta - np.asarray(s, dtype=float)) / delta)


def cutoff_deriv(s, delta: float):
    """
    Derivative of the cut-off function, xi_delta'(s).

    :param s: argument (float or ndarray)
    :param float delta: cut-off half width
    :return: xi_delta'(s)
    :rtype: float or ndarray
    """

    return -smoothstep_deriv((2.0 * delta - np.asarray(s, dtype=float)) / delta) / delta


def cutoff_slope_constant(samples: int = 20001) -> float:
    """
    Constant C in |xi_delta'| <= C / delta for the chosen smoothstep,
    i.e. max |S'| on (0, 1), measured on a sample grid.

    :param int samples: number of sample points (20001)
    :return: slope constant (2.0 for this smoothstep, attained at r = 1/2)
    :rtype: float
    """

    r = np.linspace(0.0, 1.0, samples)
    return float(np.max(np.abs(smoothstep_deriv(r))))


def trapezoid_weights(n: int, dx: float) -> np.ndarray:
    """
    Composite trapezoid weights on n uniform nodes.

    :param int n: node count
    :param float dx: spacing
    :return: weights
    :rtype: ndarray
    """

    w = np.full(n, dx)
    w[0] = w[-1] = 0.5 * dx
    return w


def integrate(values: np.ndarray, dx: float) -> float:
    """
    Composite trapezoid integral of uniformly sampled values.

    :param ndarray values: samples
    :param float dx: spacing
    :return: integral
    :rtype: float
    """

    return float(trapezoid(values, dx=dx))


def check_nodes(n: int, minimum: int = MIN_GRID_NODES):
    """
    Check node count against stencil width.

    :param int n: node count
    :param int minimum: minimum node count (7)
    :raises: GridTooSmall
    """

    if n < minimum:
        raise GridTooSmall(f"Grid has {n} nodes, at least {minimum} required")


def fmt_float(val: float) -> str:
    """
    Shortest round-trip decimal representation of a float.

    :param float val: value
    :return: decimal string e.g. '0.1', '1e-05'
    :rtype: str
    """

    if isinstance(val, (int, np.integer)) and not isinstance(val, bool):
        return str(int(val))
    return repr(float(val))


def observed_order(errors: list, ratio: float = 2.0) -> list:
    """
    Observed convergence orders from a sequence of errors under
    uniform refinement by ``ratio``.

    :param list errors: errors, coarsest first
    :param float ratio: refinement ratio (2)
    :return: list of len(errors)-1 orders
    :rtype: list
    """

    errs = np.asarray(errors, dtype=float)
    return list(np.log(errs[:-1] / errs[1:]) / np.log(ratio))
