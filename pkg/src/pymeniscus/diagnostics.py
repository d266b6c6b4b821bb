"""
Conserved and dissipated quantities of a film state, decay-rate
fitting and the discrete Poincare-type constant of the linearised
stability problem.

Created on 18 Oct 2026

:author: semuadmin
:copyright: SEMU Consulting © 2026
:license: BSD 3-Clause
"""

# pylint: disable=invalid-name

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import null_space, qr, solve_triangular, svd
from scipy.stats import linregress

from pymeniscus.exceptions import DegenerateFilm, NonPositiveSeries, ParameterError, SingularConstraint
from pymeniscus.interiorflow import NOSLIP
from pymeniscus.meniscushelpers import check_nodes, fmt_float, integrate, trapezoid_weights
from pymeniscus.meniscustypes_core import (
    DECAY_NOISE,
    DECAY_RANGE,
    DIAG_COLUMNS,
    MIN_FIT_POINTS,
    MIN_POINCARE_NODES,
    SOLID_SUBGRID,
)
from pymeniscus.spatialdisc import GhostClosure, Grid, first_derivative, mobility, third_derivative

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiagnosticsRecord:
    """
    Diagnostics of one accepted step.
    """

    t: float
    mass: float
    energy: float
    dissipation: float
    Lambda: float
    min_h: float
    newton_iters: int
    dt: float

    @classmethod
    def from_state(
        cls, state, profile, energies, beta=NOSLIP, newton_iters: int = 0, dt: float = 0.0, k: float = None
    ):
        """
        Evaluate all diagnostics of a state.

        :param FilmState state: state
        :param SolidProfile profile: solid profile
        :param InterfaceEnergies energies: energies
        :param beta: slip coefficient (None)
        :param int newton_iters: Newton iterations of the step (0)
        :param float dt: step size (0)
        :param float k: contact angle, boundary slopes from the contact closure (None)
        :return: record
        :rtype: DiagnosticsRecord
        """

        return cls(
            float(state.t),
            total_mass(state, profile),
            total_energy(state, profile, energies, k),
            dissipation_rate(state, energies.b, beta),
            float(state.Lambda),
            float(np.min(state.H)),
            int(newton_iters),
            float(dt),
        )

    def to_row(self) -> list:
        """
        CSV row in column order, floats as shortest round-trip decimals.

        :return: list of str
        :rtype: list
        """

        vals = (
            self.t,
            self.mass,
            self.energy,
            self.dissipation,
            self.Lambda,
            self.min_h,
            self.newton_iters,
            self.dt,
        )
        return [fmt_float(v) for v in vals]

    def to_dict(self) -> dict:
        """
        Record keyed by CSV column name.

        :return: dict
        :rtype: dict
        """

        return dict(zip(DIAG_COLUMNS, self.to_row()))


@dataclass(frozen=True)
class DecayFit:
    """
    Least squares fit value ~ prefactor exp(-omega t).
    """

    omega: float
    prefactor: float
    r_squared: float
    window: tuple


@dataclass(frozen=True)
class PoincareResult:
    """
    Smallest constrained Rayleigh quotient int phi_xxx^2 / int phi_x^2
    and derived constants.
    """

    mu: float
    n: int
    constant_C: float
    trace_constant: float
    spectrum: list = field(default_factory=list)


def _solid_integral(profile, lo: float, hi: float, t: float, intervals: int = SOLID_SUBGRID) -> float:
    """
    Trapezoid integral of g_x^2 over (lo, hi) on its own subgrid.
    """

    if hi <= lo:
        return 0.0
    x = np.linspace(lo, hi, intervals + 1)
    gx = profile.derivs(x, t, side=1)[0]
    return integrate(np.asarray(gx) ** 2, (hi - lo) / intervals)


def total_mass(state, profile, intervals: int = SOLID_SUBGRID) -> float:
    """
    Liquid volume, area under the solid on (0, Lambda) plus the film
    volume on (Lambda, L); composite trapezoid on both pieces.

    :param FilmState state: state
    :param SolidProfile profile: solid profile
    :param int intervals: solid subgrid intervals (512)
    :return: volume
    :rtype: float
    """

    solid = profile.area(state.Lambda, state.t, intervals)[0] if state.Lambda != 0 else 0.0
    grid = state.physical_grid
    return float(solid + integrate(state.H, grid.dx))


def total_energy(state, profile, energies, k: float = None) -> float:
    """
    E = a int_0^Lambda g_x^2 + b int_Lambda^L h_x^2 + c int_Lambda^L g_x^2,
    centred h_x in the interior.

    With the contact angle ``k`` the boundary slopes are those the
    stepper's ghost closure imposes, g_x(Lambda) - k at the contact
    point and 0 at the right end; otherwise one-sided differences.

    :param FilmState state: state
    :param SolidProfile profile: solid profile
    :param InterfaceEnergies energies: energies
    :param float k: contact angle (None)
    :return: energy
    :rtype: float
    """

    grid = state.physical_grid
    closure = None
    if k is not None:
        gx = float(profile.derivs(state.Lambda, state.t, side=1)[0])
        closure = GhostClosure(left_slope=gx - k, right_slope=0.0)
    hx = first_derivative(state.H, grid, closure)
    film = energies.b * integrate(hx**2, grid.dx)
    solid = 0.0
    if energies.a:
        solid += energies.a * _solid_integral(profile, 0.0, state.Lambda, state.t)
    if energies.c:
        solid += energies.c * _solid_integral(profile, state.Lambda, grid.b, state.t)
    return float(film + solid)


def dissipation_rate(state, b: float, beta=NOSLIP) -> float:
    """
    Energy dissipation 2 b int m(h) h_xxx^2 (m = h^3 for no-slip),
    returned as a non-negative magnitude.

    :param FilmState state: state
    :param float b: liquid-gas energy coefficient
    :param beta: slip coefficient (None)
    :return: dissipation rate
    :rtype: float
    :raises: DegenerateFilm if min H <= 0
    """

    H = np.asarray(state.H, dtype=float)
    if np.min(H) <= 0:
        raise DegenerateFilm(f"Film rupture, min height {np.min(H)}")
    grid = state.physical_grid
    hxxx = third_derivative(H, grid)
    return float(2.0 * b * integrate(mobility(H, beta) * hxxx**2, grid.dx))


def energy_excess(E: float, E_bar: float) -> float:
    """
    Energy above the equilibrium energy.

    :param float E: energy
    :param float E_bar: equilibrium energy
    :return: E - E_bar
    :rtype: float
    """

    return E - E_bar


def h1_distance(state, solution) -> float:
    """
    H^1 distance between the film and a steady parabola, both sampled
    on the physical nodes of the state.

    :param FilmState state: state
    :param EquilibriumSolution solution: steady state
    :return: ||h - h_bar||_{H^1}
    :rtype: float
    """

    grid = state.physical_grid
    d = np.asarray(state.H) - solution.evaluate(grid.nodes)
    dx = first_derivative(d, grid)
    return float(np.sqrt(integrate(d**2, grid.dx) + integrate(dx**2, grid.dx)))


def decay_window(series, scale: float = 0.0) -> tuple:
    """
    Fit window ahead of the noise floor. The series is cut before its
    first value at or below the larger of DECAY_RANGE times its first
    value and DECAY_NOISE rounding units of ``scale``; the window is the
    latter half of what remains.

    :param series: sequence of (t, value)
    :param float scale: magnitude the series is a difference of, e.g. E_bar (0)
    :return: tuple of (t_lo, t_hi)
    :rtype: tuple
    :raises: ParameterError if the series is empty or starts below its floor
    """

    data = np.asarray(series, dtype=float)
    if data.shape[0] == 0:
        raise ParameterError("Decay series is empty")
    t, v = data[:, 0], data[:, 1]
    floor = max(DECAY_RANGE * abs(v[0]), DECAY_NOISE * np.finfo(float).eps * abs(scale))
    below = np.nonzero(v <= floor)[0]
    end = int(below[0]) if below.size else t.size
    if end == 0:
        raise ParameterError(f"Decay series starts at {v[0]}, at or below its floor {floor}")
    t_hi = float(t[end - 1])
    return (float(t[0] + 0.5 * (t_hi - t[0])), t_hi)


def fit_decay(series, window: tuple = None) -> DecayFit:
    """
    Least squares fit of log(value) against t, omega = -slope.

    :param series: sequence of (t, value > 0)
    :param tuple window: (t_lo, t_hi) fit window, all points if None
    :return: fit
    :rtype: DecayFit
    :raises: NonPositiveSeries, ParameterError if fewer than 10 points
    """

    data = np.asarray(series, dtype=float)
    if window is not None:
        data = data[(data[:, 0] >= window[0]) & (data[:, 0] <= window[1])]
    if data.shape[0] < MIN_FIT_POINTS:
        raise ParameterError(f"Decay fit needs {MIN_FIT_POINTS} points, got {data.shape[0]}")
    t, v = data[:, 0], data[:, 1]
    if np.any(v <= 0):
        raise NonPositiveSeries(f"Decay series has non-positive value {np.min(v)}")
    y = np.log(v)
    fit = linregress(t, y)
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    if ss_tot == 0.0:
        r2 = 1.0
    else:
        resid = y - (fit.intercept + fit.slope * t)
        r2 = float(min(1.0, max(0.0, 1.0 - np.sum(resid**2) / ss_tot)))
    return DecayFit(float(-fit.slope), float(np.exp(fit.intercept)), r2, (float(t[0]), float(t[-1])))


def _poincare_operators(n: int, dx: float) -> tuple:
    """
    First and third difference operators scaled by sqrt(dx), so that
    squared norms are the quadratures of phi_x^2 and phi_xxx^2.
    Third differences are taken on faces with a full 4-node stencil.
    """

    D3 = np.zeros((n - 3, n))
    for r in range(n - 3):
        D3[r, r : r + 4] = (-1.0, 3.0, -3.0, 1.0)
    D3 /= dx**3
    D1 = (np.eye(n, k=1) - np.eye(n))[:-1] / dx
    root = np.sqrt(dx)
    return root * D1, root * D3


def discrete_poincare(
    grid: Grid, bc_ratio: float, n_modes: int = 1, zero_mean: bool = True
) -> PoincareResult:
    """
    Smallest mu with int phi_xxx^2 >= mu int phi_x^2 over grid functions
    with phi_x = bc_ratio phi at the left end, phi_x = 0 at the right end
    and (optionally) zero mean.

    On an orthonormal basis Z of the constraint null space, D1 Z = Q R
    and the eigenvalues are the squared singular values of D3 Z R^-1,
    which keeps the conditioning at that of the difference operators
    rather than their squares.

    The trace constant is max phi(a)^2 / int phi_xxx^2 over the same set.

    :param Grid grid: grid, at least 50 nodes
    :param float bc_ratio: ratio phi_x / phi at the left end
    :param int n_modes: number of smallest eigenvalues reported (1)
    :param bool zero_mean: impose zero mean (True)
    :return: result
    :rtype: PoincareResult
    :raises: GridTooSmall, SingularConstraint
    """

    n, dx = grid.n, grid.dx
    check_nodes(n, MIN_POINCARE_NODES)
    rows = []
    if zero_mean:
        rows.append(trapezoid_weights(n, dx))
    left = np.zeros(n)
    left[:3] = np.array([-3.0, 4.0, -1.0]) / (2.0 * dx)
    left[0] -= bc_ratio
    right = np.zeros(n)
    right[-3:] = np.array([1.0, -4.0, 3.0]) / (2.0 * dx)
    rows += [left, right]
    C = np.array(rows)
    if np.linalg.matrix_rank(C) < C.shape[0]:
        raise SingularConstraint(f"Constraints are linearly dependent on a grid of {n} nodes")
    Z = null_space(C)
    D1, D3 = _poincare_operators(n, dx)
    tiny = n * np.finfo(float).eps

    R = qr(D1 @ Z, mode="economic")[1]
    rsv = svd(R, compute_uv=False)
    if rsv[-1] <= tiny * rsv[0]:
        raise SingularConstraint(
            f"Constraints leave constant functions admissible (bc_ratio={bc_ratio})"
        )
    S = D3 @ Z
    X = solve_triangular(R, S.T, trans="T").T
    sv = svd(X, compute_uv=False)
    # a wide X (no mean constraint) has admissible quadratics, mu = 0
    evals = np.concatenate((np.zeros(X.shape[1] - sv.size), sv[::-1] ** 2))
    mu = float(evals[0])

    # quadratics have phi_xxx = 0; the trace constant is then unbounded
    _, sv, Vt = svd(S, full_matrices=False)
    if sv.size < S.shape[1] or sv[-1] <= tiny * sv[0]:
        trace = np.inf
    else:
        trace = float(np.sum((Vt @ Z[0, :] / sv) ** 2))
    logger.debug("Poincare n=%d bc_ratio=%s zero_mean=%s mu=%s", n, bc_ratio, zero_mean, mu)
    return PoincareResult(
        mu,
        n,
        1.0 / mu if mu > 0 else np.inf,
        trace,
        [float(e) for e in evals[:n_modes]],
    )
