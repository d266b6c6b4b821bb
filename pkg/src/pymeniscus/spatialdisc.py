"""
Finite difference / finite volume discretisation of the conservative
fourth order operator d_x ( m(H) d_x^3 H ) on a uniform grid.

Node-centred control volumes (half cells at both ends) carry the
balance; face fluxes are

    F_{i+1/2} = m_{i+1/2} (H_{i+2} - 3 H_{i+1} + 3 H_i - H_{i-1}) / dx^3

with face mobility the arithmetic mean of nodal m(H). Two ghost nodes
at each end close the stencils. They solve the 2x2 system

    (-H_{+2} + 8 H_{+1} - 8 H_{-1} + H_{-2}) / (12 dx) = slope
    ( H_{+2} - 2 H_{+1} + 2 H_{-1} - H_{-2}) / (2 dx^3) = third

which reproduces quadratics exactly and keeps face fluxes next to the
boundary second order accurate. The boundary faces carry the closure
flux m(H_boundary) * third exactly.

Created on 18 Oct 2026

:author: semuadmin
:copyright: SEMU Consulting © 2026
:license: BSD 3-Clause
"""

# pylint: disable=invalid-name

from dataclasses import dataclass

import numpy as np

from pymeniscus.exceptions import DegenerateFilm, ParameterError, SingularClosure
from pymeniscus.meniscushelpers import check_nodes, trapezoid_weights

# ghost system matrix for (H_{-1}, H_{-2}), see module docstring
GHOST_MATRIX = np.array([[-8.0, 1.0], [2.0, -1.0]])

# one-sided second order third derivative stencils at the first two nodes
ONESIDED_0 = np.array([-2.5, 9.0, -12.0, 7.0, -1.5])
ONESIDED_1 = np.array([-1.5, 5.0, -6.0, 3.0, -0.5])


@dataclass(frozen=True)
class Grid:
    """
    Uniform grid of n nodes on [a, b].
    """

    n: int
    a: float
    b: float

    def __post_init__(self):
        check_nodes(self.n)
        if not self.b > self.a:
            raise ParameterError(f"Grid interval [{self.a}, {self.b}] is empty")

    @property
    def dx(self) -> float:
        """
        Node spacing.

        :return: (b - a) / (n - 1)
        :rtype: float
        """

        return (self.b - self.a) / (self.n - 1)

    @property
    def nodes(self) -> np.ndarray:
        """
        Node coordinates.

        :return: nodes
        :rtype: ndarray
        """

        return np.linspace(self.a, self.b, self.n)

    @property
    def faces(self) -> np.ndarray:
        """
        Interior face coordinates (n-1 midpoints).

        :return: faces
        :rtype: ndarray
        """

        x = self.nodes
        return 0.5 * (x[:-1] + x[1:])

    @property
    def volumes(self) -> np.ndarray:
        """
        Control volume widths (trapezoid weights).

        :return: volumes
        :rtype: ndarray
        """

        return trapezoid_weights(self.n, self.dx)


@dataclass(frozen=True)
class GhostClosure:
    """
    Boundary data in grid coordinates: slope and third derivative at
    each end. Defaults describe the symmetry point (zero slope and flux).
    """

    left_slope: float = 0.0
    left_third: float = 0.0
    right_slope: float = 0.0
    right_third: float = 0.0


def mobility(H, beta=None):
    """
    Film mobility m(h) = h^3 (no-slip) or h^3 + 3 h^2 / beta (Navier slip).

    :param H: heights
    :param beta: slip coefficient, None for no-slip
    :return: mobility
    """

    H = np.asarray(H, dtype=float)
    if beta is None:
        return H**3
    return H**3 + 3.0 * H**2 / beta


def mobility_deriv(H, beta=None):
    """
    Derivative of the film mobility, m'(h).

    :param H: heights
    :param beta: slip coefficient, None for no-slip
    :return: m'(h)
    """

    H = np.asarray(H, dtype=float)
    if beta is None:
        return 3.0 * H**2
    return 3.0 * H**2 + 6.0 * H / beta


def _ghost_pair(near1: float, near2: float, slope: float, third: float, dx: float) -> tuple:
    """
    Solve the 2x2 ghost system on one side.

    :param float near1: first interior neighbour value (H_{+1})
    :param float near2: second interior neighbour value (H_{+2})
    :param float slope: slope in the outward-to-inward direction
    :param float third: third derivative in the same direction
    :param float dx: spacing
    :return: tuple of (H_{-1}, H_{-2})
    :rtype: tuple
    """

    rhs = np.array(
        [12.0 * dx * slope + near2 - 8.0 * near1, 2.0 * dx**3 * third - near2 + 2.0 * near1]
    )
    if abs(np.linalg.det(GHOST_MATRIX)) < 1e-12:  # pragma: no cover
        raise SingularClosure("Ghost closure system is singular")
    g1, g2 = np.linalg.solve(GHOST_MATRIX, rhs)
    return float(g1), float(g2)


def assemble_ghosts(H: np.ndarray, grid: Grid, closure: GhostClosure) -> tuple:
    """
    Ghost values (H_{-2}, H_{-1}, H_n, H_{n+1}).

    Left ghosts satisfy slope = left_slope and third = left_third at
    node 0; right ghosts the same with right_* at node n-1.

    :param ndarray H: nodal heights
    :param Grid grid: grid
    :param GhostClosure closure: boundary data
    :return: tuple of (left2, left1, right1, right2)
    :rtype: tuple
    """

    dx = grid.dx
    l1, l2 = _ghost_pair(H[1], H[2], closure.left_slope, closure.left_third, dx)
    # mirror image: x -> -x flips the sign of odd derivatives
    r1, r2 = _ghost_pair(H[-2], H[-3], -closure.right_slope, -closure.right_third, dx)
    return l2, l1, r1, r2


def left_ghost(H1: float, slope: float, third: float, dx: float) -> float:
    """
    Closed form of the first left ghost, H_{-1} = H_1 - 2 dx slope - dx^3 third / 3.

    :param float H1: value at node 1
    :param float slope: boundary slope
    :param float third: boundary third derivative
    :param float dx: spacing
    :return: H_{-1}
    :rtype: float
    """

    return H1 - 2.0 * dx * slope - dx**3 * third / 3.0


def right_ghost(Hn2: float, slope: float, third: float, dx: float) -> float:
    """
    Closed form of the first right ghost, H_n = H_{n-2} + 2 dx slope + dx^3 third / 3.

    :param float Hn2: value at node n-2
    :param float slope: boundary slope
    :param float third: boundary third derivative
    :param float dx: spacing
    :return: H_n
    :rtype: float
    """

    return Hn2 + 2.0 * dx * slope + dx**3 * third / 3.0


def pad(H: np.ndarray, grid: Grid, closure: GhostClosure) -> np.ndarray:
    """
    Heights padded with two ghosts at each end.

    :param ndarray H: nodal heights
    :param Grid grid: grid
    :param GhostClosure closure: boundary data
    :return: padded array of length n+4
    :rtype: ndarray
    """

    l2, l1, r1, r2 = assemble_ghosts(H, grid, closure)
    return np.concatenate(([l2, l1], np.asarray(H, dtype=float), [r1, r2]))


def third_derivative(H: np.ndarray, grid: Grid, closure: GhostClosure = None) -> np.ndarray:
    """
    Nodal third derivative, centred 5-point stencil
    (H_{i+2} - 2 H_{i+1} + 2 H_{i-1} - H_{i-2}) / (2 dx^3).

    With a closure the boundary nodes use ghost values; without one the
    two nodes at each end use one-sided second order stencils.

    :param ndarray H: nodal heights
    :param Grid grid: grid
    :param GhostClosure closure: boundary data (None)
    :return: third derivatives
    :rtype: ndarray
    :raises: GridTooSmall
    """

    H = np.asarray(H, dtype=float)
    check_nodes(H.size)
    dx3 = grid.dx**3
    if closure is not None:
        P = pad(H, grid, closure)
        return (P[4:] - 2.0 * P[3:-1] + 2.0 * P[1:-3] - P[:-4]) / (2.0 * dx3)
    out = np.empty_like(H)
    out[2:-2] = (H[4:] - 2.0 * H[3:-1] + 2.0 * H[1:-3] - H[:-4]) / (2.0 * dx3)
    out[0] = ONESIDED_0 @ H[:5] / dx3
    out[1] = ONESIDED_1 @ H[:5] / dx3
    out[-1] = -(ONESIDED_0 @ H[-1:-6:-1]) / dx3
    out[-2] = -(ONESIDED_1 @ H[-1:-6:-1]) / dx3
    return out


def first_derivative(H: np.ndarray, grid: Grid, closure: GhostClosure = None) -> np.ndarray:
    """
    Nodal first derivative, centred; boundary nodes use the closure
    slope when given, otherwise one-sided second order differences.

    :param ndarray H: nodal heights
    :param Grid grid: grid
    :param GhostClosure closure: boundary data (None)
    :return: first derivatives
    :rtype: ndarray
    """

    H = np.asarray(H, dtype=float)
    dx = grid.dx
    out = np.empty_like(H)
    out[1:-1] = (H[2:] - H[:-2]) / (2.0 * dx)
    if closure is not None:
        out[0] = closure.left_slope
        out[-1] = closure.right_slope
    else:
        out[0] = (-3.0 * H[0] + 4.0 * H[1] - H[2]) / (2.0 * dx)
        out[-1] = (3.0 * H[-1] - 4.0 * H[-2] + H[-3]) / (2.0 * dx)
    return out


def face_third_derivative(H: np.ndarray, grid: Grid, closure: GhostClosure) -> np.ndarray:
    """
    Third derivative on the n-1 interior faces,
    (H_{i+2} - 3 H_{i+1} + 3 H_i - H_{i-1}) / dx^3.

    :param ndarray H: nodal heights
    :param Grid grid: grid
    :param GhostClosure closure: boundary data
    :return: face third derivatives
    :rtype: ndarray
    """

    P = pad(H, grid, closure)[1:-1]  # one ghost each side
    return (P[3:] - 3.0 * P[2:-1] + 3.0 * P[1:-2] - P[:-3]) / grid.dx**3


def face_fluxes(
    H: np.ndarray, grid: Grid, closure: GhostClosure, beta=None
) -> tuple:
    """
    Diffusive fluxes m(H) H''' on all faces.

    :param ndarray H: nodal heights
    :param Grid grid: grid
    :param GhostClosure closure: boundary data
    :param beta: slip coefficient, None for no-slip
    :return: tuple of (left boundary flux, interior face fluxes, right boundary flux)
    :rtype: tuple
    """

    m = mobility(H, beta)
    mf = 0.5 * (m[:-1] + m[1:])
    interior = mf * face_third_derivative(H, grid, closure)
    return float(m[0] * closure.left_third), interior, float(m[-1] * closure.right_third)


def flux_divergence(
    H: np.ndarray, grid: Grid, closure: GhostClosure, beta=None
) -> np.ndarray:
    """
    Conservative approximation of d_x ( m(H) d_x^3 H ) at the nodes,
    (F_{i+1/2} - F_{i-1/2}) / V_i with the closure fluxes on the
    boundary faces.

    :param ndarray H: nodal heights (all > 0)
    :param Grid grid: grid
    :param GhostClosure closure: boundary data
    :param beta: slip coefficient, None for no-slip
    :return: nodal divergence
    :rtype: ndarray
    :raises: DegenerateFilm if min H <= 0
    """

    H = np.asarray(H, dtype=float)
    check_nodes(H.size)
    if np.min(H) <= 0:
        raise DegenerateFilm(f"Film rupture, min height {np.min(H)}")
    fl, fi, fr = face_fluxes(H, grid, closure, beta)
    F = np.concatenate(([fl], fi, [fr]))
    return (F[1:] - F[:-1]) / grid.volumes
