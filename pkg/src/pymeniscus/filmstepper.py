"""
FilmStepper class and implicit time integration of the film
height and contact point.

The film on (Lambda(t), L) is pulled back onto the fixed reference
interval (Lambda_ref, L) by the linear map of
:class:`pymeniscus.domaintransform.LinearMap`. With the stretch
s = (L - Lambda) / (L - Lambda_ref) the film equation becomes the
conservative balance

    d_t (s H) + d_xbar [ -Lambda_dot w(xbar) H + s^-3 m(H) H_xbarxbarxbar ] = 0,
    w(xbar) = (L - xbar) / (L - Lambda_ref),

which is discretised on node-centred control volumes and advanced by
BDF1/BDF2. The unknowns are the n nodal heights and Lambda; the last
equation is the contact closure H_0 = g(Lambda, t). The left boundary
face carries the contact flux m(g) psi3 and the BDF difference of the
solid area, so that total liquid volume is conserved to solver
tolerance for a stationary solid.

Each Newton system is banded (pentadiagonal) apart from the dense
Lambda column and the closure row, and is solved with
scipy.sparse.linalg.spsolve.

Created on 18 Oct 2026

:author: semuadmin
:copyright: SEMU Consulting © 2026
:license: BSD 3-Clause
"""

# pylint: disable=invalid-name, too-many-arguments, too-many-locals, too-many-instance-attributes

import logging
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse
from scipy.optimize import brentq
from scipy.sparse.linalg import MatrixRankWarning, spsolve

from pymeniscus.diagnostics import DiagnosticsRecord, total_mass
from pymeniscus.equilibrium import InterfaceEnergies, steady_profile
from pymeniscus.exceptions import (
    DegenerateFilm,
    MapDegenerate,
    MeniscusError,
    NewtonDiverged,
    ParameterError,
    Rupture,
    VolumeUnattainable,
    ZeroContactAngle,
)
from pymeniscus.interiorflow import NOSLIP
from pymeniscus.meniscustypes_core import (
    BDF1,
    BDF2,
    BDF_COEFFS,
    BRACKET_EXPANSIONS,
    BRACKET_WIDTH,
    BRENT_RTOL,
    BRENT_XTOL,
    DEFAULT_DT,
    DEFAULT_DT_MAX,
    DEFAULT_DT_MIN,
    DEFAULT_NEWTON_MAXIT,
    DEFAULT_NEWTON_TOL,
    DEFAULT_RUPTURE_RATIO,
    DISCRETE_MASS_RTOL,
    ERRLOG,
    ERRRAISE,
    FARFIELD_LENGTH,
    HALFLINE,
    MODES,
    PERIODIC,
    SCHEMES,
)
from pymeniscus.solidprofile import SolidProfile
from pymeniscus.spatialdisc import GhostClosure, Grid, mobility, mobility_deriv

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FilmState:
    """
    Film heights H on the reference grid, contact point Lambda and time t.

    ``grid`` is the reference grid (Lambda_ref, L); the physical nodes
    are its image under the inverse linear map.
    """

    H: np.ndarray
    Lambda: float
    t: float
    grid: Grid

    def __post_init__(self):
        H = np.asarray(self.H, dtype=float)
        object.__setattr__(self, "H", H)
        if H.shape != (self.grid.n,):
            raise ParameterError(f"{H.size} heights on a grid of {self.grid.n} nodes")
        if not self.Lambda < self.grid.b:
            raise MapDegenerate(f"Contact point {self.Lambda} not left of L={self.grid.b}")
        if np.min(H) <= 0:
            raise DegenerateFilm(f"Film rupture, min height {np.min(H)}")

    @property
    def L(self) -> float:
        """
        Right end of the film (symmetry point or truncation point).

        :return: L
        :rtype: float
        """

        return self.grid.b

    @property
    def stretch(self) -> float:
        """
        Physical over reference length, (L - Lambda) / (L - Lambda_ref).

        :return: stretch factor
        :rtype: float
        """

        return (self.grid.b - self.Lambda) / (self.grid.b - self.grid.a)

    @property
    def physical_grid(self) -> Grid:
        """
        Uniform grid on (Lambda, L) carrying the same heights.

        :return: physical grid
        :rtype: Grid
        """

        return Grid(self.grid.n, self.Lambda, self.grid.b)

    @property
    def x(self) -> np.ndarray:
        """
        Physical node positions.

        :return: positions
        :rtype: ndarray
        """

        return self.physical_grid.nodes

    @property
    def min_h(self) -> float:
        """
        Minimum film height.

        :return: min H
        :rtype: float
        """

        return float(np.min(self.H))

    def to_dict(self) -> dict:
        """
        JSON-ready representation (grid metadata, heights, Lambda, t).

        :return: dict
        :rtype: dict
        """

        return {
            "grid": {"n": self.grid.n, "a": self.grid.a, "b": self.grid.b},
            "H": [float(h) for h in self.H],
            "Lambda": float(self.Lambda),
            "t": float(self.t),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FilmState":
        """
        Construct from :meth:`to_dict` output.

        :param dict data: state record
        :return: FilmState
        :rtype: FilmState
        :raises: ParameterError if a field is missing
        """

        try:
            grid = Grid(int(data["grid"]["n"]), float(data["grid"]["a"]), float(data["grid"]["b"]))
            return cls(np.asarray(data["H"], dtype=float), float(data["Lambda"]), float(data["t"]), grid)
        except (KeyError, TypeError) as err:
            raise ParameterError(f"Invalid state record, missing {err}") from err

    def __str__(self) -> str:
        return (
            f"<FilmState(t={self.t}, Lambda={self.Lambda}, n={self.grid.n}, "
            f"min_h={self.min_h})>"
        )


@dataclass(frozen=True)
class StepperConfig:
    """
    Time stepping controls.
    """

    dt: float = DEFAULT_DT
    scheme: str = BDF1
    newton_tol: float = DEFAULT_NEWTON_TOL
    newton_maxit: int = DEFAULT_NEWTON_MAXIT
    dt_min: float = DEFAULT_DT_MIN
    dt_max: float = DEFAULT_DT_MAX
    rupture_ratio: float = DEFAULT_RUPTURE_RATIO

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ParameterError(f"Unknown scheme {self.scheme} - should be one of {SCHEMES}")
        if not 0 < self.dt_min <= self.dt <= self.dt_max:
            raise ParameterError(
                f"Time steps must satisfy 0 < dt_min <= dt <= dt_max, got "
                f"{self.dt_min}, {self.dt}, {self.dt_max}"
            )
        if self.newton_tol <= 0:
            raise ParameterError(f"Newton tolerance must be positive, got {self.newton_tol}")
        if self.newton_maxit < 1:
            raise ParameterError(f"Newton iteration limit must be >= 1, got {self.newton_maxit}")
        if not 0 < self.rupture_ratio < 1:
            raise ParameterError(f"Rupture ratio must lie in (0, 1), got {self.rupture_ratio}")

    def to_dict(self) -> dict:
        """
        Configuration record.

        :return: dict
        :rtype: dict
        """

        return {
            "dt": self.dt,
            "scheme": self.scheme,
            "newton_tol": self.newton_tol,
            "newton_maxit": self.newton_maxit,
            "dt_min": self.dt_min,
            "dt_max": self.dt_max,
            "rupture_ratio": self.rupture_ratio,
        }


@dataclass(frozen=True)
class StepHistory:
    """
    What the stepper needs beyond the current state to continue a run
    exactly: the previous state (BDF2), the previous and current step
    sizes and the rupture floor.
    """

    previous: FilmState = None
    dt_prev: float = None
    dt: float = None
    floor: float = None
    steps: int = 0


@dataclass(frozen=True)
class RunSummary:
    """
    Outcome of :func:`run`.
    """

    final: FilmState
    steps: int
    rejected: int
    status: str
    message: str = ""
    records: list = field(default_factory=list, repr=False)


def bdf_coefficients(scheme: str, omega: float = 1.0) -> tuple:
    """
    BDF coefficients (c0, c1, c2), newest first, for a step of size dt
    following one of size dt / omega.

    :param str scheme: BDF1 or BDF2
    :param float omega: step ratio dt_new / dt_prev (1)
    :return: tuple of (c0, c1, c2)
    :rtype: tuple
    """

    if scheme == BDF1:
        return BDF_COEFFS[BDF1]
    if omega == 1.0:
        return BDF_COEFFS[BDF2]
    return (
        (1.0 + 2.0 * omega) / (1.0 + omega),
        -(1.0 + omega),
        omega * omega / (1.0 + omega),
    )


class FilmProblem:
    """
    The discrete film/contact point system on a fixed reference grid.
    """

    def __init__(
        self,
        profile: SolidProfile,
        k: float,
        grid: Grid,
        mode: str = PERIODIC,
        beta=NOSLIP,
    ):
        """
        Constructor.

        :param SolidProfile profile: solid profile
        :param float k: contact angle
        :param Grid grid: reference grid (Lambda_ref, L)
        :param str mode: PERIODIC or HALFLINE (PERIODIC)
        :param beta: slip coefficient, None for no-slip (None)
        :raises: ParameterError
        """

        if mode not in MODES:
            raise ParameterError(f"Unknown mode {mode} - should be one of {MODES}")
        if k < 0:
            raise ParameterError(f"Contact angle must be non-negative, got {k}")
        if beta is not NOSLIP:
            if beta <= 0:
                raise ParameterError(f"Slip coefficient must be positive, got {beta}")
            if not profile.stationary:
                raise ParameterError("Finite slip is only supported for a stationary solid")
        self.profile = profile
        self.k = float(k)
        self.grid = grid
        self.mode = mode
        self.beta = beta
        n = grid.n
        self._n = n
        self._dx = grid.dx
        self._V = grid.volumes
        L, Lr = grid.b, grid.a
        self._w = (L - grid.faces) / (L - Lr)
        self._ds = -1.0 / (L - Lr)
        # face stencil columns (nodes f-1 .. f+2), ghosts folded onto interior nodes
        f = np.arange(n - 1)
        cols = f[:, None] + np.arange(-1, 3)[None, :]
        cols[0, 0] = 1
        cols[-1, 3] = n - 2
        self._cols = cols

    def stretch(self, Lam: float) -> float:
        """
        Stretch factor (L - Lambda) / (L - Lambda_ref).

        :param float Lam: contact point
        :return: stretch
        :rtype: float
        :raises: MapDegenerate if Lambda >= L
        """

        L = self.grid.b
        if not Lam < L:
            raise MapDegenerate(f"Contact point {Lam} not left of L={L}")
        return (L - Lam) / (L - self.grid.a)

    def contact_data(self, Lam: float, t: float) -> dict:
        """
        Contact point data and their Lambda derivatives.

        :param float Lam: contact point
        :param float t: time
        :return: dict with g, gx, gxx, gt, psi2, psi3, dpsi3
        :rtype: dict
        :raises: DegenerateFilm if g(Lambda) <= 0
        """

        g = self.profile.g(Lam, t)
        if g <= 0:
            raise DegenerateFilm(f"Solid touches the bottom at the contact point, g={g}")
        gx, gt, gxx = self.profile.derivs(Lam, t, side=1)
        psi3 = -2.0 * Lam * gt / g**3
        dpsi3 = -2.0 * gt / g**3 + 6.0 * Lam * gt * gx / g**4
        return {
            "g": g,
            "gx": gx,
            "gxx": gxx,
            "gt": gt,
            "psi2": gx - self.k,
            "psi3": psi3,
            "dpsi3": dpsi3,
        }

    def closure(self, Lam: float, t: float) -> GhostClosure:
        """
        Ghost closure in reference coordinates at (Lambda, t).

        :param float Lam: contact point
        :param float t: time
        :return: closure
        :rtype: GhostClosure
        """

        s = self.stretch(Lam)
        cd = self.contact_data(Lam, t)
        return GhostClosure(s * cd["psi2"], s**3 * cd["psi3"])

    def assemble(
        self,
        H: np.ndarray,
        Lam: float,
        t: float,
        dt: float,
        coeffs: tuple,
        past: list,
        jacobian: bool = True,
    ) -> tuple:
        """
        Residual (and Jacobian) of one implicit step.

        Rows 0..n-1 are the cell balances scaled by dt / V_i (the last
        one is H_{n-1} - 1 in half-line mode); row n is the contact
        closure H_0 - g(Lambda, t).

        :param ndarray H: new heights
        :param float Lam: new contact point
        :param float t: new time
        :param float dt: step size
        :param tuple coeffs: BDF coefficients (c0, c1, c2)
        :param list past: [(H_n, Lambda_n), (H_n-1, Lambda_n-1)], second may be None
        :param bool jacobian: also assemble the Jacobian (True)
        :return: tuple of (residual, Jacobian as csc_matrix or None)
        :rtype: tuple
        :raises: MapDegenerate, DegenerateFilm
        """

        n, dx, V, w = self._n, self._dx, self._V, self._w
        c0, c1, c2 = coeffs
        H = np.asarray(H, dtype=float)
        if np.min(H) <= 0:
            raise DegenerateFilm(f"Film rupture, min height {np.min(H)}")
        s = self.stretch(Lam)
        ds = self._ds
        cd = self.contact_data(Lam, t)
        psi2, psi3 = cd["psi2"], cd["psi3"]
        sl, tau = s * psi2, s**3 * psi3

        # BDF history of the cell contents s H, of Lambda and of the solid area
        (H1, L1) = past[0]
        hist = c1 * self.stretch(L1) * H1
        lam_hist = c1 * L1
        G, dG = self.profile.area(Lam, t)
        G_hist = c1 * self.profile.area(L1, t)[0]
        if c2 != 0.0:
            (H2, L2) = past[1]
            hist = hist + c2 * self.stretch(L2) * H2
            lam_hist += c2 * L2
            G_hist += c2 * self.profile.area(L2, t)[0]
        lam_dot = (c0 * Lam + lam_hist) / dt
        G_dot = (c0 * G + G_hist) / dt

        # padded heights, one ghost each side
        Hm1 = H[1] - 2.0 * dx * sl - dx**3 * tau / 3.0
        P = np.concatenate(([Hm1], H, [H[-2]]))
        T = (P[3:] - 3.0 * P[2:-1] + 3.0 * P[1:-2] - P[:-3]) / dx**3
        m = mobility(H, self.beta)
        mf = 0.5 * (m[:-1] + m[1:])
        Hf = 0.5 * (H[:-1] + H[1:])
        D = mf * T
        A = -lam_dot * w * Hf
        F = A + D / s**3
        F_left = -G_dot + m[0] * psi3
        Ftot = np.concatenate(([F_left], F, [0.0]))

        q = dt / V
        res = np.empty(n + 1)
        res[:n] = c0 * s * H + hist + q * (Ftot[1:] - Ftot[:-1])
        if self.mode == HALFLINE:
            res[n - 1] = H[-1] - 1.0
        res[n] = H[0] - cd["g"]
        if not jacobian:
            return res, None

        # face derivatives with respect to the four stencil nodes
        dFdH = np.outer(mf, np.array([-1.0, 3.0, -3.0, 1.0])) / dx**3 / s**3
        mp = mobility_deriv(H, self.beta)
        dFdH[:, 1] += (0.5 * T * mp[:-1]) / s**3 - 0.5 * lam_dot * w
        dFdH[:, 2] += (0.5 * T * mp[1:]) / s**3 - 0.5 * lam_dot * w
        # Lambda derivatives: advection, stretch and left ghost
        dHm1 = -2.0 * dx * (ds * psi2 + s * cd["gxx"]) - dx**3 / 3.0 * (
            3.0 * s**2 * ds * psi3 + s**3 * cd["dpsi3"]
        )
        dFdL = -(c0 / dt) * w * Hf - 3.0 * D * ds / s**4
        dFdL[0] += mf[0] * (-1.0 / dx**3) * dHm1 / s**3

        f = np.arange(n - 1)
        rows = [
            np.repeat(f, 4),
            np.repeat(f + 1, 4),
            f,
            f + 1,
            np.arange(n),
            np.arange(n),
            np.array([0, 0]),
        ]
        cols = [
            self._cols.ravel(),
            self._cols.ravel(),
            np.full(n - 1, n),
            np.full(n - 1, n),
            np.arange(n),
            np.full(n, n),
            np.array([0, n]),
        ]
        vals = [
            (q[f][:, None] * dFdH).ravel(),
            (-q[f + 1][:, None] * dFdH).ravel(),
            q[f] * dFdL,
            -q[f + 1] * dFdL,
            np.full(n, c0 * s),
            c0 * ds * H,
            -q[0] * np.array([mp[0] * psi3, -c0 * dG / dt + m[0] * cd["dpsi3"]]),
        ]
        rows = np.concatenate(rows)
        cols = np.concatenate(cols)
        vals = np.concatenate(vals)
        if self.mode == HALFLINE:
            keep = rows != n - 1
            rows = np.append(rows[keep], n - 1)
            cols = np.append(cols[keep], n - 1)
            vals = np.append(vals[keep], 1.0)
        rows = np.append(rows, [n, n])
        cols = np.append(cols, [0, n])
        vals = np.append(vals, [1.0, -cd["gx"]])
        jac = sparse.coo_matrix((vals, (rows, cols)), shape=(n + 1, n + 1)).tocsc()
        return res, jac

    def solve_step(
        self,
        state: FilmState,
        dt: float,
        coeffs: tuple,
        past: list,
        cfg: StepperConfig,
        floor: float,
    ) -> tuple:
        """
        Newton iteration for one implicit step from ``state``.

        :param FilmState state: current state (initial guess)
        :param float dt: step size
        :param tuple coeffs: BDF coefficients
        :param list past: BDF history, newest first
        :param StepperConfig cfg: stepper controls
        :param float floor: rupture floor for min H
        :return: tuple of (H, Lambda, iterations)
        :rtype: tuple
        :raises: NewtonDiverged, Rupture
        """

        n = self._n
        t_new = state.t + dt
        x = np.append(state.H, state.Lambda)
        for it in range(cfg.newton_maxit + 1):
            try:
                res, jac = self.assemble(x[:n], x[n], t_new, dt, coeffs, past)
            except (MapDegenerate, DegenerateFilm) as err:
                raise NewtonDiverged(f"Newton iterate left the admissible set: {err}") from err
            rnorm = float(np.max(np.abs(res)))
            if rnorm <= cfg.newton_tol:
                return x[:n].copy(), float(x[n]), it
            if it == cfg.newton_maxit or not np.isfinite(rnorm):
                break
            with warnings.catch_warnings():
                warnings.simplefilter("error", MatrixRankWarning)
                try:
                    delta = spsolve(jac, -res)
                except (MatrixRankWarning, RuntimeError) as err:
                    raise NewtonDiverged(f"Singular Newton system at t={t_new}: {err}") from err
            if not np.all(np.isfinite(delta)):
                break
            x = x + delta
            if np.min(x[:n]) <= floor:
                raise Rupture(
                    f"Film rupture at t={t_new}: min height {np.min(x[:n])} <= floor {floor}"
                )
        raise NewtonDiverged(
            f"Newton did not converge in {cfg.newton_maxit} iterations at t={t_new}, dt={dt}"
        )

    def eulerian_rate(self, state: FilmState) -> float:
        """
        Eulerian rate d_t h at the contact point from the film equation,
        -d_x(m(h) h_xxx), extrapolated from the first interior nodes.

        :param FilmState state: state
        :return: d_t h at x = Lambda
        :rtype: float
        """

        H, dx, s = state.H, self._dx, self.stretch(state.Lambda)
        cl = self.closure(state.Lambda, state.t)
        Hm1 = H[1] - 2.0 * dx * cl.left_slope - dx**3 * cl.left_third / 3.0
        P = np.concatenate(([Hm1], H[:6]))
        T = (P[3:] - 3.0 * P[2:-1] + 3.0 * P[1:-2] - P[:-3]) / dx**3
        m = mobility(H[:5], self.beta)
        F = 0.5 * (m[:-1] + m[1:]) * T[:4]
        div = (F[1:] - F[:-1]) / dx  # nodes 1, 2, 3
        return float(-(3.0 * div[0] - 3.0 * div[1] + div[2]) / s**4)


def assemble_residual(
    new: FilmState,
    old: FilmState,
    profile: SolidProfile,
    k: float,
    cfg: StepperConfig,
    mode: str = PERIODIC,
    beta=NOSLIP,
    older: FilmState = None,
) -> np.ndarray:
    """
    Residual of the implicit step old -> new (length n+1).

    BDF2 is used when ``cfg.scheme`` is BDF2 and ``older`` is given.
    If new.t == old.t the step size is taken from ``cfg.dt``.

    :param FilmState new: candidate state at the new time
    :param FilmState old: state at the previous time
    :param SolidProfile profile: solid profile
    :param float k: contact angle
    :param StepperConfig cfg: stepper controls
    :param str mode: PERIODIC or HALFLINE (PERIODIC)
    :param beta: slip coefficient (None)
    :param FilmState older: state before ``old`` (None)
    :return: residual
    :rtype: ndarray
    :raises: MapDegenerate, DegenerateFilm
    """

    if new.grid != old.grid:
        raise ParameterError("States live on different reference grids")
    dt = new.t - old.t if new.t > old.t else cfg.dt
    problem = FilmProblem(profile, k, new.grid, mode, beta)
    past = [(old.H, old.Lambda)]
    if cfg.scheme == BDF2 and older is not None:
        coeffs = bdf_coefficients(BDF2, dt / (old.t - older.t))
        past.append((older.H, older.Lambda))
    else:
        coeffs = bdf_coefficients(BDF1)
    t_new = new.t if new.t > old.t else old.t + dt
    res, _ = problem.assemble(new.H, new.Lambda, t_new, dt, coeffs, past, False)
    return res


def newton_solve(
    old: FilmState,
    cfg: StepperConfig,
    profile: SolidProfile,
    k: float,
    mode: str = PERIODIC,
    beta=NOSLIP,
) -> FilmState:
    """
    One BDF1 step of size cfg.dt from ``old``, solved by Newton's method.

    :param FilmState old: current state
    :param StepperConfig cfg: stepper controls
    :param SolidProfile profile: solid profile
    :param float k: contact angle
    :param str mode: PERIODIC or HALFLINE (PERIODIC)
    :param beta: slip coefficient (None)
    :return: new state
    :rtype: FilmState
    :raises: NewtonDiverged, Rupture
    """

    problem = FilmProblem(profile, k, old.grid, mode, beta)
    H, Lam, _ = problem.solve_step(
        old,
        cfg.dt,
        bdf_coefficients(BDF1),
        [(old.H, old.Lambda)],
        cfg,
        cfg.rupture_ratio * old.min_h,
    )
    return FilmState(H, Lam, old.t + cfg.dt, old.grid)


def contact_velocity(state: FilmState, dHdt_at_contact: float, profile: SolidProfile, k: float) -> float:
    """
    Contact point velocity implied by differentiating h(Lambda(t), t) = g(Lambda(t), t),
    Lambda_dot = (h_t - g_t) / k. Diagnostic only; the closure row of
    the implicit system determines Lambda.

    :param FilmState state: state
    :param float dHdt_at_contact: Eulerian d_t h at the contact point
    :param SolidProfile profile: solid profile
    :param float k: contact angle
    :return: contact point velocity
    :rtype: float
    :raises: ZeroContactAngle if k = 0
    """

    if k == 0:
        raise ZeroContactAngle("Contact velocity is undefined for complete wetting (k=0)")
    if profile.stationary:
        return dHdt_at_contact / k
    return (dHdt_at_contact - profile.velocity(state.t)) / k


class FilmStepper:
    """
    FilmStepper class.

    Iterating over a FilmStepper yields (FilmState, DiagnosticsRecord)
    for every accepted step until ``t_end``.
    """

    def __init__(
        self,
        state: FilmState,
        profile: SolidProfile,
        k: float,
        cfg: StepperConfig = None,
        t_end: float = np.inf,
        mode: str = PERIODIC,
        beta=NOSLIP,
        energies: InterfaceEnergies = None,
        history: StepHistory = None,
        quitonerror: int = ERRRAISE,
        errorhandler: object = None,
    ):
        """
        Constructor.

        :param FilmState state: initial state
        :param SolidProfile profile: solid profile
        :param float k: contact angle
        :param StepperConfig cfg: stepper controls (defaults)
        :param float t_end: final time (inf)
        :param str mode: PERIODIC or HALFLINE (PERIODIC)
        :param beta: slip coefficient, None for no-slip (None)
        :param InterfaceEnergies energies: energy coefficients (a=c=0, b=1)
        :param StepHistory history: continuation data from a snapshot (None)
        :param int quitonerror: 0 = ignore, 1 = log and stop, 2 = (re)raise (2)
        :param object errorhandler: error handling function (None)
        """

        self.cfg = StepperConfig() if cfg is None else cfg
        self.problem = FilmProblem(profile, k, state.grid, mode, beta)
        self.profile = profile
        self.k = float(k)
        self.t_end = float(t_end)
        self.energies = InterfaceEnergies() if energies is None else energies
        self._quitonerror = quitonerror
        self._errorhandler = errorhandler
        self.state = state
        history = StepHistory() if history is None else history
        self._previous = history.previous
        self._dt_prev = history.dt_prev
        self._dt = self.cfg.dt if history.dt is None else history.dt
        self.floor = self.cfg.rupture_ratio * state.min_h if history.floor is None else history.floor
        self.steps = history.steps
        self.rejected = 0
        self.status = "ok"
        self.message = ""
        self._stopped = False

    def __iter__(self):
        """Iterator."""

        return self

    def __next__(self) -> tuple:
        """
        Return next accepted step.

        :return: tuple of (FilmState, DiagnosticsRecord)
        :rtype: tuple
        :raises: StopIteration
        """

        if self._stopped or self.done:
            raise StopIteration
        try:
            return self.step()
        except MeniscusError as err:
            self._stopped = True
            self.status = "rupture" if isinstance(err, Rupture) else "failed"
            self.message = str(err)
            self._do_error(err)
            raise StopIteration from err

    @property
    def done(self) -> bool:
        """
        True once t_end is reached.

        :return: completion flag
        :rtype: bool
        """

        return self.state.t >= self.t_end

    @property
    def history(self) -> StepHistory:
        """
        Continuation data for the current state.

        :return: history
        :rtype: StepHistory
        """

        return StepHistory(self._previous, self._dt_prev, self._dt, self.floor, self.steps)

    def step(self) -> tuple:
        """
        Advance one accepted step, halving dt on Newton failure.

        :return: tuple of (FilmState, DiagnosticsRecord)
        :rtype: tuple
        :raises: NewtonDiverged at dt_min, Rupture
        """

        state = self.state
        dt = min(self._dt, self.cfg.dt_max)
        remaining = self.t_end - state.t
        last = remaining <= dt * (1.0 + 1e-6)
        if last:
            dt = remaining
        while True:
            bdf2 = self.cfg.scheme == BDF2 and self._previous is not None
            past = [(state.H, state.Lambda)]
            if bdf2:
                coeffs = bdf_coefficients(BDF2, dt / self._dt_prev)
                past.append((self._previous.H, self._previous.Lambda))
            else:
                coeffs = bdf_coefficients(BDF1)
            try:
                H, Lam, iters = self.problem.solve_step(
                    state, dt, coeffs, past, self.cfg, self.floor
                )
                break
            except NewtonDiverged as err:
                self.rejected += 1
                dt *= 0.5
                last = False
                logger.debug("Step rejected at t=%s, dt halved to %s: %s", state.t, dt, err)
                if dt < self.cfg.dt_min:
                    raise NewtonDiverged(
                        f"Newton failed at t={state.t} with dt below dt_min={self.cfg.dt_min}"
                    ) from err

        t_new = self.t_end if last else state.t + dt
        new = FilmState(H, Lam, t_new, state.grid)
        self._previous = state
        self._dt_prev = dt
        if not last:
            # recover towards the nominal step after rejections
            self._dt = min(2.0 * dt, self.cfg.dt)
        self.state = new
        self.steps += 1
        record = DiagnosticsRecord.from_state(
            new, self.profile, self.energies, self.problem.beta, iters, dt, self.k
        )
        logger.debug(
            "Step %d t=%s dt=%s Lambda=%s iters=%d", self.steps, t_new, dt, Lam, iters
        )
        return new, record

    def contact_velocity_defect(self) -> float:
        """
        Difference between the discrete contact velocity of the last step
        and the velocity implied by the film equation at the new state.

        :return: (Lambda_n+1 - Lambda_n) / dt - contact_velocity
        :rtype: float
        :raises: ParameterError before the first step
        """

        if self._previous is None:
            raise ParameterError("No step taken yet")
        discrete = (self.state.Lambda - self._previous.Lambda) / self._dt_prev
        rate = self.problem.eulerian_rate(self.state)
        return discrete - contact_velocity(self.state, rate, self.profile, self.k)

    def run(self, sink=None) -> RunSummary:
        """
        Step to t_end, passing each DiagnosticsRecord to ``sink``.

        :param sink: callable receiving DiagnosticsRecord, or list to append to (None)
        :return: run summary
        :rtype: RunSummary
        """

        records = []
        logger.info(
            "Run start t=%s t_end=%s Lambda=%s mode=%s",
            self.state.t,
            self.t_end,
            self.state.Lambda,
            self.problem.mode,
        )
        for _, record in self:
            records.append(record)
            if callable(sink):
                sink(record)
            elif sink is not None:
                sink.append(record)
        logger.info(
            "Run finish t=%s steps=%d rejected=%d status=%s",
            self.state.t,
            self.steps,
            self.rejected,
            self.status,
        )
        return RunSummary(self.state, self.steps, self.rejected, self.status, self.message, records)

    def _do_error(self, err: MeniscusError):
        """
        Handle error.

        :param MeniscusError err: error
        :raises: the error if quitonerror = 2
        """

        if self._quitonerror == ERRRAISE:
            raise err
        if self._quitonerror == ERRLOG:
            # pass to error handler if there is one
            if self._errorhandler is None:
                logger.error(str(err))
            else:
                self._errorhandler(err)


def run(
    initial: FilmState,
    profile: SolidProfile,
    k: float,
    cfg: StepperConfig,
    t_end: float,
    sink=None,
    mode: str = PERIODIC,
    beta=NOSLIP,
    energies: InterfaceEnergies = None,
) -> RunSummary:
    """
    Integrate from ``initial`` to ``t_end``. Errors are raised.

    :param FilmState initial: initial state
    :param SolidProfile profile: solid profile
    :param float k: contact angle
    :param StepperConfig cfg: stepper controls
    :param float t_end: final time
    :param sink: diagnostics sink, callable or list (None)
    :param str mode: PERIODIC or HALFLINE (PERIODIC)
    :param beta: slip coefficient (None)
    :param InterfaceEnergies energies: energy coefficients (None)
    :return: run summary
    :rtype: RunSummary
    :raises: Rupture, NewtonDiverged
    """

    stepper = FilmStepper(
        initial, profile, k, cfg, t_end, mode, beta, energies, quitonerror=ERRRAISE
    )
    return stepper.run(sink)


def steady_state(profile: SolidProfile, k: float, Lambda_bar: float, L: float, n: int) -> FilmState:
    """
    Steady parabola sampled on n nodes of (Lambda_bar, L).

    :param SolidProfile profile: stationary solid profile
    :param float k: contact angle
    :param float Lambda_bar: contact point
    :param float L: symmetry point
    :param int n: node count
    :return: state at t=0
    :rtype: FilmState
    """

    grid = Grid(n, Lambda_bar, L)
    sol = steady_profile(profile, k, Lambda_bar, L)
    return FilmState(sol.evaluate(grid.nodes), Lambda_bar, 0.0, grid)


def perturbation_shape(n: int, mode_shape: str = "cosine", seed: int = 0) -> np.ndarray:
    """
    Perturbation with zero value, slope and third derivative at the
    contact point and zero slope and third derivative at L, built from
    modes (1 - cos(2 pi j s)) / 2, s in [0, 1]; scaled to max 1.

    :param int n: node count
    :param str mode_shape: "cosine" (j=1) or "random" (j=1..4, random weights)
    :param int seed: random seed for "random" (0)
    :return: samples
    :rtype: ndarray
    :raises: ParameterError for an unknown shape
    """

    s = np.linspace(0.0, 1.0, n)
    if mode_shape == "cosine":
        return 0.5 * (1.0 - np.cos(2.0 * np.pi * s))
    if mode_shape == "random":
        rng = np.random.default_rng(seed)
        weights = rng.uniform(-1.0, 1.0, 4)
        phi = sum(w * 0.5 * (1.0 - np.cos(2.0 * np.pi * (j + 1) * s)) for j, w in enumerate(weights))
        return phi / np.max(np.abs(phi))
    raise ParameterError(f"Unknown perturbation shape {mode_shape}")


def perturbed_state(
    profile: SolidProfile,
    k: float,
    Lambda_bar: float,
    L: float,
    n: int,
    eps: float,
    mode_shape: str = "cosine",
    Lambda_shift: float = 0.0,
    seed: int = 0,
) -> FilmState:
    """
    Steady parabola at Lambda_bar + Lambda_shift plus eps times a
    perturbation shape; the contact conditions hold exactly.

    :param SolidProfile profile: stationary solid profile
    :param float k: contact angle
    :param float Lambda_bar: reference contact point
    :param float L: symmetry point
    :param int n: node count
    :param float eps: perturbation amplitude, |eps| < 0.1
    :param str mode_shape: perturbation shape ("cosine")
    :param float Lambda_shift: contact point shift (0)
    :param int seed: random seed (0)
    :return: state at t=0
    :rtype: FilmState
    :raises: ParameterError if |eps| >= 0.1
    """

    if abs(eps) >= 0.1:
        raise ParameterError(f"Perturbation amplitude {eps} outside the small-data regime (< 0.1)")
    base = steady_state(profile, k, Lambda_bar + Lambda_shift, L, n)
    H = base.H + eps * perturbation_shape(n, mode_shape, seed)
    return FilmState(H, base.Lambda, 0.0, base.grid)


def farfield_state(
    profile: SolidProfile,
    k: float,
    Lambda0: float,
    X_max: float,
    n: int,
    length: float = FARFIELD_LENGTH,
) -> FilmState:
    """
    Half-line initial profile H = 1 + (alpha + beta s) exp(-s/length),
    s = x - Lambda0, with H(Lambda0) = g and H_x(Lambda0) = g_x - k.

    :param SolidProfile profile: solid profile
    :param float k: contact angle
    :param float Lambda0: initial contact point
    :param float X_max: truncated film length
    :param int n: node count
    :param float length: relaxation length (1)
    :return: state at t=0
    :rtype: FilmState
    """

    if X_max <= 0 or length <= 0:
        raise ParameterError(f"X_max and length must be positive, got {X_max}, {length}")
    grid = Grid(n, Lambda0, Lambda0 + X_max)
    g = profile.g(Lambda0, 0.0)
    gx = profile.derivs(Lambda0, 0.0, side=1)[0]
    alpha = g - 1.0
    beta = gx - k + alpha / length
    s = grid.nodes - Lambda0
    H = 1.0 + (alpha + beta * s) * np.exp(-s / length)
    H[-1] = 1.0
    return FilmState(H, Lambda0, 0.0, grid)


def discrete_steady_state(
    profile: SolidProfile, k: float, L: float, n: int, mass: float, guess: float
) -> FilmState:
    """
    Sampled steady parabola whose discrete liquid volume (as measured by
    :func:`pymeniscus.diagnostics.total_mass`) equals ``mass``. This is
    the state a stationary-solid run relaxes to; it differs from the
    exact-volume equilibrium by the quadrature error.

    :param SolidProfile profile: stationary solid profile
    :param float k: contact angle
    :param float L: symmetry point
    :param int n: node count
    :param float mass: discrete liquid volume
    :param float guess: starting contact point, e.g. the exact-volume root
    :return: state at t=0
    :rtype: FilmState
    :raises: VolumeUnattainable
    """

    def defect(lam: float) -> float:
        return total_mass(steady_state(profile, k, lam, L, n), profile) - mass

    # widen a bracket around the guess until the defect changes sign
    lo_end, hi_end = 0.0, L - L * 1e-9
    width = BRACKET_WIDTH * (L - guess)
    try:
        for _ in range(BRACKET_EXPANSIONS):
            lo, hi = max(guess - width, lo_end), min(guess + width, hi_end)
            if defect(lo) * defect(hi) <= 0.0:
                break
            if lo == lo_end and hi == hi_end:
                raise VolumeUnattainable(f"No discrete steady state with volume {mass} on [0, {L})")
            width *= 2.0
        else:
            raise VolumeUnattainable(f"No sign change of the volume defect around {guess}")
        lam = brentq(defect, lo, hi, xtol=BRENT_XTOL, rtol=BRENT_RTOL, maxiter=200)
    except VolumeUnattainable:
        raise
    except (RuntimeError, ValueError, MeniscusError) as err:
        raise VolumeUnattainable(f"No discrete steady state with volume {mass}: {err}") from err
    miss = defect(lam)
    if abs(miss) > DISCRETE_MASS_RTOL * abs(mass):
        logger.warning("Discrete steady state misses volume %s by %s", mass, miss)
    return steady_state(profile, k, float(lam), L, n)
