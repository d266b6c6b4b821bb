"""
Refinement studies: observed spatial order of the conservative film
operator against a manufactured solution, and observed temporal order
of the stepper under dt halving.

The manufactured solution is u(x,t) = 1 + A e^{-t} cos(pi x) on [0, 1].
It has zero slope and zero third derivative at both ends, so it satisfies
the symmetry closure, and the source term

    f = u_t + m'(u) u_x u_xxx + m(u) u_xxxx

makes it an exact solution of u_t + (m(u) u_xxx)_x = f.

Created on 18 Oct 2026

:author: semuadmin
:copyright: SEMU Consulting © 2026
:license: BSD 3-Clause
"""

# pylint: disable=invalid-name, too-many-arguments

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse
from scipy.integrate import solve_ivp

from pymeniscus.diagnostics import total_energy
from pymeniscus.exceptions import IntegrationFailure, ParameterError
from pymeniscus.filmstepper import FilmStepper, StepperConfig
from pymeniscus.interiorflow import NOSLIP
from pymeniscus.meniscushelpers import observed_order
from pymeniscus.meniscustypes_core import ERRRAISE
from pymeniscus.spatialdisc import GhostClosure, Grid, flux_divergence, mobility, mobility_deriv

logger = logging.getLogger(__name__)

MMS_AMPLITUDE = 0.1
SPATIAL_GRIDS = (21, 41, 81, 161)


@dataclass(frozen=True)
class ConvergenceReport:
    """
    Errors and observed orders of a refinement study, coarsest first.
    """

    kind: str
    sizes: list
    errors: list
    orders: list
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        """
        JSON-ready representation.

        :return: dict
        :rtype: dict
        """

        return {
            "kind": self.kind,
            "sizes": list(self.sizes),
            "errors": list(self.errors),
            "orders": list(self.orders),
            **self.extra,
        }


def manufactured_solution(x, t: float, amplitude: float = MMS_AMPLITUDE):
    """
    u(x,t) = 1 + A e^{-t} cos(pi x).

    :param x: positions
    :param float t: time
    :param float amplitude: A (0.1)
    :return: u
    """

    return 1.0 + amplitude * np.exp(-t) * np.cos(np.pi * np.asarray(x, dtype=float))


def manufactured_source(x, t: float, beta=NOSLIP, amplitude: float = MMS_AMPLITUDE):
    """
    Source term making :func:`manufactured_solution` exact.

    :param x: positions
    :param float t: time
    :param beta: slip coefficient (None)
    :param float amplitude: A (0.1)
    :return: f
    """

    x = np.asarray(x, dtype=float)
    a = amplitude * np.exp(-t)
    u = 1.0 + a * np.cos(np.pi * x)
    ut = -a * np.cos(np.pi * x)
    ux = -a * np.pi * np.sin(np.pi * x)
    uxxx = a * np.pi**3 * np.sin(np.pi * x)
    uxxxx = a * np.pi**4 * np.cos(np.pi * x)
    return ut + mobility_deriv(u, beta) * ux * uxxx + mobility(u, beta) * uxxxx


def _pentadiagonal(n: int):
    return sparse.diags([np.ones(n - abs(k)) for k in range(-2, 3)], range(-2, 3), format="csc")


def spatial_convergence(
    grids: tuple = SPATIAL_GRIDS,
    t_end: float = 0.1,
    beta=NOSLIP,
    rtol: float = 1e-10,
) -> ConvergenceReport:
    """
    Max-norm error at t_end of the semi-discrete manufactured problem,
    integrated with a stiff BDF solver at tight tolerance, on a sequence
    of doubled grids.

    :param tuple grids: node counts, each refinement halving dx
    :param float t_end: final time (0.1)
    :param beta: slip coefficient (None)
    :param float rtol: integrator tolerance (1e-10)
    :return: report
    :rtype: ConvergenceReport
    :raises: IntegrationFailure
    """

    closure = GhostClosure()
    errors = []
    for n in grids:
        grid = Grid(n, 0.0, 1.0)
        x = grid.nodes

        def rhs(t, U, grid=grid, x=x):
            return -flux_divergence(U, grid, closure, beta) + manufactured_source(x, t, beta)

        sol = solve_ivp(
            rhs,
            (0.0, t_end),
            manufactured_solution(x, 0.0),
            method="BDF",
            rtol=rtol,
            atol=rtol * 1e-2,
            jac_sparsity=_pentadiagonal(n),
        )
        if not sol.success:
            raise IntegrationFailure(f"Manufactured problem on {n} nodes: {sol.message}")
        err = float(np.max(np.abs(sol.y[:, -1] - manufactured_solution(x, t_end))))
        logger.debug("Manufactured error n=%d: %s", n, err)
        errors.append(err)
    dxs = [1.0 / (n - 1) for n in grids]
    return ConvergenceReport("spatial", dxs, errors, observed_order(errors))


def temporal_convergence(
    initial,
    profile,
    k: float,
    cfg: StepperConfig,
    t_end: float,
    levels: int = 4,
    mode: str = None,
    beta=NOSLIP,
    energies=None,
) -> ConvergenceReport:
    """
    Successive differences of the final state (H and Lambda, max norm)
    under dt halving, and the defect of the discrete energy balance
    |(E_1 - E_0) / dt + dissipation| of the first step. The defect carries a
    grid part that does not shrink with dt, so its orders are taken from
    differences of successive signed defects.

    :param FilmState initial: initial state
    :param SolidProfile profile: solid profile
    :param float k: contact angle
    :param StepperConfig cfg: stepper controls; cfg.dt is the coarsest step
    :param float t_end: final time
    :param int levels: number of step sizes, at least 3 (4)
    :param str mode: PERIODIC or HALFLINE (PERIODIC)
    :param beta: slip coefficient (None)
    :param InterfaceEnergies energies: energies (None)
    :return: report; extra holds "energy_defects" and "energy_orders"
    :rtype: ConvergenceReport
    :raises: ParameterError, Rupture, NewtonDiverged
    """

    if levels < 3:
        raise ParameterError(f"Temporal study needs at least 3 levels, got {levels}")
    kwargs = {"beta": beta, "energies": energies}
    if mode is not None:
        kwargs["mode"] = mode
    finals = []
    defects = []
    dts = []
    for j in range(levels):
        dt = cfg.dt / 2**j
        level_cfg = StepperConfig(
            dt, cfg.scheme, cfg.newton_tol, cfg.newton_maxit, min(cfg.dt_min, dt), cfg.dt_max, cfg.rupture_ratio
        )
        stepper = FilmStepper(initial, profile, k, level_cfg, t_end, quitonerror=ERRRAISE, **kwargs)
        E0 = total_energy(initial, profile, stepper.energies, k)
        first = None
        for _, record in stepper:
            if first is None:
                first = record
        defects.append((first.energy - E0) / first.dt + first.dissipation)
        finals.append(np.append(stepper.state.H, stepper.state.Lambda))
        dts.append(dt)
        logger.debug("Temporal level dt=%s steps=%d", dt, stepper.steps)
    diffs = [float(np.max(np.abs(finals[j] - finals[j + 1]))) for j in range(levels - 1)]
    return ConvergenceReport(
        "temporal",
        dts[:-1],
        diffs,
        observed_order(diffs),
        {
            "energy_defects": [abs(d) for d in defects],
            "energy_orders": observed_order(np.abs(np.diff(defects))),
        },
    )
