"""
Command line interface.

Usage::

    pymeniscus simulate run.json --out results
    pymeniscus equilibrium run.json --volume 1.2 --out results
    pymeniscus stability run.json --out results
    pymeniscus poincare run.json
    pymeniscus convergence run.json
    pymeniscus nondim params.json
    pymeniscus sweep a.json b.json --out results --workers 2

Exit codes: 0 success, 2 configuration error, 3 runtime failure.

Created on 18 Oct 2026

:author: semuadmin
:copyright: SEMU Consulting © 2026
:license: BSD 3-Clause
"""

# pylint: disable=invalid-name

import json
import logging
import sys
from argparse import ArgumentParser
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from pymeniscus._version import __version__ as VERSION
from pymeniscus.convergence import spatial_convergence, temporal_convergence
from pymeniscus.diagnostics import (
    decay_window,
    discrete_poincare,
    fit_decay,
    h1_distance,
    total_energy,
    total_mass,
)
from pymeniscus.equilibrium import (
    lagrange_multiplier,
    solve_equilibrium_position,
    steady_profile,
    volume,
)
from pymeniscus.exceptions import MeniscusError, MeniscusParseError, ParameterError
from pymeniscus.filmstepper import (
    FilmStepper,
    discrete_steady_state,
    perturbed_state,
)
from pymeniscus.meniscusconfig import (
    RunConfig,
    nondimensionalize,
    parse_config,
    parse_physical,
)
from pymeniscus.meniscustypes_core import (
    ERRRAISE,
    EXIT_CONFIG,
    EXIT_OK,
    EXIT_RUNTIME,
    INIT_PERTURBED,
    MIN_POINCARE_NODES,
    PERIODIC,
)
from pymeniscus.meniscuswriter import (
    DiagnosticsWriter,
    load_snapshot,
    render_plots,
    write_profile,
    write_snapshot,
)
from pymeniscus.spatialdisc import Grid

logger = logging.getLogger(__name__)

DEFAULT_POINCARE_N = 200
STABILITY_EPS = 1e-2


def _configure_logging(level: int):
    """
    Configure root logging once and route warnings through it.
    """

    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    logging.getLogger().setLevel(level)
    logging.getLogger("matplotlib").setLevel(logging.WARNING)
    logging.captureWarnings(True)


def _load(path) -> RunConfig:
    """
    Read and parse a configuration file.

    :raises: MeniscusParseError
    """

    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise MeniscusParseError(f"Cannot read configuration {path}: {err}") from err
    return parse_config(text)


def _setup(cfg) -> tuple:
    """
    Model objects of a configuration; any failure is a configuration error.

    :return: tuple of (initial state, profile, k, stepper config, energies)
    :raises: MeniscusParseError
    """

    try:
        return (
            cfg.initial_state(),
            cfg.solid,
            cfg.contact_angle,
            cfg.stepper_config,
            cfg.interface_energies,
        )
    except MeniscusError as err:
        raise MeniscusParseError(f"Invalid configuration: {err}") from err


def _need_lambda0(cfg):
    if cfg.Lambda0 is None:
        raise MeniscusParseError("Missing required key 'Lambda0'")


def _emit(result: dict, outdir=None, name: str = None):
    """
    Print a JSON result and optionally store it in outdir/name.
    """

    text = json.dumps(result, indent=2, sort_keys=True)
    print(text)
    if outdir is not None and name is not None:
        path = Path(outdir) / name
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text + "\n", encoding="utf-8")


def simulate(cfg, outdir, restart=None, plots: bool = True) -> dict:
    """
    Run a configuration to t_end, writing diagnostics.csv, snapshots,
    final.json and plots to outdir.

    :param RunConfig cfg: configuration
    :param outdir: output directory
    :param restart: snapshot to continue from (None)
    :param bool plots: render SVG plots (True)
    :return: run summary
    :rtype: dict
    :raises: MeniscusParseError, MeniscusError
    """

    outdir = Path(outdir)
    initial, profile, k, scfg, energies = _setup(cfg)
    history = None
    if restart is not None:
        initial, history = load_snapshot(restart)
    stepper = FilmStepper(
        initial,
        profile,
        k,
        scfg,
        cfg.t_end,
        cfg.mode,
        cfg.beta,
        energies,
        history,
        quitonerror=ERRRAISE,
    )
    states = [initial]
    records = []
    with DiagnosticsWriter(outdir / "diagnostics.csv", cfg.output_stride) as writer:
        for state, record in stepper:
            writer.write(record)
            records.append(record)
            if cfg.snapshot_stride and stepper.steps % cfg.snapshot_stride == 0:
                write_snapshot(state, outdir / "snapshots" / f"step_{stepper.steps:08d}.json", stepper.history)
                states.append(state)
    write_snapshot(stepper.state, outdir / "final.json", stepper.history)
    if plots:
        states.append(stepper.state)
        render_plots(states, records, outdir)
    return {
        "t": stepper.state.t,
        "Lambda": stepper.state.Lambda,
        "steps": stepper.steps,
        "rejected": stepper.rejected,
        "status": stepper.status,
    }


def equilibrium(cfg, V0: float = None, strict: bool = False, outdir=None) -> dict:
    """
    Steady state of a periodic configuration, at Lambda0 or at the
    contact point holding liquid volume V0. With ``outdir`` the parabola
    sampled on grid_n nodes of (Lambda_bar, L) is written to
    outdir/equilibrium.csv.

    :param RunConfig cfg: configuration
    :param float V0: liquid volume (None)
    :param bool strict: raise on several equilibria (False)
    :param outdir: output directory for the sampled profile (None)
    :return: equilibrium summary
    :rtype: dict
    """

    if V0 is None:
        _need_lambda0(cfg)
    profile, k, energies = cfg.solid, cfg.contact_angle, cfg.interface_energies
    L = cfg.right_end
    if V0 is None:
        lam = cfg.Lambda0
    else:
        lam = solve_equilibrium_position(V0, profile, k, L, strict=strict)
    sol = steady_profile(profile, k, lam, L, energies)
    if outdir is not None:
        x = Grid(cfg.grid_n, lam, L).nodes
        write_profile(x, sol.evaluate(x), Path(outdir) / "equilibrium.csv")
    return {
        "Lambda_bar": sol.Lambda_bar,
        "L": sol.L,
        "coeff2": sol.coeff2,
        "apex": sol.apex,
        "lagrange": lagrange_multiplier(profile, k, lam, L, energies),
        "min_h": sol.min_h,
        "volume": volume(lam, profile, k, L),
    }


def stability(cfg, outdir, plots: bool = True) -> dict:
    """
    Perturbation run from near a steady state and exponential decay fits
    of the energy excess, the contact point offset and the H^1 distance.
    Each fit covers the latter half of its series ahead of the noise
    floor, see :func:`pymeniscus.diagnostics.decay_window`.

    :param RunConfig cfg: periodic configuration with a stationary solid
    :param outdir: output directory
    :param bool plots: render SVG plots (True)
    :return: fit summary
    :rtype: dict
    """

    initial, profile, k, scfg, energies = _setup(cfg)
    if cfg.mode != PERIODIC or not profile.stationary:
        raise MeniscusParseError("Stability runs need periodic mode and a stationary solid")
    if cfg.initial["type"] != INIT_PERTURBED:
        initial = perturbed_state(profile, k, cfg.Lambda0, cfg.right_end, cfg.grid_n, STABILITY_EPS)
    L, n = cfg.right_end, cfg.grid_n
    mass = total_mass(initial, profile)
    guess = solve_equilibrium_position(mass, profile, k, L)
    steady = discrete_steady_state(profile, k, L, n, mass, guess)
    lam_bar = steady.Lambda
    solution = steady_profile(profile, k, lam_bar, L, energies)
    E_bar = total_energy(steady, profile, energies, k)

    stepper = FilmStepper(
        initial, profile, k, scfg, cfg.t_end, cfg.mode, cfg.beta, energies, quitonerror=ERRRAISE
    )
    records, excess, offset, dist = [], [], [], []
    with DiagnosticsWriter(Path(outdir) / "diagnostics.csv", cfg.output_stride) as writer:
        for state, record in stepper:
            writer.write(record)
            records.append(record)
            excess.append((record.t, record.energy - E_bar))
            offset.append((record.t, abs(record.Lambda - lam_bar)))
            dist.append((record.t, h1_distance(state, solution)))
    series = {"energy": (excess, E_bar), "lambda": (offset, lam_bar), "h1": (dist, 1.0)}
    fits = {name: fit_decay(data, decay_window(data, scale)) for name, (data, scale) in series.items()}
    if plots:
        render_plots([initial, stepper.state], records, outdir, fits["energy"], E_bar)
    summary = {"Lambda_bar": lam_bar, "E_bar": E_bar, "steps": stepper.steps}
    for name, fit in fits.items():
        summary[f"omega_{name}"] = fit.omega
        summary[f"r_squared_{name}"] = fit.r_squared
        summary[f"window_{name}"] = list(fit.window)
    return summary


def poincare(cfg) -> dict:
    """
    Discrete Poincare-type constant on (Lambda0, L).

    bc_ratio defaults to lambda / (2 k b) of the steady state at Lambda0.

    :param RunConfig cfg: configuration
    :return: constants
    :rtype: dict
    """

    _need_lambda0(cfg)
    opts = cfg.poincare or {}
    n = opts.get("n", DEFAULT_POINCARE_N)
    if n < MIN_POINCARE_NODES:
        raise MeniscusParseError(f"Invalid field 'poincare.n': at least {MIN_POINCARE_NODES} nodes required")
    L = cfg.right_end
    bc_ratio = opts.get("bc_ratio")
    if bc_ratio is None:
        k, b = cfg.contact_angle, cfg.interface_energies.b
        if k == 0:
            raise MeniscusParseError("Default bc_ratio needs k > 0, give 'poincare.bc_ratio'")
        lam = lagrange_multiplier(cfg.solid, k, cfg.Lambda0, L, cfg.interface_energies)
        bc_ratio = lam / (2.0 * k * b)
    res = discrete_poincare(Grid(n, cfg.Lambda0, L), bc_ratio, 1, opts.get("zero_mean", True))
    return {
        "n": res.n,
        "bc_ratio": bc_ratio,
        "mu": res.mu,
        "constant_C": res.constant_C,
        "trace_constant": res.trace_constant,
    }


def convergence(cfg, levels: int = 4) -> dict:
    """
    Spatial (manufactured solution) and temporal (dt halving) refinement
    reports for a configuration.

    :param RunConfig cfg: configuration
    :param int levels: temporal levels (4)
    :return: reports
    :rtype: dict
    """

    initial, profile, k, scfg, energies = _setup(cfg)
    spatial = spatial_convergence(beta=cfg.beta)
    temporal = temporal_convergence(
        initial, profile, k, scfg, cfg.t_end, levels, cfg.mode, cfg.beta, energies
    )
    return {"spatial": spatial.to_dict(), "temporal": temporal.to_dict()}


def nondim(path) -> dict:
    """
    Nondimensional parameters from a physical parameter file.

    :param path: JSON file with H, sigma, mu_L, theta, beta_phys, t0, epsilon
    :return: scaled parameters
    :rtype: dict
    """

    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise MeniscusParseError(f"Cannot read parameters {path}: {err}") from err
    params, epsilon = parse_physical(text)
    try:
        k, beta_bar, time_scale, length = nondimensionalize(params, epsilon)
    except ParameterError as err:
        raise MeniscusParseError(str(err)) from err
    return {"k": k, "beta_bar": beta_bar, "time_scale": time_scale, "length_scale": length}


def _sweep_one(args: tuple) -> int:
    """
    Worker: simulate one configuration into its own directory.
    """

    path, outdir = args
    try:
        simulate(_load(path), outdir, plots=False)
    except MeniscusParseError as err:
        logger.error("%s: %s", path, err)
        return EXIT_CONFIG
    except MeniscusError as err:
        logger.error("%s: %s", path, err)
        return EXIT_RUNTIME
    return EXIT_OK


def run_sweep(configs: list, outdir, workers: int = 1) -> dict:
    """
    Simulate independent configurations concurrently, each into
    outdir/<config file stem>.

    :param list configs: configuration file paths
    :param outdir: parent output directory
    :param int workers: worker processes (1)
    :return: dict of config path -> exit code
    :rtype: dict
    :raises: ParameterError on duplicate output directories
    """

    jobs = [(str(c), str(Path(outdir) / Path(c).stem)) for c in configs]
    if len({out for _, out in jobs}) != len(jobs):
        raise ParameterError("Sweep configurations must have distinct file names")
    if workers <= 1:
        codes = [_sweep_one(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            codes = list(pool.map(_sweep_one, jobs))
    return dict(zip((path for path, _ in jobs), codes))


def _parser() -> ArgumentParser:
    ap = ArgumentParser(
        prog="pymeniscus",
        description="Thin film meniscus with a moving contact point",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    verbosity = ap.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", "-v", action="store_true", help="Debug logging")
    verbosity.add_argument("--quiet", "-q", action="store_true", help="Warnings and errors only")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("simulate", help="Run a configuration to t_end")
    sp.add_argument("config", help="JSON run configuration")
    sp.add_argument("--out", default=".", help="Output directory")
    sp.add_argument("--restart", default=None, help="Snapshot to continue from")
    sp.add_argument("--no-plots", action="store_true", help="Skip SVG plots")

    sp = sub.add_parser("equilibrium", help="Steady state of a periodic configuration")
    sp.add_argument("config", help="JSON run configuration")
    sp.add_argument("--volume", type=float, default=None, help="Liquid volume V0")
    sp.add_argument("--strict", action="store_true", help="Fail if several equilibria exist")
    sp.add_argument("--out", default=".", help="Output directory for equilibrium.csv")

    sp = sub.add_parser("stability", help="Perturbation run with decay fits")
    sp.add_argument("config", help="JSON run configuration")
    sp.add_argument("--out", default=".", help="Output directory")
    sp.add_argument("--no-plots", action="store_true", help="Skip SVG plots")

    sp = sub.add_parser("poincare", help="Discrete Poincare-type constant")
    sp.add_argument("config", help="JSON run configuration")

    sp = sub.add_parser("convergence", help="Grid and time step refinement report")
    sp.add_argument("config", help="JSON run configuration")
    sp.add_argument("--levels", type=int, default=4, help="Temporal refinement levels")

    sp = sub.add_parser("nondim", help="Scale physical parameters")
    sp.add_argument("params", help="JSON physical parameters")

    sp = sub.add_parser("sweep", help="Simulate several configurations concurrently")
    sp.add_argument("configs", nargs="+", help="JSON run configurations")
    sp.add_argument("--out", default=".", help="Parent output directory")
    sp.add_argument("--workers", type=int, default=1, help="Worker processes")
    return ap


def main(argv: list = None) -> int:
    """
    CLI entry point.

    :param list argv: arguments (sys.argv[1:])
    :return: exit code
    :rtype: int
    """

    args = _parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    _configure_logging(level)

    try:
        if args.command == "simulate":
            summary = simulate(_load(args.config), args.out, args.restart, not args.no_plots)
            _emit(summary)
        elif args.command == "equilibrium":
            _emit(equilibrium(_load(args.config), args.volume, args.strict, args.out))
        elif args.command == "stability":
            _emit(stability(_load(args.config), args.out, not args.no_plots), args.out, "stability.json")
        elif args.command == "poincare":
            _emit(poincare(_load(args.config)))
        elif args.command == "convergence":
            _emit(convergence(_load(args.config), args.levels))
        elif args.command == "nondim":
            _emit(nondim(args.params))
        else:
            codes = run_sweep(args.configs, args.out, args.workers)
            _emit(codes)
            return max(codes.values())
    except MeniscusParseError as err:
        logger.error("Configuration error: %s", err)
        return EXIT_CONFIG
    except MeniscusError as err:
        logger.error("Run failed: %s", err)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":

    sys.exit(main())
