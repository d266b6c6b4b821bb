"""
Created on 18 Oct 2026

:author: semuadmin
:copyright: SEMU Consulting © 2026
:license: BSD 3-Clause
"""

from pymeniscus._version import __version__
from pymeniscus.convergence import (
    ConvergenceReport,
    manufactured_solution,
    manufactured_source,
    spatial_convergence,
    temporal_convergence,
)
from pymeniscus.diagnostics import (
    DecayFit,
    DiagnosticsRecord,
    PoincareResult,
    decay_window,
    discrete_poincare,
    dissipation_rate,
    energy_excess,
    fit_decay,
    h1_distance,
    total_energy,
    total_mass,
)
from pymeniscus.domaintransform import (
    BoundaryData,
    CutoffMap,
    LinearMap,
    boundary_data,
    cutoff_map,
    lift_profile,
    linear_map,
    linear_map_rates,
    perturbation_boundary_data,
    unlift_profile,
)
from pymeniscus.equilibrium import (
    EquilibriumSolution,
    InterfaceEnergies,
    equilibrium_positions,
    lagrange_multiplier,
    profile_convexity,
    solve_equilibrium_position,
    steady_profile,
    volume,
    young_angle,
)
from pymeniscus.exceptions import (
    ConstraintViolation,
    DegenerateFilm,
    EnergyConstraintViolation,
    GridTooSmall,
    IntegrationFailure,
    MapDegenerate,
    MeniscusError,
    MeniscusIOError,
    MeniscusParseError,
    NewtonDiverged,
    NonmonotoneVolume,
    NonPositiveSeries,
    NonSmooth,
    OutOfDomain,
    ParameterError,
    ProfileViolation,
    Rupture,
    SingularClosure,
    SingularConstraint,
    ValidityWarning,
    VolumeUnattainable,
    ZeroContactAngle,
)
from pymeniscus.filmstepper import (
    FilmProblem,
    FilmState,
    FilmStepper,
    RunSummary,
    StepHistory,
    StepperConfig,
    assemble_residual,
    bdf_coefficients,
    contact_velocity,
    discrete_steady_state,
    farfield_state,
    newton_solve,
    perturbation_shape,
    perturbed_state,
    run,
    steady_state,
)
from pymeniscus.interiorflow import (
    InteriorSolution,
    contact_flux_value,
    contact_third_derivative,
    exterior_flux,
    interior_flux,
    ode_coefficients,
    ode_residual,
    solve_A_noslip,
    solve_A_slip,
)
from pymeniscus.meniscusconfig import (
    PhysicalParams,
    RunConfig,
    config_from_dict,
    nondimensionalize,
    parse_config,
    parse_physical,
    serialize_config,
)
from pymeniscus.meniscushelpers import *
from pymeniscus.meniscustypes_core import *
from pymeniscus.meniscuswriter import (
    DiagnosticsWriter,
    load_snapshot,
    read_diag,
    render_plots,
    write_diag,
    write_profile,
    write_snapshot,
)
from pymeniscus.solidprofile import (
    SolidProfile,
    ValidationReport,
    eval_g,
    eval_g_derivs,
    validate_profile,
)
from pymeniscus.spatialdisc import (
    GhostClosure,
    Grid,
    face_fluxes,
    first_derivative,
    flux_divergence,
    mobility,
    third_derivative,
)

version = __version__  # pylint: disable=invalid-name
