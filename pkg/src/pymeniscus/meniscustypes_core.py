"""
pymeniscus core globals and constants

Created on 18 Oct 2026

All quantities are non-dimensional and use the rescaled time
convention, in which the film equation reads h_t + (h^3 h_xxx)_x = 0
and the contact flux condition reads h h_xxx = -2 Lambda g_t / g^2.

:author: semuadmin
"""

ERRRAISE = 2
ERRLOG = 1
ERRIGNORE = 0

# Run modes
PERIODIC = "periodic"
HALFLINE = "halfline"
MODES = (PERIODIC, HALFLINE)

# Time schemes
BDF1 = "BDF1"
BDF2 = "BDF2"
SCHEMES = (BDF1, BDF2)

# BDF leading coefficient and history coefficients, newest first
# D_t u^{n+1} = (c0 u^{n+1} + c1 u^n + c2 u^{n-1}) / dt
BDF_COEFFS = {
    BDF1: (1.0, -1.0, 0.0),
    BDF2: (1.5, -2.0, 0.5),
}

# Solid profile kinds (tags used in run configuration)
CONSTANT_DESCENT = "constant_descent"
WEDGE = "wedge"
POLYNOMIAL = "polynomial"
STATIONARY = "stationary"
PROFILE_KINDS = (CONSTANT_DESCENT, WEDGE, POLYNOMIAL, STATIONARY)

# Initial condition types
INIT_STEADY = "steady"
INIT_PERTURBED = "perturbed"
INIT_EXPLICIT = "explicit"
INIT_FARFIELD = "far_field"
INIT_TYPES = (INIT_STEADY, INIT_PERTURBED, INIT_EXPLICIT, INIT_FARFIELD)

# Stencil width of the conservative fourth order operator
MIN_GRID_NODES = 7
MIN_POINCARE_NODES = 50
MIN_FIT_POINTS = 10

# Interior ODE default resolution
RK4_STEPS = 512
# Solid area quadrature intervals
SOLID_SUBGRID = 512
# Equilibrium bracket scan points
VOLUME_SCAN_POINTS = 1000
VOLUME_RTOL = 1e-10
# Brent tolerances, rtol no finer than scipy allows (4 eps)
BRENT_XTOL = 1e-14
BRENT_RTOL = 1e-15
# discrete steady state volume match and its starting bracket
DISCRETE_MASS_RTOL = 1e-12
BRACKET_WIDTH = 1e-3
BRACKET_EXPANSIONS = 40

# Decay fits stop once a series has fallen by DECAY_RANGE or reaches
# DECAY_NOISE rounding units of its reference scale
DECAY_RANGE = 1e-2
DECAY_NOISE = 1e3

# Stepper defaults
DEFAULT_DT = 1e-5
DEFAULT_NEWTON_TOL = 1e-10
DEFAULT_NEWTON_MAXIT = 12
DEFAULT_DT_MIN = 1e-12
DEFAULT_DT_MAX = 1.0
DEFAULT_RUPTURE_RATIO = 1e-6
DEFAULT_X_MAX = 20.0
DEFAULT_GRID_N = 201
# far field relaxation length of the half-line initial profile
FARFIELD_LENGTH = 1.0

# Diagnostics CSV columns (exact order)
DIAG_COLUMNS = (
    "t",
    "mass",
    "energy",
    "dissipation",
    "lambda",
    "min_h",
    "newton_iters",
    "dt",
)

# Sampled profile CSV columns
PROFILE_COLUMNS = ("x", "h")

# CLI exit codes
EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3

# Run configuration schema: key -> (type(s), required)
CONFIG_KEYS = {
    "mode": (str, True),
    "profile": (dict, True),
    "k": ((int, float, str), True),
    "energies": (dict, False),
    "L": ((int, float), False),
    "X_max": ((int, float), False),
    "grid_n": (int, False),
    "stepper": (dict, False),
    "t_end": ((int, float), True),
    "initial": (dict, False),
    "seed": (int, False),
    "beta": ((int, float, type(None)), False),
    "Lambda0": ((int, float, type(None)), False),
    "output_stride": (int, False),
    "snapshot_stride": (int, False),
    "poincare": (dict, False),
}

PROFILE_KEYS = {
    CONSTANT_DESCENT: ("kind", "H0", "t0", "n"),
    WEDGE: ("kind", "htilde", "c"),
    POLYNOMIAL: ("kind", "coeffs", "descent"),
    STATIONARY: ("kind", "shape"),
}

STEPPER_KEYS = (
    "dt",
    "scheme",
    "newton_tol",
    "newton_maxit",
    "dt_min",
    "dt_max",
    "rupture_ratio",
)

ENERGY_KEYS = ("a", "b", "c")

INITIAL_KEYS = {
    INIT_STEADY: ("type",),
    INIT_PERTURBED: ("type", "eps", "mode_shape", "Lambda_shift"),
    INIT_EXPLICIT: ("type", "path"),
    INIT_FARFIELD: ("type", "length"),
}

POINCARE_KEYS = ("n", "bc_ratio", "zero_mean")

PHYSICAL_KEYS = ("H", "sigma", "mu_L", "theta", "beta_phys", "t0", "epsilon")
