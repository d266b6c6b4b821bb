"""
Run configuration and physical parameter scaling.

A run is described by a single JSON document which is parsed in
strict mode: unknown keys, wrong types and out-of-range values raise
MeniscusParseError naming the offending field (or the line and column
of a JSON syntax error).

Created on 18 Oct 2026

:author: semuadmin
:copyright: SEMU Consulting © 2026
:license: BSD 3-Clause
"""

# pylint: disable=invalid-name, too-many-instance-attributes

import json
import logging
import warnings
from dataclasses import asdict, dataclass, field

from pymeniscus.equilibrium import InterfaceEnergies, young_angle
from pymeniscus.exceptions import MeniscusError, MeniscusParseError, ParameterError, ValidityWarning
from pymeniscus.filmstepper import (
    FilmState,
    StepperConfig,
    farfield_state,
    perturbed_state,
    steady_state,
)
from pymeniscus.meniscuswriter import load_samples
from pymeniscus.meniscustypes_core import (
    CONFIG_KEYS,
    DEFAULT_GRID_N,
    DEFAULT_X_MAX,
    ENERGY_KEYS,
    FARFIELD_LENGTH,
    HALFLINE,
    INIT_EXPLICIT,
    INIT_FARFIELD,
    INIT_PERTURBED,
    INIT_STEADY,
    INITIAL_KEYS,
    MIN_GRID_NODES,
    MODES,
    PERIODIC,
    PHYSICAL_KEYS,
    POINCARE_KEYS,
    PROFILE_KEYS,
    STEPPER_KEYS,
)
from pymeniscus.solidprofile import SolidProfile

logger = logging.getLogger(__name__)

YOUNG = "young"
DEFAULT_HALFLINE_LAMBDA0 = 1.0


@dataclass(frozen=True)
class RunConfig:
    """
    Parsed run configuration. Nested records are kept as plain dicts
    so that the configuration serialises back to the same document.
    """

    mode: str
    profile: dict
    k: object
    t_end: float
    energies: dict = field(default_factory=lambda: {"a": 0.0, "b": 1.0, "c": 0.0})
    L: float = None
    X_max: float = DEFAULT_X_MAX
    grid_n: int = DEFAULT_GRID_N
    stepper: dict = field(default_factory=dict)
    initial: dict = None
    seed: int = 0
    beta: float = None
    Lambda0: float = None
    output_stride: int = 1
    snapshot_stride: int = 0
    poincare: dict = field(default_factory=dict)

    @property
    def solid(self) -> SolidProfile:
        """
        Solid profile object.

        :return: profile
        :rtype: SolidProfile
        """

        return SolidProfile.from_dict(self.profile)

    @property
    def interface_energies(self) -> InterfaceEnergies:
        """
        Interfacial energies object.

        :return: energies
        :rtype: InterfaceEnergies
        """

        return InterfaceEnergies(**self.energies)

    @property
    def stepper_config(self):
        """
        Stepper controls object.

        :return: stepper configuration
        :rtype: StepperConfig
        """

        return StepperConfig(**self.stepper)

    @property
    def right_end(self) -> float:
        """
        Right end of the film domain, L (periodic) or Lambda0 + X_max (half-line).

        :return: right end
        :rtype: float
        """

        if self.mode == HALFLINE:
            return self.Lambda0 + self.X_max
        return self.L

    @property
    def contact_angle(self) -> float:
        """
        Contact angle, derived from Young's relation at Lambda0 when
        configured as "young".

        :return: k
        :rtype: float
        """

        if self.k == YOUNG:
            gx = self.solid.derivs(self.Lambda0, 0.0, side=1)[0]
            return young_angle(self.interface_energies, gx)
        return float(self.k)

    def initial_state(self) -> FilmState:
        """
        Initial film state described by the ``initial`` record.

        :return: state at t=0 (or at the time stored with explicit samples)
        :rtype: FilmState
        :raises: MeniscusError
        """

        init = self.initial
        itype = init["type"]
        n = self.grid_n
        if itype == INIT_FARFIELD:
            return farfield_state(
                self.solid,
                self.contact_angle,
                self.Lambda0,
                self.X_max,
                n,
                init.get("length", FARFIELD_LENGTH),
            )
        if itype == INIT_EXPLICIT:
            state = load_samples(init["path"])
            if state.L != self.right_end:
                raise ParameterError(
                    f"Explicit samples end at {state.L}, configuration at {self.right_end}"
                )
            return state
        if itype == INIT_PERTURBED:
            return perturbed_state(
                self.solid,
                self.contact_angle,
                self.Lambda0,
                self.right_end,
                n,
                init.get("eps", 0.0),
                init.get("mode_shape", "cosine"),
                init.get("Lambda_shift", 0.0),
                self.seed,
            )
        return steady_state(self.solid, self.contact_angle, self.Lambda0, self.right_end, n)


def _field_error(name: str, msg: str) -> MeniscusParseError:
    return MeniscusParseError(f"Invalid field '{name}': {msg}")


def _check_keys(record: dict, allowed: tuple, name: str):
    if not isinstance(record, dict):
        raise _field_error(name, f"expected an object, got {type(record).__name__}")
    for key in record:
        if key not in allowed:
            raise MeniscusParseError(f"Unknown key '{key}' in {name}")


def _check_type(name: str, value, types):
    if isinstance(value, bool) or not isinstance(value, types):
        raise _field_error(name, f"wrong type {type(value).__name__}")


def config_from_dict(doc: dict) -> RunConfig:
    """
    Validate a configuration record and build a RunConfig.

    :param dict doc: configuration record
    :return: configuration
    :rtype: RunConfig
    :raises: MeniscusParseError
    """

    _check_keys(doc, tuple(CONFIG_KEYS), "configuration")
    for key, (types, required) in CONFIG_KEYS.items():
        if key not in doc or doc[key] is None:
            if required:
                raise MeniscusParseError(f"Missing required key '{key}'")
            continue
        _check_type(key, doc[key], types)

    vals = dict(doc)
    if vals["mode"] not in MODES:
        raise _field_error("mode", f"{vals['mode']} not one of {MODES}")
    kind = vals["profile"].get("kind")
    if kind not in PROFILE_KEYS:
        raise _field_error("profile.kind", f"{kind} not one of {tuple(PROFILE_KEYS)}")
    _check_keys(vals["profile"], PROFILE_KEYS[kind], "profile")
    if isinstance(vals["k"], str) and vals["k"] != YOUNG:
        raise _field_error("k", f"expected a number or '{YOUNG}', got '{vals['k']}'")
    if vals["t_end"] <= 0:
        raise _field_error("t_end", f"must be positive, got {vals['t_end']}")
    if vals.get("grid_n") is not None and vals["grid_n"] < MIN_GRID_NODES:
        raise _field_error("grid_n", f"at least {MIN_GRID_NODES} nodes required")
    for name, allowed in (("energies", ENERGY_KEYS), ("stepper", STEPPER_KEYS), ("poincare", POINCARE_KEYS)):
        if vals.get(name) is not None:
            _check_keys(vals[name], allowed, name)

    if vals["mode"] == PERIODIC:
        if vals.get("L") is None:
            raise MeniscusParseError("Missing required key 'L' for periodic mode")
        default_init = {"type": INIT_STEADY}
    else:
        if vals.get("Lambda0") is None:
            vals["Lambda0"] = DEFAULT_HALFLINE_LAMBDA0
        default_init = {"type": INIT_FARFIELD}
    init = vals.get("initial") or default_init
    itype = init.get("type") if isinstance(init, dict) else None
    if itype not in INITIAL_KEYS:
        raise _field_error("initial.type", f"{itype} not one of {tuple(INITIAL_KEYS)}")
    _check_keys(init, INITIAL_KEYS[itype], "initial")
    if itype == INIT_PERTURBED and abs(init.get("eps", 0.0)) >= 0.1:
        raise _field_error("initial.eps", f"{init['eps']} outside the small-data regime (< 0.1)")
    if itype != INIT_EXPLICIT and vals.get("Lambda0") is None:
        raise MeniscusParseError("Missing required key 'Lambda0' for a steady or perturbed start")
    if vals["k"] == YOUNG and vals.get("Lambda0") is None:
        raise MeniscusParseError("Contact angle 'young' needs key 'Lambda0'")
    vals["initial"] = init
    vals = {key: val for key, val in vals.items() if val is not None}

    try:
        cfg = RunConfig(**vals)
        # build the objects once to surface value errors at parse time
        cfg.solid  # pylint: disable=pointless-statement
        cfg.interface_energies  # pylint: disable=pointless-statement
        cfg.stepper_config  # pylint: disable=pointless-statement
        if cfg.Lambda0 is not None:
            cfg.contact_angle  # pylint: disable=pointless-statement
    except (MeniscusError, TypeError, ValueError) as err:
        raise MeniscusParseError(f"Invalid configuration: {err}") from err
    if not cfg.right_end > (cfg.Lambda0 or 0.0):
        raise _field_error("L", f"film domain end {cfg.right_end} must lie right of Lambda0")
    return cfg


def parse_config(text: str) -> RunConfig:
    """
    Parse a JSON run configuration.

    :param str text: JSON document
    :return: configuration
    :rtype: RunConfig
    :raises: MeniscusParseError with line/column or field
    """

    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise MeniscusParseError(
            f"JSON syntax error at line {err.lineno} column {err.colno}: {err.msg}"
        ) from err
    return config_from_dict(doc)


def serialize_config(cfg: RunConfig) -> str:
    """
    Canonical JSON form of a configuration (sorted keys, nulls omitted).

    :param RunConfig cfg: configuration
    :return: JSON document
    :rtype: str
    """

    doc = {key: val for key, val in asdict(cfg).items() if val is not None}
    return json.dumps(doc, sort_keys=True, indent=2)


@dataclass(frozen=True)
class PhysicalParams:
    """
    Dimensional parameters of the meniscus problem.
    """

    H: float
    sigma: float
    mu_L: float
    theta: float
    beta_phys: float
    t0: float

    def __post_init__(self):
        for name in ("H", "sigma", "mu_L", "theta", "t0"):
            if getattr(self, name) <= 0:
                raise ParameterError(f"{name} must be positive, got {getattr(self, name)}")
        if self.beta_phys < 0:
            raise ParameterError(f"beta_phys must be non-negative, got {self.beta_phys}")


def nondimensionalize(p: PhysicalParams, epsilon: float) -> tuple:
    """
    Lubrication scaling with aspect ratio epsilon: contact angle
    k = theta / epsilon, length scale H / epsilon, slip
    beta_bar = epsilon (H / epsilon) beta_phys / mu_L, time scale
    length * mu_L / sigma.

    Issues ValidityWarning if k > 1.

    :param PhysicalParams p: physical parameters
    :param float epsilon: aspect ratio in (0, 0.3)
    :return: tuple of (k, beta_bar, time_scale, length_scale)
    :rtype: tuple
    :raises: ParameterError
    """

    if not 0 < epsilon < 0.3:
        raise ParameterError(f"Aspect ratio must lie in (0, 0.3), got {epsilon}")
    k = p.theta / epsilon
    length = p.H / epsilon
    beta_bar = epsilon * length / p.mu_L * p.beta_phys
    time_scale = length * p.mu_L / p.sigma
    if k > 1:
        warnings.warn(
            f"Contact angle k={k} > 1: angle not small against the aspect ratio, "
            "lubrication scaling questionable",
            ValidityWarning,
            stacklevel=2,
        )
    return k, beta_bar, time_scale, length


def parse_physical(text: str) -> tuple:
    """
    Parse a JSON physical parameter document (PhysicalParams fields
    plus "epsilon").

    :param str text: JSON document
    :return: tuple of (PhysicalParams, epsilon)
    :rtype: tuple
    :raises: MeniscusParseError
    """

    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise MeniscusParseError(
            f"JSON syntax error at line {err.lineno} column {err.colno}: {err.msg}"
        ) from err
    _check_keys(doc, PHYSICAL_KEYS, "physical parameters")
    for key in PHYSICAL_KEYS:
        if key not in doc:
            raise MeniscusParseError(f"Missing required key '{key}'")
        _check_type(key, doc[key], (int, float))
    vals = dict(doc)
    epsilon = vals.pop("epsilon")
    try:
        return PhysicalParams(**vals), float(epsilon)
    except ParameterError as err:
        raise MeniscusParseError(str(err)) from err
