"""
pymeniscus Custom Exception Types

Created on 18 Oct 2026

:author: semuadmin
:copyright: SEMU Consulting © 2026
:license: BSD 3-Clause
"""


class MeniscusError(Exception):
    """Base class for all pymeniscus errors."""


class ParameterError(MeniscusError):
    """Parameter Error Class."""


class OutOfDomain(ParameterError):
    """
    Query point lies outside the configured validity interval.
    """


class NonSmooth(MeniscusError):
    """
    Derivative requested exactly at a kink of the solid profile
    (e.g. wedge apex). Caller must query one side.
    """


class ProfileViolation(MeniscusError):
    """
    Solid profile is non-positive where positivity is required.
    """


class DegenerateFilm(MeniscusError):
    """
    Film height is non-positive.
    """


class Rupture(DegenerateFilm):
    """
    Film height fell below the rupture floor during stepping.
    """


class IntegrationFailure(MeniscusError):
    """
    Interior ODE integration could not meet tolerance.
    """


class ConstraintViolation(MeniscusError):
    """
    Cutoff map used outside its bijectivity constraint |Lambda| <= delta^2.
    """


class GridTooSmall(ParameterError):
    """
    Grid has fewer nodes than the stencil width.
    """


class SingularClosure(MeniscusError):
    """
    Ghost node closure system is singular.
    """


class MapDegenerate(MeniscusError):
    """
    Moving-to-fixed map is degenerate (contact point reached symmetry point).
    """


class NewtonDiverged(MeniscusError):
    """
    Newton iteration failed to converge at the minimum time step.
    """


class ZeroContactAngle(ParameterError):
    """
    Contact angle is zero (complete wetting); kinematic relation degenerates.
    """


class EnergyConstraintViolation(ParameterError):
    """
    Interface energies violate (b+c-a)/b > 0.
    """


class VolumeUnattainable(MeniscusError):
    """
    Requested volume is outside the attainable range of equilibria.
    """


class NonmonotoneVolume(MeniscusError):
    """
    Volume constraint has several equilibrium roots.
    All roots are carried on the ``roots`` attribute.
    """

    def __init__(self, msg: str, roots: list):
        """
        Constructor.

        :param str msg: error message
        :param list roots: all equilibrium contact points found, ascending
        """

        super().__init__(msg)
        self.roots = roots


class NonPositiveSeries(ParameterError):
    """
    Decay fit series contains non-positive values.
    """


class SingularConstraint(MeniscusError):
    """
    Constraints of the discrete Poincare problem are linearly dependent.
    """


class MeniscusParseError(MeniscusError):
    """
    Run configuration parsing error.
    """


class MeniscusIOError(MeniscusError):
    """
    Output file could not be written or read.
    """


class ValidityWarning(UserWarning):
    """
    Non-fatal warning that a parameter set is outside the
    lubrication regime.
    """
