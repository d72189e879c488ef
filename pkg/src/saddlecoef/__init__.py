"""Coefficients of large powers of power series.

Exact coefficients ``[z**k] f(z)**n``, saddle-point estimates with the
correction factor for secondary maxima, and expansion coefficients for the
regime ``k = o(n)`` with ``f(0) = 1`` and ``f'(0) = 0``.
"""

__version__ = "0.1.0"

from .asymptotics import (AsymptoticReport, CorrectionFactor, phi_limit, phi_series, prop9_g,
                          psi, t0_coefficients, t1_estimate)
from .errors import ComputationRefused, InputError, InvariantViolation, SpecParseError
from .oracle import (contour_coefficient, exact_coefficient, locate_maxima,
                     multinomial_coefficient)
from .profile import ExponentProfile, SeriesSpec, analyze, normalize
from .saddle import SaddlePoint, mu_sigma, solve_saddle
from .series import TruncatedSeries, revert_saddle
from .specfile import load_spec, parse_spec

__all__ = [
    "AsymptoticReport", "ComputationRefused", "CorrectionFactor", "ExponentProfile",
    "InputError", "InvariantViolation", "SaddlePoint", "SeriesSpec", "SpecParseError",
    "TruncatedSeries", "analyze", "contour_coefficient", "exact_coefficient", "load_spec",
    "locate_maxima", "multinomial_coefficient", "mu_sigma", "normalize", "parse_spec",
    "phi_limit", "phi_series", "prop9_g", "psi", "revert_saddle", "solve_saddle",
    "t0_coefficients", "t1_estimate",
]
