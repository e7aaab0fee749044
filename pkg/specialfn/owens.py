"""
Owen's Q function.

    Q_v(t, delta; a, b) = sqrt(2 pi) / (Gamma(v/2) 2^((v-2)/2))
                          * int_a^b Phi(t x / sqrt(v) - delta) x^(v-1) phi(x) dx

The weight x^(v-1) phi(x) times the constant is the chi density with v
degrees of freedom, so Q_v(t, delta; 0, inf) is the noncentral t CDF
P(T'_v(delta) <= t).
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from bequiv.conf import toolkit_setting
from bequiv.exceptions import DomainError, NumericalError

logger = logging.getLogger(__name__)

# The chi weight beyond sqrt(v) + 40 is below exp(-800); integrating past it
# only makes the adaptive rule lose the peak.
_CHI_TAIL_MARGIN = 40.0


@dataclass(frozen=True)
class QuadratureSpec:
    """
    Controls for the adaptive quadrature behind owens_q.

    Attributes:
        rel_tolerance: requested relative error.
        abs_tolerance: requested absolute error.
        max_subdivisions: upper bound on the number of subintervals.
    """
    rel_tolerance: float = 1e-10
    abs_tolerance: float = 1e-12
    max_subdivisions: int = 1024

    def __post_init__(self):
        if not (self.rel_tolerance > 0 and self.abs_tolerance > 0):
            raise DomainError("quadrature tolerances must be strictly positive")
        if int(self.max_subdivisions) != self.max_subdivisions or self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be a positive integer")

    @classmethod
    def from_settings(cls):
        """Build a QuadratureSpec from ``EQUIVALENCE['QUADRATURE']``."""
        quad = toolkit_setting('QUADRATURE')
        return cls(
            rel_tolerance=quad['REL_TOLERANCE'],
            abs_tolerance=quad['ABS_TOLERANCE'],
            max_subdivisions=quad['MAX_SUBDIVISIONS'],
        )


DEFAULT_QUADRATURE = QuadratureSpec()


def _chi_log_norm(v):
    # log of 1 / (Gamma(v/2) 2^(v/2 - 1))
    return -special.gammaln(0.5 * v) - (0.5 * v - 1.0) * math.log(2.0)


def owens_q(v, t, delta, a, b, quad=DEFAULT_QUADRATURE):
    """
    Evaluate Owen's Q_v(t, delta; a, b) by adaptive Gauss-Kronrod quadrature.

    Args:
        v: degrees of freedom, v >= 1.
        t: scale of the normal argument.
        delta: noncentrality.
        a: lower limit, a >= 0.
        b: finite upper limit, b >= a.
        quad: QuadratureSpec with tolerances and subdivision budget.

    Returns:
        The integral, clipped to [0, 1].

    Raises:
        DomainError: on invalid arguments.
        NumericalError: if the quadrature does not converge within
            ``quad.max_subdivisions``; carries the achieved error estimate.
    """
    if not v >= 1:
        raise DomainError(f"v must be >= 1, got {v!r}")
    for name, value in (('t', t), ('delta', delta), ('a', a), ('b', b)):
        if not math.isfinite(value):
            raise DomainError(f"{name} must be finite, got {value!r}")
    if a < 0:
        raise DomainError(f"lower limit must be non-negative, got {a!r}")
    if a > b:
        raise DomainError(f"lower limit {a!r} exceeds upper limit {b!r}")

    upper = min(b, math.sqrt(v) + _CHI_TAIL_MARGIN)
    if upper <= a:
        return 0.0

    log_norm = _chi_log_norm(v)
    scale = t / math.sqrt(v)

    def integrand(x):
        weight = math.exp(special.xlogy(v - 1.0, x) - 0.5 * x * x + log_norm)
        return special.ndtr(scale * x - delta) * weight

    # Break at the chi mode and where the normal factor switches on, so the
    # adaptive rule sees both features even on very wide intervals.
    breaks = [math.sqrt(v - 1.0)]
    if scale != 0.0:
        breaks.append(delta / scale)
    points = sorted({p for p in breaks if a < p < upper})
    # QUADPACK rejects a budget smaller than the number of forced pieces.
    limit = max(int(quad.max_subdivisions), len(points) + 2) if points else int(quad.max_subdivisions)

    result = integrate.quad(
        integrand,
        a,
        upper,
        epsabs=quad.abs_tolerance,
        epsrel=quad.rel_tolerance,
        limit=limit,
        points=points or None,
        full_output=1,
    )
    value, abserr = result[0], result[1]
    if len(result) > 3:
        logger.warning(f"Owen's Q quadrature failed for v={v}, t={t}, delta={delta}: {result[3]}")
        raise NumericalError(
            f"Owen's Q quadrature did not converge (error estimate {abserr:.3g})",
            achieved_tolerance=abserr,
        )
    return float(np.clip(value, 0.0, 1.0))
