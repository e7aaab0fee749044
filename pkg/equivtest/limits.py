"""
Bioequivalence limits on the ratio and log scales.
"""
import logging
import math
from dataclasses import dataclass

from bequiv.exceptions import DomainError

logger = logging.getLogger(__name__)

# Regulatory 80-125% rule. The log-scale pair is built from ln(1.25) alone so
# that theta_l == -theta_u holds exactly.
DEFAULT_UPPER_RATIO = 1.25


@dataclass(frozen=True)
class BeLimits:
    """
    Equivalence bounds for mu_T - mu_R on the log scale.

    Attributes:
        theta_l, theta_u: log-scale bounds, theta_l < theta_u.

    The ratio-scale bounds are ``delta_l = exp(theta_l)`` and
    ``delta_u = exp(theta_u)``. Limits that are not symmetric about zero
    are accepted but logged: the (1 - 2 alpha) interval procedure is only
    size-alpha when the two one-sided tests are equal-tailed.
    """
    theta_l: float
    theta_u: float

    def __post_init__(self):
        if not (math.isfinite(self.theta_l) and math.isfinite(self.theta_u)):
            raise DomainError("equivalence limits must be finite")
        if not self.theta_l < self.theta_u:
            raise DomainError(
                f"limits must satisfy LO < HI, got theta_l={self.theta_l}, theta_u={self.theta_u}"
            )
        if not self.is_symmetric:
            logger.warning(
                f"Equivalence limits ({self.delta_l:.6g}, {self.delta_u:.6g}) are not symmetric "
                f"on the log scale; the 90% interval rule is size-alpha only for equal tails."
            )

    @classmethod
    def default(cls):
        """The 0.80-1.25 limits."""
        theta_u = math.log(DEFAULT_UPPER_RATIO)
        return cls(theta_l=-theta_u, theta_u=theta_u)

    @classmethod
    def from_ratio(cls, lower, upper):
        """Build limits from ratio-scale bounds ``0 < lower < upper``."""
        if not (lower > 0 and upper > 0):
            raise DomainError(f"ratio limits must be positive, got {lower}, {upper}")
        if not lower < upper:
            raise DomainError("limits must satisfy LO < HI")
        if math.isclose(lower * upper, 1.0, rel_tol=1e-12, abs_tol=0.0):
            # Reciprocal pair: keep exact log-scale symmetry.
            theta_u = math.log(upper)
            return cls(theta_l=-theta_u, theta_u=theta_u)
        return cls(theta_l=math.log(lower), theta_u=math.log(upper))

    @property
    def delta_l(self):
        return math.exp(self.theta_l)

    @property
    def delta_u(self):
        return math.exp(self.theta_u)

    @property
    def is_symmetric(self):
        return math.isclose(self.theta_l, -self.theta_u, rel_tol=1e-12, abs_tol=1e-15)

    @property
    def midpoint(self):
        return 0.5 * (self.theta_l + self.theta_u)

    def contains(self, mu_diff):
        """True if mu_diff lies in the open alternative (theta_l, theta_u)."""
        return self.theta_l < mu_diff < self.theta_u
