"""
The uniformly most powerful equivalence test for a normal mean with known
variance, and the known-variance TOST it is compared against.

For X_1..X_n iid N(mu, sigma^2) and H0: |mu| >= theta against
Ha: |mu| < theta, the UMP level-alpha test rejects H0 when

    sqrt(n) |xbar| <= psi(alpha, sqrt(n) theta, sigma)

where psi(alpha, theta, sigma) solves
Phi((psi - theta) / sigma) - Phi((-psi - theta) / sigma) = alpha.
"""
import math
from dataclasses import dataclass

from scipy import optimize, special

from bequiv.exceptions import DomainError

# Extra sigmas added to the bracket's upper end so the objective is positive there.
_PSI_BRACKET_MARGIN = 10.0


@dataclass(frozen=True)
class UmpSpec:
    """
    Attributes:
        alpha: level, 0 < alpha < 1.
        theta: half-width of the equivalence region |mu| < theta, > 0.
        sigma: known SD of one observation, > 0.
        n: number of observations.
    """
    alpha: float
    theta: float
    sigma: float
    n: int = 1

    def __post_init__(self):
        if not (0.0 < self.alpha < 1.0):
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        if not (self.theta > 0 and math.isfinite(self.theta)):
            raise DomainError(f"theta must be positive and finite, got {self.theta!r}")
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise DomainError(f"sigma must be positive and finite, got {self.sigma!r}")
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")

    @property
    def cutoff(self):
        """Rejection cutoff on the sqrt(n) |xbar| scale."""
        return ump_psi(self.alpha, math.sqrt(self.n) * self.theta, self.sigma)


def _band_probability(psi, center, sigma):
    # P(|Z sigma + center| <= psi)
    return float(special.ndtr((psi - center) / sigma) - special.ndtr((-psi - center) / sigma))


def ump_psi(alpha, theta, sigma):
    """
    Unique psi >= 0 with Phi((psi - theta)/sigma) - Phi((-psi - theta)/sigma) = alpha.

    The left side increases strictly from 0 to 1 in psi, so the root in
    [0, sigma z_{(1+alpha)/2} + theta + 10 sigma] is unique.
    """
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")
    if not (theta >= 0 and math.isfinite(theta)):
        raise DomainError(f"theta must be non-negative and finite, got {theta!r}")
    if not (sigma > 0 and math.isfinite(sigma)):
        raise DomainError(f"sigma must be positive and finite, got {sigma!r}")

    upper = sigma * float(special.ndtri(0.5 * (1.0 + alpha))) + theta + _PSI_BRACKET_MARGIN * sigma
    return optimize.brentq(
        lambda psi: _band_probability(psi, theta, sigma) - alpha,
        0.0,
        upper,
        xtol=1e-13,
        maxiter=500,
    )


def ump_decide(xbar, spec):
    """True (declare equivalence) iff sqrt(n) |xbar| <= psi(alpha, sqrt(n) theta, sigma)."""
    return math.sqrt(spec.n) * abs(xbar) <= spec.cutoff


def ump_exact_power(mu, spec):
    """P(UMP test rejects) when the true mean is ``mu``."""
    shift = math.sqrt(spec.n) * mu
    return min(1.0, max(0.0, _band_probability(spec.cutoff, shift, spec.sigma)))


def kv_tost_power(mu_diff, n_t, n_r, sigma, alpha, limits):
    """
    Power of TOST with known variance on the mean difference.

    Rejection window is theta_l + z sd < xbar_diff < theta_u - z sd with
    z = z_{1-alpha} and sd = sigma sqrt(1/n_t + 1/n_r); an empty window
    gives power 0.
    """
    if not (sigma > 0 and math.isfinite(sigma)):
        raise DomainError(f"sigma must be positive and finite, got {sigma!r}")
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")
    sd = sigma * math.sqrt(1.0 / n_t + 1.0 / n_r)
    z = float(special.ndtri(1.0 - alpha))
    low = limits.theta_l + z * sd
    high = limits.theta_u - z * sd
    if high <= low:
        return 0.0
    power = special.ndtr((high - mu_diff) / sd) - special.ndtr((low - mu_diff) / sd)
    return min(1.0, max(0.0, float(power)))
