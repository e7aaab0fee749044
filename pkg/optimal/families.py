"""
Two-cutoff equivalence tests for continuous one-parameter families with
monotone likelihood ratio.

For H0: theta <= theta1 or theta >= theta2 the optimal test rejects when
c1 < Y < c2, with the cutoffs fixed by

    P_theta1(c1 < Y < c2) = alpha = P_theta2(c1 < Y < c2).

Only continuous sampling distributions are handled, so no randomisation
at the cutoffs is needed.
"""
import logging
import math

from scipy import optimize, special, stats

from bequiv.exceptions import DomainError, NumericalError

logger = logging.getLogger(__name__)

RESIDUAL_TOLERANCE = 1e-8

_MAX_BRACKET_DOUBLINGS = 200
# Probability mass kept away from each end when bracketing the outer root.
_TAIL_GUARD = 1e-12


def normal_sum_cdf(n, sigma):
    """CDF of Y = X_1 + ... + X_n with X_i iid N(theta, sigma^2)."""
    scale = sigma * math.sqrt(n)

    def cdf(y, theta):
        return float(special.ndtr((y - n * theta) / scale))

    return cdf


def gamma_sum_cdf(n):
    """CDF of Y = X_1 + ... + X_n with X_i iid exponential with mean theta."""
    def cdf(y, theta):
        return float(stats.gamma.cdf(y, n, scale=theta))

    return cdf


def _quantile(cdf, p, theta):
    """Solve cdf(y, theta) = p by growing a bracket around zero."""
    low, high = -1.0, 1.0
    for _ in range(_MAX_BRACKET_DOUBLINGS):
        if cdf(low, theta) <= p:
            break
        low *= 2.0
    else:
        raise NumericalError(f"could not bracket the {p!r} quantile from below")
    for _ in range(_MAX_BRACKET_DOUBLINGS):
        if cdf(high, theta) >= p:
            break
        high *= 2.0
    else:
        raise NumericalError(f"could not bracket the {p!r} quantile from above")
    if cdf(low, theta) == p:
        return low
    return optimize.brentq(lambda y: cdf(y, theta) - p, low, high, xtol=1e-13, rtol=1e-15, maxiter=500)


def two_cutoff_solver(alpha, theta1, theta2, sampling_cdf):
    """
    Cutoffs (c1, c2) of the two-sided-null equivalence test.

    Nested root finding: for a trial c1 the inner step sets
    c2 = F^-1(F(c1; theta1) + alpha; theta1) so the theta1 equation holds
    exactly; the outer brentq moves c1 until the theta2 equation holds.

    Args:
        alpha: level, 0 < alpha < 1.
        theta1, theta2: null boundary parameters, theta1 < theta2.
        sampling_cdf: callable ``(y, theta) -> P_theta(Y <= y)``, continuous
            and strictly increasing in y, stochastically increasing in theta.

    Returns:
        (c1, c2) with c1 < c2.

    Raises:
        DomainError: alpha outside (0, 1) or theta1 >= theta2.
        NumericalError: the roots cannot be bracketed or the residuals
            exceed 1e-8; ``residuals`` holds both equation residuals.
    """
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")
    if not theta1 < theta2:
        raise DomainError(f"theta1 must be below theta2, got {theta1!r} and {theta2!r}")

    def upper_cutoff(c1):
        return _quantile(sampling_cdf, sampling_cdf(c1, theta1) + alpha, theta1)

    def size_at_theta2(c1):
        return sampling_cdf(upper_cutoff(c1), theta2) - sampling_cdf(c1, theta2) - alpha

    low = _quantile(sampling_cdf, _TAIL_GUARD, theta1)
    high = _quantile(sampling_cdf, 1.0 - alpha - _TAIL_GUARD, theta1)
    f_low, f_high = size_at_theta2(low), size_at_theta2(high)
    if f_low * f_high > 0:
        raise NumericalError(
            "outer cutoff equation does not change sign; is the family stochastically increasing?",
            residuals=(f_low, f_high),
        )

    c1 = optimize.brentq(size_at_theta2, low, high, xtol=1e-13, rtol=1e-15, maxiter=500)
    c2 = upper_cutoff(c1)
    residuals = (
        sampling_cdf(c2, theta1) - sampling_cdf(c1, theta1) - alpha,
        sampling_cdf(c2, theta2) - sampling_cdf(c1, theta2) - alpha,
    )
    logger.debug(f"Two-cutoff solution c1={c1}, c2={c2}, residuals={residuals}")
    if max(abs(r) for r in residuals) > RESIDUAL_TOLERANCE:
        raise NumericalError("two-cutoff residuals exceed tolerance", residuals=residuals)
    return c1, c2
