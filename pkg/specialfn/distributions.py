"""
Normal, Student-t and lognormal distribution functions.

Every function validates its arguments and raises DomainError instead of
returning NaN, so callers further up (TOST, power, the harness) never have
to check for silent non-finite values.
"""
import math

from scipy import optimize, special

from bequiv.exceptions import DomainError

# brentq tolerances for the t quantile; tight enough for a 1e-10 CDF residual.
_T_QUANTILE_XTOL = 1e-14
_T_QUANTILE_RTOL = 4 * 2.220446049250313e-16


def _check_finite(name, value):
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")


def _check_probability(p):
    if not (0.0 < p < 1.0):
        raise DomainError(f"probability must lie in (0, 1), got {p!r}")


def std_normal_cdf(x):
    """P(Z <= x) for a standard normal Z."""
    _check_finite('x', x)
    return float(special.ndtr(x))


def std_normal_quantile(p):
    """Inverse of std_normal_cdf on (0, 1)."""
    _check_probability(p)
    return float(special.ndtri(p))


def _t_upper_tail(x, df):
    # P(T > x) for x >= 0 via I_{df/(df+x^2)}(df/2, 1/2) / 2
    return 0.5 * float(special.betainc(0.5 * df, 0.5, df / (df + x * x)))


def student_t_cdf(x, df):
    """
    P(T <= x) for Student's t with ``df`` degrees of freedom.

    Uses the regularized incomplete beta function:
    P(|T| > |x|) = I_{df/(df+x^2)}(df/2, 1/2).
    """
    _check_finite('x', x)
    if not df > 0:
        raise DomainError(f"degrees of freedom must be positive, got {df!r}")
    if x == 0.0:
        return 0.5
    tail = _t_upper_tail(abs(x), df)
    return 1.0 - tail if x > 0 else tail


def student_t_quantile(p, df):
    """
    Inverse of student_t_cdf.

    Safeguarded root finding (brentq) on the upper-tail probability, with a
    bracket grown from the normal quantile until it straddles the target.
    Working on the tail keeps small probabilities accurate; the root is
    reflected for p < 0.5.
    """
    _check_probability(p)
    if not df > 0:
        raise DomainError(f"degrees of freedom must be positive, got {df!r}")
    if p == 0.5:
        return 0.0
    tail = min(p, 1.0 - p)
    width = max(2.0 * abs(float(special.ndtri(tail))), 1.0)
    while _t_upper_tail(width, df) > tail:
        width *= 2.0
        if width > 1e300:
            raise DomainError(f"t quantile for p={p!r}, df={df!r} is not representable")
    root = optimize.brentq(
        lambda x: _t_upper_tail(x, df) - tail,
        0.0,
        width,
        xtol=_T_QUANTILE_XTOL,
        rtol=_T_QUANTILE_RTOL,
        maxiter=500,
    )
    return root if p > 0.5 else -root


def inverse_erf(y):
    """
    Inverse of the standard error function erf(x) = 2/sqrt(pi) * int_0^x exp(-t^2) dt.
    """
    _check_finite('y', y)
    if not abs(y) < 1.0:
        raise DomainError(f"inverse_erf needs |y| < 1, got {y!r}")
    return float(special.erfinv(y))


def lognormal_quantile(p, mu, sigma):
    """
    p-quantile of exp(N(mu, sigma^2)): exp(sigma * sqrt(2) * erfinv(2p - 1) + mu).

    At p = 0.5 the erfinv term is exactly zero, so the median is exp(mu).
    """
    _check_probability(p)
    _check_finite('mu', mu)
    if not sigma >= 0:
        raise DomainError(f"sigma must be non-negative, got {sigma!r}")
    if sigma == 0:
        return math.exp(mu)
    return math.exp(sigma * math.sqrt(2.0) * inverse_erf(2.0 * p - 1.0) + mu)
