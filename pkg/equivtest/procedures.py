"""
TOST and its confidence-interval counterparts for the log-scale mean difference.

Hypotheses: H0: mu_T - mu_R <= theta_l or >= theta_u versus
Ha: theta_l < mu_T - mu_R < theta_u. TOST is an intersection-union test:
it rejects H0 only when both one-sided size-alpha t-tests reject, with no
multiplicity adjustment.

The vectorised helpers (``tost_rejects``, ``interval_bounds``,
``ci_rejects``) accept numpy arrays of mean differences and standard
errors so the simulation harness reuses the exact decision rules applied to
a single study.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from bequiv.exceptions import DomainError
from specialfn.distributions import student_t_cdf, student_t_quantile

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Interval:
    """Closed interval [lower, upper]; either end may be infinite."""
    lower: float
    upper: float

    def __post_init__(self):
        if math.isnan(self.lower) or math.isnan(self.upper):
            raise DomainError("interval ends must not be NaN")
        if self.lower > self.upper:
            raise DomainError(f"interval lower {self.lower} exceeds upper {self.upper}")

    @property
    def width(self):
        return self.upper - self.lower

    def contains(self, value):
        return self.lower <= value <= self.upper


@dataclass(frozen=True)
class OneSidedResult:
    """One component of the TOST: its statistic, p-value and decision."""
    statistic: float
    p_value: float
    reject: bool


@dataclass(frozen=True)
class TostOutcome:
    """
    Result of the two one-sided tests.

    Attributes:
        t_lower: (diff - theta_l) / se_diff, tests H01: mu_diff <= theta_l.
        t_upper: (diff - theta_u) / se_diff, tests H02: mu_diff >= theta_u.
        critical: t_{1-alpha, df}.
        p_lower, p_upper: one-sided p-values.
        p_overall: max(p_lower, p_upper), the intersection-union p-value.
        reject: True when both one-sided tests reject (bioequivalence).
        alpha: size of each one-sided test.
        degenerate: True when se_diff == 0 and the limiting rule was used.
    """
    t_lower: float
    t_upper: float
    critical: float
    p_lower: float
    p_upper: float
    p_overall: float
    reject: bool
    alpha: float
    degenerate: bool = False


def _check_alpha(alpha, name='alpha'):
    if not (0.0 < alpha < 0.5):
        raise DomainError(f"{name} must lie in (0, 0.5), got {alpha!r}")


def _check_summary(summary):
    if summary.df < 1:
        raise DomainError(f"degrees of freedom must be >= 1, got {summary.df}")
    if not summary.se_diff >= 0:
        raise DomainError(f"se_diff must be non-negative, got {summary.se_diff}")


def iut_reject(*component_rejections):
    """
    Intersection-union combination: reject only if every component rejects.

    Works elementwise on numpy boolean arrays as well as on plain bools.
    """
    if not component_rejections:
        raise DomainError("an intersection-union test needs at least one component")
    result = component_rejections[0]
    for component in component_rejections[1:]:
        result = np.logical_and(result, component)
    return result if isinstance(result, np.ndarray) else bool(result)


def tost_rejects(diff, se_diff, df, limits, alpha):
    """
    Vectorised TOST decision.

    Args:
        diff: array of xbar_t - xbar_r.
        se_diff: array of standard errors (same shape, >= 0).
        df: common degrees of freedom.
        limits: BeLimits.
        alpha: one-sided size.

    Returns:
        Boolean array; entries with se_diff == 0 use the limiting rule
        theta_l < diff < theta_u.
    """
    lower, upper = one_sided_rejects(diff, se_diff, df, limits, alpha)
    return iut_reject(lower, upper)


def one_sided_rejects(diff, se_diff, df, limits, alpha):
    """
    Vectorised decisions of the lower and upper one-sided t-tests.

    Decided on the interval ends, diff - t se > theta_l and
    diff + t se < theta_u, with the same arithmetic as ``interval_bounds``
    so TOST and the interval rules agree bit for bit at ties. With
    se_diff == 0 this reduces to theta_l < diff < theta_u.
    """
    diff = np.asarray(diff, dtype=float)
    se_diff = np.asarray(se_diff, dtype=float)
    critical = student_t_quantile(1.0 - alpha, df)
    lower = limits.theta_l < diff - critical * se_diff
    upper = diff + critical * se_diff < limits.theta_u
    return lower, upper


def interval_bounds(diff, se_diff, df, alpha1, alpha2):
    """
    Vectorised [diff - t_{1-alpha1} se, diff + t_{1-alpha2} se].
    """
    diff = np.asarray(diff, dtype=float)
    se_diff = np.asarray(se_diff, dtype=float)
    t1 = student_t_quantile(1.0 - alpha1, df)
    t2 = t1 if alpha2 == alpha1 else student_t_quantile(1.0 - alpha2, df)
    return diff - t1 * se_diff, diff + t2 * se_diff


def ci_rejects(lower, upper, limits):
    """Vectorised strict containment of [lower, upper] in (theta_l, theta_u)."""
    return np.logical_and(limits.theta_l < lower, upper < limits.theta_u)


def _one_sided_degenerate(gap):
    # Limit of the one-sided statistic as se_diff -> 0; gap = diff - bound.
    if gap > 0:
        return math.inf
    if gap < 0:
        return -math.inf
    return 0.0


def _upper_tail(statistic, df):
    if math.isinf(statistic):
        return 0.0 if statistic > 0 else 1.0
    return student_t_cdf(-statistic, df)


def one_sided_tests(summary, limits, alpha):
    """
    Run the two component tests of TOST separately.

    Returns:
        (lower, upper) OneSidedResult pair. ``lower`` rejects
        H01: mu_diff <= theta_l when t_lower > t_{1-alpha}; ``upper`` rejects
        H02: mu_diff >= theta_u when t_upper < -t_{1-alpha}. The decisions
        come from ``one_sided_rejects``; the statistics are for reporting.
    """
    _check_alpha(alpha)
    _check_summary(summary)
    diff = summary.diff
    if summary.se_diff == 0:
        t_lower = _one_sided_degenerate(diff - limits.theta_l)
        t_upper = _one_sided_degenerate(diff - limits.theta_u)
    else:
        t_lower = (diff - limits.theta_l) / summary.se_diff
        t_upper = (diff - limits.theta_u) / summary.se_diff
    p_lower = _upper_tail(t_lower, summary.df)
    p_upper = _upper_tail(-t_upper, summary.df)
    reject_lower, reject_upper = one_sided_rejects(diff, summary.se_diff, summary.df, limits, alpha)
    return (
        OneSidedResult(statistic=t_lower, p_value=p_lower, reject=bool(reject_lower)),
        OneSidedResult(statistic=t_upper, p_value=p_upper, reject=bool(reject_upper)),
    )


def tost(summary, limits, alpha):
    """
    Two one-sided tests for bioequivalence.

    Args:
        summary: GroupSummary (log scale).
        limits: BeLimits.
        alpha: size of each one-sided test, 0 < alpha < 0.5.

    Returns:
        TostOutcome. When se_diff is zero the statistics are +-inf (or 0 on
        a bound), reject follows theta_l < diff < theta_u and the outcome is
        flagged ``degenerate``.
    """
    lower, upper = one_sided_tests(summary, limits, alpha)
    degenerate = summary.se_diff == 0
    if degenerate:
        logger.warning(
            "se_diff is zero; TOST decision uses the limiting rule theta_l < diff < theta_u"
        )
    return TostOutcome(
        t_lower=lower.statistic,
        t_upper=upper.statistic,
        critical=student_t_quantile(1.0 - alpha, summary.df),
        p_lower=lower.p_value,
        p_upper=upper.p_value,
        p_overall=max(lower.p_value, upper.p_value),
        reject=iut_reject(lower.reject, upper.reject),
        alpha=alpha,
        degenerate=degenerate,
    )


def ci_two_sided(summary, alpha1, alpha2):
    """
    [diff - t_{1-alpha1, r} se, diff + t_{1-alpha2, r} se], a
    100(1 - alpha1 - alpha2)% interval. alpha1 = alpha2 = alpha gives the
    usual 100(1 - 2 alpha)% interval.
    """
    _check_alpha(alpha1, 'alpha1')
    _check_alpha(alpha2, 'alpha2')
    _check_summary(summary)
    lower, upper = interval_bounds(summary.diff, summary.se_diff, summary.df, alpha1, alpha2)
    return Interval(float(lower), float(upper))


def ci_min_max(summary, alpha):
    """
    [min(0, diff - t se), max(0, diff + t se)] with t = t_{1-alpha, r}.

    Always contains zero; its coverage is 1 - alpha away from a zero mean
    difference and 1 at zero. When the equal-tailed interval already
    straddles zero the two coincide.
    """
    raw = ci_two_sided(summary, alpha, alpha)
    return Interval(min(0.0, raw.lower), max(0.0, raw.upper))


def decide_by_ci(interval, limits):
    """True iff theta_l < interval.lower and interval.upper < theta_u."""
    return bool(ci_rejects(interval.lower, interval.upper, limits))


def back_transform(interval):
    """Map a log-scale interval to the ratio scale, [exp(lower), exp(upper)]."""
    with np.errstate(over='ignore'):
        return Interval(float(np.exp(interval.lower)), float(np.exp(interval.upper)))
