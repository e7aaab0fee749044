"""
Log-scale group summaries and geometric-mean quantities.

All summaries work on natural logs. The geometric mean of positive data is
exp(mean(log x)), so the ratio of geometric means between arms is the
exponential of the difference of log-scale means.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from bequiv.exceptions import DomainError, InsufficientDataError

from .datasets import Arm


@dataclass(frozen=True)
class GroupSummary:
    """
    Two-sample summary on the log scale under the pooled-variance model.

    Attributes:
        n_t, n_r: arm sizes.
        xbar_t, xbar_r: log-scale means.
        s_t, s_r: log-scale sample SDs (ddof=1).
        s_p: pooled SD, s_p^2 = ((n_t-1)s_t^2 + (n_r-1)s_r^2) / (n_t+n_r-2).
        se_diff: standard error of xbar_t - xbar_r, s_p * sqrt(1/n_t + 1/n_r).
        df: degrees of freedom n_t + n_r - 2.
    """
    n_t: int
    n_r: int
    xbar_t: float
    xbar_r: float
    s_t: float
    s_r: float
    s_p: float
    se_diff: float
    df: int

    @property
    def diff(self):
        """Difference of log-scale means, xbar_t - xbar_r."""
        return self.xbar_t - self.xbar_r

    @property
    def gmr(self):
        """Geometric mean ratio (test over reference) on the ratio scale."""
        return math.exp(self.diff)

    @property
    def se_scale(self):
        return math.sqrt(1.0 / self.n_t + 1.0 / self.n_r)

    @classmethod
    def from_moments(cls, diff, se_diff, df, n_t=None, n_r=None):
        """
        Build a summary that only carries the inference inputs.

        Useful when a study reports the mean difference, its standard error
        and degrees of freedom without raw data. Arm sizes default to an
        even split of df + 2; the reference mean is placed at zero.
        """
        if df < 1:
            raise DomainError(f"df must be >= 1, got {df!r}")
        if se_diff < 0:
            raise DomainError(f"se_diff must be non-negative, got {se_diff!r}")
        if n_t is None or n_r is None:
            n_t = (int(df) + 2) // 2
            n_r = int(df) + 2 - n_t
        scale = math.sqrt(1.0 / n_t + 1.0 / n_r)
        s_p = se_diff / scale
        return cls(
            n_t=n_t, n_r=n_r, xbar_t=float(diff), xbar_r=0.0,
            s_t=s_p, s_r=s_p, s_p=s_p, se_diff=float(se_diff), df=int(df),
        )


def _check_positive(values):
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise DomainError("values must not be empty")
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise DomainError("values must be finite and strictly positive")
    return arr


def geometric_mean(values):
    """(prod x_i)^(1/n), evaluated as exp(mean(log x))."""
    return float(stats.gmean(_check_positive(values)))


def _sample_sd(sorted_values):
    # constant data: exactly zero, not mean-rounding noise
    if sorted_values[0] == sorted_values[-1]:
        return 0.0
    return float(np.std(sorted_values, ddof=1))


def summarize_logs(log_t, log_r):
    """
    Summarize two arms given their log-scale observations.

    Values are sorted before reduction, so the result does not depend on
    record order.

    Raises:
        InsufficientDataError: if either arm has fewer than 2 observations.
    """
    log_t = np.sort(np.asarray(log_t, dtype=float))
    log_r = np.sort(np.asarray(log_r, dtype=float))
    n_t, n_r = log_t.size, log_r.size
    if n_t < 2 or n_r < 2:
        raise InsufficientDataError(
            f"need at least 2 observations per arm, got {n_t} test and {n_r} reference"
        )
    s_t = _sample_sd(log_t)
    s_r = _sample_sd(log_r)
    df = n_t + n_r - 2
    s_p = math.sqrt(((n_t - 1) * s_t ** 2 + (n_r - 1) * s_r ** 2) / df)
    return GroupSummary(
        n_t=n_t,
        n_r=n_r,
        xbar_t=float(np.mean(log_t)),
        xbar_r=float(np.mean(log_r)),
        s_t=s_t,
        s_r=s_r,
        s_p=s_p,
        se_diff=s_p * math.sqrt(1.0 / n_t + 1.0 / n_r),
        df=df,
    )


def summarize(dataset):
    """Log-transform a PkDataset and summarize it per arm."""
    return summarize_logs(dataset.log_values(Arm.TEST), dataset.log_values(Arm.REFERENCE))


def gm_expectation(mu, sigma, n):
    """
    Expected geometric mean of n lognormal(mu, sigma^2) draws: exp(mu + sigma^2 / (2n)).
    """
    if n < 1 or int(n) != n:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    if not sigma >= 0:
        raise DomainError(f"sigma must be non-negative, got {sigma!r}")
    return math.exp(mu + sigma * sigma / (2.0 * n))
