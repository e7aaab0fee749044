"""
Exact power of the two one-sided tests and sample-size search.

The power of TOST for a two-sample parallel design with common log-scale
SD sigma is a difference of two Owen's Q integrals:

    power = Q_r(-t, (mu_diff - theta_u) / (sigma k); 0, b)
          - Q_r( t, (mu_diff - theta_l) / (sigma k); 0, b)

with r = n_t + n_r - 2, t = t_{1-alpha, r}, k = sqrt(1/n_t + 1/n_r) and
b = (theta_u - theta_l) sqrt(r) / (2 sigma k t).
"""
import csv
import logging
import math
from dataclasses import dataclass, replace

from joblib import Parallel, delayed

from bequiv.exceptions import DomainError, InfeasibleError
from specialfn.distributions import student_t_quantile
from specialfn.owens import DEFAULT_QUADRATURE, owens_q

logger = logging.getLogger(__name__)

CURVE_HEADER = ('mu_diff', 'power')
DEFAULT_SAMPLE_SIZE_CAP = 100_000


@dataclass(frozen=True)
class PowerParams:
    """
    Inputs of the exact power calculation.

    Attributes:
        mu_diff: true log-scale difference mu_T - mu_R.
        n_t, n_r: arm sizes, each >= 2.
        sigma: common log-scale SD, > 0.
        alpha: size of each one-sided test, 0 < alpha < 0.5.
        limits: BeLimits.
    """
    mu_diff: float
    n_t: int
    n_r: int
    sigma: float
    alpha: float
    limits: object

    def __post_init__(self):
        if not math.isfinite(self.mu_diff):
            raise DomainError(f"mu_diff must be finite, got {self.mu_diff!r}")
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise DomainError(f"sigma must be positive and finite, got {self.sigma!r}")
        for name in ('n_t', 'n_r'):
            value = getattr(self, name)
            if int(value) != value or value < 2:
                raise DomainError(f"{name} must be an integer >= 2, got {value!r}")
        if not (0.0 < self.alpha < 0.5):
            raise DomainError(f"alpha must lie in (0, 0.5), got {self.alpha!r}")

    @property
    def df(self):
        return int(self.n_t) + int(self.n_r) - 2

    @property
    def se_scale(self):
        return math.sqrt(1.0 / self.n_t + 1.0 / self.n_r)


@dataclass(frozen=True)
class SampleSizeResult:
    n_t: int
    n_r: int
    power: float


@dataclass(frozen=True)
class PowerPoint:
    mu_diff: float
    power: float


def exact_power(params, quad=DEFAULT_QUADRATURE):
    """
    P(TOST rejects) under ``params``, clamped to [0, 1].

    Raises:
        NumericalError: propagated from owens_q.
    """
    df = params.df
    t = student_t_quantile(1.0 - params.alpha, df)
    scaled_sd = params.sigma * params.se_scale
    limits = params.limits
    delta_upper = (params.mu_diff - limits.theta_u) / scaled_sd
    delta_lower = (params.mu_diff - limits.theta_l) / scaled_sd
    b = (limits.theta_u - limits.theta_l) * math.sqrt(df) / (2.0 * scaled_sd * t)

    raw = owens_q(df, -t, delta_upper, 0.0, b, quad) - owens_q(df, t, delta_lower, 0.0, b, quad)
    return min(1.0, max(0.0, raw))


def _group_sizes(n_r, ratio):
    return max(2, math.ceil(ratio * n_r - 1e-12)), n_r


def sample_size(target_power, mu_diff, sigma, alpha, limits, ratio=1.0, cap=DEFAULT_SAMPLE_SIZE_CAP,
                quad=DEFAULT_QUADRATURE):
    """
    Smallest design reaching ``target_power``.

    Scans n_r = 2, 3, ... upward with n_t = max(2, ceil(ratio * n_r)) and
    returns the first design whose exact power reaches the target. A linear
    scan is used because power need not be monotone in n near degenerate
    corners.

    Args:
        target_power: required power, 0 < target_power < 1.
        mu_diff: assumed log-scale difference, strictly inside the limits.
        sigma: assumed log-scale SD.
        alpha: one-sided size.
        limits: BeLimits.
        ratio: allocation n_t : n_r, > 0.
        cap: largest arm size to try.

    Returns:
        SampleSizeResult with the sizes and the achieved power.

    Raises:
        InfeasibleError: mu_diff on or outside the limits, or no design up
            to the cap reaches the target.
    """
    if not (0.0 < target_power < 1.0):
        raise DomainError(f"target power must lie in (0, 1), got {target_power!r}")
    if not (ratio > 0 and math.isfinite(ratio)):
        raise DomainError(f"allocation ratio must be positive, got {ratio!r}")
    if not limits.contains(mu_diff):
        raise InfeasibleError(
            f"mu_diff={mu_diff:.6g} is not strictly inside the limits "
            f"({limits.theta_l:.6g}, {limits.theta_u:.6g}); no sample size reaches the target power"
        )

    n_r = 2
    while True:
        n_t, n_r = _group_sizes(n_r, ratio)
        if n_t > cap or n_r > cap:
            raise InfeasibleError(
                f"no design with at most {cap} subjects per arm reaches power {target_power}"
            )
        params = PowerParams(mu_diff=mu_diff, n_t=n_t, n_r=n_r, sigma=sigma, alpha=alpha, limits=limits)
        power = exact_power(params, quad)
        if power >= target_power:
            logger.info(f"Sample size found: n_t={n_t}, n_r={n_r}, power={power:.6f}")
            return SampleSizeResult(n_t=n_t, n_r=n_r, power=power)
        n_r += 1


def power_curve(params, grid, workers=1, quad=DEFAULT_QUADRATURE):
    """
    Exact power at each mu_diff of ``grid``, in grid order.

    Rows are evaluated through joblib when ``workers > 1``; the output
    order never depends on scheduling.
    """
    grid = [float(m) for m in grid]
    if not grid:
        raise DomainError("power curve grid must not be empty")
    points = [replace(params, mu_diff=m) for m in grid]
    if workers == 1:
        powers = [exact_power(p, quad) for p in points]
    else:
        powers = Parallel(n_jobs=workers)(delayed(exact_power)(p, quad) for p in points)
    return [PowerPoint(mu_diff=m, power=p) for m, p in zip(grid, powers)]


def write_power_curve(rows, stream):
    """Write PowerPoint rows as ``mu_diff,power`` CSV."""
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(CURVE_HEADER)
    for row in rows:
        writer.writerow([repr(row.mu_diff), repr(row.power)])
