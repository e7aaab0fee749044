"""
Seeded Monte Carlo estimates of size, power and coverage.

Each replication draws n_t and n_r log-scale normal observations, reduces
them to the pooled two-sample summary and applies a decision or interval
rule. Rules are evaluated on whole blocks of replications with the same
vectorised helpers the single-study procedures use, so the harness tests
exactly the decisions a study would get.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from django.db import models
from joblib import Parallel, delayed

from bequiv.exceptions import ConfigurationError, DomainError
from equivtest.procedures import ci_rejects, interval_bounds, one_sided_rejects, tost_rejects
from optimal.ump import ump_psi
from pkdata.summaries import gm_expectation, summarize_logs

from .streams import DEFAULT_BLOCK_SIZE, block_generator, blocks, check_seed

logger = logging.getLogger(__name__)


class Procedure(models.TextChoices):
    TOST = 'tost', 'Two one-sided tests'
    TOST_LOWER = 'tost_lower', 'Lower one-sided test'
    TOST_UPPER = 'tost_upper', 'Upper one-sided test'
    CI_EQUAL = 'ci_equal', 'Equal-tailed interval'
    CI_MINMAX = 'ci_minmax', 'Min/max interval'
    CI_UNEQUAL = 'ci_unequal', 'Unequal-tailed interval'
    UMP_KNOWN_SIGMA = 'ump_known_sigma', 'UMP test, known sigma'


class CoverageMethod(models.TextChoices):
    EQUAL = 'equal', 'Equal-tailed interval'
    UNEQUAL = 'unequal', 'Unequal-tailed interval'
    MINMAX = 'minmax', 'Min/max interval'


def _parse_alphas(name, args, expected):
    parts = [p.strip() for p in args.split(',')] if args else []
    if len(parts) != expected:
        raise ConfigurationError(f"'{name}' takes {expected} alpha value(s), got '{args}'")
    try:
        alphas = [float(p) for p in parts]
    except ValueError as exc:
        raise ConfigurationError(f"invalid alpha in '{name}:{args}'") from exc
    for alpha in alphas:
        if not (0.0 < alpha < 0.5):
            raise ConfigurationError(f"alpha values must lie in (0, 0.5), got {alpha!r}")
    return alphas


def _split(text):
    name, _, args = str(text).strip().partition(':')
    return name.strip().lower(), args


@dataclass(frozen=True)
class ProcedureSpec:
    """
    A decision procedure for the harness.

    Parsed from identifiers such as ``tost``, ``ci_minmax`` or
    ``ci_unequal:0.01,0.09``. alpha1/alpha2 are only set for ci_unequal;
    the other procedures use the scenario's alpha.
    """
    kind: Procedure
    alpha1: float = None
    alpha2: float = None

    @classmethod
    def parse(cls, text):
        if isinstance(text, cls):
            return text
        name, args = _split(text)
        if name not in Procedure.values:
            raise ConfigurationError(
                f"unknown procedure '{text}' (expected one of: {', '.join(Procedure.values)})"
            )
        kind = Procedure(name)
        if kind == Procedure.CI_UNEQUAL:
            alpha1, alpha2 = _parse_alphas(name, args, 2)
            return cls(kind, alpha1, alpha2)
        if args:
            raise ConfigurationError(f"procedure '{name}' takes no arguments")
        return cls(kind)

    @property
    def label(self):
        if self.kind == Procedure.CI_UNEQUAL:
            return f"{self.kind.value}:{self.alpha1!r},{self.alpha2!r}"
        return self.kind.value


@dataclass(frozen=True)
class CoverageSpec:
    """
    An interval construction for coverage runs.

    Parsed from ``equal``, ``equal:A``, ``minmax``, ``minmax:A`` or
    ``unequal:A1,A2``; a bare ``equal``/``minmax`` uses the scenario's alpha.
    """
    method: CoverageMethod
    alpha1: float = None
    alpha2: float = None

    @classmethod
    def parse(cls, text):
        if isinstance(text, cls):
            return text
        name, args = _split(text)
        if name not in CoverageMethod.values:
            raise ConfigurationError(
                f"unknown coverage method '{text}' (expected one of: {', '.join(CoverageMethod.values)})"
            )
        method = CoverageMethod(name)
        if method == CoverageMethod.UNEQUAL:
            alpha1, alpha2 = _parse_alphas(name, args, 2)
            return cls(method, alpha1, alpha2)
        if args:
            (alpha,) = _parse_alphas(name, args, 1)
            return cls(method, alpha, alpha)
        return cls(method)

    @property
    def label(self):
        if self.alpha1 is None:
            return self.method.value
        if self.method == CoverageMethod.UNEQUAL:
            return f"{self.method.value}:{self.alpha1!r},{self.alpha2!r}"
        return f"{self.method.value}:{self.alpha1!r}"


@dataclass(frozen=True)
class Scenario:
    """
    Data-generating model: log-scale normal arms with a common SD.

    Attributes:
        mu_t, mu_r: log-scale means.
        sigma: common log-scale SD, > 0.
        n_t, n_r: arm sizes, >= 2.
        alpha: one-sided size used by the procedures.
        limits: BeLimits.
    """
    mu_t: float
    mu_r: float
    sigma: float
    n_t: int
    n_r: int
    alpha: float
    limits: object

    def __post_init__(self):
        if not (math.isfinite(self.mu_t) and math.isfinite(self.mu_r)):
            raise DomainError("scenario means must be finite")
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise DomainError(f"sigma must be positive and finite, got {self.sigma!r}")
        for name in ('n_t', 'n_r'):
            value = getattr(self, name)
            if int(value) != value or value < 2:
                raise DomainError(f"{name} must be an integer >= 2, got {value!r}")
        if not (0.0 < self.alpha < 0.5):
            raise DomainError(f"alpha must lie in (0, 0.5), got {self.alpha!r}")

    @classmethod
    def from_difference(cls, mu_diff, sigma, n_t, n_r, alpha, limits):
        """Scenario with the reference mean at zero."""
        return cls(mu_t=float(mu_diff), mu_r=0.0, sigma=sigma, n_t=n_t, n_r=n_r, alpha=alpha, limits=limits)

    @property
    def mu_diff(self):
        return self.mu_t - self.mu_r

    @property
    def df(self):
        return int(self.n_t) + int(self.n_r) - 2

    @property
    def se_scale(self):
        return math.sqrt(1.0 / self.n_t + 1.0 / self.n_r)


@dataclass(frozen=True)
class SimReport:
    """
    Outcome of a Monte Carlo run.

    Attributes:
        replications: number of replications.
        hits: replications counted (rejections or covering intervals).
        rate: hits / replications.
        std_error: binomial standard error sqrt(rate (1 - rate) / replications).
        seed: master seed.
        procedure: procedure or coverage method identifier.
        block_size: replications per random stream block.
    """
    replications: int
    hits: int
    rate: float
    std_error: float
    seed: int
    procedure: str
    block_size: int = DEFAULT_BLOCK_SIZE

    @classmethod
    def from_hits(cls, replications, hits, seed, procedure, block_size=DEFAULT_BLOCK_SIZE):
        rate = hits / replications
        return cls(
            replications=int(replications),
            hits=int(hits),
            rate=rate,
            std_error=math.sqrt(rate * (1.0 - rate) / replications),
            seed=int(seed),
            procedure=procedure,
            block_size=int(block_size),
        )


@dataclass(frozen=True)
class EstimateCheck:
    """Empirical estimate set against its theoretical value."""
    empirical: float
    predicted: float
    std_error: float

    @property
    def z_score(self):
        if self.std_error == 0:
            return 0.0 if self.empirical == self.predicted else math.inf
        return (self.empirical - self.predicted) / self.std_error


def simulate_dataset(scenario, rng):
    """Draw one study under ``scenario`` from generator ``rng`` and summarize it."""
    log_t = rng.normal(scenario.mu_t, scenario.sigma, size=int(scenario.n_t))
    log_r = rng.normal(scenario.mu_r, scenario.sigma, size=int(scenario.n_r))
    return summarize_logs(log_t, log_r)


def _draw_block(scenario, count, rng):
    # Row i is replication i. All test-arm values are drawn before any reference
    # values, so only a one-replication block reproduces simulate_dataset.
    log_t = rng.normal(scenario.mu_t, scenario.sigma, size=(count, int(scenario.n_t)))
    log_r = rng.normal(scenario.mu_r, scenario.sigma, size=(count, int(scenario.n_r)))
    diff = log_t.mean(axis=1) - log_r.mean(axis=1)
    pooled = (
        (scenario.n_t - 1) * log_t.var(axis=1, ddof=1) + (scenario.n_r - 1) * log_r.var(axis=1, ddof=1)
    ) / scenario.df
    return diff, np.sqrt(pooled) * scenario.se_scale


def _rejections(spec, scenario, diff, se_diff):
    limits, alpha, df = scenario.limits, scenario.alpha, scenario.df
    kind = spec.kind
    if kind == Procedure.TOST:
        return tost_rejects(diff, se_diff, df, limits, alpha)
    if kind == Procedure.TOST_LOWER:
        return one_sided_rejects(diff, se_diff, df, limits, alpha)[0]
    if kind == Procedure.TOST_UPPER:
        return one_sided_rejects(diff, se_diff, df, limits, alpha)[1]
    if kind == Procedure.UMP_KNOWN_SIGMA:
        half_width = 0.5 * (limits.theta_u - limits.theta_l)
        psi = ump_psi(alpha, half_width, scenario.sigma * scenario.se_scale)
        return np.abs(diff - limits.midpoint) <= psi
    if kind == Procedure.CI_UNEQUAL:
        lower, upper = interval_bounds(diff, se_diff, df, spec.alpha1, spec.alpha2)
    else:
        lower, upper = interval_bounds(diff, se_diff, df, alpha, alpha)
        if kind == Procedure.CI_MINMAX:
            lower, upper = np.minimum(0.0, lower), np.maximum(0.0, upper)
    return ci_rejects(lower, upper, limits)


def _coverage(spec, scenario, diff, se_diff):
    alpha1 = scenario.alpha if spec.alpha1 is None else spec.alpha1
    alpha2 = scenario.alpha if spec.alpha2 is None else spec.alpha2
    lower, upper = interval_bounds(diff, se_diff, scenario.df, alpha1, alpha2)
    if spec.method == CoverageMethod.MINMAX:
        lower, upper = np.minimum(0.0, lower), np.maximum(0.0, upper)
    target = scenario.mu_diff
    return np.logical_and(lower <= target, target <= upper)


def _count_block(rule, spec, scenario, seed, block, count):
    diff, se_diff = _draw_block(scenario, count, block_generator(seed, block))
    return int(np.count_nonzero(rule(spec, scenario, diff, se_diff)))


def _run_blocks(func, plan, workers, *args):
    if workers == 1:
        return [func(*args, block, count) for block, count in plan]
    return Parallel(n_jobs=workers)(delayed(func)(*args, block, count) for block, count in plan)


def _count(rule, spec, scenario, replications, seed, workers, block_size):
    seed = check_seed(seed)
    plan = blocks(replications, block_size)
    hits = sum(_run_blocks(_count_block, plan, workers, rule, spec, scenario, seed))
    return SimReport.from_hits(replications, hits, seed, spec.label, block_size)


def estimate_rejection_rate(procedure, scenario, replications, seed, workers=1,
                            block_size=DEFAULT_BLOCK_SIZE):
    """
    Fraction of simulated studies in which ``procedure`` rejects H0.

    Args:
        procedure: ProcedureSpec or identifier (tost, tost_lower,
            tost_upper, ci_equal, ci_minmax, ci_unequal:A1,A2,
            ump_known_sigma).
        scenario: Scenario.
        replications: number of simulated studies, >= 1.
        seed: master seed in [0, 2**64).
        workers: joblib worker count; the result does not depend on it.
        block_size: replications per random stream block.

    Raises:
        ConfigurationError: unknown procedure identifier.
    """
    spec = ProcedureSpec.parse(procedure)
    logger.info(
        f"Estimating rejection rate of {spec.label}: mu_diff={scenario.mu_diff:.6g}, "
        f"sigma={scenario.sigma:.6g}, n={scenario.n_t}/{scenario.n_r}, reps={replications}, seed={seed}"
    )
    return _count(_rejections, spec, scenario, replications, seed, workers, block_size)


def estimate_coverage(ci_method, scenario, replications, seed, workers=1,
                      block_size=DEFAULT_BLOCK_SIZE):
    """
    Fraction of simulated intervals containing mu_T - mu_R (closed ends).

    ``ci_method`` is a CoverageSpec or identifier: equal[:A], minmax[:A],
    unequal:A1,A2.
    """
    spec = CoverageSpec.parse(ci_method)
    logger.info(f"Estimating coverage of {spec.label}: mu_diff={scenario.mu_diff:.6g}, reps={replications}")
    return _count(_coverage, spec, scenario, replications, seed, workers, block_size)


def _gm_block(mu, sigma, n, seed, block, count):
    rng = block_generator(seed, block)
    gm = np.exp(rng.normal(mu, sigma, size=(count, n)).mean(axis=1))
    return float(gm.sum()), float(np.square(gm).sum())


def gm_bias_check(mu, sigma, n, replications, seed, workers=1, block_size=DEFAULT_BLOCK_SIZE):
    """
    Mean geometric mean of n lognormal(mu, sigma^2) draws against exp(mu + sigma^2 / (2n)).

    Returns:
        EstimateCheck; with sigma = 0 both values are exp(mu) and the
        standard error is zero.
    """
    predicted = gm_expectation(mu, sigma, n)
    seed = check_seed(seed)
    plan = blocks(replications, block_size)
    if sigma == 0:
        return EstimateCheck(empirical=math.exp(mu), predicted=predicted, std_error=0.0)

    partials = _run_blocks(_gm_block, plan, workers, mu, sigma, int(n), seed)
    total = sum(p[0] for p in partials)
    total_sq = sum(p[1] for p in partials)
    mean = total / replications
    if replications > 1:
        variance = max(0.0, (total_sq - replications * mean * mean) / (replications - 1))
        std_error = math.sqrt(variance / replications)
    else:
        std_error = math.inf
    return EstimateCheck(empirical=mean, predicted=predicted, std_error=std_error)


def _lognormal_block(mu, sigma, seed, block, count):
    return np.exp(block_generator(seed, block).normal(mu, sigma, size=count))


def lognormal_median_check(mu, sigma, draws, seed, workers=1, block_size=DEFAULT_BLOCK_SIZE):
    """
    Sample median of ``draws`` lognormal(mu, sigma^2) values against exp(mu).

    The standard error is the large-sample one,
    sqrt(pi / 2) sigma exp(mu) / sqrt(draws).
    """
    if not sigma >= 0:
        raise DomainError(f"sigma must be non-negative, got {sigma!r}")
    seed = check_seed(seed)
    plan = blocks(draws, block_size)
    values = np.concatenate(_run_blocks(_lognormal_block, plan, workers, mu, sigma, seed))
    return EstimateCheck(
        empirical=float(np.median(values)),
        predicted=math.exp(mu),
        std_error=math.sqrt(math.pi / 2.0) * sigma * math.exp(mu) / math.sqrt(draws),
    )
