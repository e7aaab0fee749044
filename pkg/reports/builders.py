"""
Assemble the documents printed by the management commands.
"""
import hashlib
import io
import json
import logging
import math
from dataclasses import dataclass

import bequiv
from equivtest.procedures import (
    back_transform, ci_min_max, ci_two_sided, decide_by_ci, tost,
)
from pkdata.datasets import parse_csv
from pkdata.summaries import summarize
from rest_framework.utils.encoders import JSONEncoder

from simharness.engine import CoverageMethod, CoverageSpec

logger = logging.getLogger(__name__)

BIOEQUIVALENT = 'bioequivalent'
NOT_BIOEQUIVALENT = 'not bioequivalent'


@dataclass(frozen=True)
class CiResult:
    method: str
    log: object
    ratio: object
    reject: bool


@dataclass(frozen=True)
class AnalysisReport:
    """Everything ``analyze`` reports for one PK dataset."""
    version: str
    input_digest: str
    alpha: float
    limits: object
    summary: object
    gmr: float
    ci_method: str
    ci_log: object
    ci_ratio: object
    ci_decision: bool
    intervals: tuple
    tost: object
    p_overall: float
    decision: str
    degenerate: bool
    limits_symmetric: bool


def input_digest(data):
    return hashlib.sha256(data).hexdigest()


def _interval(summary, spec, alpha):
    if spec.method == CoverageMethod.MINMAX:
        return ci_min_max(summary, spec.alpha1 or alpha)
    alpha1 = spec.alpha1 or alpha
    alpha2 = spec.alpha2 or alpha
    return ci_two_sided(summary, alpha1, alpha2)


def _ci_result(summary, spec, alpha, limits):
    interval = _interval(summary, spec, alpha)
    return CiResult(
        method=spec.label,
        log=interval,
        ratio=back_transform(interval),
        reject=decide_by_ci(interval, limits),
    )


def build_analysis_report(data, alpha, limits, ci_method):
    """
    Analyze raw CSV bytes.

    Args:
        data: contents of the PK CSV file.
        alpha: one-sided size.
        limits: BeLimits.
        ci_method: CoverageSpec or identifier selecting the reported interval.

    Returns:
        AnalysisReport. The equal-tailed and min/max intervals are always
        included in ``intervals``; the selected method is added when it is
        neither.
    """
    spec = CoverageSpec.parse(ci_method)
    summary = summarize(parse_csv(io.BytesIO(data)))
    outcome = tost(summary, limits, alpha)

    specs = [CoverageSpec(CoverageMethod.EQUAL), CoverageSpec(CoverageMethod.MINMAX)]
    if spec not in specs:
        specs.append(spec)
    intervals = tuple(_ci_result(summary, s, alpha, limits) for s in specs)
    selected = next(r for r in intervals if r.method == spec.label)

    if selected.reject != outcome.reject and spec.alpha1 is None:
        logger.warning(
            f"Interval decision ({selected.reject}) differs from TOST ({outcome.reject}) for {spec.label}"
        )
    return AnalysisReport(
        version=bequiv.__version__,
        input_digest=input_digest(data),
        alpha=alpha,
        limits=limits,
        summary=summary,
        gmr=summary.gmr,
        ci_method=spec.label,
        ci_log=selected.log,
        ci_ratio=selected.ratio,
        ci_decision=selected.reject,
        intervals=intervals,
        tost=outcome,
        p_overall=outcome.p_overall,
        decision=BIOEQUIVALENT if outcome.reject else NOT_BIOEQUIVALENT,
        degenerate=outcome.degenerate,
        limits_symmetric=limits.is_symmetric,
    )


def format_float(value):
    """Float with 17 significant digits; integral values keep a trailing .0."""
    if not math.isfinite(value):
        raise ValueError(f"Out of range float values are not JSON compliant: {value!r}")
    text = format(value, '.17g')
    if not any(char in text for char in '.en'):
        text += '.0'
    return text


class ReportEncoder(JSONEncoder):
    """DRF encoder that writes every float with 17 significant digits."""

    def iterencode(self, o, _one_shot=False):
        markers = {} if self.check_circular else None
        encoder = json.encoder.encode_basestring_ascii if self.ensure_ascii else json.encoder.encode_basestring
        indent = self.indent if self.indent is None or isinstance(self.indent, str) else ' ' * self.indent
        return json.encoder._make_iterencode(
            markers, self.default, encoder, indent, format_float,
            self.key_separator, self.item_separator, self.sort_keys,
            self.skipkeys, _one_shot,
        )(o, 0)


def render_json(data):
    """Pretty JSON with fixed key order and 17 significant digit floats."""
    return json.dumps(data, cls=ReportEncoder, indent=2) + '\n'


def format_power(value):
    """Power with ten significant digits."""
    if not math.isfinite(value):
        return str(value)
    return f"{value:.10g}"
