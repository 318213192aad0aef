"""Propensity-score distinguishability (pMSE) and its bounded index."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from ..learners import LogisticRegressionGD, TableEncoder
from ..table import Table, concat

DEFAULT_ALPHA = 1.2


@dataclass(frozen=True)
class PmseResult:
    pmse: float
    expected_pmse0: float
    ratio: float
    s_pmse: float
    c: float
    k: int
    n: int

    def to_dict(self) -> dict:
        return asdict(self)


def pmse(probabilities, c: float) -> float:
    """Mean squared deviation of propensities from the synthetic share ``c``."""
    p = np.asarray(probabilities, dtype=np.float64)
    if p.size == 0:
        raise ValueError("pmse needs at least one probability")
    if not 0 < c < 1:
        raise ValueError("c must lie in (0, 1)")
    return float(np.mean((p - c) ** 2))


def expected_pmse0(k: int, c: float, n: int) -> float:
    """Null expectation of pMSE for a logistic model with ``k`` parameters."""
    if k < 2:
        raise ValueError("k counts the bias, so it must be at least 2")
    if not 0 < c < 1:
        raise ValueError("c must lie in (0, 1)")
    if n < 1:
        raise ValueError("n must be positive")
    return (k - 1) * (1 - c) ** 2 * c / n


def pmse_index(ratio: float, alpha: float = DEFAULT_ALPHA) -> float:
    """``alpha ** -|1 - ratio|``: 1 at ratio 1, decaying towards 0."""
    if alpha <= 1:
        raise ValueError("alpha must be greater than 1")
    return float(alpha ** (-abs(1.0 - ratio)))


def s_pmse_index(real: Table, synth: Table, alpha: float = DEFAULT_ALPHA) -> PmseResult:
    """Fit a real-vs-synthetic logistic model on the pooled rows and score it.

    Real rows are labelled 0 and synthetic rows 1. Features are the raw
    encoded columns (no interaction terms) and the propensities are
    evaluated on the same pooled rows.
    """
    if alpha <= 1:
        raise ValueError("alpha must be greater than 1")
    if real.row_count < 2 or synth.row_count < 1 or real.row_count + synth.row_count < 3:
        raise ValueError("pMSE needs at least two real rows and one synthetic row")
    pooled = concat([real, synth.aligned_to(real)])
    labels = np.r_[np.zeros(real.row_count), np.ones(synth.row_count)]
    encoder = TableEncoder().fit(pooled)
    X = encoder.transform(pooled)
    model = LogisticRegressionGD().fit(X, labels)
    p = model.predict_proba(X)[:, 1]
    n = len(labels)
    c = synth.row_count / n
    k = X.shape[1] + 1
    value = pmse(p, c)
    expected = expected_pmse0(max(k, 2), c, n)
    ratio = value / expected
    return PmseResult(value, expected, ratio, pmse_index(ratio, alpha), c, k, n)
