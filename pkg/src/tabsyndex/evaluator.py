"""The TabSynDex estimator: fit on real data, score synthetic tables."""

from __future__ import annotations

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .ingest import SplitSpec, split
from .report import ComponentScores, Notice, ScoreReport, WeightConfig, unique_notices
from .scores import basic_score, correlation_score, coverage_score, ml_efficacy, s_pmse_index
from .scores.coverage import BinSpec
from .table import check_table

COLLAPSE_CORR = 0.05
COLLAPSE_COVERAGE = 0.2


def _weights(value) -> WeightConfig:
    if value is None:
        return WeightConfig()
    if isinstance(value, WeightConfig):
        return value
    if isinstance(value, str):
        return WeightConfig.parse(value)
    return WeightConfig(*value)


def check_params(alpha, beta, bins, test_fraction) -> None:
    if not alpha > 1:
        raise ValueError(f"alpha must be greater than 1 (got {alpha})")
    if not beta >= 1:
        raise ValueError(f"beta must be at least 1 (got {beta})")
    if int(bins) != bins or bins < 1:
        raise ValueError(f"bins must be a positive integer (got {bins})")
    if not 0 < test_fraction < 1:
        raise ValueError(f"test_fraction must lie in (0, 1) (got {test_fraction})")


class TabSynDex(BaseEstimator):
    """Similarity of synthetic tabular data to a real reference, in [0, 1].

    ``fit`` takes the real table; ``evaluate`` returns a full
    :class:`ScoreReport` for one synthetic table and ``score`` just the
    unified value. Fitting once and scoring many tables is how per-epoch
    monitoring works.

    Parameters
    ----------
    alpha : float, default 1.2
        Base of the pMSE index, must exceed 1.
    beta : float, default 2
        Cap on each category's coverage ratio.
    bins : int, default 20
        Equal-width bins for continuous columns in the coverage score.
    weights : WeightConfig, str or 5-sequence, optional
        Component weights (basic, corr, pmse, coverage, ml). Equal by default.
    seed : int, default 42
        Drives the train/test split and every learner.
    target : str, optional
        Prediction target for ML efficacy. Defaults to the table's flagged
        target, else its last column.
    test_fraction : float, default 0.2
        Share of rows held out from each table when measuring ML efficacy.
    jobs : int, default 1
        Threads for the ML-efficacy fits.
    """

    def __init__(self, alpha=1.2, beta=2.0, bins=20, weights=None, seed=42, target=None, test_fraction=0.2, jobs=1):
        self.alpha = alpha
        self.beta = beta
        self.bins = bins
        self.weights = weights
        self.seed = seed
        self.target = target
        self.test_fraction = test_fraction
        self.jobs = jobs

    def fit(self, real, y=None):
        check_params(self.alpha, self.beta, self.bins, self.test_fraction)
        self.weights_ = _weights(self.weights)
        real = check_table(real)
        if real.row_count < 2:
            raise ValueError("the real table needs at least two rows")
        notices = []
        target = self.target if self.target is not None else real.target
        if target is None:
            target = real.names[-1]
            notices.append(Notice("default_target", f"no target given; using last column {target!r}", "s_ml", target))
        if target in real.names:
            real = real.with_target(target)
        self.target_ = target
        self.real_ = real
        self.fit_notices_ = notices
        self.real_train_, self.real_test_ = split(real, self._split_spec())
        return self

    def _split_spec(self) -> SplitSpec:
        return SplitSpec(fraction=1.0 - self.test_fraction, seed=self.seed)

    def config(self) -> dict:
        return {
            "alpha": float(self.alpha),
            "beta": float(self.beta),
            "bins": int(self.bins),
            "weights": list(self.weights_.as_tuple()),
            "seed": int(self.seed),
            "target": self.target_,
            "test_fraction": float(self.test_fraction),
        }

    def evaluate(self, synth) -> ScoreReport:
        check_is_fitted(self, "real_")
        real = self.real_
        synth = check_table(synth, reference=real)
        if synth.row_count < 2:
            raise ValueError("the synthetic table needs at least two rows")
        notices = list(self.fit_notices_)
        raw: dict[str, float | None] = {}
        per_column: dict[str, dict[str, float]] = {name: {} for name in real.names}

        basic, extra = basic_score(real, synth)
        notices += extra
        raw["s_basic"] = None if basic is None else basic.score
        if basic is not None:
            for name, errs in basic.errors.items():
                per_column[name].update({f"{k}_error": v for k, v in errs.items()})

        corr, extra = correlation_score(real, synth)
        notices += extra
        raw["s_corr"] = None if corr is None else corr.score

        prop = s_pmse_index(real, synth, self.alpha)
        raw["s_pmse"] = prop.s_pmse

        coverage, extra = coverage_score(real, synth, BinSpec(int(self.bins)), self.beta)
        notices += extra
        raw["s_cr"] = coverage.score
        for name, value in coverage.scores.items():
            per_column[name]["coverage"] = value

        rows = []
        if self.target_ not in real.names:
            raw["s_ml"] = None
            notices.append(Notice("not_computed", f"target column {self.target_!r} not found", "s_ml"))
        else:
            synth_train, _ = split(synth, self._split_spec())
            raw["s_ml"], rows, extra = ml_efficacy(
                self.real_train_, synth_train, self.real_test_, self.target_, seed=self.seed, jobs=self.jobs
            )
            notices += extra

        for key, value in raw.items():
            if value is not None and value < 0:
                notices.append(Notice("truncated", f"raw score {value:.6g} truncated to 0", key))

        if (raw["s_corr"] is not None and raw["s_corr"] < COLLAPSE_CORR and raw["s_cr"] < COLLAPSE_COVERAGE):
            notices.append(Notice(
                "mode_collapse",
                f"correlation score {raw['s_corr']:.3f} < {COLLAPSE_CORR} and coverage {raw['s_cr']:.3f} "
                f"< {COLLAPSE_COVERAGE}: synthetic data looks collapsed",
                "s_corr",
            ))

        return ScoreReport(
            components=ComponentScores.combine(raw, self.weights_),
            per_column_breakdowns=per_column,
            basic=None if basic is None else {"s_mean": basic.s_mean, "s_median": basic.s_median, "s_std": basic.s_std},
            associations=None if corr is None else {
                "columns": list(corr.real.names),
                "real": corr.real.values.tolist(),
                "synthetic": corr.synthetic.values.tolist(),
                "entry_errors": corr.errors.tolist(),
            },
            coverage=coverage.ratios,
            pmse=prop.to_dict(),
            learners=[r.to_dict() for r in rows],
            config=self.config(),
            warnings=unique_notices(notices),
        )

    def score(self, synth, y=None) -> float:
        return self.evaluate(synth).tabsyndex


def evaluate(real, synth, **params) -> ScoreReport:
    """One-shot convenience: ``TabSynDex(**params).fit(real).evaluate(synth)``."""
    return TabSynDex(**params).fit(real).evaluate(synth)
