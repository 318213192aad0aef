"""Machine-learning efficacy: do models trained on synthetic rows perform
like models trained on real rows, when both are tested on held-out real data?"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from ..learners import CLASSIFIERS, REGRESSORS, TableEncoder, evaluate, fit_learner
from ..report import Notice
from ..table import ColumnKind, Table

EPS = 1e-12


@dataclass(frozen=True)
class EfficacyRow:
    model: str
    metric: str
    metric_real: float | None
    metric_synth: float | None
    relative_error: float

    def to_dict(self) -> dict:
        return asdict(self)


def relative_error(metric_real: float, metric_synth: float) -> float:
    return min(1.0, abs(metric_real - metric_synth) / max(metric_real, EPS))


def task_for(table: Table, target: str) -> str:
    return "classification" if table.kind(target) is ColumnKind.CATEGORICAL else "regression"


def _train_and_score(kind, task, train: Table, test: Table, target: str, seed: int) -> float:
    encoder = TableEncoder(exclude=(target,)).fit(train)
    model = fit_learner(kind, task, encoder.transform(train), np.asarray(train[target]), seed=seed)
    return evaluate(model, encoder.transform(test), np.asarray(test[target]), task)


def ml_efficacy(
    real_train: Table, synth: Table, real_test: Table, target: str, seed: int = 42, jobs: int = 1
) -> tuple[float | None, list[EfficacyRow], list[Notice]]:
    """S_ml = 1 - mean relative error over the four task-appropriate models.

    A model that cannot be trained (for instance a single-class target)
    contributes an error of 1 and a notice.
    """
    if target not in real_train.names:
        return None, [], [Notice("not_computed", f"target column {target!r} not found", "s_ml")]
    if real_test.row_count < 1:
        return None, [], [Notice("not_computed", "no held-out real rows to test on", "s_ml")]
    synth = synth.aligned_to(real_train)
    task = task_for(real_train, target)
    kinds = CLASSIFIERS if task == "classification" else REGRESSORS
    metric = "f1_macro" if task == "classification" else "rmse"

    def run(job):
        kind, train = job
        try:
            return _train_and_score(kind, task, train, real_test, target, seed), None
        except ValueError as exc:
            return None, str(exc)

    jobs_list = [(k, t) for k in kinds for t in (real_train, synth)]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run, jobs_list))
    else:
        results = [run(j) for j in jobs_list]

    rows, notices = [], []
    for i, kind in enumerate(kinds):
        (m_real, err_real), (m_synth, err_synth) = results[2 * i], results[2 * i + 1]
        if err_real or err_synth:
            which = "real" if err_real else "synthetic"
            notices.append(Notice("model_failed", f"{kind} on {which} training data: {err_real or err_synth}; "
                                  "error set to 1", "s_ml", target))
            rows.append(EfficacyRow(kind, metric, m_real, m_synth, 1.0))
        else:
            rows.append(EfficacyRow(kind, metric, m_real, m_synth, relative_error(m_real, m_synth)))
    score = 1.0 - float(np.mean([r.relative_error for r in rows]))
    return score, rows, notices
