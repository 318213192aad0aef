"""The fixed model line-up used for ML efficacy.

Every learner has frozen hyperparameters so a score is a deterministic
function of (data, seed). Training rows are put in a canonical order before
fitting, which makes fits independent of the incoming row order.
"""

from __future__ import annotations

import warnings

import numpy as np
from sklearn.exceptions import ConvergenceWarning
from sklearn.ensemble import RandomForestClassifier, RandomForestRegressor
from sklearn.linear_model import ElasticNet, Lasso, Ridge
from sklearn.metrics import f1_score
from sklearn.tree import DecisionTreeClassifier, DecisionTreeRegressor

from .logistic import LogisticRegressionGD
from .mlp import MLPClassifierGD

CLASSIFIERS = ("logistic_regression", "random_forest", "decision_tree", "mlp")
REGRESSORS = ("random_forest", "lasso", "ridge", "elastic_net")

TREE_PARAMS = dict(max_depth=8, min_samples_split=10)
FOREST_PARAMS = dict(n_estimators=20, max_features="sqrt", bootstrap=True, n_jobs=1, **TREE_PARAMS)
PENALTY = 0.1


def make_learner(kind: str, task: str, seed: int = 0):
    if task == "classification":
        if kind == "logistic_regression":
            return LogisticRegressionGD(l2=1e-4, learning_rate=0.1, max_iter=500, tol=1e-6)
        if kind == "random_forest":
            return RandomForestClassifier(criterion="gini", random_state=seed, **FOREST_PARAMS)
        if kind == "decision_tree":
            return DecisionTreeClassifier(criterion="gini", random_state=seed, **TREE_PARAMS)
        if kind == "mlp":
            return MLPClassifierGD(hidden=32, learning_rate=0.01, epochs=300, init_scale=0.1, random_state=seed)
    elif task == "regression":
        if kind == "random_forest":
            return RandomForestRegressor(criterion="squared_error", random_state=seed, **FOREST_PARAMS)
        if kind == "decision_tree":
            # not part of the regression line-up, available for diagnostics
            return DecisionTreeRegressor(criterion="squared_error", random_state=seed, **TREE_PARAMS)
        if kind == "lasso":
            return Lasso(alpha=PENALTY, tol=1e-6, max_iter=10_000)
        if kind == "ridge":
            return Ridge(alpha=PENALTY, tol=1e-6)
        if kind == "elastic_net":
            return ElasticNet(alpha=PENALTY, l1_ratio=0.5, tol=1e-6, max_iter=10_000)
    else:
        raise ValueError(f"unknown task {task!r}")
    raise ValueError(f"no {kind!r} learner for {task}")


def canonical_order(X: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Row permutation sorting by label, then by the features left to right."""
    y = np.asarray(y)
    _, y_codes = np.unique(y, return_inverse=True)
    keys = [X[:, j] for j in range(X.shape[1] - 1, -1, -1)] + [y_codes.ravel()]
    return np.lexsort(keys)


def fit_learner(kind: str, task: str, X: np.ndarray, y: np.ndarray, seed: int = 0, min_rows: int = 2):
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y)
    if len(X) < min_rows:
        raise ValueError(f"{kind} needs at least {min_rows} training rows, got {len(X)}")
    if task == "classification" and len(np.unique(y)) < 2:
        raise ValueError(f"{kind} needs at least two classes in the training labels")
    order = canonical_order(X, y)
    with warnings.catch_warnings():
        # degenerate synthetic tables (e.g. one repeated row) never converge; the score reflects that
        warnings.simplefilter("ignore", ConvergenceWarning)
        return make_learner(kind, task, seed).fit(X[order], y[order])


def macro_f1(truth, predicted) -> float:
    """Macro-averaged F1 over every label seen in either argument."""
    truth = np.asarray(truth, dtype=object)
    predicted = np.asarray(predicted, dtype=object)
    labels, codes = np.unique(np.concatenate([truth, predicted]), return_inverse=True)
    codes = codes.ravel()
    return float(f1_score(codes[: len(truth)], codes[len(truth):], labels=np.arange(len(labels)),
                          average="macro", zero_division=0))


def rmse(truth, predicted) -> float:
    diff = np.asarray(truth, dtype=np.float64) - np.asarray(predicted, dtype=np.float64)
    return float(np.sqrt(np.mean(diff * diff)))


def evaluate(model, X: np.ndarray, truth: np.ndarray, task: str) -> float:
    """Macro-F1 for classifiers, RMSE for regressors."""
    predicted = model.predict(np.asarray(X, dtype=np.float64))
    return macro_f1(truth, predicted) if task == "classification" else rmse(truth, predicted)
