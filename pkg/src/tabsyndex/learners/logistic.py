from __future__ import annotations

import numpy as np
from scipy.special import expit, log_expit, log_softmax, softmax
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted


def binary_loss_and_grad(params: np.ndarray, X: np.ndarray, y: np.ndarray, l2: float):
    """Mean log loss plus ``l2/2 * ||w||^2`` (bias unpenalised).

    ``params`` is ``[w_1 .. w_d, b]``; returns ``(loss, grad)`` with grad
    laid out the same way.
    """
    w, b = params[:-1], params[-1]
    z = X @ w + b
    # log(1 + e^z) - y z, written stably
    loss = np.mean(-y * log_expit(z) - (1 - y) * log_expit(-z)) + 0.5 * l2 * np.dot(w, w)
    resid = expit(z) - y
    grad = np.empty_like(params)
    grad[:-1] = X.T @ resid / len(y) + l2 * w
    grad[-1] = resid.mean()
    return float(loss), grad


def softmax_loss_and_grad(params: np.ndarray, X: np.ndarray, Y: np.ndarray, l2: float):
    """Multinomial counterpart of :func:`binary_loss_and_grad`.

    ``params`` is the flattened ``(d + 1, K)`` matrix whose last row holds
    the biases; ``Y`` is one-hot ``(n, K)``.
    """
    d, k = X.shape[1], Y.shape[1]
    P = params.reshape(d + 1, k)
    W, b = P[:-1], P[-1]
    Z = X @ W + b
    loss = -np.mean(np.sum(Y * log_softmax(Z, axis=1), axis=1)) + 0.5 * l2 * np.sum(W * W)
    R = (softmax(Z, axis=1) - Y) / len(X)
    grad = np.empty_like(P)
    grad[:-1] = X.T @ R + l2 * W
    grad[-1] = R.sum(axis=0)
    return float(loss), grad.ravel()


class LogisticRegressionGD(ClassifierMixin, BaseEstimator):
    """L2-regularised logistic regression fitted by full-batch gradient descent.

    Two classes use a single sigmoid output (``d + 1`` parameters); more
    classes switch to a softmax. Weights start at zero, so the fit is a
    deterministic function of the data.
    """

    def __init__(self, l2=1e-4, learning_rate=0.1, max_iter=500, tol=1e-6):
        self.l2 = l2
        self.learning_rate = learning_rate
        self.max_iter = max_iter
        self.tol = tol

    def fit(self, X, y):
        X = np.asarray(X, dtype=np.float64)
        self.classes_, codes = np.unique(np.asarray(y), return_inverse=True)
        codes = codes.ravel()
        if len(self.classes_) < 2:
            raise ValueError("logistic regression needs at least two classes")
        if len(X) < 2:
            raise ValueError("logistic regression needs at least two rows")
        d = X.shape[1]
        if len(self.classes_) == 2:
            target = codes.astype(np.float64)
            objective = binary_loss_and_grad
            params = np.zeros(d + 1)
        else:
            target = np.eye(len(self.classes_))[codes]
            objective = softmax_loss_and_grad
            params = np.zeros((d + 1) * len(self.classes_))
        self.n_iter_ = 0
        for _ in range(self.max_iter):
            _, grad = objective(params, X, target, self.l2)
            if np.linalg.norm(grad) < self.tol:
                break
            params = params - self.learning_rate * grad
            self.n_iter_ += 1
        self.params_ = params
        self.n_features_in_ = d
        return self

    @property
    def n_parameters_(self) -> int:
        check_is_fitted(self, "params_")
        return len(self.params_)

    def decision_function(self, X):
        check_is_fitted(self, "params_")
        X = np.asarray(X, dtype=np.float64)
        if len(self.classes_) == 2:
            return X @ self.params_[:-1] + self.params_[-1]
        P = self.params_.reshape(X.shape[1] + 1, -1)
        return X @ P[:-1] + P[-1]

    def predict_proba(self, X):
        z = self.decision_function(X)
        if len(self.classes_) == 2:
            p = expit(z)
            return np.column_stack([1 - p, p])
        return softmax(z, axis=1)

    def predict(self, X):
        return self.classes_[np.argmax(self.predict_proba(X), axis=1)]
