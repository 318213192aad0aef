from __future__ import annotations

import numpy as np
from scipy.special import log_softmax, softmax
from sklearn.base import BaseEstimator, ClassifierMixin, RegressorMixin
from sklearn.utils.validation import check_is_fitted


def _unpack(params: np.ndarray, d: int, h: int, k: int):
    i = 0
    W1 = params[i : i + d * h].reshape(d, h)
    i += d * h
    b1 = params[i : i + h]
    i += h
    W2 = params[i : i + h * k].reshape(h, k)
    i += h * k
    b2 = params[i : i + k]
    return W1, b1, W2, b2


def n_params(d: int, h: int, k: int) -> int:
    return d * h + h + h * k + k


def mlp_forward(params, X, hidden, n_out):
    W1, b1, W2, b2 = _unpack(params, X.shape[1], hidden, n_out)
    pre = X @ W1 + b1
    act = np.maximum(pre, 0.0)
    return pre, act, act @ W2 + b2


def mlp_loss_and_grad(params: np.ndarray, X: np.ndarray, T: np.ndarray, hidden: int, loss: str):
    """Loss and backpropagated gradient of a one-hidden-layer ReLU network.

    ``loss="log"`` treats the output as softmax logits against one-hot ``T``;
    ``loss="squared"`` uses ``0.5 * mean(sum((out - T)^2))``.
    """
    n, k = len(X), T.shape[1]
    W1, b1, W2, b2 = _unpack(params, X.shape[1], hidden, k)
    pre, act, out = mlp_forward(params, X, hidden, k)
    if loss == "log":
        value = -np.mean(np.sum(T * log_softmax(out, axis=1), axis=1))
        d_out = (softmax(out, axis=1) - T) / n
    elif loss == "squared":
        diff = out - T
        value = 0.5 * np.mean(np.sum(diff * diff, axis=1))
        d_out = diff / n
    else:
        raise ValueError(f"unknown loss {loss!r}")
    d_act = d_out @ W2.T
    d_pre = d_act * (pre > 0)
    grad = np.concatenate([(X.T @ d_pre).ravel(), d_pre.sum(axis=0), (act.T @ d_out).ravel(), d_out.sum(axis=0)])
    return float(value), grad


class _BaseMLP(BaseEstimator):
    def __init__(self, hidden=32, learning_rate=0.01, epochs=300, init_scale=0.1, random_state=0):
        self.hidden = hidden
        self.learning_rate = learning_rate
        self.epochs = epochs
        self.init_scale = init_scale
        self.random_state = random_state

    def _train(self, X, T, loss):
        rng = np.random.default_rng(self.random_state)
        params = rng.uniform(-self.init_scale, self.init_scale, n_params(X.shape[1], self.hidden, T.shape[1]))
        for _ in range(self.epochs):
            _, grad = mlp_loss_and_grad(params, X, T, self.hidden, loss)
            params -= self.learning_rate * grad
        self.params_ = params
        self.n_features_in_ = X.shape[1]

    def _outputs(self, X, k):
        check_is_fitted(self, "params_")
        return mlp_forward(self.params_, np.asarray(X, dtype=np.float64), self.hidden, k)[2]


class MLPClassifierGD(ClassifierMixin, _BaseMLP):
    """ReLU network (one hidden layer) with softmax output, full-batch GD.

    All weights and biases start uniform in ``[-init_scale, init_scale]``
    from ``random_state``.
    """

    def fit(self, X, y):
        X = np.asarray(X, dtype=np.float64)
        self.classes_, codes = np.unique(np.asarray(y), return_inverse=True)
        if len(self.classes_) < 2:
            raise ValueError("classifier needs at least two classes")
        self._train(X, np.eye(len(self.classes_))[codes.ravel()], "log")
        return self

    def predict_proba(self, X):
        return softmax(self._outputs(X, len(self.classes_)), axis=1)

    def predict(self, X):
        return self.classes_[np.argmax(self._outputs(X, len(self.classes_)), axis=1)]


class MLPRegressorGD(RegressorMixin, _BaseMLP):
    """Squared-loss counterpart of :class:`MLPClassifierGD` (single output)."""

    def fit(self, X, y):
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        self._train(X, y[:, None], "squared")
        return self

    def predict(self, X):
        return self._outputs(X, 1)[:, 0]
