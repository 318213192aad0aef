from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ..table import ColumnKind, Table


class TableEncoder(TransformerMixin, BaseEstimator):
    """Turn a :class:`Table` into a float feature matrix.

    Continuous columns are standardised with statistics from the fitted
    table; categorical columns are one-hot encoded against the fitted
    vocabulary, so unseen categories become an all-zero block.

    Parameters
    ----------
    exclude : sequence of str, optional
        Column names to leave out (typically the prediction target).
    """

    def __init__(self, exclude=()):
        self.exclude = exclude

    def fit(self, X: Table, y=None):
        self.columns_ = [n for n in X.names if n not in set(self.exclude)]
        self.kinds_ = {n: X.kind(n) for n in self.columns_}
        self.means_ = {}
        self.scales_ = {}
        self.vocabulary_ = {}
        for name in self.columns_:
            col = X[name]
            if self.kinds_[name] is ColumnKind.CONTINUOUS:
                self.means_[name] = float(np.mean(col)) if len(col) else 0.0
                std = float(np.std(col)) if len(col) else 0.0
                self.scales_[name] = std if std > 0 else 1.0
            else:
                self.vocabulary_[name] = np.unique(np.asarray(col, dtype=object))
        return self

    @property
    def n_features_out_(self) -> int:
        check_is_fitted(self, "columns_")
        return sum(1 if self.kinds_[n] is ColumnKind.CONTINUOUS else len(self.vocabulary_[n]) for n in self.columns_)

    def feature_names_out(self) -> list[str]:
        check_is_fitted(self, "columns_")
        out = []
        for name in self.columns_:
            if self.kinds_[name] is ColumnKind.CONTINUOUS:
                out.append(name)
            else:
                out.extend(f"{name}={v}" for v in self.vocabulary_[name])
        return out

    def transform(self, X: Table) -> np.ndarray:
        check_is_fitted(self, "columns_")
        blocks = []
        for name in self.columns_:
            col = X[name]
            if self.kinds_[name] is ColumnKind.CONTINUOUS:
                blocks.append(((np.asarray(col, dtype=np.float64) - self.means_[name]) / self.scales_[name])[:, None])
            else:
                vocab = self.vocabulary_[name]
                col = np.asarray(col, dtype=object)
                pos = np.searchsorted(vocab, col)
                pos = np.minimum(pos, len(vocab) - 1)
                hit = vocab[pos] == col
                block = np.zeros((len(col), len(vocab)))
                block[np.nonzero(hit)[0], pos[hit]] = 1.0
                blocks.append(block)
        if not blocks:
            return np.zeros((X.row_count, 0))
        return np.hstack(blocks)
