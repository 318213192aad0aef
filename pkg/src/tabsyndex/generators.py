"""Deliberately simple synthetic-data generators with known failure modes.

They exist to exercise the metric: a bootstrap should score high, losing
cross-column structure should cost correlation and ML efficacy, and a
single repeated row should look like mode collapse.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .table import ColumnKind, Table, check_table

KINDS = ("resample", "jitter", "independent_marginals", "constant_row")


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    sigma: float = 0.0
    seed: int = 42
    n_rows: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator {self.kind!r}; choose from {KINDS}")
        if self.sigma < 0:
            raise ValueError("sigma must be nonnegative")
        if self.n_rows is not None and self.n_rows < 1:
            raise ValueError("n_rows must be positive")


def generate(real: Table, spec: GeneratorSpec) -> Table:
    if real.row_count < 1:
        raise ValueError("cannot generate from an empty table")
    rng = np.random.default_rng(spec.seed)
    n_in = real.row_count
    n_out = spec.n_rows or n_in

    if spec.kind in ("resample", "jitter"):
        out = real.take(rng.integers(0, n_in, n_out))
        if spec.kind == "jitter" and spec.sigma > 0:
            cols = dict(out.columns)
            for name in real.names_of(ColumnKind.CONTINUOUS):
                scale = spec.sigma * float(np.std(real[name]))
                cols[name] = out[name] + rng.normal(0.0, 1.0, n_out) * scale
            out = Table.from_columns(real.schema, cols)
        return out
    if spec.kind == "independent_marginals":
        cols = {name: real[name][rng.integers(0, n_in, n_out)] for name in real.names}
        return Table.from_columns(real.schema, cols)
    row = int(rng.integers(0, n_in))
    return real.take(np.full(n_out, row))


class BaselineGenerator(BaseEstimator):
    """Estimator wrapper around :func:`generate` (``fit`` then ``sample``)."""

    def __init__(self, kind="resample", sigma=0.0, seed=42):
        self.kind = kind
        self.sigma = sigma
        self.seed = seed

    def fit(self, real, y=None):
        GeneratorSpec(self.kind, self.sigma, self.seed)
        self.real_ = check_table(real)
        return self

    def sample(self, n_rows: int | None = None) -> Table:
        check_is_fitted(self, "real_")
        return generate(self.real_, GeneratorSpec(self.kind, self.sigma, self.seed, n_rows))
