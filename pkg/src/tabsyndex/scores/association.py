"""Mixed-type association matrices and the log-transformed correlation score.

Pairs of continuous columns use Pearson's r, categorical/continuous pairs the
correlation ratio, and categorical pairs Theil's U (both orientations).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..report import Notice
from ..table import ColumnKind, Table

EPS_CORR = 1e-6
EPS_LOG = 1e-12


def _check_lengths(x, y):
    if len(x) != len(y):
        raise ValueError(f"columns differ in length ({len(x)} vs {len(y)})")


def pearson(x, y) -> float:
    """Sample Pearson correlation; 0 when either column is constant."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    _check_lengths(x, y)
    if _constant(x) or _constant(y):
        return 0.0
    dx = x - x.mean()
    dy = y - y.mean()
    denom = np.sqrt(np.dot(dx, dx) * np.dot(dy, dy))
    if denom == 0:
        return 0.0
    return float(np.clip(np.dot(dx, dy) / denom, -1.0, 1.0))


def correlation_ratio(categories, values) -> float:
    """Correlation ratio (eta) of a continuous column given a categorical one."""
    values = np.asarray(values, dtype=np.float64)
    _check_lengths(categories, values)
    return _eta(_codes(categories), values)


def _codes(labels) -> np.ndarray:
    _, codes = np.unique(np.asarray(labels, dtype=object), return_inverse=True)
    return codes.ravel()


def _constant(values: np.ndarray) -> bool:
    # exact test; centring a constant column leaves rounding residue that would read as +-1
    return len(values) == 0 or bool(np.all(values == values[0]))


def _eta(codes: np.ndarray, values: np.ndarray) -> float:
    if _constant(codes) or _constant(values):
        return 0.0
    counts = np.bincount(codes)
    means = np.bincount(codes, weights=values) / counts
    grand = values.mean()
    total = float(np.sum((values - grand) ** 2))
    if total == 0:
        return 0.0
    between = float(np.sum(counts * (means - grand) ** 2))
    return float(np.sqrt(min(1.0, between / total)))


def _entropy(counts: np.ndarray) -> float:
    p = counts[counts > 0] / counts.sum()
    return float(-np.sum(p * np.log(p)))


def _contingency(xc: np.ndarray, yc: np.ndarray) -> np.ndarray:
    nx, ny = xc.max() + 1, yc.max() + 1
    return np.bincount(xc * ny + yc, minlength=nx * ny).reshape(nx, ny).astype(np.float64)


def theils_u(x, y) -> float:
    """Uncertainty coefficient U(x|y): share of H(x) explained by knowing y."""
    _check_lengths(x, y)
    if len(x) == 0:
        raise ValueError("theils_u needs at least one row")
    return _theil(_codes(x), _codes(y))


def _theil(xc: np.ndarray, yc: np.ndarray) -> float:
    table = _contingency(xc, yc)
    h_x = _entropy(table.sum(axis=1))
    if h_x == 0:
        return 0.0
    n = table.sum()
    h_x_given_y = sum(col.sum() / n * _entropy(col) for col in table.T if col.sum() > 0)
    return float(np.clip((h_x - h_x_given_y) / h_x, 0.0, 1.0))


def signed_log(x: float) -> float:
    """sign(x) * ln|x| with |x| clamped into [EPS_CORR, 1]; sign(0) is +1."""
    mag = min(1.0, max(EPS_CORR, abs(x)))
    return float(np.copysign(1.0, x) * np.log(mag)) if x != 0 else float(np.log(mag))


@dataclass(frozen=True)
class AssociationMatrix:
    """Entry ``[i, j]`` is the association of column ``i`` with column ``j``.

    For categorical pairs this is U(i|j), so the matrix is asymmetric there.
    """

    names: tuple[str, ...]
    values: np.ndarray

    def to_dict(self) -> dict:
        return {"columns": list(self.names), "values": self.values.tolist()}


def association_matrix(table: Table, component: str = "s_corr") -> tuple[AssociationMatrix, list[Notice]]:
    names = table.names
    n = len(names)
    out = np.eye(n)
    notices = []
    kinds = [table.kind(c) for c in names]
    for i, name in enumerate(names):
        col = table[name]
        if _constant(np.asarray(col)):
            notices.append(
                Notice("constant_column", "column is constant; its associations are set to 0", component, name)
            )

    cont = [i for i, k in enumerate(kinds) if k is ColumnKind.CONTINUOUS]
    if len(cont) >= 2:
        block = np.column_stack([table[names[i]] for i in cont])
        centred = block - block.mean(axis=0)
        norms = np.sqrt(np.einsum("ij,ij->j", centred, centred))
        gram = centred.T @ centred
        with np.errstate(divide="ignore", invalid="ignore"):
            r = gram / np.outer(norms, norms)
        r[~np.isfinite(r)] = 0.0
        flat = [_constant(block[:, a]) for a in range(block.shape[1])]
        r[flat, :] = 0.0
        r[:, flat] = 0.0
        r = np.clip(r, -1.0, 1.0)
        r = (r + r.T) / 2
        for a, i in enumerate(cont):
            for b, j in enumerate(cont):
                if i != j:
                    out[i, j] = r[a, b]

    codes = {i: _codes(table[names[i]]) for i, k in enumerate(kinds) if k is ColumnKind.CATEGORICAL}
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            ki, kj = kinds[i], kinds[j]
            if ki is ColumnKind.CONTINUOUS and kj is ColumnKind.CONTINUOUS:
                continue
            if ki is ColumnKind.CATEGORICAL and kj is ColumnKind.CATEGORICAL:
                out[i, j] = _theil(codes[i], codes[j])
            elif ki is ColumnKind.CATEGORICAL:
                out[i, j] = _eta(codes[i], table[names[j]])
            else:
                # correlation ratio is symmetric in the matrix
                out[i, j] = out[j, i] if j < i else _eta(codes[j], table[names[i]])
    return AssociationMatrix(tuple(names), out), notices


def entry_error(r: float, f: float) -> float:
    """Clipped relative error between signed logs of two association values."""
    lr, lf = signed_log(r), signed_log(f)
    if abs(lr) < EPS_LOG:
        return 0.0 if lf == lr else 1.0
    return min(1.0, abs(lr - lf) / abs(lr))


@dataclass(frozen=True)
class CorrelationResult:
    score: float
    real: AssociationMatrix
    synthetic: AssociationMatrix
    errors: np.ndarray


def correlation_score(real: Table, synth: Table) -> tuple[CorrelationResult | None, list[Notice]]:
    if len(real.names) < 2:
        return None, [Notice("not_computed", "fewer than two columns; correlation score skipped", "s_corr")]
    real_m, notices_r = association_matrix(real)
    synth_m, notices_s = association_matrix(synth.aligned_to(real))
    notices = [Notice(n.code, "real data: " + n.message, n.component, n.column) for n in notices_r]
    notices += [Notice(n.code, "synthetic data: " + n.message, n.component, n.column) for n in notices_s]
    n = len(real.names)
    errors = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i != j:
                errors[i, j] = entry_error(real_m.values[i, j], synth_m.values[i, j])
    score = 1.0 - errors.sum() / (n * n - n)
    return CorrelationResult(float(score), real_m, synth_m, errors), notices
