"""Regularised support coverage: per-category (or per-bin) representation."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..report import Notice
from ..table import ColumnKind, Table

DEFAULT_BETA = 2.0
DEFAULT_BINS = 20


@dataclass(frozen=True)
class BinSpec:
    bin_count: int = DEFAULT_BINS

    def __post_init__(self):
        if self.bin_count < 1:
            raise ValueError("bin_count must be at least 1")

    def edges(self, real_values: np.ndarray) -> np.ndarray:
        """Equal-width edges over the real column's range.

        A constant real column gets a single unit-width bin.
        """
        lo, hi = float(np.min(real_values)), float(np.max(real_values))
        if hi <= lo:
            return np.array([lo - 0.5, lo + 0.5])
        edges = np.linspace(lo, hi, self.bin_count + 1)
        if not np.all(np.diff(edges) > 0):
            # range too narrow for the requested resolution in float64
            edges = np.unique(edges)
        return edges


def bin_counts(values: np.ndarray, edges: np.ndarray) -> np.ndarray:
    """Histogram with out-of-range values folded into the edge bins."""
    n_bins = len(edges) - 1
    idx = np.searchsorted(edges[1:-1], np.asarray(values, dtype=np.float64), side="right")
    return np.bincount(idx, minlength=n_bins)


@dataclass(frozen=True)
class CoverageBreakdown:
    scores: dict[str, float]
    ratios: dict[str, dict[str, float]] = field(default_factory=dict)

    @property
    def score(self) -> float:
        return float(np.mean(list(self.scores.values())))


def clipped_ratios(real_counts, fake_counts, n_real: int, n_fake: int, beta: float = DEFAULT_BETA):
    """Scaled representation ratio per category, each capped at ``beta``.

    Categories without real samples come back as NaN.
    """
    real_counts = np.asarray(real_counts, dtype=np.float64)
    fake_counts = np.asarray(fake_counts, dtype=np.float64)
    if real_counts.size == 0:
        raise ValueError("coverage needs at least one category")
    if real_counts.shape != fake_counts.shape:
        raise ValueError("category count lists are not aligned")
    if n_real < 1 or n_fake < 1:
        raise ValueError("sample sizes must be positive")
    out = np.full(real_counts.shape, np.nan)
    seen = real_counts > 0
    out[seen] = np.minimum(fake_counts[seen] / real_counts[seen] * (n_real / n_fake), beta)
    return out


def column_coverage(real_counts, fake_counts, n_real: int, n_fake: int, beta: float = DEFAULT_BETA) -> float:
    """Mean clipped ratio over categories present in the real data, capped at 1."""
    ratios = clipped_ratios(real_counts, fake_counts, n_real, n_fake, beta)
    kept = ratios[~np.isnan(ratios)]
    if kept.size == 0:
        raise ValueError("no category has real samples")
    return min(1.0, float(np.mean(kept)))


def coverage_score(
    real: Table, synth: Table, bins: BinSpec | None = None, beta: float = DEFAULT_BETA
) -> tuple[CoverageBreakdown, list[Notice]]:
    if beta < 1:
        raise ValueError("beta must be at least 1")
    bins = bins or BinSpec()
    synth = synth.aligned_to(real)
    n_real, n_fake = real.row_count, synth.row_count
    scores, ratios, notices = {}, {}, []
    for name in real.names:
        if real.kind(name) is ColumnKind.CONTINUOUS:
            edges = bins.edges(real[name])
            r_counts = bin_counts(real[name], edges)
            f_counts = bin_counts(synth[name], edges)
            labels = [f"bin{i:02d}[{a:.6g},{b:.6g})" for i, (a, b) in enumerate(zip(edges[:-1], edges[1:]))]
            empty = int(np.count_nonzero(r_counts == 0))
            if empty:
                notices.append(Notice("skipped_bins", f"{empty} bin(s) hold no real samples and were skipped",
                                      "s_cr", name))
        else:
            cats, r_counts = np.unique(np.asarray(real[name], dtype=object), return_counts=True)
            f_cats, f_raw = np.unique(np.asarray(synth[name], dtype=object), return_counts=True)
            lookup = dict(zip(f_cats, f_raw))
            f_counts = np.array([lookup.get(c, 0) for c in cats])
            labels = [str(c) for c in cats]
            extra = sorted(set(f_cats) - set(cats))
            if extra:
                notices.append(Notice("skipped_categories",
                                      f"{len(extra)} synthetic-only categor{'y' if len(extra) == 1 else 'ies'} "
                                      f"skipped: {extra[:5]}", "s_cr", name))
        col_ratios = clipped_ratios(r_counts, f_counts, n_real, n_fake, beta)
        kept = col_ratios[~np.isnan(col_ratios)]
        scores[name] = min(1.0, float(np.mean(kept)))
        ratios[name] = {lab: float(v) for lab, v in zip(labels, col_ratios) if not np.isnan(v)}
    return CoverageBreakdown(scores, ratios), notices
