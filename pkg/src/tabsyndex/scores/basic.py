"""Basic-statistics similarity: mean, median and standard deviation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..report import Notice
from ..table import ColumnKind, Table

EPS = 1e-12
STATISTICS = ("mean", "median", "std")


@dataclass(frozen=True)
class BasicStatTriple:
    mean: float
    median: float
    std: float

    @classmethod
    def of(cls, values: np.ndarray) -> "BasicStatTriple":
        values = np.asarray(values, dtype=np.float64)
        # population standard deviation; np.median averages the two middle values
        return cls(float(np.mean(values)), float(np.median(values)), float(np.std(values)))


@dataclass(frozen=True)
class BasicBreakdown:
    s_mean: float
    s_median: float
    s_std: float
    errors: dict[str, dict[str, float]]

    @property
    def score(self) -> float:
        return (self.s_mean + self.s_median + self.s_std) / 3.0


def stat_error(real_stat: float, fake_stat: float) -> float:
    """Relative error of a synthetic statistic, clipped to 1.

    The direction matters: the real value is the denominator. A real value
    below ``EPS`` in magnitude gives 0 if the synthetic one is also ~0 and
    1 otherwise.
    """
    if abs(real_stat) < EPS:
        return 0.0 if abs(fake_stat) < EPS else 1.0
    return min(1.0, abs(real_stat - fake_stat) / abs(real_stat))


def basic_score(real: Table, synth: Table) -> tuple[BasicBreakdown | None, list[Notice]]:
    names = real.names_of(ColumnKind.CONTINUOUS)
    if not names:
        return None, [Notice("not_computed", "no continuous columns; basic statistics skipped", "s_basic")]
    errors = {}
    for name in names:
        r = BasicStatTriple.of(real[name])
        f = BasicStatTriple.of(synth[name])
        errors[name] = {s: stat_error(getattr(r, s), getattr(f, s)) for s in STATISTICS}
    per_stat = {s: 1.0 - float(np.mean([errors[n][s] for n in names])) for s in STATISTICS}
    return BasicBreakdown(per_stat["mean"], per_stat["median"], per_stat["std"], errors), []
