"""Subset-versus-subset sanity check of the metric.

A dataset is shuffled and halved; the first half plays the real data and
growing samples of the second half play the synthetic data. Scores should
be high throughout and tend to rise with the sample size.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .evaluator import TabSynDex
from .ingest import SplitSpec, sample, split
from .report import COMPONENTS, ComponentScores, dumps_canonical
from .table import Table, check_table

DEFAULT_PROPORTIONS = (0.10, 0.25, 0.50, 1.00)
MIN_ROWS = 100


@dataclass(frozen=True)
class ProportionScore:
    proportion: float
    n_real: int
    n_synthetic: int
    components: ComponentScores

    def to_dict(self) -> dict:
        return {
            "proportion": self.proportion,
            "n_real": self.n_real,
            "n_synthetic": self.n_synthetic,
            "components": self.components.as_dict(),
        }


@dataclass(frozen=True)
class SanityResult:
    dataset: str | None
    seed: int
    results: list[ProportionScore]
    config: dict

    def score(self, proportion: float) -> float:
        for r in self.results:
            if abs(r.proportion - proportion) < 1e-12:
                return r.components.tabsyndex
        raise KeyError(proportion)

    def to_dict(self) -> dict:
        return {
            "dataset": self.dataset,
            "seed": self.seed,
            "results": [r.to_dict() for r in self.results],
            "config": self.config,
        }

    def to_json(self) -> str:
        return dumps_canonical(self.to_dict())


def _sample_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence([seed, index]).generate_state(1)[0])


def sanity_check(
    data,
    proportions=DEFAULT_PROPORTIONS,
    seed: int = 42,
    dataset: str | None = None,
    jobs: int = 1,
    **params,
) -> SanityResult:
    """Score samples of one half of ``data`` against the other half.

    ``params`` are forwarded to :class:`TabSynDex` (``seed`` is shared).
    """
    data = check_table(data)
    if data.row_count < MIN_ROWS:
        raise ValueError(f"sanity check needs at least {MIN_ROWS} rows, got {data.row_count}")
    proportions = [float(p) for p in proportions]
    for p in proportions:
        if not 0 < p <= 1:
            raise ValueError(f"proportion {p} outside (0, 1]")
    subset1, subset2 = split(data, SplitSpec(0.5, seed))
    scorer = TabSynDex(seed=seed, **params).fit(subset1)

    def run(item):
        i, p = item
        synth = sample(subset2, p, _sample_seed(seed, i))
        return ProportionScore(p, subset1.row_count, synth.row_count, scorer.evaluate(synth).components)

    items = list(enumerate(proportions))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run, items))
    else:
        results = [run(i) for i in items]
    return SanityResult(dataset, seed, results, scorer.config())


def median_scores(
    data: Table, seeds, proportions=DEFAULT_PROPORTIONS, **params
) -> dict[float, dict[str, float]]:
    """Median over seeds of every component and of TabSynDex, per proportion."""
    runs = [sanity_check(data, proportions, seed=s, **params) for s in seeds]
    out = {}
    for i, p in enumerate(proportions):
        comps = [r.results[i].components for r in runs]
        out[p] = {}
        for key in COMPONENTS + ("tabsyndex",):
            vals = [getattr(c, key) for c in comps if getattr(c, key) is not None]
            out[p][key] = float(np.median(vals)) if vals else None
    return out
