"""Score a directory of per-epoch synthetic dumps against one real table."""

from __future__ import annotations

import csv
import fnmatch
import io
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .evaluator import TabSynDex
from .ingest import IngestError, SchemaConfig, read_table
from .report import COMPONENTS, ComponentScores, Notice, dumps_canonical
from .table import SchemaMismatchError, Table

SERIES_COLUMNS = ("epoch",) + COMPONENTS + ("tabsyndex",)


def compile_pattern(pattern: str) -> tuple[str, re.Pattern]:
    """Turn ``'epoch_{n}.csv'`` into a glob and a regex capturing the epoch."""
    if pattern.count("{n}") != 1:
        raise ValueError("pattern must contain exactly one '{n}' placeholder")
    head, tail = pattern.split("{n}")

    def piece(text: str) -> str:
        # fnmatch.translate wraps the expression; keep only the body
        body = fnmatch.translate(text)
        return body[4:-3] if body.startswith("(?s:") else body

    regex = re.compile("^" + piece(head) + r"(\d+)" + piece(tail) + "$")
    return head + "*" + tail, regex


@dataclass(frozen=True)
class EpochScore:
    epoch: int
    file: str
    components: ComponentScores

    def to_dict(self) -> dict:
        return {"epoch": self.epoch, "file": self.file, "components": self.components.as_dict()}


@dataclass(frozen=True)
class ProgressionSeries:
    epochs: list[EpochScore]
    config: dict
    gaps: list[dict] = field(default_factory=list)
    warnings: list[Notice] = field(default_factory=list)

    @property
    def files(self) -> list[str]:
        return [e.file for e in self.epochs]

    def to_dict(self) -> dict:
        return {
            "epochs": [e.to_dict() for e in self.epochs],
            "config": self.config,
            "gaps": self.gaps,
            "warnings": [vars(n) for n in self.warnings],
        }

    def to_json(self) -> str:
        return dumps_canonical(self.to_dict())


def monitor_directory(
    real: Table,
    directory: str | Path,
    pattern: str = "epoch_{n}.csv",
    estimator: TabSynDex | None = None,
    jobs: int = 1,
) -> ProgressionSeries:
    """Evaluate every file matching ``pattern`` with the same fitted scorer.

    Files that fail to ingest are recorded as gaps; duplicate epoch numbers
    keep the lexicographically first file.
    """
    directory = Path(directory)
    glob, regex = compile_pattern(pattern)
    estimator = estimator if estimator is not None else TabSynDex()
    estimator.fit(real)
    real = estimator.real_

    found: dict[int, Path] = {}
    warnings: list[Notice] = []
    for path in sorted(directory.glob(glob), key=lambda p: p.name):
        m = regex.match(path.name)
        if not m:
            continue
        epoch = int(m.group(1))
        if epoch in found:
            warnings.append(Notice("duplicate_epoch", f"epoch {epoch}: {path.name} ignored in favour of "
                                   f"{found[epoch].name}"))
            continue
        found[epoch] = path
    if not found:
        raise FileNotFoundError(f"no files in {directory} match {pattern!r}")

    config = SchemaConfig.from_schema(real.schema)

    def run(item):
        epoch, path = item
        try:
            synth = read_table(path, config)
            return epoch, path.name, estimator.evaluate(synth), None
        except (IngestError, SchemaMismatchError, ValueError, OSError) as exc:
            return epoch, path.name, None, str(exc)

    items = sorted(found.items())
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run, items))
    else:
        results = [run(i) for i in items]

    epochs, gaps = [], []
    for epoch, name, report, error in results:
        if report is None:
            gaps.append({"epoch": epoch, "file": name, "error": error})
            warnings.append(Notice("epoch_gap", f"epoch {epoch} ({name}) skipped: {error}"))
            continue
        epochs.append(EpochScore(epoch, name, report.components))
        for n in report.warnings:
            if n.code == "mode_collapse":
                warnings.append(Notice(n.code, f"epoch {epoch} ({name}): {n.message}", n.component, n.column))
    return ProgressionSeries(epochs, estimator.config(), gaps, warnings)


def progression_csv(series: ProgressionSeries) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SERIES_COLUMNS)
    for e in series.epochs:
        values = e.components.as_dict()
        writer.writerow([e.epoch] + ["" if values[k] is None else repr(values[k]) for k in SERIES_COLUMNS[1:]])
    return buf.getvalue()


def plot_progression(series: ProgressionSeries, path: str | Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    epochs = [e.epoch for e in series.epochs]
    with matplotlib.rc_context({"svg.hashsalt": "tabsyndex", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(7, 4))
        for key in SERIES_COLUMNS[1:]:
            ys = [getattr(e.components, key) for e in series.epochs]
            pts = [(x, y) for x, y in zip(epochs, ys) if y is not None]
            if pts:
                xs, vs = zip(*pts)
                ax.plot(xs, vs, marker="o", lw=2.2 if key == "tabsyndex" else 1.2, label=key)
        ax.set_xlabel("epoch")
        ax.set_ylabel("score")
        ax.set_ylim(-0.02, 1.02)
        ax.legend(loc="lower right", fontsize=8)
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)


def emit_progression(series: ProgressionSeries, csv_out: str | Path, plot_out: str | Path | None = None) -> list[Path]:
    if not series.epochs:
        raise ValueError("progression series is empty")
    csv_out = Path(csv_out)
    csv_out.write_text(progression_csv(series), encoding="utf-8")
    written = [csv_out]
    if plot_out:
        plot_progression(series, plot_out)
        written.append(Path(plot_out))
    return written
