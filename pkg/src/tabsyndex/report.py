"""Component scores, their aggregation into TabSynDex, and report rendering."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Iterable, Sequence

SCHEMA_VERSION = "1.0"
COMPONENTS = ("s_basic", "s_corr", "s_pmse", "s_cr", "s_ml")
COMPONENT_LABELS = {
    "s_basic": "Basic statistics",
    "s_corr": "Log-transformed correlation",
    "s_pmse": "pMSE index",
    "s_cr": "Regularized support coverage",
    "s_ml": "ML efficacy",
}


@dataclass(frozen=True)
class Notice:
    """A structured warning attached to a report."""

    code: str
    message: str
    component: str | None = None
    column: str | None = None

    @classmethod
    def from_dict(cls, d: dict) -> "Notice":
        return cls(**d)


@dataclass(frozen=True)
class WeightConfig:
    basic: float = 1.0
    corr: float = 1.0
    pmse: float = 1.0
    coverage: float = 1.0
    ml: float = 1.0

    def __post_init__(self):
        values = self.as_tuple()
        if any(w < 0 for w in values):
            raise ValueError("weights must be nonnegative")
        if not any(w > 0 for w in values):
            raise ValueError("at least one weight must be positive")

    def as_tuple(self) -> tuple[float, ...]:
        return (self.basic, self.corr, self.pmse, self.coverage, self.ml)

    @classmethod
    def parse(cls, text: str) -> "WeightConfig":
        """Parse ``"b,c,p,r,m"`` (basic, corr, pmse, coverage, ml)."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 5:
            raise ValueError("weights need exactly five comma-separated values: basic,corr,pmse,coverage,ml")
        return cls(*(float(p) for p in parts))


def clamp01(x: float) -> float:
    return min(1.0, max(0.0, float(x)))


def aggregate(components: Sequence[float | None], weights: WeightConfig | Sequence[float] | None = None) -> float:
    """Weighted mean of the clamped components that were computed.

    ``components`` is ordered basic, corr, pmse, coverage, ml; ``None`` marks
    a component that was not computed. Weights are renormalised over the
    computed subset.
    """
    if len(components) != 5:
        raise ValueError("expected five component values")
    if weights is None:
        weights = WeightConfig()
    w = weights.as_tuple() if isinstance(weights, WeightConfig) else tuple(float(x) for x in weights)
    pairs = [(clamp01(s), wi) for s, wi in zip(components, w) if s is not None]
    if not pairs:
        raise ValueError("no component score was computed")
    total = sum(wi for _, wi in pairs)
    if total <= 0:
        raise ValueError("all computed components carry zero weight")
    return sum(s * wi for s, wi in pairs) / total


@dataclass(frozen=True)
class ComponentScores:
    s_basic: float | None
    s_corr: float | None
    s_pmse: float | None
    s_cr: float | None
    s_ml: float | None
    tabsyndex: float

    @classmethod
    def combine(cls, raw: dict[str, float | None], weights: WeightConfig | None = None) -> "ComponentScores":
        values = [raw.get(k) for k in COMPONENTS]
        clamped = {k: (None if v is None else clamp01(v)) for k, v in zip(COMPONENTS, values)}
        return cls(**clamped, tabsyndex=aggregate(values, weights))

    def as_dict(self) -> dict[str, float | None]:
        return asdict(self)

    def values(self) -> list[float | None]:
        return [getattr(self, k) for k in COMPONENTS]


@dataclass(frozen=True)
class ScoreReport:
    components: ComponentScores
    per_column_breakdowns: dict[str, dict[str, float]] = field(default_factory=dict)
    basic: dict[str, float] | None = None
    associations: dict[str, Any] | None = None
    coverage: dict[str, dict[str, float]] | None = None
    pmse: dict[str, float] | None = None
    learners: list[dict[str, Any]] = field(default_factory=list)
    config: dict[str, Any] = field(default_factory=dict)
    warnings: list[Notice] = field(default_factory=list)
    schema_version: str = SCHEMA_VERSION

    @property
    def tabsyndex(self) -> float:
        return self.components.tabsyndex

    def to_dict(self) -> dict[str, Any]:
        d = {f.name: getattr(self, f.name) for f in fields(self)}
        d["components"] = self.components.as_dict()
        d["warnings"] = [asdict(n) for n in self.warnings]
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ScoreReport":
        d = dict(d)
        d["components"] = ComponentScores(**d["components"])
        d["warnings"] = [Notice.from_dict(n) for n in d.get("warnings", [])]
        return cls(**d)

    def to_json(self) -> str:
        return dumps_canonical(self.to_dict())

    @classmethod
    def from_json(cls, text: str | bytes) -> "ScoreReport":
        return cls.from_dict(json.loads(text))


def dumps_canonical(obj: Any) -> str:
    # repr-based floats round-trip exactly; sorted keys make output diffable
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def _fmt(x: float | None) -> str:
    return "not computed" if x is None else f"{x:.4f}"


def render_text(report: ScoreReport) -> str:
    lines = ["Component scores", "----------------"]
    for key in COMPONENTS:
        lines.append(f"  {COMPONENT_LABELS[key]:<30} {key:<8} {_fmt(getattr(report.components, key))}")
    lines.append(f"  {'TabSynDex':<30} {'':<8} {_fmt(report.components.tabsyndex)}")

    if report.basic:
        lines += ["", "Basic statistics"]
        lines += [f"  {k:<10} {_fmt(v)}" for k, v in sorted(report.basic.items())]

    if report.per_column_breakdowns:
        keys = sorted({k for d in report.per_column_breakdowns.values() for k in d})
        width = max(len(c) for c in report.per_column_breakdowns) + 2
        lines += ["", "Per-column breakdown", "  " + "column".ljust(width) + "  ".join(f"{k:>13}" for k in keys)]
        for col, d in report.per_column_breakdowns.items():
            cells = "  ".join(f"{(f'{d[k]:.4f}' if k in d else '-'):>13}" for k in keys)
            lines.append("  " + col.ljust(width) + cells)

    if report.pmse:
        p = report.pmse
        lines += [
            "",
            "Propensity",
            f"  pMSE={p['pmse']:.6g}  E(pMSE0)={p['expected_pmse0']:.6g}  ratio={p['ratio']:.4f}"
            f"  c={p['c']:.4f}  k={p['k']}  N={p['n']}",
        ]

    if report.learners:
        lines += ["", "ML efficacy", f"  {'model':<22}{'metric':<8}{'real':>10}{'synthetic':>11}{'rel.error':>11}"]
        for row in report.learners:
            real = "-" if row["metric_real"] is None else f"{row['metric_real']:.4f}"
            synth = "-" if row["metric_synth"] is None else f"{row['metric_synth']:.4f}"
            lines.append(f"  {row['model']:<22}{row['metric']:<8}{real:>10}{synth:>11}{row['relative_error']:>11.4f}")

    if report.warnings:
        lines += ["", "Warnings"]
        for n in report.warnings:
            where = "/".join(x for x in (n.component, n.column) if x)
            lines.append(f"  [{n.code}] {where + ': ' if where else ''}{n.message}")
    return "\n".join(lines) + "\n"


def render_report(report: ScoreReport, format: str = "json") -> bytes:
    if format == "json":
        return report.to_json().encode("utf-8")
    if format == "text":
        return render_text(report).encode("utf-8")
    raise ValueError(f"unknown report format {format!r}")


def unique_notices(notices: Iterable[Notice]) -> list[Notice]:
    seen = set()
    out = []
    for n in notices:
        if n not in seen:
            seen.add(n)
            out.append(n)
    return out
