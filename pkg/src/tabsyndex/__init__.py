"""Bounded similarity scoring of synthetic tabular data against real data."""

from .evaluator import TabSynDex, evaluate
from .generators import BaselineGenerator, GeneratorSpec, generate
from .ingest import SchemaConfig, SplitSpec, parse_csv, read_table, sample, split
from .report import ComponentScores, Notice, ScoreReport, WeightConfig, aggregate, render_report
from .table import ColumnKind, ColumnSpec, Table, validate

__version__ = "0.1.0"

__all__ = [
    "BaselineGenerator",
    "ColumnKind",
    "ColumnSpec",
    "ComponentScores",
    "GeneratorSpec",
    "Notice",
    "SchemaConfig",
    "ScoreReport",
    "SplitSpec",
    "TabSynDex",
    "Table",
    "WeightConfig",
    "aggregate",
    "evaluate",
    "generate",
    "parse_csv",
    "read_table",
    "render_report",
    "sample",
    "split",
    "validate",
]
