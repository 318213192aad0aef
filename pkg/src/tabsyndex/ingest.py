"""CSV ingestion, schema configuration and seeded row selection."""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import BinaryIO, Mapping

import numpy as np

from .table import ColumnKind, ColumnSpec, Table, canonical_label

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


class IngestError(ValueError):
    """Input data cannot be turned into a valid table."""


class CSVParseError(IngestError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class MissingValueError(IngestError):
    def __init__(self, row: int, column: str):
        super().__init__(f"missing or non-finite value in row {row}, column {column!r}")
        self.row = row
        self.column = column


@dataclass(frozen=True)
class SchemaConfig:
    kinds: Mapping[str, ColumnKind] = field(default_factory=dict)
    target: str | None = None
    categorical_threshold: int = 20

    def __post_init__(self):
        if self.categorical_threshold < 2:
            raise ValueError("categorical_threshold must be at least 2")
        object.__setattr__(self, "kinds", {k: ColumnKind(v) for k, v in self.kinds.items()})

    @classmethod
    def from_mapping(cls, data: Mapping) -> "SchemaConfig":
        columns = data.get("columns", {}) or {}
        kinds = {name: ColumnKind(opts["kind"]) for name, opts in columns.items() if "kind" in opts}
        return cls(
            kinds=kinds,
            target=data.get("target"),
            categorical_threshold=int(data.get("categorical_threshold", 20)),
        )

    @classmethod
    def from_schema(cls, schema) -> "SchemaConfig":
        """Pin every column's kind to an existing table's schema."""
        return cls(kinds={s.name: s.kind for s in schema}, target=next((s.name for s in schema if s.is_target), None))


def load_schema_config(path: str | Path) -> SchemaConfig:
    """Read a schema override file (``.toml`` or ``.json``)."""
    path = Path(path)
    raw = path.read_bytes()
    if path.suffix.lower() == ".toml":
        data = tomllib.loads(raw.decode("utf-8"))
    else:
        data = json.loads(raw)
    return SchemaConfig.from_mapping(data)


def _to_float(cell: str) -> float | None:
    try:
        return float(cell)
    except ValueError:
        return None


def parse_csv(source: BinaryIO | bytes | str | Path, config: SchemaConfig | None = None) -> Table:
    """Parse a headered UTF-8 CSV into a typed table.

    Column kinds come from ``config.kinds`` where given; otherwise a column
    that does not parse as numbers is categorical, a numeric column with at
    most ``categorical_threshold`` distinct values is categorical, and
    anything else is continuous. Empty cells and non-finite numbers are
    rejected rather than imputed.
    """
    config = config or SchemaConfig()
    if isinstance(source, (str, Path)):
        data = Path(source).read_bytes()
    elif isinstance(source, bytes):
        data = source
    else:
        data = source.read()
    try:
        text = data.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise IngestError(f"input is not valid UTF-8: {exc}") from None

    reader = csv.reader(io.StringIO(text, newline=""), strict=True)
    try:
        header = next(reader)
    except StopIteration:
        raise CSVParseError("empty input, header row required", 1) from None
    except csv.Error as exc:
        raise CSVParseError(str(exc), reader.line_num) from None
    header = [h.strip() for h in header]
    if len(set(header)) != len(header):
        raise CSVParseError("duplicate column names in header", 1)
    if any(not h for h in header):
        raise CSVParseError("empty column name in header", 1)

    cells: list[list[str]] = [[] for _ in header]
    row_no = 0
    try:
        for record in reader:
            if not record:
                continue
            row_no += 1
            if len(record) != len(header):
                raise CSVParseError(f"expected {len(header)} fields, got {len(record)}", reader.line_num)
            for j, cell in enumerate(record):
                cell = cell.strip()
                if cell == "":
                    raise MissingValueError(row_no, header[j])
                cells[j].append(cell)
    except csv.Error as exc:
        raise CSVParseError(str(exc), reader.line_num) from None

    unknown = sorted(set(config.kinds) - set(header))
    if unknown:
        raise IngestError(f"schema overrides name unknown columns {unknown}")
    if config.target is not None and config.target not in header:
        raise IngestError(f"target column {config.target!r} not in CSV header")

    schema = []
    columns = {}
    for name, col in zip(header, cells):
        numeric = [_to_float(c) for c in col]
        is_numeric = all(v is not None for v in numeric)
        if is_numeric:
            for i, v in enumerate(numeric):
                if not math.isfinite(v):
                    raise MissingValueError(i + 1, name)
        kind = config.kinds.get(name)
        if kind is None:
            if not is_numeric:
                kind = ColumnKind.CATEGORICAL
            elif len(set(numeric)) <= config.categorical_threshold:
                kind = ColumnKind.CATEGORICAL
            else:
                kind = ColumnKind.CONTINUOUS
        if kind is ColumnKind.CONTINUOUS:
            if not is_numeric:
                bad = next(i for i, v in enumerate(numeric) if v is None)
                raise IngestError(f"column {name!r} declared continuous but row {bad + 1} is {col[bad]!r}")
            values = np.array(numeric, dtype=np.float64)
        else:
            labels = [canonical_label(v) for v in numeric] if is_numeric else col
            values = np.array(labels, dtype=object)
        schema.append(ColumnSpec(name, kind, is_target=(name == config.target)))
        columns[name] = values
    return Table.from_columns(schema, columns)


def read_table(path: str | Path, config: SchemaConfig | None = None) -> Table:
    with open(path, "rb") as fh:
        return parse_csv(fh, config)


def write_csv(table: Table, path_or_buffer) -> None:
    """Write a table as CSV with full-precision floats."""
    frame = table.to_frame()
    frame.to_csv(path_or_buffer, index=False, float_format="%.17g", lineterminator="\n")


def round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


@dataclass(frozen=True)
class SplitSpec:
    fraction: float = 0.5
    seed: int = 42
    proportion: float = 1.0

    def __post_init__(self):
        if not 0 < self.fraction < 1:
            raise ValueError("fraction must lie in (0, 1)")
        if not 0 < self.proportion <= 1:
            raise ValueError("proportion must lie in (0, 1]")


def split(table: Table, spec: SplitSpec) -> tuple[Table, Table]:
    """Shuffle rows with ``spec.seed`` and cut after ``round(fraction * n)``.

    The second part is then sub-sampled to ``spec.proportion`` of its rows.
    """
    n = table.row_count
    if n < 2:
        raise ValueError("split needs at least 2 rows")
    rng = np.random.default_rng(spec.seed)
    order = rng.permutation(n)
    cut = min(max(round_half_up(spec.fraction * n), 1), n - 1)
    first, second = table.take(order[:cut]), table.take(order[cut:])
    if spec.proportion < 1:
        second = sample(second, spec.proportion, seed=int(rng.integers(2**63)))
    return first, second


def sample(table: Table, proportion: float, seed: int) -> Table:
    """Uniform sample without replacement of ``round_half_up(proportion * n)`` rows."""
    if not 0 < proportion <= 1:
        raise ValueError("proportion must lie in (0, 1]")
    n = table.row_count
    k = round_half_up(proportion * n)
    rng = np.random.default_rng(seed)
    return table.take(rng.permutation(n)[:k])
