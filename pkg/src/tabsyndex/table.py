"""Typed, column-major tables shared by every score."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np
import pandas as pd


class ColumnKind(str, enum.Enum):
    CONTINUOUS = "continuous"
    CATEGORICAL = "categorical"


@dataclass(frozen=True)
class ColumnSpec:
    name: str
    kind: ColumnKind
    is_target: bool = False


@dataclass(frozen=True)
class Violation:
    """A broken table invariant, as reported by :func:`validate`."""

    column: str | None
    rule: str
    message: str


def canonical_label(value) -> str:
    """Render a category label so that ``1``, ``1.0`` and ``"1"`` coincide."""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        text = repr(float(value))
        return text[:-2] if text.endswith(".0") else text
    return str(value)


def _freeze(values: np.ndarray) -> np.ndarray:
    values = np.array(values, copy=True)
    values.setflags(write=False)
    return values


@dataclass(frozen=True)
class Table:
    """An immutable table: an ordered schema plus one array per column.

    Continuous columns are ``float64`` arrays; categorical columns are
    object arrays of string labels.
    """

    schema: tuple[ColumnSpec, ...]
    columns: Mapping[str, np.ndarray] = field(repr=False)

    @classmethod
    def from_columns(cls, schema: Iterable[ColumnSpec], columns: Mapping[str, Sequence]) -> "Table":
        schema = tuple(schema)
        frozen = {}
        for spec in schema:
            raw = columns[spec.name]
            if spec.kind is ColumnKind.CONTINUOUS:
                arr = np.asarray(raw, dtype=np.float64)
            else:
                arr = np.array([canonical_label(v) for v in np.asarray(raw, dtype=object)], dtype=object)
            frozen[spec.name] = _freeze(arr)
        return cls(schema=schema, columns=frozen)

    @classmethod
    def from_frame(
        cls,
        frame: pd.DataFrame,
        kinds: Mapping[str, ColumnKind | str] | None = None,
        target: str | None = None,
        categorical_threshold: int = 20,
    ) -> "Table":
        """Build a table from a DataFrame, inferring kinds where not given.

        Numeric columns with at most ``categorical_threshold`` distinct values
        are treated as categorical, as are non-numeric columns.
        """
        kinds = {k: ColumnKind(v) for k, v in (kinds or {}).items()}
        schema = []
        for name in frame.columns:
            name = str(name)
            kind = kinds.get(name)
            if kind is None:
                kind = infer_kind(frame[name].to_numpy(), categorical_threshold)
            schema.append(ColumnSpec(name, kind, is_target=(name == target)))
        if target is not None and target not in {s.name for s in schema}:
            raise KeyError(f"target column {target!r} not in frame")
        return cls.from_columns(schema, {str(c): frame[c].to_numpy() for c in frame.columns})

    # --- accessors -------------------------------------------------------

    @property
    def names(self) -> list[str]:
        return [s.name for s in self.schema]

    @property
    def row_count(self) -> int:
        if not self.schema:
            return 0
        return len(self.columns[self.schema[0].name])

    @property
    def target(self) -> str | None:
        for spec in self.schema:
            if spec.is_target:
                return spec.name
        return None

    def spec(self, name: str) -> ColumnSpec:
        for s in self.schema:
            if s.name == name:
                return s
        raise KeyError(name)

    def kind(self, name: str) -> ColumnKind:
        return self.spec(name).kind

    def names_of(self, kind: ColumnKind) -> list[str]:
        return [s.name for s in self.schema if s.kind is kind]

    def __getitem__(self, name: str) -> np.ndarray:
        return self.columns[name]

    def __len__(self) -> int:
        return self.row_count

    # --- derivations -----------------------------------------------------

    def take(self, indices) -> "Table":
        indices = np.asarray(indices, dtype=np.intp)
        return Table(schema=self.schema, columns={n: _freeze(self.columns[n][indices]) for n in self.names})

    def with_target(self, target: str | None) -> "Table":
        if target is not None and target not in self.names:
            raise KeyError(f"target column {target!r} not in table")
        schema = tuple(ColumnSpec(s.name, s.kind, s.name == target) for s in self.schema)
        return Table(schema=schema, columns=self.columns)

    def drop(self, names: Iterable[str]) -> "Table":
        names = set(names)
        schema = tuple(s for s in self.schema if s.name not in names)
        return Table(schema=schema, columns={s.name: self.columns[s.name] for s in schema})

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({n: np.asarray(self.columns[n]) for n in self.names})

    def same_layout(self, other: "Table") -> bool:
        """True when both tables share column names and kinds (order-free)."""
        mine = {s.name: s.kind for s in self.schema}
        theirs = {s.name: s.kind for s in other.schema}
        return mine == theirs

    def aligned_to(self, reference: "Table") -> "Table":
        """Reorder columns (and copy the target flag) to match ``reference``."""
        if not self.same_layout(reference):
            raise SchemaMismatchError(_layout_diff(reference, self))
        return Table(schema=reference.schema, columns={n: self.columns[n] for n in reference.names})


class SchemaMismatchError(ValueError):
    pass


def _layout_diff(reference: Table, other: Table) -> str:
    ref = {s.name: s.kind.value for s in reference.schema}
    oth = {s.name: s.kind.value for s in other.schema}
    missing = sorted(set(ref) - set(oth))
    extra = sorted(set(oth) - set(ref))
    kinds = sorted(n for n in set(ref) & set(oth) if ref[n] != oth[n])
    parts = []
    if missing:
        parts.append(f"missing columns {missing}")
    if extra:
        parts.append(f"unexpected columns {extra}")
    if kinds:
        parts.append(f"kind mismatch for {kinds}")
    return "schemas differ: " + "; ".join(parts)


def infer_kind(values: np.ndarray, categorical_threshold: int = 20) -> ColumnKind:
    values = np.asarray(values)
    if values.dtype.kind in "biuf":
        numeric = values.astype(np.float64)
    else:
        try:
            numeric = np.array([float(v) for v in values], dtype=np.float64)
        except (TypeError, ValueError):
            return ColumnKind.CATEGORICAL
    if values.dtype.kind == "b":
        return ColumnKind.CATEGORICAL
    if len(np.unique(numeric)) <= categorical_threshold:
        return ColumnKind.CATEGORICAL
    return ColumnKind.CONTINUOUS


def validate(table: Table) -> list[Violation]:
    """Check every table invariant; an empty list means the table is sound."""
    out: list[Violation] = []
    seen: set[str] = set()
    for spec in table.schema:
        if spec.name in seen:
            out.append(Violation(spec.name, "unique_names", f"column {spec.name!r} appears more than once"))
        seen.add(spec.name)
    targets = [s.name for s in table.schema if s.is_target]
    if len(targets) > 1:
        out.append(Violation(None, "single_target", f"{len(targets)} target columns: {targets}"))

    lengths = {s.name: len(table.columns.get(s.name, ())) for s in table.schema}
    if lengths:
        # the modal length is the row count (ties go to the earliest column); others are flagged
        tally = Counter(lengths.values())
        top = max(tally.values())
        expected = next(n for n in lengths.values() if tally[n] == top)
        for name, n in lengths.items():
            if n != expected:
                out.append(Violation(name, "row_count", f"column {name!r} has {n} rows, expected {expected}"))

    for spec in table.schema:
        if spec.name not in table.columns:
            out.append(Violation(spec.name, "present", f"column {spec.name!r} has no data"))
            continue
        if spec.kind is ColumnKind.CONTINUOUS:
            col = np.asarray(table.columns[spec.name], dtype=np.float64)
            bad = int(np.count_nonzero(~np.isfinite(col)))
            if bad:
                out.append(Violation(spec.name, "finite", f"column {spec.name!r} has {bad} non-finite values"))
    return out


def check_table(data, reference: Table | None = None, target: str | None = None) -> Table:
    """Coerce ``data`` (Table or DataFrame) to a validated Table.

    With ``reference`` the result takes the reference's column kinds, order
    and target flag.
    """
    if isinstance(data, pd.DataFrame):
        if reference is not None:
            kinds = {s.name: s.kind for s in reference.schema}
            unknown = [c for c in data.columns if str(c) not in kinds]
            if unknown:
                raise SchemaMismatchError(f"schemas differ: unexpected columns {unknown}")
            data = Table.from_frame(data, kinds=kinds)
        else:
            data = Table.from_frame(data, target=target)
    elif not isinstance(data, Table):
        raise TypeError(f"expected Table or DataFrame, got {type(data).__name__}")
    problems = validate(data)
    if problems:
        raise ValueError("; ".join(p.message for p in problems))
    if reference is not None:
        data = data.aligned_to(reference)
    elif target is not None:
        data = data.with_target(target)
    return data


def concat(tables: Sequence[Table]) -> Table:
    first = tables[0]
    for t in tables[1:]:
        if not t.same_layout(first):
            raise SchemaMismatchError(_layout_diff(first, t))
    aligned = [t.aligned_to(first) for t in tables]
    return Table(schema=first.schema, columns={n: _freeze(np.concatenate([t[n] for t in aligned])) for n in first.names})
