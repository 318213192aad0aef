"""Benchmark dataset retrieval and a small synthetic demo table."""

from __future__ import annotations

import hashlib
import io
import json
import os
import threading
import time
import urllib.error
import urllib.request
from importlib import resources
from pathlib import Path

import numpy as np
import pandas as pd

from .ingest import SchemaConfig, read_table
from .table import ColumnKind, ColumnSpec, Table

NAMES = ("concrete", "wine", "powerplant", "news")
DATA_DIR_ENV = "TABSYNDEX_DATA_DIR"

_locks: dict[Path, threading.Lock] = {}
_locks_guard = threading.Lock()


class FetchError(RuntimeError):
    """Download failed; worth retrying later."""

    retryable = True


class ChecksumError(RuntimeError):
    """Downloaded or cached content does not match its pinned checksum."""

    retryable = False


def default_data_dir() -> Path:
    return Path(os.environ.get(DATA_DIR_ENV, Path.home() / ".cache" / "tabsyndex"))


def load_registry(path: str | Path | None = None) -> dict:
    if path is None:
        text = resources.files("tabsyndex").joinpath("data/datasets.json").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    return json.loads(text)


def _lock_for(path: Path) -> threading.Lock:
    with _locks_guard:
        return _locks.setdefault(path.resolve(), threading.Lock())


def _download(url: str, retries: int, timeout: float) -> bytes:
    last = None
    for attempt in range(retries):
        try:
            with urllib.request.urlopen(url, timeout=timeout) as resp:
                return resp.read()
        except (urllib.error.URLError, TimeoutError, ConnectionError) as exc:
            last = exc
            if attempt + 1 < retries:
                time.sleep(min(2.0**attempt, 8.0))
    raise FetchError(f"could not download {url}: {last}")


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _normalise(raw: bytes, entry: dict) -> pd.DataFrame:
    frame = pd.read_csv(io.BytesIO(raw), sep=entry.get("sep", ","))
    frame.columns = [str(c).strip() for c in frame.columns]
    for column, value in (entry.get("filter") or {}).items():
        frame = frame[frame[column] == value]
    frame = frame.drop(columns=[c for c in entry.get("drop", []) if c in frame.columns])
    frame = frame.dropna(axis=0, how="any")
    target = entry.get("target")
    if target:
        frame = frame[[c for c in frame.columns if c != target] + [target]]
    return frame.reset_index(drop=True)


def fetch_dataset(
    name: str,
    destination: str | Path | None = None,
    registry: dict | None = None,
    retries: int = 3,
    timeout: float = 60.0,
) -> Path:
    """Download a benchmark dataset and write it as ``<destination>/<name>.csv``.

    The raw download is cached next to it and verified against the
    registry's SHA-256. Entries without a recorded checksum are pinned on
    first download (``<name>.sha256``) and verified on every later call.
    """
    registry = registry or load_registry()
    if name not in registry:
        raise KeyError(f"unknown dataset {name!r}; choose from {sorted(registry)}")
    entry = registry[name]
    dest = Path(destination or default_data_dir())
    dest.mkdir(parents=True, exist_ok=True)
    raw_path = dest / f"{name}.raw"
    pin_path = dest / f"{name}.sha256"
    csv_path = dest / f"{name}.csv"

    with _lock_for(csv_path):
        expected = entry.get("sha256")
        if expected is None and pin_path.exists():
            expected = pin_path.read_text().strip()
        if raw_path.exists():
            raw = raw_path.read_bytes()
            digest = _sha256(raw)
            if expected is not None and digest != expected:
                raise ChecksumError(f"cached {raw_path} has sha256 {digest}, expected {expected}")
        else:
            raw = _download(entry["url"], retries, timeout)
            digest = _sha256(raw)
            if expected is not None and digest != expected:
                raise ChecksumError(f"download of {name} has sha256 {digest}, expected {expected}")
            _atomic_write(raw_path, raw)
        if expected is None:
            _atomic_write(pin_path, (digest + "\n").encode())

        frame = _normalise(raw, entry)
        if entry.get("rows") is not None and len(frame) != entry["rows"]:
            raise ChecksumError(f"{name}: expected {entry['rows']} rows after normalisation, got {len(frame)}")
        buf = io.StringIO()
        frame.to_csv(buf, index=False, lineterminator="\n")
        _atomic_write(csv_path, buf.getvalue().encode("utf-8"))
    return csv_path


def _atomic_write(path: Path, data: bytes) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)


def load_benchmark(name: str, data_dir: str | Path | None = None, fetch: bool = True) -> Table:
    """Read a benchmark dataset from the local cache, fetching it if allowed."""
    registry = load_registry()
    entry = registry[name]
    path = Path(data_dir or default_data_dir()) / f"{name}.csv"
    if not path.exists():
        if not fetch:
            raise FileNotFoundError(path)
        path = fetch_dataset(name, path.parent, registry)
    table = read_table(path, SchemaConfig(target=entry.get("target")))
    if table.target is None:
        table = table.with_target(table.names[-1])
    return table


def make_demo_table(n_rows: int = 2000, seed: int = 0, task: str = "regression") -> Table:
    """Correlated mixed-type table: four continuous features, one categorical
    feature tied to them, and a target that depends on both."""
    rng = np.random.default_rng(seed)
    cov = np.array([
        [1.0, 0.8, -0.5, 0.3],
        [0.8, 1.0, -0.4, 0.2],
        [-0.5, -0.4, 1.0, -0.1],
        [0.3, 0.2, -0.1, 1.0],
    ])
    X = rng.multivariate_normal(np.zeros(4), cov, size=n_rows)
    X = X * np.array([7.5, 12.7, 6.0, 14.6]) + np.array([19.7, 54.3, 1013.0, 73.3])
    group_score = (X[:, 0] - 19.7) / 7.5 + rng.normal(0, 0.5, n_rows)
    group = np.where(group_score < -0.5, "low", np.where(group_score > 0.5, "high", "mid"))
    signal = -1.8 * X[:, 0] - 0.3 * X[:, 1] + 0.06 * X[:, 2] - 0.15 * X[:, 3] + 4.0 * (group == "high")
    y = 500.0 + signal + rng.normal(0, 4.5, n_rows)
    columns = {"x1": X[:, 0], "x2": X[:, 1], "x3": X[:, 2], "x4": X[:, 3], "group": group}
    schema = [ColumnSpec(f"x{i}", ColumnKind.CONTINUOUS) for i in range(1, 5)]
    schema.append(ColumnSpec("group", ColumnKind.CATEGORICAL))
    if task == "classification":
        columns["y"] = np.where(y > np.median(y), "above", "below")
        schema.append(ColumnSpec("y", ColumnKind.CATEGORICAL, is_target=True))
    else:
        columns["y"] = y
        schema.append(ColumnSpec("y", ColumnKind.CONTINUOUS, is_target=True))
    return Table.from_columns(schema, columns)
