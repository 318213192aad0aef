import io
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tabsyndex.ingest import (
    CSVParseError,
    IngestError,
    MissingValueError,
    SchemaConfig,
    SplitSpec,
    load_schema_config,
    parse_csv,
    round_half_up,
    sample,
    split,
    write_csv,
)
from tabsyndex.table import ColumnKind, ColumnSpec, Table, concat


def numeric_table(n, seed=0):
    rng = np.random.default_rng(seed)
    return Table.from_columns(
        [ColumnSpec("id", ColumnKind.CONTINUOUS), ColumnSpec("v", ColumnKind.CONTINUOUS)],
        {"id": np.arange(n, dtype=float), "v": rng.normal(size=n)},
    )


def rows_of(t):
    return sorted(zip(*(t[c].tolist() for c in t.names)))


def csv_bytes(header, rows):
    lines = [",".join(header)] + [",".join(str(v) for v in r) for r in rows]
    return ("\n".join(lines) + "\n").encode()


def test_three_continuous_columns_inferred():
    rng = np.random.default_rng(0)
    data = rng.normal(size=(1000, 3))
    t = parse_csv(csv_bytes(["a", "b", "c"], data.tolist()))
    assert [t.kind(c) for c in t.names] == [ColumnKind.CONTINUOUS] * 3
    assert t.row_count == 1000


def test_binary_numeric_column_is_categorical():
    t = parse_csv(csv_bytes(["flag", "x"], [[i % 2, i * 0.37] for i in range(100)]))
    assert t.kind("flag") is ColumnKind.CATEGORICAL
    assert set(t["flag"]) == {"0", "1"}


def test_string_column_is_categorical():
    t = parse_csv(csv_bytes(["colour"], [["red"], ["blue"], ["red"]]))
    assert t.kind("colour") is ColumnKind.CATEGORICAL


def test_overrides_and_target():
    data = csv_bytes(["n", "y"], [[i % 3, i] for i in range(40)])
    t = parse_csv(data, SchemaConfig(kinds={"n": "continuous"}, target="y"))
    assert t.kind("n") is ColumnKind.CONTINUOUS
    assert t.target == "y"


def test_missing_cell_names_row_and_column():
    with pytest.raises(MissingValueError) as exc:
        parse_csv(b"a,b\n1,2\n3,\n")
    assert exc.value.row == 2 and exc.value.column == "b"


def test_non_finite_cell_rejected():
    with pytest.raises(MissingValueError):
        parse_csv(b"a\n1\nnan\n")
    with pytest.raises(MissingValueError):
        parse_csv(b"a\n1\ninf\n")


def test_malformed_csv_reports_line():
    with pytest.raises(CSVParseError) as exc:
        parse_csv(b"a,b\n1,2\n3,4,5\n")
    assert exc.value.line == 3
    with pytest.raises(CSVParseError):
        parse_csv(b'a,b\n1,"unterminated\n')


def test_unknown_override_and_target_rejected():
    with pytest.raises(IngestError):
        parse_csv(b"a\n1\n", SchemaConfig(kinds={"zzz": "continuous"}))
    with pytest.raises(IngestError):
        parse_csv(b"a\n1\n", SchemaConfig(target="zzz"))


def test_threshold_must_be_at_least_two():
    with pytest.raises(ValueError):
        SchemaConfig(categorical_threshold=1)


def test_schema_config_files(tmp_path):
    toml = tmp_path / "s.toml"
    toml.write_text('target = "y"\ncategorical_threshold = 5\n[columns.n]\nkind = "categorical"\n')
    cfg = load_schema_config(toml)
    assert cfg.target == "y" and cfg.categorical_threshold == 5 and cfg.kinds == {"n": ColumnKind.CATEGORICAL}
    js = tmp_path / "s.json"
    js.write_text(json.dumps({"columns": {"n": {"kind": "continuous"}}, "target": "y"}))
    assert load_schema_config(js).kinds == {"n": ColumnKind.CONTINUOUS}


def test_csv_round_trip_is_exact(mixed):
    buf = io.StringIO()
    write_csv(mixed, buf)
    back = parse_csv(buf.getvalue().encode(), SchemaConfig.from_schema(mixed.schema))
    for c in mixed.names:
        np.testing.assert_array_equal(back[c], mixed[c])


def test_round_half_up():
    assert round_half_up(0.5) == 1
    assert round_half_up(2.5) == 3
    assert round_half_up(1224.5) == 1225
    assert round_half_up(1224.49) == 1224


def test_split_concrete_sizes():
    a, b = split(numeric_table(1030), SplitSpec(0.5, 7))
    assert (a.row_count, b.row_count) == (515, 515)


def test_split_powerplant_sizes():
    a, b = split(numeric_table(9568), SplitSpec(0.5, 3))
    assert (a.row_count, b.row_count) == (4784, 4784)


def test_split_deterministic_and_disjoint():
    t = numeric_table(200)
    a1, b1 = split(t, SplitSpec(0.3, 11))
    a2, b2 = split(t, SplitSpec(0.3, 11))
    np.testing.assert_array_equal(a1["id"], a2["id"])
    np.testing.assert_array_equal(b1["id"], b2["id"])
    assert a1.row_count == 60
    assert not set(a1["id"]) & set(b1["id"])
    assert a1.schema == t.schema == b1.schema


def test_split_needs_two_rows():
    with pytest.raises(ValueError):
        split(numeric_table(1), SplitSpec())


@settings(max_examples=50, deadline=None)
@given(n=st.integers(2, 300), fraction=st.floats(0.05, 0.95), seed=st.integers(0, 2**63 - 1))
def test_split_then_concat_preserves_row_multiset(n, fraction, seed):
    t = numeric_table(n, seed=n)
    a, b = split(t, SplitSpec(fraction, seed))
    assert rows_of(concat([a, b])) == rows_of(t)


def test_sample_full_is_permutation():
    t = numeric_table(500)
    s = sample(t, 1.0, 5)
    assert rows_of(s) == rows_of(t)


def test_sample_wine_quarter_rounds_half_up():
    # 0.25 * 4898 = 1224.5
    assert sample(numeric_table(4898), 0.25, 1).row_count == 1225


def test_sample_rejects_bad_proportion():
    with pytest.raises(ValueError):
        sample(numeric_table(10), 0.0, 1)
    with pytest.raises(ValueError):
        sample(numeric_table(10), 1.5, 1)


def test_different_seeds_give_different_samples():
    t = numeric_table(1000)
    for seed in range(100):
        a = set(sample(t, 0.5, seed)["id"])
        b = set(sample(t, 0.5, seed + 1000)["id"])
        assert a != b


def test_split_with_proportion_subsamples_second_part():
    a, b = split(numeric_table(1000), SplitSpec(0.5, 1, proportion=0.1))
    assert (a.row_count, b.row_count) == (500, 50)
