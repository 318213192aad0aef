import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from tabsyndex.ingest import SplitSpec, split
from tabsyndex.scores import expected_pmse0, pmse, pmse_index, s_pmse_index
from tabsyndex.table import ColumnKind, ColumnSpec, Table


def test_pmse_examples():
    assert pmse([0.3, 0.3, 0.3], 0.3) == 0.0
    assert pmse([0.9, 0.1], 0.5) == pytest.approx(0.16, abs=1e-12)
    assert pmse([1.0, 0.0], 0.5) == pytest.approx(0.25, abs=1e-12)
    with pytest.raises(ValueError):
        pmse([], 0.5)


def test_expected_pmse0_examples():
    assert expected_pmse0(3, 0.5, 100) == pytest.approx(0.0025, abs=1e-15)
    assert expected_pmse0(2, 0.5, 8) == pytest.approx(0.015625, abs=1e-15)
    assert expected_pmse0(5, 1e-9, 100) < 1e-10
    with pytest.raises(ValueError):
        expected_pmse0(1, 0.5, 10)


def test_index_examples():
    assert pmse_index(0.0, 1.2) == pytest.approx(1 / 1.2, abs=1e-12)
    assert pmse_index(5.0, 1.2) == pytest.approx(1.2**-4, abs=1e-12)
    assert pmse_index(1.0, 1.2) == 1.0
    with pytest.raises(ValueError):
        pmse_index(1.0, 1.0)


@given(a=st.floats(0, 50), b=st.floats(0, 50), alpha=st.floats(1.01, 5))
def test_index_decreasing_and_bounded(a, b, alpha):
    ra, rb = 1 + a, 1 + b
    sa, sb = pmse_index(ra, alpha), pmse_index(rb, alpha)
    assert 0 < sa <= 1 and 0 < sb <= 1
    if a < b:
        assert sa >= sb
    assert sa == pytest.approx(oracles.s_pmse(ra, alpha), rel=1e-12)


@given(p=st.lists(st.floats(0, 1), min_size=1, max_size=50), c=st.floats(0.01, 0.99))
def test_pmse_upper_bound(p, c):
    value = pmse(p, c)
    assert value == pytest.approx(oracles.pmse(p, c), abs=1e-12)
    assert value <= max(c, 1 - c) ** 2 + 1e-15


def test_identical_tables_give_ratio_zero(demo_small):
    r = s_pmse_index(demo_small, demo_small)
    assert r.pmse == pytest.approx(0.0, abs=1e-20)
    assert r.s_pmse == pytest.approx(1 / 1.2, abs=1e-12)
    assert r.c == 0.5 and r.n == 2 * demo_small.row_count
    # four continuous, three one-hot for the group column, one continuous target, plus the bias
    assert r.k == 9


def test_result_fields_are_consistent(demo_small):
    a, b = split(demo_small, SplitSpec(0.6, 3))
    r = s_pmse_index(a, b, alpha=1.5)
    assert r.ratio == pytest.approx(r.pmse / r.expected_pmse0)
    assert r.s_pmse == pytest.approx(1.5 ** -abs(1 - r.ratio))
    assert r.c == pytest.approx(b.row_count / (a.row_count + b.row_count))


def test_degenerate_input_rejected(demo_small):
    with pytest.raises(ValueError):
        s_pmse_index(demo_small.take([0]), demo_small)


def _shifted(t, offset):
    cols = {c: (t[c] + offset if t.kind(c) is ColumnKind.CONTINUOUS else t[c]) for c in t.names}
    return Table.from_columns(t.schema, cols)


def test_separable_scores_below_null(demo):
    a, b = split(demo, SplitSpec(0.5, 0))
    null = s_pmse_index(a, b)
    far = s_pmse_index(a, _shifted(b, 1e3))
    assert far.ratio > null.ratio
    assert far.s_pmse < null.s_pmse


def _null_runs(table, seeds=range(20)):
    return [s_pmse_index(*split(table, SplitSpec(0.5, s))) for s in seeds]


@pytest.mark.slow
def test_null_halves_score_high_in_median(demo):
    runs = _null_runs(demo)
    assert np.median([r.s_pmse for r in runs]) >= 0.9
    assert 0.5 <= np.median([r.ratio for r in runs]) <= 2.0


@pytest.mark.slow
def test_null_halves_clear_point_eight_in_eighteen_of_twenty_seeds(demo):
    runs = _null_runs(demo)
    passing = sum(r.s_pmse >= 0.8 for r in runs)
    assert passing >= 18, f"only {passing}/20 seeds reach s_pmse >= 0.8; ratios {[round(r.ratio, 2) for r in runs]}"
