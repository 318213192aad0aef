import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from tabsyndex.scores import column_coverage, coverage_score
from tabsyndex.scores.coverage import BinSpec, bin_counts, clipped_ratios
from tabsyndex.table import ColumnKind, ColumnSpec, Table


def cat_table(values):
    return Table.from_columns([ColumnSpec("c", ColumnKind.CATEGORICAL)], {"c": values})


def cont_table(values):
    return Table.from_columns([ColumnSpec("x", ColumnKind.CONTINUOUS)], {"x": values})


def test_column_examples():
    assert column_coverage([30, 70], [30, 70], 100, 100) == 1.0
    assert column_coverage([90, 10], [50, 50], 100, 100, beta=2) == 1.0
    np.testing.assert_allclose(clipped_ratios([90, 10], [50, 50], 100, 100, 2), [50 / 90, 2.0])
    assert column_coverage([90, 10], [100, 0], 100, 100, beta=2) == pytest.approx(100 / 90 / 2, abs=1e-12)


def test_column_rejects_empty():
    with pytest.raises(ValueError):
        column_coverage([], [], 1, 1)


def test_real_zero_categories_are_skipped():
    assert np.isnan(clipped_ratios([0, 10], [5, 5], 10, 10)[0])
    assert column_coverage([0, 10], [5, 5], 10, 10) == pytest.approx(0.5)


def test_identical_tables_score_one(mixed):
    b, _ = coverage_score(mixed, mixed)
    assert b.score == 1.0


def test_constant_synthetic_on_uniform_column_scores_point_one():
    real = cont_table(np.linspace(0, 1, 2000))
    synth = cont_table(np.full(2000, 0.5))
    b, _ = coverage_score(real, synth, BinSpec(20), beta=2.0)
    assert b.score == pytest.approx(0.1, abs=1e-12)


def test_beta_one_caps_each_ratio():
    real = cat_table(["a"] * 90 + ["b"] * 10)
    synth = cat_table(["a"] * 50 + ["b"] * 50)
    b, _ = coverage_score(real, synth, beta=1.0)
    assert b.score == pytest.approx((50 / 90 + 1.0) / 2)
    with pytest.raises(ValueError):
        coverage_score(real, synth, beta=0.5)


def test_out_of_range_values_fold_into_edge_bins():
    edges = BinSpec(4).edges(np.array([0.0, 4.0]))
    np.testing.assert_array_equal(bin_counts(np.array([-10.0, 0.0, 1.5, 3.99, 4.0, 99.0]), edges), [2, 1, 0, 3])


def test_bin_edges_strictly_increasing():
    for values in (np.array([1.0, 1.0]), np.array([0.0, 1e-300]), np.linspace(-5, 5, 7)):
        edges = BinSpec(20).edges(values)
        assert np.all(np.diff(edges) > 0)


def test_synthetic_only_categories_warn():
    real = cat_table(["a", "b"] * 10)
    synth = cat_table(["a", "b", "z", "z"] * 5)
    b, notices = coverage_score(real, synth)
    assert [n.code for n in notices] == ["skipped_categories"]
    assert set(b.ratios["c"]) == {"a", "b"}


def test_continuous_matches_equal_width_oracle():
    rng = np.random.default_rng(4)
    r = rng.normal(size=500)
    f = rng.normal(0.3, 1.2, size=400)
    b, _ = coverage_score(cont_table(r), cont_table(f), BinSpec(20), beta=2.0)
    rc = oracles.equal_width_counts(list(r), list(r), 20)
    fc = oracles.equal_width_counts(list(r), list(f), 20)
    assert b.score == pytest.approx(oracles.column_coverage(rc, fc, 500, 400, 2.0), abs=1e-9)


counts = st.lists(st.integers(0, 50), min_size=1, max_size=8)


@settings(max_examples=300, deadline=None)
@given(real=counts, fake=counts, beta=st.floats(1.0, 5.0))
def test_ratios_bounded_and_match_oracle(real, fake, beta):
    n = min(len(real), len(fake))
    real, fake = real[:n], fake[:n]
    if sum(real) == 0 or sum(fake) == 0:
        return
    ratios = clipped_ratios(real, fake, sum(real), sum(fake), beta)
    kept = ratios[~np.isnan(ratios)]
    assert np.all((kept >= 0) & (kept <= beta))
    score = column_coverage(real, fake, sum(real), sum(fake), beta)
    assert 0 <= score <= 1
    assert score == pytest.approx(oracles.column_coverage(real, fake, sum(real), sum(fake), beta), abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(
    r=st.lists(st.sampled_from("abcd"), min_size=2, max_size=40),
    f=st.lists(st.sampled_from("abcd"), min_size=2, max_size=40),
    seed=st.integers(0, 1000),
)
def test_row_permutation_invariance(r, f, seed):
    rng = np.random.default_rng(seed)
    real, synth = cat_table(r), cat_table(f)
    base = coverage_score(real, synth)[0].score
    shuffled = coverage_score(real.take(rng.permutation(len(r))), synth.take(rng.permutation(len(f))))[0].score
    assert base == shuffled


def test_monotone_deprivation():
    real = [40, 30, 20, 10]
    n = 100
    # category 0 already over-represented past beta; move category 3's synthetic samples onto it
    fake = [85, 5, 5, 5]
    before = column_coverage(real, fake, n, n, 2.0)
    after = column_coverage(real, [90, 5, 5, 0], n, n, 2.0)
    assert after <= before
    rng = np.random.default_rng(0)
    for _ in range(200):
        real = rng.integers(1, 30, 5)
        fake = rng.integers(0, 30, 5)
        clipped = np.argmax(fake / real)
        victim = (clipped + 1 + rng.integers(0, 4)) % 5
        moved = fake.copy()
        moved[clipped] += moved[victim]
        moved[victim] = 0
        nr, nf = real.sum(), max(fake.sum(), 1)
        if np.minimum(fake / real * nr / nf, 2.0)[clipped] < 2.0:
            continue
        assert column_coverage(real, moved, nr, nf, 2.0) <= column_coverage(real, fake, nr, nf, 2.0) + 1e-12
