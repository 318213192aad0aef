import numpy as np
import pandas as pd
import pytest
from sklearn.base import clone

from tabsyndex import TabSynDex, evaluate
from tabsyndex.generators import GeneratorSpec, generate
from tabsyndex.table import ColumnKind, ColumnSpec, Table


def test_identity_report(demo_small):
    rep = TabSynDex().fit(demo_small).evaluate(demo_small)
    c = rep.components
    assert (c.s_basic, c.s_corr, c.s_cr, c.s_ml) == (1.0, 1.0, 1.0, 1.0)
    assert c.s_pmse == pytest.approx(1 / 1.2)
    assert c.tabsyndex >= 0.95
    assert rep.config["target"] == "y"


def test_params_follow_sklearn_conventions():
    est = TabSynDex(alpha=1.5, bins=10)
    assert clone(est).get_params()["alpha"] == 1.5
    assert est.set_params(beta=3.0).beta == 3.0


@pytest.mark.parametrize("params", [dict(alpha=1.0), dict(beta=0.5), dict(bins=0), dict(test_fraction=1.0)])
def test_invalid_params_raise_on_fit(demo_small, params):
    with pytest.raises(ValueError):
        TabSynDex(**params).fit(demo_small)


def test_default_target_is_last_column_with_warning():
    x = np.linspace(0, 1, 60)
    t = Table.from_columns(
        [ColumnSpec("a", ColumnKind.CONTINUOUS), ColumnSpec("b", ColumnKind.CONTINUOUS)], {"a": x, "b": x ** 2}
    )
    rep = evaluate(t, t)
    assert rep.config["target"] == "b"
    assert any(n.code == "default_target" for n in rep.warnings)


def test_named_missing_target_skips_ml(demo_small):
    rep = TabSynDex(target="nope").fit(demo_small).evaluate(demo_small)
    assert rep.components.s_ml is None
    assert rep.components.tabsyndex == pytest.approx(np.mean([1, 1, 1 / 1.2, 1]))
    assert any(n.code == "not_computed" and n.component == "s_ml" for n in rep.warnings)


def test_accepts_dataframes(demo_small):
    frame = demo_small.to_frame()
    rep = TabSynDex(target="y").fit(frame).evaluate(frame.sample(frac=1.0, random_state=0))
    assert rep.components.s_basic == pytest.approx(1.0)


def test_schema_mismatch_rejected(demo_small):
    other = demo_small.drop(["x1"])
    with pytest.raises(ValueError):
        TabSynDex().fit(demo_small).evaluate(other)


def test_weights_change_total_only(demo_small):
    synth = generate(demo_small, GeneratorSpec("independent_marginals", seed=1))
    a = TabSynDex().fit(demo_small).evaluate(synth)
    b = TabSynDex(weights="0,1,0,0,0").fit(demo_small).evaluate(synth)
    assert a.components.values() == b.components.values()
    assert b.tabsyndex == pytest.approx(b.components.s_corr)


def test_collapse_warning(demo):
    rep = TabSynDex().fit(demo).evaluate(generate(demo, GeneratorSpec("constant_row", seed=0)))
    assert rep.components.s_corr < 0.05 and rep.components.s_cr < 0.2
    assert any(n.code == "mode_collapse" for n in rep.warnings)


def test_parallel_matches_serial(demo_small):
    synth = generate(demo_small, GeneratorSpec("jitter", 0.2, seed=4))
    a = TabSynDex(jobs=1).fit(demo_small).evaluate(synth).to_json()
    b = TabSynDex(jobs=4).fit(demo_small).evaluate(synth).to_json()
    assert a == b


def test_score_is_tabsyndex(demo_small):
    est = TabSynDex().fit(demo_small)
    assert est.score(demo_small) == est.evaluate(demo_small).tabsyndex


def test_categorical_target_uses_classifiers(demo_classification):
    rep = evaluate(demo_classification, demo_classification)
    assert [r["metric"] for r in rep.learners] == ["f1_macro"] * 4
    assert rep.components.s_ml == 1.0


def test_frame_input_mixed_types():
    frame = pd.DataFrame({"n": np.arange(40.0) * 1.1, "c": ["a", "b"] * 20, "t": np.arange(40.0) ** 0.5})
    rep = evaluate(frame, frame, target="t")
    assert rep.tabsyndex >= 0.95
