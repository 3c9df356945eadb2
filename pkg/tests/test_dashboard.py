import math

import pandas as pd
import pytest

from core.components import (
    create_empty_chart, create_growth_chart, create_ledger_chart, create_probe_chart,
    create_region_figure, format_status,
)
from core.examples import ExampleFamily, ExampleSpec
from core.harness import CASES, GrowthModel, fit_growth, get_case, run_witness
from core.params import EmbeddingDirection, make_params, oracle_table, region_diagram
from core.queries.norm_queries import load_example_norms, load_ledger, load_prediction
from core.queries.oracle_queries import load_status_counts
from core.queries.witness_queries import load_case_registry, load_clause_coverage
from theme import STATUS_COLORS


def test_status_counts_sum_to_the_sweep():
    sweep = oracle_table(EmbeddingDirection.MIXED_INTO_ISO, 2, [-1, 0, 1], [1, 2, "inf"], [1, 2])
    counts = load_status_counts(sweep)
    assert counts["points"].sum() == len(sweep)
    assert list(counts.columns) == ["status", "clause", "points"]
    assert load_status_counts(sweep.iloc[0:0]).empty


def test_case_registry_and_coverage():
    registry = load_case_registry()
    assert len(registry) == len(CASES)
    assert registry["in_region"].all()
    coverage = load_clause_coverage()
    assert {"clause", "cases", "annotation"} <= set(coverage.columns)


def test_example_norms_and_ledger_shares():
    spec = ExampleSpec(ExampleFamily.E2, 3, (1.0, 1.0, 1.0))
    iso, mixed = load_example_norms(spec.to_json(), "0", "inf", "2")
    assert iso.value == pytest.approx(3.0, rel=1e-12)
    assert mixed.value == pytest.approx(math.sqrt(3.0), rel=1e-12)

    ledger = load_ledger(mixed)
    assert ledger["share"].sum() == pytest.approx(1.0)
    assert load_ledger(iso)["share"].max() == pytest.approx(1.0)


def test_prediction_is_none_where_refused():
    spec = ExampleSpec(ExampleFamily.E2, 2, (1.0, 1.0))
    assert load_prediction(spec.to_json(), "0", "2", "2") is None
    assert load_prediction(spec.to_json(), "0", "inf", "2").iso_value == 2.0


def test_region_figure_has_one_trace_per_region_and_segment():
    diagram = region_diagram(EmbeddingDirection.ISO_INTO_MIXED, 2, 2.0)
    fig = create_region_figure(diagram, make_params("1/2", "1/2", 2, 2))
    assert len(fig.data) == len(diagram.regions) + len(diagram.critical_segments) + 1
    assert fig.data[-1].x[0] == 2.0


def test_growth_chart_draws_the_fit():
    table = run_witness(get_case("T31-pinf-q-gt-1").with_range(2, 5))
    fit = fit_growth(table, GrowthModel.POWER)
    fig = create_growth_chart(table, fit)
    assert len(fig.data) == 2
    assert fig.data[1].name.startswith("ℓ^0.5")


def test_empty_inputs_give_placeholder_charts():
    empty = pd.DataFrame(columns=["label", "weight", "block_lp", "contribution"])
    assert len(create_ledger_chart(empty, "Iso", "empty").layout.annotations) == 1
    assert len(create_probe_chart(pd.DataFrame()).layout.annotations) == 1
    assert len(create_empty_chart().layout.annotations) == 1


def test_vanishing_ledger_hides_the_axes():
    ledger = pd.DataFrame({"label": ["0", "1"], "weight": [1.0, 1.0],
                           "block_lp": [0.0, 0.0], "contribution": [0.0, 0.0]})
    fig = create_ledger_chart(ledger, "Iso", "vanishing")
    assert fig.layout.annotations[0].text == "All blocks vanish"
    assert fig.layout.xaxis.showticklabels is False
    assert fig.layout.yaxis.showgrid is False


def test_status_swatch():
    assert STATUS_COLORS["Embeds"] in format_status("Embeds")
