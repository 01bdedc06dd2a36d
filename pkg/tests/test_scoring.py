"""Stage algebra oracles and invariants for the score preprocessing."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pelli.analysis import MetricVector
from pelli.scoring import (
    DEFAULT_K,
    MetricSpec,
    Scaler,
    invert,
    load_metric_specs,
    normalize,
    process_group,
    scale_fixed,
    scale_max_observed,
    smooth,
)

# Frozen image of the shipped metric table: id, source field, smoothing k,
# normalizer, scaler kind, scaler upper, inversion flag.
EXPECTED_TABLE = [
    ("maintainability_index", "mi", None, "none", "fixed_range", 100, False),
    ("convention", "convention_count", 0.01, "loc", "max_observed", None, True),
    ("refactor", "refactor_count", 0.01, "loc", "max_observed", None, True),
    ("comments", "comment_lines", None, "loc", "max_observed", None, False),
    ("sloc", "sloc", None, "methods", "max_observed", None, True),
    ("cpu", "cpu_usage", None, "none", "fixed_range", 100, True),
    ("memory", "memory_usage", None, "none", "max_observed", None, True),
    ("cyclomatic", "cc_total", None, "methods", "max_observed", None, True),
    ("delivered_bugs", "delivered_bugs", None, "loc", "max_observed", None, True),
    ("warnings", "warning_count", 0.01, "loc", "max_observed", None, True),
    ("errors", "error_count", 0.01, "loc", "max_observed", None, True),
]


def make_vector(**overrides) -> MetricVector:
    base = dict(
        mi=50.0,
        convention_count=0,
        refactor_count=0,
        comment_lines=0,
        comments_to_loc=0.0,
        sloc=10,
        method_count=1,
        cc_total=1,
        delivered_bugs=0.0,
        warning_count=0,
        error_count=0,
        loc=10,
        cpu_usage=None,
        memory_usage=None,
    )
    base.update(overrides)
    return MetricVector(**base)


def test_metric_table_matches_frozen_fixture():
    rows = [
        (
            s.metric_id,
            s.source_field,
            s.smoothing_k,
            s.normalizer,
            s.scaler.kind,
            s.scaler.upper,
            s.inverse,
        )
        for s in load_metric_specs()
    ]
    assert rows == EXPECTED_TABLE


def test_smoothing_only_on_the_four_count_metrics():
    smoothed = {s.metric_id for s in load_metric_specs() if s.smoothing_k is not None}
    assert smoothed == {"convention", "refactor", "warnings", "errors"}
    assert all(
        s.smoothing_k == DEFAULT_K for s in load_metric_specs() if s.smoothing_k is not None
    )


def test_smooth_adds_k():
    assert smooth(0) == 0.01
    assert smooth(5) == 5.01
    assert smooth(3, k=0.5) == 3.5
    with pytest.raises(ValueError):
        smooth(1, k=0)


def test_normalize_direct_substitution():
    # 5 violations over 50 lines is exactly 0.1
    assert normalize(5, 50) == (0.1, False)


def test_normalize_denominator_fallback():
    assert normalize(5, 0) == (5.0, True)
    assert normalize(2.5, 0.25) == (2.5, True)
    assert normalize(2.5, 1) == (2.5, False)


def test_scale_max_observed_arithmetic():
    assert scale_max_observed([2.0, 4.0, 8.0]) == [0.25, 0.5, 1.0]


def test_scale_max_observed_degenerate_groups():
    assert scale_max_observed([]) == []
    assert scale_max_observed([0.0, 0.0]) == [0.0, 0.0]
    assert scale_max_observed([7.0]) == [1.0]


def test_scale_fixed_and_invert():
    assert scale_fixed(50.0, 100.0) == 0.5
    assert invert(0.25) == 0.75
    assert invert(1.0) == 0.0


def test_worked_example_through_all_stages():
    # counts [0, 2, 5] on files of 10/20/50 lines, computed stage by stage
    counts = [0, 2, 5]
    locs = [10, 20, 50]
    smoothed = [c + 0.01 for c in counts]
    normalized = [s / l for s, l in zip(smoothed, locs)]
    peak = max(normalized)
    expected = [1.0 - (n / peak) for n in normalized]

    vectors = [
        (f"s{i}", make_vector(convention_count=c, loc=l))
        for i, (c, l) in enumerate(zip(counts, locs))
    ]
    scores = process_group(vectors, load_metric_specs(), group_key="demo")
    got = [s.entries["convention"].processed for s in scores]
    for g, e in zip(got, expected):
        assert abs(g - e) <= 1e-12 * max(abs(e), 1.0)
    # spot values, written out by hand: 0.01/10=0.001, 2.01/20=0.1005 (the
    # peak), 5.01/50=0.1002
    assert abs(got[0] - 0.9900497512437811) <= 1e-12
    assert got[1] == 0.0
    assert abs(got[2] - 0.0029850746268655914) <= 1e-12


def test_fixed_range_metrics_skip_group_max():
    vectors = [
        ("low", make_vector(mi=20.0, cpu_usage=30.0)),
        ("high", make_vector(mi=80.0, cpu_usage=90.0)),
    ]
    scores = process_group(vectors, load_metric_specs(), group_key="g")
    assert scores[0].entries["maintainability_index"].processed == 0.2
    assert scores[1].entries["maintainability_index"].processed == 0.8
    # cpu inverts after the fixed scale
    assert abs(scores[0].entries["cpu"].processed - 0.7) <= 1e-12
    assert abs(scores[1].entries["cpu"].processed - 0.1) <= 1e-12


def test_missing_runtime_values_stay_none_and_skip_the_max():
    vectors = [
        ("ran", make_vector(memory_usage=400.0)),
        ("skipped", make_vector(memory_usage=None)),
        ("peak", make_vector(memory_usage=800.0)),
    ]
    scores = process_group(vectors, load_metric_specs(), group_key="g")
    assert scores[0].entries["memory"].processed == 0.5
    assert scores[1].entries["memory"].processed is None
    assert scores[1].entries["memory"].raw is None
    assert scores[2].entries["memory"].processed == 0.0


def test_denominator_fallback_is_flagged():
    vectors = [("zero-methods", make_vector(method_count=0, sloc=12))]
    scores = process_group(vectors, load_metric_specs(), group_key="g")
    entry = scores[0].entries["sloc"]
    assert entry.flags == ["methods-denominator-fallback"]
    assert entry.normalized == 12.0


def test_all_zero_group_flags_and_zeroes():
    vectors = [("a", make_vector()), ("b", make_vector())]
    scores = process_group(vectors, load_metric_specs(), group_key="g")
    for score in scores:
        entry = score.entries["refactor"]
        assert "all-zero-group" not in entry.flags  # smoothing keeps it positive
        assert score.entries["memory"].processed is None
    # delivered bugs has no smoothing, so two zero vectors form a zero group
    for score in scores:
        entry = score.entries["delivered_bugs"]
        assert entry.scaled == 0.0
        assert entry.processed == 1.0
        assert "all-zero-group" in entry.flags


def test_unusable_vector_rejected():
    bad = make_vector()
    bad.usable = False
    with pytest.raises(ValueError):
        process_group([("x", bad)], load_metric_specs(), group_key="g")


def test_entry_provenance_chain():
    vectors = [("a", make_vector(warning_count=3, loc=20))]
    scores = process_group(vectors, load_metric_specs(), group_key="g")
    entry = scores[0].entries["warnings"]
    assert entry.raw == 3.0
    assert abs(entry.normalized - 3.01 / 20) <= 1e-15
    assert entry.scaled == 1.0  # sole member is its own max
    assert entry.processed == 0.0


# -- invariants ---------------------------------------------------------------

COUNT_SPEC = MetricSpec(
    metric_id="counts",
    source_field="convention_count",
    smoothing_k=0.01,
    normalizer="loc",
    scaler=Scaler("max_observed"),
    inverse=True,
)


@given(
    st.lists(
        st.tuples(st.integers(0, 500), st.integers(1, 400)),
        min_size=1,
        max_size=12,
    )
)
@settings(max_examples=400, deadline=None)
def test_processed_values_always_in_unit_interval(rows):
    vectors = [
        (f"s{i}", make_vector(convention_count=c, loc=l)) for i, (c, l) in enumerate(rows)
    ]
    scores = process_group(vectors, [COUNT_SPEC], group_key="g")
    for score in scores:
        value = score.entries["counts"].processed
        assert 0.0 <= value <= 1.0


@given(
    st.lists(
        st.tuples(st.integers(0, 500), st.integers(1, 400)),
        min_size=1,
        max_size=12,
    )
)
@settings(max_examples=400, deadline=None)
def test_group_max_scales_to_one_and_order_reverses(rows):
    vectors = [
        (f"s{i}", make_vector(convention_count=c, loc=l)) for i, (c, l) in enumerate(rows)
    ]
    scores = process_group(vectors, [COUNT_SPEC], group_key="g")
    normalized = [(c + 0.01) / l for c, l in rows]
    scaled = [s.entries["counts"].scaled for s in scores]
    processed = [s.entries["counts"].processed for s in scores]
    assert max(scaled) == 1.0
    peak_index = max(range(len(rows)), key=lambda i: normalized[i])
    assert math.isclose(scaled[peak_index], 1.0)
    # antitone: worse normalized ratio never scores higher
    order = sorted(range(len(rows)), key=lambda i: normalized[i])
    for earlier, later in zip(order, order[1:]):
        assert processed[earlier] >= processed[later] - 1e-12
