import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from kindex.analysis import (
    PanelIndex,
    Quadrant,
    classify_quadrant,
    coefficient_of_variation,
    cv_from_summary,
    default_thresholds,
    fraud_indicators,
    linear_fit,
    paper_panel,
    pearson,
    prize_curve,
    rank_panel,
)
from kindex.corpus import PanelRow


def row(name, h=10, k=50, laureate=False, n=None, c=None, ca=None):
    return PanelRow(name=name, n=n, c=c, ca=ca, h=h, k=k, laureate=laureate)


# --------------------------------------------------------------------------
# ranking
# --------------------------------------------------------------------------

def test_rank_panel_ties_break_by_name():
    rows = [row("a", k=5), row("b", k=9), row("c", k=9)]
    ranked = rank_panel(rows, "k")
    assert [r.name for r in ranked.rows] == ["b", "c", "a"]


def test_rank_panel_single_row():
    rows = [row("only")]
    assert rank_panel(rows, PanelIndex.H).rows == rows


def test_rank_panel_empty_errors():
    with pytest.raises(ValueError):
        rank_panel([], "k")


def test_rank_panel_unknown_index():
    with pytest.raises(ValueError, match="unknown panel index"):
        rank_panel([row("a")], "zeta")


def test_rank_panel_unknown_values_sort_last():
    rows = [row("a", n=5), row("b", n=None), row("c", n=9)]
    ranked = rank_panel(rows, "n")
    assert [r.name for r in ranked.rows] == ["c", "a", "b"]


@settings(max_examples=50)
@given(
    st.lists(
        st.builds(
            row,
            name=st.text(min_size=1, max_size=6),
            h=st.integers(0, 100),
            k=st.integers(0, 400),
            laureate=st.booleans(),
        ),
        min_size=1,
        max_size=25,
    )
)
def test_rank_panel_is_sorted_permutation(rows):
    ranked = rank_panel(rows, "k")
    assert sorted(id(r) for r in ranked.rows) == sorted(id(r) for r in rows)
    ks = [r.k for r in ranked.rows]
    assert ks == sorted(ks, reverse=True)


# --------------------------------------------------------------------------
# prize curve
# --------------------------------------------------------------------------

def test_prize_curve_cumulative_counts():
    rows = [row("a", k=9, laureate=True), row("b", k=5), row("c", k=1, laureate=True)]
    curve = prize_curve(rank_panel(rows, "k"))
    assert curve.points == [(1, 1), (2, 1), (3, 2)]


def test_prize_curve_all_laureates_maximal():
    rows = [row(f"r{i}", k=i, laureate=True) for i in range(4)]
    curve = prize_curve(rank_panel(rows, "k"))
    assert [n for _, n in curve.points] == [1, 2, 3, 4]
    r = len(rows)
    assert curve.auc == pytest.approx((r + 1) / (2 * r))


def test_prize_curve_no_laureates():
    rows = [row("a"), row("b")]
    assert prize_curve(rank_panel(rows, "k")).auc == 0.0


@settings(max_examples=60)
@given(st.lists(st.booleans(), min_size=1, max_size=30))
def test_prize_curve_matches_double_sum_oracle(flags):
    rows = [row(f"r{i:02d}", k=1000 - i, laureate=f) for i, f in enumerate(flags)]
    curve = prize_curve(rank_panel(rows, "k"))
    assert curve.auc == pytest.approx(oracles.auc_double_sum(flags))
    # unit steps only
    values = [0] + [n for _, n in curve.points]
    assert all(b - a in (0, 1) for a, b in zip(values, values[1:]))
    assert values[-1] == sum(flags)


@settings(max_examples=60)
@given(st.lists(st.booleans(), min_size=1, max_size=12))
def test_prize_curve_maximal_iff_perfectly_separated(flags):
    # the R*L normalization caps below 1.0 for L > 1; the meaningful form of
    # "perfect separation wins" is maximality over arrangements
    rows = [row(f"r{i:02d}", k=1000 - i, laureate=f) for i, f in enumerate(flags)]
    auc = prize_curve(rank_panel(rows, "k")).auc
    perfect = sorted(flags, reverse=True)
    perfect_rows = [
        row(f"r{i:02d}", k=1000 - i, laureate=f) for i, f in enumerate(perfect)
    ]
    best = prize_curve(rank_panel(perfect_rows, "k")).auc
    if flags == perfect:
        assert auc == pytest.approx(best)
    else:
        assert auc < best


def test_prize_curve_invariant_under_monotone_rescaling():
    rng = random.Random(4)
    rows = [
        row(f"r{i:02d}", k=rng.randint(0, 300), laureate=rng.random() < 0.4)
        for i in range(20)
    ]
    base = prize_curve(rank_panel(rows, "k"))
    rescaled = [
        PanelRow(r.name, r.n, r.c, r.ca, r.h, r.k * 7 + 3, r.laureate) for r in rows
    ]
    assert prize_curve(rank_panel(rescaled, "k")).auc == pytest.approx(base.auc)


# --------------------------------------------------------------------------
# pearson / linear fit
# --------------------------------------------------------------------------

def test_pearson_perfect_linear():
    xs = [1.0, 2.0, 5.0, 7.0]
    assert pearson(xs, [2 * x + 3 for x in xs]) == pytest.approx(1.0)
    assert pearson(xs, [-x for x in xs]) == pytest.approx(-1.0)


def test_pearson_errors():
    with pytest.raises(ValueError, match="length"):
        pearson([1, 2], [1])
    with pytest.raises(ValueError, match="at least 2"):
        pearson([1], [1])
    with pytest.raises(ValueError, match="variance"):
        pearson([1, 1, 1], [1, 2, 3])


def test_pearson_matches_two_pass_oracle():
    rng = random.Random(12)
    for _ in range(25):
        xs = [rng.uniform(-50, 50) for _ in range(30)]
        ys = [rng.uniform(-50, 50) for _ in range(30)]
        expected = oracles.pearson_two_pass(xs, ys)
        assert math.isclose(pearson(xs, ys), expected, abs_tol=1e-12)
        assert math.isclose(pearson(ys, xs), expected, abs_tol=1e-12)
        # invariant under positive affine transforms
        assert math.isclose(
            pearson([3 * x + 11 for x in xs], ys), expected, abs_tol=1e-9
        )


def test_linear_fit_two_points():
    slope, intercept = linear_fit([0.0, 1.0], [3.0, 5.0])
    assert slope == pytest.approx(2.0)
    assert intercept == pytest.approx(3.0)


def test_linear_fit_constant_ys():
    slope, _ = linear_fit([0.0, 1.0, 2.0], [4.0, 4.0, 4.0])
    assert slope == pytest.approx(0.0)


def test_linear_fit_degenerate():
    with pytest.raises(ValueError):
        linear_fit([2.0, 2.0], [1.0, 5.0])


def test_linear_fit_residual_orthogonality():
    rng = random.Random(3)
    for _ in range(20):
        xs = [rng.uniform(0, 100) for _ in range(25)]
        ys = [rng.uniform(0, 100) for _ in range(25)]
        slope, intercept = linear_fit(xs, ys)
        residuals = [y - (slope * x + intercept) for x, y in zip(xs, ys)]
        assert abs(sum(residuals)) < 1e-9 * max(1.0, max(abs(y) for y in ys))
        assert abs(sum(x * r for x, r in zip(xs, residuals))) < 1e-6


# --------------------------------------------------------------------------
# coefficient of variation
# --------------------------------------------------------------------------

def test_cv_identical_values():
    mean, sd, cv = coefficient_of_variation([5.0, 5.0, 5.0])
    assert (mean, sd, cv) == (5.0, 0.0, 0.0)


def test_cv_from_published_summaries():
    assert round(cv_from_summary(224, 66) * 100) == 29
    assert round(cv_from_summary(12792, 8286) * 100) == 65
    assert round(cv_from_summary(52, 18) * 100) == 35


def test_cv_errors():
    with pytest.raises(ValueError):
        coefficient_of_variation([3.0])
    with pytest.raises(ValueError):
        coefficient_of_variation([-1.0, 1.0])
    with pytest.raises(ValueError):
        cv_from_summary(0, 5)


def test_cv_consistency_with_direct_computation():
    values = [200.0, 250.0, 180.0, 300.0, 190.0]
    mean, sd, cv = coefficient_of_variation(values)
    assert cv == pytest.approx(cv_from_summary(mean, sd))


# --------------------------------------------------------------------------
# fraud indicators
# --------------------------------------------------------------------------

@pytest.mark.parametrize(
    "k,k_prime,h,expected_ratio,expected_delta",
    [
        (46, 39, 35, 1.31, 0.18),
        (206, 204, 37, 5.57, 0.01),
        (76, 71, 28, 2.71, 0.07),
    ],
)
def test_fraud_ratio_fixtures(k, k_prime, h, expected_ratio, expected_delta):
    ind = fraud_indicators(k=k, k_no_self=k_prime, h=h)
    assert round(ind.k_over_h, 2) == expected_ratio
    assert round(ind.delta, 2) == expected_delta


def test_fraud_k_over_n():
    ind = fraud_indicators(k=46, h=35, n=293)
    assert ind.k_over_n == pytest.approx(46 / 293)


def test_fraud_undefined_ratios_are_none():
    ind = fraud_indicators(k=10)
    assert ind.k_over_h is None
    assert ind.k_over_n is None
    assert ind.delta is None
    assert fraud_indicators(k=10, h=0, n=0, k_no_self=0) == ind


# --------------------------------------------------------------------------
# quadrants
# --------------------------------------------------------------------------

def test_quadrant_ising_false_negative():
    label = classify_quadrant(row("Ising", h=1, k=100), 30, 90)
    assert label.quadrant is Quadrant.FALSE_NEGATIVE


def test_quadrant_el_naschie_false_positive():
    label = classify_quadrant(row("El Naschie", h=35, k=46), 30, 90)
    assert label.quadrant is Quadrant.FALSE_POSITIVE


def test_quadrant_boundary_is_inclusive_high():
    label = classify_quadrant(row("edge", h=30, k=90), 30, 90)
    assert label.quadrant is Quadrant.TRUE_POSITIVE


def test_quadrant_partition():
    thresholds = (30, 90)
    seen = {
        classify_quadrant(row("r", h=h, k=k), *thresholds).quadrant
        for h in (10, 30, 60)
        for k in (10, 90, 200)
    }
    assert seen == set(Quadrant)


def test_quadrant_threshold_validation():
    with pytest.raises(ValueError):
        classify_quadrant(row("r"), 0, 90)


def test_default_thresholds_are_medians():
    rows = [row("a", h=1, k=10), row("b", h=3, k=30), row("c", h=9, k=20)]
    assert default_thresholds(rows) == (3.0, 20.0)


# --------------------------------------------------------------------------
# packaged reference panel
# --------------------------------------------------------------------------

def test_paper_panel_shape():
    rows = paper_panel()
    assert len(rows) == 15
    assert sum(r.laureate for r in rows) == 5
    by_name = {r.name: r for r in rows}
    assert (by_name["Ising"].h, by_name["Ising"].k) == (1, 100)
    assert (by_name["Witten"].h, by_name["Witten"].k) == (120, 368)
    assert by_name["Einstein"].laureate


def test_paper_panel_k_ranking_beats_h_ranking():
    rows = paper_panel()
    auc_k = prize_curve(rank_panel(rows, "k")).auc
    auc_h = prize_curve(rank_panel(rows, "h")).auc
    assert auc_k > auc_h
