"""Statistical analyses over panels of researchers.

Rankings, the cumulative prize curve n(r) with its normalized area,
correlation and least-squares helpers, coefficient of variation, the K-h
plane quadrant classification, and ratio-based screening indicators for
abnormal publication patterns.
"""

from __future__ import annotations

import enum
import io
import statistics
from dataclasses import dataclass
from importlib.resources import files
from typing import Optional, Sequence

import numpy as np

from .corpus import PanelRow, parse_panel


class PanelIndex(enum.Enum):
    """Which scalar index orders a panel."""

    N = "n"
    C = "c"
    C_PER_N = "c_per_n"
    CA = "ca"
    H = "h"
    K = "k"

    @classmethod
    def coerce(cls, value: "PanelIndex | str") -> "PanelIndex":
        if isinstance(value, cls):
            return value
        try:
            return cls[value.upper()]
        except KeyError:
            raise ValueError(f"unknown panel index {value!r}") from None


@dataclass
class RankedPanel:
    """Rows in non-increasing index order, ties broken by name ascending."""

    rows: list[PanelRow]
    index_name: PanelIndex


@dataclass
class PrizeCurve:
    """Cumulative laureate counts n(r) and the normalized area under them."""

    points: list[tuple[int, int]]
    auc: float


class Quadrant(enum.Enum):
    TRUE_POSITIVE = "true_positive"
    TRUE_NEGATIVE = "true_negative"
    FALSE_NEGATIVE = "false_negative"
    FALSE_POSITIVE = "false_positive"


@dataclass(frozen=True)
class QuadrantLabel:
    quadrant: Quadrant
    h_threshold: float
    k_threshold: float


@dataclass(frozen=True)
class FraudIndicators:
    """Ratio screens; a ratio is None when its denominator is unavailable."""

    k_over_h: Optional[float]
    k_over_n: Optional[float]
    delta: Optional[float]


def _sort_value(row: PanelRow, index: PanelIndex) -> float:
    value = getattr(row, index.value)
    return float("-inf") if value is None else float(value)


def rank_panel(rows: Sequence[PanelRow], index_name: PanelIndex | str) -> RankedPanel:
    """Order a panel by one index, descending, deterministically."""
    if not rows:
        raise ValueError("empty panel")
    index = PanelIndex.coerce(index_name)
    ordered = sorted(rows, key=lambda r: (-_sort_value(r, index), r.name))
    return RankedPanel(rows=ordered, index_name=index)


def prize_curve(panel: RankedPanel) -> PrizeCurve:
    """n(r) = laureates among the first r rows; area normalized by R * L.

    The normalization makes curves comparable across panel sizes: 1.0 means
    every laureate outranks every non-laureate. A panel with no laureates
    gets area 0.0.
    """
    points = []
    running = 0
    for r, row in enumerate(panel.rows, 1):
        running += 1 if row.laureate else 0
        points.append((r, running))
    total = running
    if total == 0:
        return PrizeCurve(points=points, auc=0.0)
    area = sum(n for _, n in points)
    return PrizeCurve(points=points, auc=area / (len(points) * total))


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Pearson product-moment coefficient."""
    if len(xs) != len(ys):
        raise ValueError(f"length mismatch: {len(xs)} vs {len(ys)}")
    if len(xs) < 2:
        raise ValueError("need at least 2 points")
    if np.var(xs) == 0 or np.var(ys) == 0:
        raise ValueError("zero variance")
    return float(np.corrcoef(xs, ys)[0, 1])


def linear_fit(xs: Sequence[float], ys: Sequence[float]) -> tuple[float, float]:
    """Least-squares line minimizing vertical residuals: (slope, intercept)."""
    if len(xs) != len(ys):
        raise ValueError(f"length mismatch: {len(xs)} vs {len(ys)}")
    if len(xs) < 2:
        raise ValueError("need at least 2 points")
    if np.var(xs) == 0:
        raise ValueError("degenerate xs")
    slope, intercept = np.polyfit(xs, ys, 1)
    return float(slope), float(intercept)


def coefficient_of_variation(values: Sequence[float]) -> tuple[float, float, float]:
    """(mean, sample sd, sd/mean) with the n-1 denominator."""
    if len(values) < 2:
        raise ValueError("need at least 2 values")
    mean = statistics.mean(values)
    if mean == 0:
        raise ValueError("zero mean")
    sd = statistics.stdev(values)
    return mean, sd, sd / mean


def cv_from_summary(mean: float, sd: float) -> float:
    """Coefficient of variation from already-published summary statistics."""
    if mean == 0:
        raise ValueError("zero mean")
    return sd / mean


def fraud_indicators(
    k: int,
    k_no_self: Optional[int] = None,
    h: Optional[int] = None,
    n: Optional[int] = None,
) -> FraudIndicators:
    """Screening ratios: K/h, K/N and the relative self-citation drop.

    An unusually low K/h or K/N combined with a high delta flags citation
    patterns worth a closer look. Internal values keep full precision;
    round only at presentation.
    """
    return FraudIndicators(
        k_over_h=k / h if h else None,
        k_over_n=k / n if n else None,
        delta=(k - k_no_self) / k_no_self if k_no_self else None,
    )


def classify_quadrant(
    row: PanelRow, h_threshold: float, k_threshold: float
) -> QuadrantLabel:
    """Place a researcher in the K-h plane; boundaries are inclusive-high.

    High h with high K confirms the expectation set by h (true positive);
    low h with high K marks recognition that h misses (false negative);
    high h with low K marks volume without exceptional recognition (false
    positive).
    """
    if h_threshold <= 0 or k_threshold <= 0:
        raise ValueError("thresholds must be positive")
    high_h = row.h >= h_threshold
    high_k = row.k >= k_threshold
    if high_h and high_k:
        quadrant = Quadrant.TRUE_POSITIVE
    elif high_h:
        quadrant = Quadrant.FALSE_POSITIVE
    elif high_k:
        quadrant = Quadrant.FALSE_NEGATIVE
    else:
        quadrant = Quadrant.TRUE_NEGATIVE
    return QuadrantLabel(quadrant, h_threshold, k_threshold)


def default_thresholds(rows: Sequence[PanelRow]) -> tuple[float, float]:
    """Panel medians of h and K, the default quadrant cutoffs."""
    if not rows:
        raise ValueError("empty panel")
    return (
        float(statistics.median(r.h for r in rows)),
        float(statistics.median(r.k for r in rows)),
    )


def paper_panel() -> list[PanelRow]:
    """The packaged 15-researcher reference panel."""
    text = files("kindex").joinpath("data/panel_paper.csv").read_text(encoding="utf-8")
    return parse_panel(io.StringIO(text))
