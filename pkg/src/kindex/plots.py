"""Figure rendering for the analysis outputs.

All figures are written as SVG (no raster dependencies) with stable
content: fixed hash salt, no embedded timestamps. Each file carries its
underlying data table as an XML comment so tests and downstream tooling
can read the numbers back without a plot parser. Marker groups carry ``id``
attributes (one ``<use>`` element per data point inside them).
"""

from __future__ import annotations

import io
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .analysis import PrizeCurve, QuadrantLabel, linear_fit  # noqa: E402
from .corpus import PanelRow  # noqa: E402

matplotlib.rcParams["svg.hashsalt"] = "kindex"

_METADATA = {"Date": None, "Creator": "kindex"}


def _write_svg(fig, path: str, data_table: str):
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata=_METADATA)
    plt.close(fig)
    # "--" is not allowed inside XML comments
    safe = data_table.replace("--", "-")
    svg = buf.getvalue().replace(
        "</svg>", f"<!--\ndata-table:\n{safe}\n-->\n</svg>", 1
    )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(svg)


def render_kh_plane(
    rows: Sequence[PanelRow],
    labels: Sequence[QuadrantLabel],
    h_threshold: float,
    k_threshold: float,
    path: str,
):
    """Scatter the panel in the K-h plane with group fits and thresholds."""
    fig, ax = plt.subplots(figsize=(7, 5))
    groups = [
        ("laureate", [r for r in rows if r.laureate], "o"),
        ("nonlaureate", [r for r in rows if not r.laureate], "s"),
    ]
    for name, members, marker in groups:
        if not members:
            continue
        hs = [r.h for r in members]
        ks = [r.k for r in members]
        ax.scatter(hs, ks, marker=marker, label=name, gid=f"kh-markers-{name}")
        if len(members) >= 2 and len(set(hs)) > 1:
            slope, intercept = linear_fit(hs, ks)
            xs = [min(hs), max(hs)]
            ax.plot(xs, [slope * x + intercept for x in xs],
                    linestyle="-", linewidth=1, gid=f"kh-fit-{name}")
    ax.axvline(h_threshold, linestyle="--", linewidth=0.8, color="gray")
    ax.axhline(k_threshold, linestyle="--", linewidth=0.8, color="gray")
    ax.set_xlabel("h-index")
    ax.set_ylabel("K-index")
    ax.legend()

    lines = ["name,h,k,laureate,quadrant"]
    for row, label in zip(rows, labels):
        lines.append(
            f"{row.name},{row.h},{row.k},"
            f"{'true' if row.laureate else 'false'},{label.quadrant.value}"
        )
    _write_svg(fig, path, "\n".join(lines))


def render_prize_curves(curves: dict[str, PrizeCurve], path: str):
    """Step plot of the cumulative laureate count n(r) per index ranking."""
    fig, ax = plt.subplots(figsize=(7, 5))
    for name, curve in sorted(curves.items()):
        ranks = [r for r, _ in curve.points]
        values = [n for _, n in curve.points]
        ax.step(ranks, values, where="post",
                label=f"{name} (auc={curve.auc:.2f})", gid=f"curve-{name}")
    ax.set_xlabel("rank r")
    ax.set_ylabel("laureates n(r)")
    ax.legend()

    lines = ["index,rank,cum_laureates"]
    for name, curve in sorted(curves.items()):
        for r, n in curve.points:
            lines.append(f"{name},{r},{n}")
    _write_svg(fig, path, "\n".join(lines))
