"""Command-line front end: ingestion -> networks -> indexes -> analysis.

Subcommands
    index         per-researcher (or group) index reports from a corpus
    report        K-side indexes from a standalone citation-report CSV
    panel         panel analyses: prize curves, the K-h plane, fraud ratios
    synth         generate a synthetic corpus file
    dump-network  debug dump of any derived matrix as row,col,weight CSV

Tabular output is CSV (default) or JSON; the panel analyses additionally
render SVG figures next to the tables. Exit codes: 0 success, 1 malformed
input or usage, 2 unknown entity, 3 internal error. Every command is
deterministic given identical inputs and flags; time windows take an
explicit --now year instead of the wall clock.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import traceback
from contextlib import contextmanager

from . import analysis as an
from . import indexes as ix
from . import networks as nw
from . import synth as sy
from .corpus import (
    CorpusFormatError,
    PanelFormatError,
    ReportFormatError,
    UnknownAuthorError,
    parse_citation_report,
    parse_corpus,
    parse_panel,
    serialize_corpus,
)

GROUP_COLUMNS = ["members", "k", "k_no_self"]
REPORT_COLUMNS = ["k", "k_no_self", "ca", "ca_no_self"]
FRAUD_COLUMNS = ["name", "h", "k", "n", "ca", "k_over_h", "k_over_n", "delta"]
PLANE_COLUMNS = ["name", "h", "k", "laureate", "quadrant"]
CURVE_COLUMNS = ["index", "rank", "cum_laureates"]
AUC_COLUMNS = ["index", "auc"]


class _UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def entry():
    sys.exit(main())


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if not hasattr(args, "func"):
        parser.print_help(sys.stderr)
        return 1
    try:
        return args.func(args) or 0
    except (CorpusFormatError, ReportFormatError, PanelFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except UnknownAuthorError as exc:
        print(f"error: unknown author {exc.args[0]!r}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception:
        traceback.print_exc()
        return 3


def _build_parser() -> _Parser:
    parser = _Parser(prog="kindex", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command")

    p_index = sub.add_parser("index", help="index reports for researchers")
    p_index.add_argument("--corpus", required=True, help="corpus JSONL file")
    p_index.add_argument("--author", action="append", default=[],
                         help="author id (repeatable)")
    p_index.add_argument("--group", help="comma-separated member ids; "
                                         "computes the group K instead")
    p_index.add_argument("--exclude-self", action="store_true",
                         help="report the self-citation-free K in the k column")
    p_index.add_argument("--exclude-reviews", action="store_true",
                         help="drop the researcher's review papers first")
    p_index.add_argument("--m", type=int,
                         help="only own papers from the last m years")
    p_index.add_argument("--y", type=int,
                         help="only citing articles from the last y years")
    p_index.add_argument("--now", type=int,
                         help="reference year for --m/--y windows")
    _common_output_flags(p_index)
    p_index.set_defaults(func=cmd_index)

    p_report = sub.add_parser("report", help="indexes from a citation report CSV")
    p_report.add_argument("--input", required=True, help="citation report CSV")
    _common_output_flags(p_report)
    p_report.set_defaults(func=cmd_report)

    p_panel = sub.add_parser("panel", help="panel analyses and figures")
    p_panel.add_argument("--input",
                         help="panel CSV (default: packaged reference panel)")
    p_panel.add_argument("--analysis", required=True,
                         choices=["curve", "plane", "fraud"])
    p_panel.add_argument("--h-threshold", type=float,
                         help="h cutoff for quadrants (default: panel median)")
    p_panel.add_argument("--k-threshold", type=float,
                         help="K cutoff for quadrants (default: panel median)")
    _common_output_flags(p_panel, formats=("csv", "json", "svg"))
    p_panel.set_defaults(func=cmd_panel)

    p_synth = sub.add_parser("synth", help="generate a synthetic corpus")
    p_synth.add_argument("--papers", type=int, required=True)
    p_synth.add_argument("--authors", type=int, required=True)
    p_synth.add_argument("--span", type=int, default=10, help="years covered")
    p_synth.add_argument("--exponent", type=float, default=1.0,
                         help="preferential attachment exponent")
    p_synth.add_argument("--refs", type=float, default=3.0,
                         help="mean references per paper")
    p_synth.add_argument("--self-rate", type=float, default=0.1,
                         help="self-citation probability per reference")
    p_synth.add_argument("--seed", type=int, default=0)
    _common_output_flags(p_synth)
    p_synth.set_defaults(func=cmd_synth)

    p_dump = sub.add_parser("dump-network", help="dump one derived matrix")
    p_dump.add_argument("--corpus", required=True)
    p_dump.add_argument("--matrix", required=True,
                        help=f"one of {', '.join(nw.MATRIX_NAMES)}")
    _common_output_flags(p_dump)
    p_dump.set_defaults(func=cmd_dump)

    return parser


def _common_output_flags(sub, formats=("csv", "json")):
    sub.add_argument("--format", choices=formats, default=formats[0])
    sub.add_argument("--output", help="output path ('-' or omitted: stdout)")
    sub.add_argument("--quiet", action="store_true",
                     help="suppress informational messages")


@contextmanager
def _open_out(path):
    if path and path != "-":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh
    else:
        yield sys.stdout


def _info(args, message: str):
    if not args.quiet:
        print(message, file=sys.stderr)


def _load_corpus(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_corpus(fh)


def _emit_table(fmt: str, path, columns, rows, meta=None):
    """Write rows (list of dicts) as CSV or as {"meta", "rows"} JSON."""
    meta = meta or {}
    with _open_out(path) as fh:
        if fmt == "json":
            json.dump({"meta": meta, "rows": rows}, fh, ensure_ascii=False,
                      indent=2, default=str)
            fh.write("\n")
        else:
            for key, value in meta.items():
                fh.write(f"# {key}={json.dumps(value)}\n")
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([_cell(row.get(col)) for col in columns])


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return value


# --------------------------------------------------------------------------
# index
# --------------------------------------------------------------------------

def cmd_index(args) -> int:
    if args.group and args.author:
        raise _UsageError("--group and --author are mutually exclusive")
    if not args.group and not args.author:
        raise _UsageError("need --author (repeatable) or --group")
    windowed = args.m is not None or args.y is not None
    if windowed and args.now is None:
        raise _UsageError("--m/--y windows require --now <year>")

    corpus = _load_corpus(args.corpus)
    nets = nw.build_networks(corpus)

    if args.group:
        members = [m.strip() for m in args.group.split(",") if m.strip()]
        row = {
            "members": "+".join(members),
            "k": ix.k_group(nets, corpus, members),
            "k_no_self": ix.k_group(nets, corpus, members, exclude_self=True),
        }
        _emit_table(args.format, args.output, GROUP_COLUMNS, [row],
                    meta=_index_meta(args))
        return 0

    columns = list(ix.INDEX_REPORT_COLUMNS)
    if args.m is not None:
        columns.append("k_proximal")
    if args.y is not None:
        columns.append("k_recent")

    rows = []
    for author in args.author:
        report = ix.compute_indexes(nets, corpus, author,
                                    exclude_reviews=args.exclude_reviews)
        row = {col: getattr(report, col) for col in ix.INDEX_REPORT_COLUMNS}
        if args.exclude_self:
            row["k"] = report.k_no_self
        if args.m is not None:
            row["k_proximal"] = ix.k_proximal(nets, corpus, author, args.m, args.now)
        if args.y is not None:
            row["k_recent"] = ix.k_recent(nets, corpus, author, args.y, args.now)
        rows.append(row)
    _emit_table(args.format, args.output, columns, rows, meta=_index_meta(args))
    return 0


def _index_meta(args) -> dict:
    meta = {}
    if args.exclude_self:
        meta["exclude_self"] = True
    if args.exclude_reviews:
        meta["exclude_reviews"] = True
    if args.m is not None:
        meta["m"] = args.m
    if args.y is not None:
        meta["y"] = args.y
    if args.now is not None:
        meta["now"] = args.now
    return meta


# --------------------------------------------------------------------------
# report
# --------------------------------------------------------------------------

def cmd_report(args) -> int:
    with open(args.input, encoding="utf-8") as fh:
        report = parse_citation_report(fh)
    row = {
        "k": ix.k_index(report),
        "k_no_self": ix.k_index(report, exclude_self=True),
        "ca": len(report.entries),
        "ca_no_self": sum(1 for e in report.entries if not e.is_self_citation),
    }
    _emit_table(args.format, args.output, REPORT_COLUMNS, [row])
    return 0


# --------------------------------------------------------------------------
# panel
# --------------------------------------------------------------------------

def cmd_panel(args) -> int:
    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            rows = parse_panel(fh)
    else:
        rows = an.paper_panel()
    if not rows:
        raise PanelFormatError("panel has no rows")

    if args.analysis == "fraud":
        return _panel_fraud(args, rows)
    if args.analysis == "curve":
        return _panel_curve(args, rows)
    return _panel_plane(args, rows)


def _panel_fraud(args, rows) -> int:
    fmt = "csv" if args.format == "svg" else args.format
    table = []
    for r in rows:
        ind = an.fraud_indicators(k=r.k, h=r.h, n=r.n)
        table.append({
            "name": r.name,
            "h": r.h,
            "k": r.k,
            "n": r.n,
            "ca": r.ca,
            "k_over_h": _round2(ind.k_over_h),
            "k_over_n": _round2(ind.k_over_n),
            "delta": _round2(ind.delta),
        })
    _emit_table(fmt, args.output, FRAUD_COLUMNS, table)
    return 0


def _round2(value):
    return None if value is None else round(value, 2)


def _panel_base(args) -> str:
    return args.output if args.output and args.output != "-" else "panel"


def _panel_curve(args, rows) -> int:
    from . import plots

    curves = {}
    for index in an.PanelIndex:
        ranked = an.rank_panel(rows, index)
        curves[index.name] = an.prize_curve(ranked)

    base = _panel_base(args)
    if args.format == "json":
        curve_path = f"{base}_curve.json"
        payload = {
            "auc": {name: c.auc for name, c in sorted(curves.items())},
            "points": {name: c.points for name, c in sorted(curves.items())},
        }
        with open(curve_path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
        _info(args, f"wrote {curve_path}")
    elif args.format == "csv":
        curve_path = f"{base}_curve.csv"
        auc_path = f"{base}_auc.csv"
        curve_rows = [
            {"index": name, "rank": r, "cum_laureates": n}
            for name, curve in sorted(curves.items())
            for r, n in curve.points
        ]
        _emit_table("csv", curve_path, CURVE_COLUMNS, curve_rows)
        auc_rows = [
            {"index": name, "auc": curve.auc}
            for name, curve in sorted(curves.items())
        ]
        _emit_table("csv", auc_path, AUC_COLUMNS, auc_rows)
        _info(args, f"wrote {curve_path} and {auc_path}")

    svg_path = f"{base}_curve.svg"
    plots.render_prize_curves(curves, svg_path)
    _info(args, f"wrote {svg_path}")
    return 0


def _panel_plane(args, rows) -> int:
    from . import plots

    default_h, default_k = an.default_thresholds(rows)
    h_t = args.h_threshold if args.h_threshold is not None else default_h
    k_t = args.k_threshold if args.k_threshold is not None else default_k
    labels = [an.classify_quadrant(r, h_t, k_t) for r in rows]

    base = _panel_base(args)
    if args.format != "svg":
        table = [
            {
                "name": r.name,
                "h": r.h,
                "k": r.k,
                "laureate": r.laureate,
                "quadrant": label.quadrant.value,
            }
            for r, label in zip(rows, labels)
        ]
        table_path = f"{base}_plane.{args.format}"
        _emit_table(args.format, table_path, PLANE_COLUMNS, table,
                    meta={"h_threshold": h_t, "k_threshold": k_t})
        _info(args, f"wrote {table_path}")

    svg_path = f"{base}_plane.svg"
    plots.render_kh_plane(rows, labels, h_t, k_t, svg_path)
    _info(args, f"wrote {svg_path}")
    return 0


# --------------------------------------------------------------------------
# synth / dump
# --------------------------------------------------------------------------

def cmd_synth(args) -> int:
    config = sy.SynthConfig(
        papers=args.papers,
        authors=args.authors,
        year_span=args.span,
        attachment_exponent=args.exponent,
        refs_per_paper=args.refs,
        self_cite_rate=args.self_rate,
        seed=args.seed,
    )
    corpus = sy.generate(config)
    with _open_out(args.output) as fh:
        fh.write(serialize_corpus(corpus))
    return 0


def cmd_dump(args) -> int:
    corpus = _load_corpus(args.corpus)
    nets = nw.build_networks(corpus)
    with _open_out(args.output) as fh:
        nw.dump_matrix(nets, args.matrix, fh)
    return 0


if __name__ == "__main__":
    entry()
