"""Bibliographic input formats and the canonical in-memory corpus model.

Three text formats are supported:

1. Corpus (JSON lines) -- one object per line::

       {"id": str, "year": int, "authors": [str], "refs": [[str, int]], "review": bool}

   ``refs`` pairs are (target paper id, multiplicity >= 1). ``review`` is
   optional and defaults to false. Reference targets that do not resolve to
   a paper in the same stream are kept and flagged *external* (real exports
   are always partial); they contribute nothing to derived networks.

2. Citation report (CSV) -- header ``citing_id,citations,self,year`` with
   ``self`` in {true,false}. This mirrors the per-researcher "citing
   articles" view of bibliographic platforms and is usable standalone,
   without a full corpus.

3. Panel (CSV) -- header ``name,n,c,ca,h,k,laureate``. One row per
   researcher with their scalar indexes. ``n``, ``c`` and ``ca`` may be
   ``?`` (unknown); ``h`` and ``k`` are required. Rows that break the
   expected inequalities (h <= n, k <= ca) load with a warning rather than
   an error, because panel data is external truth.

Author identity is by opaque id; name disambiguation is out of scope.
A parsed :class:`Corpus` is immutable by convention and safe for concurrent
reads.
"""

from __future__ import annotations

import csv
import io
import json
import warnings
from dataclasses import dataclass, field
from typing import IO, Iterable, Optional

AuthorId = str

CITATION_REPORT_COLUMNS = ["citing_id", "citations", "self", "year"]
PANEL_COLUMNS = ["name", "n", "c", "ca", "h", "k", "laureate"]

#: Numeric panel cells with this value are treated as unknown.
PANEL_UNKNOWN = "?"


class CorpusFormatError(ValueError):
    """Malformed corpus stream; message carries the offending line number."""


class ReportFormatError(ValueError):
    """Malformed citation-report CSV."""


class PanelFormatError(ValueError):
    """Structurally malformed panel CSV (bad header, unparsable cell)."""


class UnknownAuthorError(KeyError):
    """An operation was asked about an author id absent from the corpus."""


class ExternalReferenceWarning(UserWarning):
    """A corpus stream contained reference targets outside the corpus."""


class PanelRowWarning(UserWarning):
    """A panel row violates an expected inequality between its indexes."""


@dataclass(frozen=True)
class PaperRecord:
    """One publication: id, year, ordered author ids, outgoing references.

    ``references`` holds (target paper id, multiplicity) pairs, multiplicity
    being the integer number of times the target is cited by this paper.
    """

    id: str
    year: int
    authors: tuple[AuthorId, ...]
    references: tuple[tuple[str, int], ...] = ()
    is_review: bool = False

    def __post_init__(self):
        if not self.id:
            raise ValueError("paper id must be non-empty")
        if not self.authors:
            raise ValueError(f"paper {self.id!r}: empty author list")
        if len(set(self.authors)) != len(self.authors):
            raise ValueError(f"paper {self.id!r}: duplicate authors")
        if any(not a for a in self.authors):
            raise ValueError(f"paper {self.id!r}: empty author id")
        for target, mult in self.references:
            if mult < 1:
                raise ValueError(
                    f"paper {self.id!r}: reference multiplicity {mult} < 1"
                )
            if target == self.id:
                raise ValueError(f"paper {self.id!r}: reference to itself")


@dataclass
class Corpus:
    """Validated collection of papers plus the author registry.

    ``external`` is the set of reference targets that do not resolve to a
    paper in ``papers``. Resolution is total: every reference is either
    resolved or listed here, never silently dropped.
    """

    papers: dict[str, PaperRecord]
    authors: frozenset[AuthorId]
    external: frozenset[str]

    @classmethod
    def from_records(cls, records: Iterable[PaperRecord]) -> "Corpus":
        papers: dict[str, PaperRecord] = {}
        for rec in records:
            if rec.id in papers:
                raise CorpusFormatError(f"duplicate paper id {rec.id!r}")
            papers[rec.id] = rec
        if not papers:
            raise CorpusFormatError("empty corpus")
        authors = frozenset(a for rec in papers.values() for a in rec.authors)
        external = frozenset(
            target
            for rec in papers.values()
            for target, _ in rec.references
            if target not in papers
        )
        return cls(papers=papers, authors=authors, external=external)

    def papers_of(self, author: AuthorId) -> list[PaperRecord]:
        """All papers listing ``author``, in corpus order."""
        if author not in self.authors:
            raise UnknownAuthorError(author)
        return [p for p in self.papers.values() if author in p.authors]


@dataclass(frozen=True)
class ReportEntry:
    """One citing article: its id, citations it received, self flag, year."""

    citing_id: str
    citations: int
    is_self_citation: bool
    year: int

    def __post_init__(self):
        if self.citations < 0:
            raise ValueError(
                f"citing article {self.citing_id!r}: negative citation count"
            )


@dataclass
class CitationReport:
    """Per-researcher list of citing articles, the standalone index input."""

    researcher: str
    entries: list[ReportEntry] = field(default_factory=list)

    def ranked(self) -> list[ReportEntry]:
        """Entries sorted by citations descending, ties by id ascending."""
        return sorted(self.entries, key=lambda e: (-e.citations, e.citing_id))


@dataclass
class PanelRow:
    """One researcher's scalar indexes as loaded from a panel CSV.

    ``n``, ``c`` and ``ca`` are None when the source file marked them
    unknown (``?``).
    """

    name: str
    n: Optional[int]
    c: Optional[int]
    ca: Optional[int]
    h: int
    k: int
    laureate: bool

    @property
    def c_per_n(self) -> float:
        """Citations per paper; 0.0 when either piece is unknown or n == 0."""
        if not self.n or self.c is None:
            return 0.0
        return self.c / self.n


# --------------------------------------------------------------------------
# corpus line format
# --------------------------------------------------------------------------

def parse_corpus(stream: Iterable[str] | IO[str]) -> Corpus:
    """Parse a newline-delimited JSON corpus stream.

    Raises :class:`CorpusFormatError` naming the line for malformed JSON,
    schema violations, duplicate ids, or an empty stream. Unresolved
    reference targets are retained, flagged external, and reported once via
    :class:`ExternalReferenceWarning`.
    """
    records = []
    for lineno, line in enumerate(stream, 1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusFormatError(f"line {lineno}: invalid JSON ({exc.msg})") from exc
        try:
            records.append(_record_from_obj(obj))
        except (KeyError, TypeError, ValueError) as exc:
            raise CorpusFormatError(f"line {lineno}: {exc}") from exc
    corpus = Corpus.from_records(records)
    if corpus.external:
        sample = ", ".join(sorted(corpus.external)[:5])
        warnings.warn(
            f"{len(corpus.external)} reference target(s) not in corpus, "
            f"flagged external (e.g. {sample})",
            ExternalReferenceWarning,
            stacklevel=2,
        )
    return corpus


def _record_from_obj(obj: dict) -> PaperRecord:
    if not isinstance(obj, dict):
        raise ValueError("record must be a JSON object")
    for key in ("id", "year", "authors"):
        if key not in obj:
            raise ValueError(f"missing field {key!r}")
    refs = obj.get("refs", [])
    if not isinstance(refs, list):
        raise ValueError("'refs' must be a list of [target, multiplicity] pairs")
    references = []
    for pair in refs:
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ValueError(f"bad reference pair {pair!r}")
        target, mult = pair
        if not isinstance(target, str) or not isinstance(mult, int):
            raise ValueError(f"bad reference pair {pair!r}")
        references.append((target, mult))
    if not isinstance(obj["year"], int):
        raise ValueError(f"year must be an integer, got {obj['year']!r}")
    if not isinstance(obj["authors"], list):
        raise ValueError("'authors' must be a list")
    return PaperRecord(
        id=str(obj["id"]),
        year=obj["year"],
        authors=tuple(str(a) for a in obj["authors"]),
        references=tuple(references),
        is_review=bool(obj.get("review", False)),
    )


def serialize_corpus(corpus: Corpus) -> str:
    """Corpus back to its line format, papers in corpus order."""
    lines = []
    for rec in corpus.papers.values():
        lines.append(
            json.dumps(
                {
                    "id": rec.id,
                    "year": rec.year,
                    "authors": list(rec.authors),
                    "refs": [[t, m] for t, m in rec.references],
                    "review": rec.is_review,
                },
                ensure_ascii=False,
            )
        )
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# citation report CSV
# --------------------------------------------------------------------------

def parse_citation_report(
    stream: Iterable[str] | IO[str], researcher: str = ""
) -> CitationReport:
    """Parse a citation-report CSV, preserving file order of the entries."""
    reader = csv.DictReader(stream)
    if reader.fieldnames is None:
        raise ReportFormatError("empty report file (missing header)")
    missing = [c for c in CITATION_REPORT_COLUMNS if c not in reader.fieldnames]
    if missing:
        raise ReportFormatError(f"missing column(s): {', '.join(missing)}")
    entries = []
    for rownum, row in enumerate(reader, 2):
        try:
            citations = int(row["citations"])
            year = int(row["year"])
        except (TypeError, ValueError) as exc:
            raise ReportFormatError(f"row {rownum}: unparsable integer") from exc
        if citations < 0:
            raise ReportFormatError(
                f"row {rownum}: negative citation count {citations}"
            )
        entries.append(
            ReportEntry(
                citing_id=row["citing_id"],
                citations=citations,
                is_self_citation=_parse_bool(row["self"], rownum, ReportFormatError),
                year=year,
            )
        )
    return CitationReport(researcher=researcher, entries=entries)


def serialize_citation_report(report: CitationReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CITATION_REPORT_COLUMNS)
    for e in report.entries:
        writer.writerow(
            [e.citing_id, e.citations, "true" if e.is_self_citation else "false", e.year]
        )
    return buf.getvalue()


def _parse_bool(cell: str, rownum: int, err: type) -> bool:
    if cell is None:
        raise err(f"row {rownum}: missing boolean cell")
    norm = cell.strip().lower()
    if norm == "true":
        return True
    if norm == "false":
        return False
    raise err(f"row {rownum}: expected true/false, got {cell!r}")


# --------------------------------------------------------------------------
# panel CSV
# --------------------------------------------------------------------------

def parse_panel(stream: Iterable[str] | IO[str]) -> list[PanelRow]:
    """Parse a panel CSV into rows, warning on inequality violations.

    ``?`` in the n/c/ca columns means unknown; checks involving an unknown
    value are skipped. Violations of h <= n or k <= ca raise
    :class:`PanelRowWarning`, never an error.
    """
    reader = csv.DictReader(stream)
    if reader.fieldnames is None:
        raise PanelFormatError("empty panel file (missing header)")
    missing = [c for c in PANEL_COLUMNS if c not in reader.fieldnames]
    if missing:
        raise PanelFormatError(f"missing column(s): {', '.join(missing)}")
    rows = []
    for rownum, row in enumerate(reader, 2):
        n = _panel_int(row["n"], "n", rownum, required=False)
        c = _panel_int(row["c"], "c", rownum, required=False)
        ca = _panel_int(row["ca"], "ca", rownum, required=False)
        h = _panel_int(row["h"], "h", rownum, required=True)
        k = _panel_int(row["k"], "k", rownum, required=True)
        parsed = PanelRow(
            name=row["name"],
            n=n,
            c=c,
            ca=ca,
            h=h,
            k=k,
            laureate=_parse_bool(row["laureate"], rownum, PanelFormatError),
        )
        _warn_panel_violations(parsed, rownum)
        rows.append(parsed)
    return rows


def _panel_int(cell, column: str, rownum: int, required: bool) -> Optional[int]:
    if cell is None:
        raise PanelFormatError(f"row {rownum}: missing cell in column {column!r}")
    cell = cell.strip()
    if cell in ("", PANEL_UNKNOWN):
        if required:
            raise PanelFormatError(f"row {rownum}: column {column!r} is required")
        return None
    try:
        value = int(cell)
    except ValueError as exc:
        raise PanelFormatError(
            f"row {rownum}: unparsable integer {cell!r} in column {column!r}"
        ) from exc
    return value


def _warn_panel_violations(row: PanelRow, rownum: int):
    problems = []
    if row.n is not None and row.h > row.n:
        problems.append(f"h={row.h} > n={row.n}")
    if row.ca is not None and row.k > row.ca:
        problems.append(f"k={row.k} > ca={row.ca}")
    for col in ("n", "c", "ca"):
        value = getattr(row, col)
        if value is not None and value < 0:
            problems.append(f"{col}={value} < 0")
    if row.h < 0 or row.k < 0:
        problems.append(f"negative index (h={row.h}, k={row.k})")
    if problems:
        warnings.warn(
            f"panel row {rownum} ({row.name!r}): {'; '.join(problems)}",
            PanelRowWarning,
            stacklevel=3,
        )


def serialize_panel(rows: Iterable[PanelRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(PANEL_COLUMNS)

    def cell(v: Optional[int]) -> str:
        return PANEL_UNKNOWN if v is None else str(v)

    for r in rows:
        writer.writerow(
            [r.name, cell(r.n), cell(r.c), cell(r.ca), r.h, r.k,
             "true" if r.laureate else "false"]
        )
    return buf.getvalue()
