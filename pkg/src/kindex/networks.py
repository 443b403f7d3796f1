"""Sparse materializations of the author-paper networks.

Direction convention, used everywhere: in the citation matrices the row is
the *cited* paper and the column is the *citing* paper. ``cbar.get(k, l)``
is the number of times paper l cites paper k; the citers of paper l are
therefore the columns of row l.

Matrices are sparse maps because real citation networks are sparse. All
derived structures are immutable once built and safe for concurrent reads.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import IO, Iterator

from .corpus import AuthorId, CitationReport, Corpus, ReportEntry, UnknownAuthorError


class SparseMatrix:
    """Integer-weighted sparse matrix; absent entries are zero.

    Stored entries are strictly positive and dimensions are fixed at
    construction. Row-major storage so per-row access is cheap.
    """

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, nrows: int, ncols: int):
        self.nrows = nrows
        self.ncols = ncols
        self._rows: dict[int, dict[int, int]] = {}

    def _check(self, r: int, c: int):
        if not (0 <= r < self.nrows and 0 <= c < self.ncols):
            raise IndexError(f"({r}, {c}) outside {self.nrows}x{self.ncols}")

    def get(self, r: int, c: int) -> int:
        self._check(r, c)
        return self._rows.get(r, {}).get(c, 0)

    def add(self, r: int, c: int, weight: int = 1):
        """Accumulate a positive weight onto an entry."""
        self._check(r, c)
        if weight <= 0:
            raise ValueError(f"weight must be positive, got {weight}")
        row = self._rows.setdefault(r, {})
        row[c] = row.get(c, 0) + weight

    def row(self, r: int) -> dict[int, int]:
        """Column -> weight map for one row. Do not mutate."""
        if not 0 <= r < self.nrows:
            raise IndexError(f"row {r} outside {self.nrows}x{self.ncols}")
        return self._rows.get(r, {})

    def items(self) -> Iterator[tuple[int, int, int]]:
        for r, cols in self._rows.items():
            for c, w in cols.items():
                yield r, c, w

    @property
    def nnz(self) -> int:
        return sum(len(cols) for cols in self._rows.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (
            self.nrows == other.nrows
            and self.ncols == other.ncols
            and self._rows == other._rows
        )

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"


def theta(weighted: SparseMatrix) -> SparseMatrix:
    """Binarize: entry 1 wherever the input is positive. Idempotent."""
    binary = SparseMatrix(weighted.nrows, weighted.ncols)
    for r, c, _ in weighted.items():
        binary.add(r, c, 1)
    return binary


@dataclass
class DerivedNetworks:
    """All networks derivable from one corpus, on shared index maps.

    publication        authors x papers, binary
    weighted_citation  papers  x papers, row = cited, column = citing
    citation           binarized weighted_citation, zero diagonal
    collab_weighted    authors x authors, symmetric, zero diagonal
    collab             binarized collab_weighted
    citing_articles    authors x papers, binary; entry (i, l) = 1 when
                       paper l cites at least one paper of author i
    """

    authors: tuple[AuthorId, ...]
    papers: tuple[str, ...]
    author_index: dict[AuthorId, int]
    paper_index: dict[str, int]
    publication: SparseMatrix
    weighted_citation: SparseMatrix
    citation: SparseMatrix
    collab_weighted: SparseMatrix
    collab: SparseMatrix
    citing_articles: SparseMatrix

    def author_row(self, author: AuthorId) -> int:
        try:
            return self.author_index[author]
        except KeyError:
            raise UnknownAuthorError(author) from None


def build_networks(corpus: Corpus) -> DerivedNetworks:
    """Materialize every network from a validated corpus.

    External reference targets contribute to nothing. Entity ids are
    indexed in sorted order so the result is independent of input order.
    """
    authors = tuple(sorted(corpus.authors))
    papers = tuple(sorted(corpus.papers))
    a_idx = {a: i for i, a in enumerate(authors)}
    p_idx = {p: i for i, p in enumerate(papers)}
    na, np_ = len(authors), len(papers)

    publication = SparseMatrix(na, np_)
    cbar = SparseMatrix(np_, np_)
    collab_w = SparseMatrix(na, na)

    for rec in corpus.papers.values():
        k = p_idx[rec.id]
        for author in rec.authors:
            publication.add(a_idx[author], k, 1)
        for pos, first in enumerate(rec.authors):
            for second in rec.authors[pos + 1:]:
                collab_w.add(a_idx[first], a_idx[second], 1)
                collab_w.add(a_idx[second], a_idx[first], 1)
        l = k
        for target, mult in rec.references:
            if target in p_idx:
                cbar.add(p_idx[target], l, mult)

    citation = theta(cbar)

    # citing articles: binarized sum over the researcher's papers of their citers
    ca_sum = SparseMatrix(na, np_)
    for rec in corpus.papers.values():
        k = p_idx[rec.id]
        citers = citation.row(k)
        for author in rec.authors:
            i = a_idx[author]
            for l in citers:
                ca_sum.add(i, l, 1)
    citing = theta(ca_sum)

    return DerivedNetworks(
        authors=authors,
        papers=papers,
        author_index=a_idx,
        paper_index=p_idx,
        publication=publication,
        weighted_citation=cbar,
        citation=citation,
        collab_weighted=collab_w,
        collab=theta(collab_w),
        citing_articles=citing,
    )


def self_citation_mask(nets: DerivedNetworks, author: AuthorId) -> SparseMatrix:
    """Papers x papers mask: 1 where the author wrote both ends of a citation."""
    i = nets.author_row(author)
    own = set(nets.publication.row(i))
    mask = SparseMatrix(len(nets.papers), len(nets.papers))
    for k in own:
        for l in nets.citation.row(k):
            if l in own:
                mask.add(k, l, 1)
    return mask


def citation_report_from_corpus(
    nets: DerivedNetworks,
    corpus: Corpus,
    author: AuthorId,
    exclude_reviews: bool = False,
) -> CitationReport:
    """Ranked citing-article list for one researcher.

    Citations received by each citing article are its in-corpus distinct
    citers (corpus-relative; a partial corpus undercounts global totals).
    Entries are sorted by citations descending, ties by paper id ascending;
    the frontier value downstream does not depend on the tie order.
    """
    i = nets.author_row(author)
    own_rows = _own_paper_rows(nets, corpus, author, exclude_reviews)

    citing: set[int] = set()
    for k in own_rows:
        citing.update(nets.citation.row(k))

    entries = []
    for l in citing:
        paper_id = nets.papers[l]
        entries.append(
            ReportEntry(
                citing_id=paper_id,
                citations=len(nets.citation.row(l)),
                is_self_citation=nets.publication.get(i, l) == 1,
                year=corpus.papers[paper_id].year,
            )
        )
    entries.sort(key=lambda e: (-e.citations, e.citing_id))
    return CitationReport(researcher=author, entries=entries)


def _own_paper_rows(
    nets: DerivedNetworks, corpus: Corpus, author: AuthorId, exclude_reviews: bool
) -> set[int]:
    i = nets.author_row(author)
    rows = set(nets.publication.row(i))
    if exclude_reviews:
        rows = {k for k in rows if not corpus.papers[nets.papers[k]].is_review}
    return rows


def macro_citation_network(
    nets: DerivedNetworks, author: AuthorId, citing_rows: set[int] | None = None
) -> tuple[SparseMatrix, int]:
    """Collapse the researcher's papers into one macro node.

    Returns the augmented citation matrix plus the macro node's index. The
    macro node receives one incoming edge from every citing article
    (``citing_rows`` overrides the default full citing set); all
    paper-paper edges are kept so each citing article retains its full
    citation count as in-degree.
    """
    n = len(nets.papers)
    macro = SparseMatrix(n + 1, n + 1)
    for k, l, w in nets.citation.items():
        macro.add(k, l, w)
    if citing_rows is None:
        citing_rows = set(nets.citing_articles.row(nets.author_row(author)))
    for l in citing_rows:
        macro.add(n, l, 1)
    return macro, n


MATRIX_NAMES = ("P", "CBAR", "C", "ABAR", "A", "CA")


def dump_matrix(nets: DerivedNetworks, name: str, stream: IO[str]):
    """Write one matrix as ``row,col,weight`` CSV with entity-id labels."""
    try:
        matrix, row_labels, col_labels = {
            "P": (nets.publication, nets.authors, nets.papers),
            "CBAR": (nets.weighted_citation, nets.papers, nets.papers),
            "C": (nets.citation, nets.papers, nets.papers),
            "ABAR": (nets.collab_weighted, nets.authors, nets.authors),
            "A": (nets.collab, nets.authors, nets.authors),
            "CA": (nets.citing_articles, nets.authors, nets.papers),
        }[name.upper()]
    except KeyError:
        raise ValueError(
            f"unknown matrix {name!r}; expected one of {', '.join(MATRIX_NAMES)}"
        ) from None
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["row", "col", "weight"])
    for r, c, w in sorted(matrix.items()):
        writer.writerow([row_labels[r], col_labels[c], w])
