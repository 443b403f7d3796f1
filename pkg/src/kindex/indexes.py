"""Scalar centrality indexes for one researcher.

The shared primitive is the Hirsch frontier: the largest r such that the
r-th largest value in a list is at least r. Applied to a researcher's own
papers' citation counts it gives h; applied to the citation counts of the
articles *citing* the researcher it gives the K-index, a second-layer
frontier that measures recognition by highly cited work rather than raw
volume. K is robust to self-citation padding because only already highly
cited citing articles can move it.

All operations are pure functions over immutable inputs and safe to run in
parallel across researchers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional

from .corpus import AuthorId, CitationReport, Corpus
from .networks import (
    DerivedNetworks,
    SparseMatrix,
    citation_report_from_corpus,
    macro_citation_network,
)

INDEX_REPORT_COLUMNS = [
    "researcher",
    "n_papers",
    "citations",
    "citations_no_self",
    "citations_per_paper",
    "citing_articles",
    "citing_articles_no_self",
    "h",
    "h_no_self",
    "k",
    "k_no_self",
    "lobby",
]


@dataclass
class IndexReport:
    """All scalar indexes for one researcher, with and without self-citations.

    ``lobby`` is only available in full-network mode (None otherwise); it is
    the macro-node lobby value, which coincides with k by construction.
    """

    researcher: str
    n_papers: int
    citations: int
    citations_no_self: int
    citations_per_paper: float
    citing_articles: int
    citing_articles_no_self: int
    h: int
    h_no_self: int
    k: int
    k_no_self: int
    lobby: Optional[int] = None

    def to_row(self) -> list:
        """CSV row matching INDEX_REPORT_COLUMNS."""
        return [
            self.researcher,
            self.n_papers,
            self.citations,
            self.citations_no_self,
            self.citations_per_paper,
            self.citing_articles,
            self.citing_articles_no_self,
            self.h,
            self.h_no_self,
            self.k,
            self.k_no_self,
            "" if self.lobby is None else self.lobby,
        ]

    def to_json(self) -> str:
        obj = {col: getattr(self, col) for col in INDEX_REPORT_COLUMNS}
        return json.dumps(obj, ensure_ascii=False)


def hirsch_frontier(counts: Iterable[int]) -> int:
    """Largest r with the r-th largest count >= r; 0 for an empty list.

    Permutation invariant, bounded by len(counts), and monotone: appending
    a value never decreases the result.
    """
    best = 0
    for rank, count in enumerate(sorted(counts, reverse=True), 1):
        if count >= rank:
            best = rank
        else:
            break
    return best


def k_index(report: CitationReport, exclude_self: bool = False) -> int:
    """Frontier over the citing articles' citation counts."""
    counts = [
        e.citations
        for e in report.entries
        if not (exclude_self and e.is_self_citation)
    ]
    return hirsch_frontier(counts)


def compute_indexes(
    nets: DerivedNetworks,
    corpus: Corpus,
    author: AuthorId,
    exclude_reviews: bool = False,
) -> IndexReport:
    """Every scalar index for one researcher from the full networks.

    ``exclude_reviews`` drops the researcher's review papers before any
    counting, as if they were not theirs. Raises UnknownAuthorError for an
    author absent from the corpus; an author whose filtered paper set is
    empty gets all zeros.
    """
    i = nets.author_row(author)
    pub_row = nets.publication.row(i)
    own = [
        k
        for k in pub_row
        if not (exclude_reviews and corpus.papers[nets.papers[k]].is_review)
    ]

    citations = 0
    citations_no_self = 0
    citer_counts = []
    citer_counts_no_self = []
    for k in own:
        weighted = nets.weighted_citation.row(k)
        citers = nets.citation.row(k)
        citations += sum(weighted.values())
        citations_no_self += sum(
            w for l, w in weighted.items() if nets.publication.get(i, l) == 0
        )
        citer_counts.append(len(citers))
        citer_counts_no_self.append(
            sum(1 for l in citers if nets.publication.get(i, l) == 0)
        )

    report = citation_report_from_corpus(nets, corpus, author, exclude_reviews)
    n = len(own)
    citing_rows = {nets.paper_index[e.citing_id] for e in report.entries}
    macro, macro_node = macro_citation_network(nets, author, citing_rows)

    return IndexReport(
        researcher=author,
        n_papers=n,
        citations=citations,
        citations_no_self=citations_no_self,
        citations_per_paper=citations / n if n else 0.0,
        citing_articles=len(report.entries),
        citing_articles_no_self=sum(
            1 for e in report.entries if not e.is_self_citation
        ),
        h=hirsch_frontier(citer_counts),
        h_no_self=hirsch_frontier(citer_counts_no_self),
        k=k_index(report),
        k_no_self=k_index(report, exclude_self=True),
        lobby=lobby_index(macro, macro_node),
    )


def k_proximal(
    nets: DerivedNetworks, corpus: Corpus, author: AuthorId, m: int, now: int
) -> int:
    """K restricted to the researcher's papers published after ``now - m``.

    The citing articles' own citation counts stay corpus-wide.
    """
    if m < 1:
        raise ValueError(f"window m must be >= 1, got {m}")
    i = nets.author_row(author)
    cutoff = now - m
    citing: set[int] = set()
    for k in nets.publication.row(i):
        if corpus.papers[nets.papers[k]].year > cutoff:
            citing.update(nets.citation.row(k))
    return hirsch_frontier([len(nets.citation.row(l)) for l in citing])


def k_recent(
    nets: DerivedNetworks, corpus: Corpus, author: AuthorId, y: int, now: int
) -> int:
    """K over citing articles published after ``now - y``, counts unwindowed."""
    if y < 1:
        raise ValueError(f"window y must be >= 1, got {y}")
    report = citation_report_from_corpus(nets, corpus, author)
    counts = [e.citations for e in report.entries if e.year > now - y]
    return hirsch_frontier(counts)


def k_group(
    nets: DerivedNetworks,
    corpus: Corpus,
    members: Iterable[AuthorId],
    exclude_self: bool = False,
) -> int:
    """Group K: members' papers collapse into one macro unit.

    A citing article is any paper citing at least one group paper, counted
    once. With ``exclude_self`` citing articles authored by any member are
    dropped, giving the group's K'.
    """
    member_rows = [nets.author_row(m) for m in members]
    if not member_rows:
        raise ValueError("empty member set")

    group_papers: set[int] = set()
    for i in member_rows:
        group_papers.update(nets.publication.row(i))
    citing: set[int] = set()
    for k in group_papers:
        citing.update(nets.citation.row(k))
    if exclude_self:
        citing = {
            l
            for l in citing
            if not any(nets.publication.get(i, l) for i in member_rows)
        }
    return hirsch_frontier([len(nets.citation.row(l)) for l in citing])


def lobby_index(adjacency: SparseMatrix, node: int) -> int:
    """Classic lobby value of a node in a directed binary network.

    Largest k such that the node has at least k in-neighbors whose own
    in-degree is at least k, with in-neighbors of n read off row n.
    Checked by exhaustive enumeration over candidate k.
    """
    if not 0 <= node < adjacency.nrows:
        raise IndexError(f"node {node} outside matrix of {adjacency.nrows} rows")
    degrees = [len(adjacency.row(l)) for l in adjacency.row(node)]
    best = 0
    for k in range(len(degrees) + 1):
        if sum(1 for d in degrees if d >= k) >= k:
            best = k
    return best
