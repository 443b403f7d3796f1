"""Synthetic citation corpora with controllable properties.

Papers are generated in year order and only reference earlier papers, which
sidesteps citation cycles the same way real publication order does. Targets
are drawn by preferential attachment on in-degree, optionally biased toward
the citing paper's own authors to model self-citation habits. Everything is
driven by one seed: the same config always yields a byte-identical corpus.

The generator exists to make robustness claims testable, e.g. that padding
a record with self-citations moves the citing-article count far more than
it moves the K-index.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass

from .corpus import AuthorId, Corpus, PaperRecord


@dataclass(frozen=True)
class SynthConfig:
    papers: int
    authors: int
    year_span: int = 10
    attachment_exponent: float = 1.0
    refs_per_paper: float = 3.0
    self_cite_rate: float = 0.1
    seed: int = 0
    start_year: int = 2000
    max_coauthors: int = 3

    def __post_init__(self):
        if self.papers < 1 or self.authors < 1:
            raise ValueError("paper and author counts must be positive")
        if self.year_span < 1:
            raise ValueError("year span must be positive")
        if not 0.0 <= self.self_cite_rate <= 1.0:
            raise ValueError("self_cite_rate must be in [0, 1]")
        if self.refs_per_paper < 0:
            raise ValueError("refs_per_paper must be non-negative")


def _poisson(rng: random.Random, lam: float) -> int:
    # Knuth's method; fine for the small means used here
    if lam <= 0:
        return 0
    threshold = math.exp(-lam)
    k = 0
    p = 1.0
    while True:
        p *= rng.random()
        if p <= threshold:
            return k
        k += 1


def generate(config: SynthConfig) -> Corpus:
    """Build a corpus from a config, deterministically.

    Reference counts are Poisson around the configured mean, clamped (with
    a warning) when a paper requests more targets than exist before it.
    """
    rng = random.Random(config.seed)
    author_pool = [f"a{j:04d}" for j in range(config.authors)]
    paper_authors: list[tuple[AuthorId, ...]] = []
    papers_by_author: dict[AuthorId, list[int]] = {a: [] for a in author_pool}
    in_degree = [0] * config.papers
    records: list[PaperRecord] = []
    clamped = 0

    for i in range(config.papers):
        year = config.start_year + (i * config.year_span) // config.papers
        team_size = rng.randint(1, min(config.max_coauthors, config.authors))
        team = tuple(rng.sample(author_pool, team_size))
        paper_authors.append(team)

        wanted = _poisson(rng, config.refs_per_paper)
        if wanted > i:
            clamped += wanted - i
            wanted = i
        refs: dict[int, int] = {}
        for _ in range(wanted):
            target = _pick_target(rng, config, i, team, papers_by_author, in_degree)
            if target is None:
                continue
            refs[target] = refs.get(target, 0) + 1
            # occasional repeat citation of the same target
            if rng.random() < 0.15:
                refs[target] += 1
        for target in refs:
            in_degree[target] += 1

        records.append(
            PaperRecord(
                id=f"p{i:05d}",
                year=year,
                authors=team,
                references=tuple(
                    (f"p{t:05d}", mult) for t, mult in sorted(refs.items())
                ),
                is_review=rng.random() < 0.05,
            )
        )
        for a in team:
            papers_by_author[a].append(i)

    if clamped:
        warnings.warn(
            f"clamped {clamped} reference(s): more requested than prior papers",
            UserWarning,
            stacklevel=2,
        )
    return Corpus.from_records(records)


def _pick_target(rng, config, i, team, papers_by_author, in_degree):
    if i == 0:
        return None
    if rng.random() < config.self_cite_rate:
        own_prior = sorted({p for a in team for p in papers_by_author[a] if p < i})
        if own_prior:
            return rng.choice(own_prior)
    weights = [
        (in_degree[j] + 1.0) ** config.attachment_exponent for j in range(i)
    ]
    return rng.choices(range(i), weights=weights, k=1)[0]


def inject_self_citations(
    corpus: Corpus, author: AuthorId, count: int, seed: int = 0
) -> Corpus:
    """Return a corpus with ``count`` extra references among the author's papers.

    Each injection goes from one of the author's later papers to an earlier
    one (repeats bump the multiplicity), so the author's total citations
    grow by exactly ``count`` while the set of non-self citing articles is
    untouched. Requires the author to have at least two papers.
    """
    if count < 0:
        raise ValueError("count must be non-negative")
    own = sorted(corpus.papers_of(author), key=lambda p: (p.year, p.id))
    if len(own) < 2:
        raise ValueError(f"author {author!r} has fewer than 2 papers")
    if count == 0:
        return corpus

    rng = random.Random(seed)
    added: dict[str, dict[str, int]] = {}
    for _ in range(count):
        later = rng.randrange(1, len(own))
        earlier = rng.randrange(0, later)
        citer, target = own[later].id, own[earlier].id
        added.setdefault(citer, {})
        added[citer][target] = added[citer].get(target, 0) + 1

    records = []
    for rec in corpus.papers.values():
        extra = added.get(rec.id)
        if not extra:
            records.append(rec)
            continue
        merged = dict(rec.references)
        for target, bump in extra.items():
            merged[target] = merged.get(target, 0) + bump
        records.append(
            PaperRecord(
                id=rec.id,
                year=rec.year,
                authors=rec.authors,
                references=tuple(sorted(merged.items())),
                is_review=rec.is_review,
            )
        )
    return Corpus.from_records(records)
