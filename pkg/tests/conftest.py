import warnings

import pytest
from hypothesis import strategies as st

from kindex.corpus import Corpus, PaperRecord
from kindex.synth import SynthConfig, generate


def make_corpus(specs) -> Corpus:
    """Build a corpus from (id, year, authors, refs[, review]) tuples."""
    records = []
    for spec in specs:
        pid, year, authors, refs = spec[:4]
        review = spec[4] if len(spec) > 4 else False
        records.append(
            PaperRecord(
                id=pid,
                year=year,
                authors=tuple(authors),
                references=tuple(refs),
                is_review=review,
            )
        )
    return Corpus.from_records(records)


def synth_corpus(seed: int, papers: int = 60, authors: int = 10, **kwargs) -> Corpus:
    config = SynthConfig(papers=papers, authors=authors, seed=seed, **kwargs)
    with warnings.catch_warnings():
        # the first few papers of any corpus clamp their reference draws
        warnings.simplefilter("ignore", UserWarning)
        return generate(config)


@st.composite
def corpora(draw, max_papers: int = 12, max_authors: int = 5,
            allow_external: bool = False) -> Corpus:
    """Arbitrary valid corpora; reference graphs may contain cycles."""
    n = draw(st.integers(1, max_papers))
    n_authors = draw(st.integers(1, max_authors))
    pool = [f"a{j}" for j in range(n_authors)]
    records = []
    for i in range(n):
        team = draw(
            st.lists(st.sampled_from(pool), min_size=1,
                     max_size=min(3, n_authors), unique=True)
        )
        candidates = [f"p{j}" for j in range(n) if j != i]
        if allow_external:
            candidates += ["ext0", "ext1"]
        refs = {}
        if candidates:
            targets = draw(
                st.lists(st.sampled_from(candidates), max_size=5, unique=True)
            )
            for t in targets:
                refs[t] = draw(st.integers(1, 3))
        records.append(
            PaperRecord(
                id=f"p{i}",
                year=2000 + draw(st.integers(0, 10)),
                authors=tuple(team),
                references=tuple(sorted(refs.items())),
                is_review=draw(st.booleans()),
            )
        )
    return Corpus.from_records(records)


@pytest.fixture
def two_paper_corpus() -> Corpus:
    return make_corpus([
        ("A", 2020, ["x"], []),
        ("B", 2021, ["y"], [("A", 1)]),
    ])
