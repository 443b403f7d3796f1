import io
import statistics

import pytest

import oracles
from conftest import make_corpus, synth_corpus
from kindex.corpus import parse_corpus, serialize_corpus
from kindex.indexes import compute_indexes
from kindex.networks import build_networks
from kindex.synth import SynthConfig, generate, inject_self_citations


def test_single_paper_corpus():
    corpus = synth_corpus(seed=1, papers=1, authors=3)
    assert len(corpus.papers) == 1
    (record,) = corpus.papers.values()
    assert record.references == ()


def test_same_seed_same_bytes():
    a = serialize_corpus(synth_corpus(seed=42, papers=50, authors=8))
    b = serialize_corpus(synth_corpus(seed=42, papers=50, authors=8))
    assert a == b


def test_different_seeds_differ():
    a = serialize_corpus(synth_corpus(seed=1, papers=50, authors=8))
    b = serialize_corpus(synth_corpus(seed=2, papers=50, authors=8))
    assert a != b


def test_generated_corpus_reparses():
    corpus = synth_corpus(seed=7, papers=40, authors=6)
    assert parse_corpus(io.StringIO(serialize_corpus(corpus))) == corpus


def test_config_validation():
    with pytest.raises(ValueError):
        SynthConfig(papers=0, authors=3)
    with pytest.raises(ValueError):
        SynthConfig(papers=3, authors=3, self_cite_rate=1.5)


def test_clamping_warns():
    config = SynthConfig(papers=3, authors=2, refs_per_paper=20.0, seed=0)
    with pytest.warns(UserWarning, match="clamped"):
        generate(config)


def test_papers_ordered_by_year_and_references_point_backward():
    for seed in range(5):
        corpus = synth_corpus(seed=seed, papers=80, authors=10, year_span=12)
        years = [p.year for p in corpus.papers.values()]
        assert years == sorted(years)
        for p in corpus.papers.values():
            for target, _ in p.references:
                assert corpus.papers[target].year <= p.year


def test_heavy_tailed_in_degree():
    corpus = synth_corpus(
        seed=3, papers=1000, authors=120, attachment_exponent=1.0,
        refs_per_paper=4.0,
    )
    citers = oracles.citer_map(corpus)
    degrees = sorted(len(c) for c in citers.values())
    median = statistics.median(degrees)
    assert max(degrees) >= 10 * max(median, 1)


def test_self_cite_rate_moves_self_share():
    def self_share(rate, seed=5):
        corpus = synth_corpus(
            seed=seed, papers=150, authors=20, self_cite_rate=rate
        )
        self_refs = 0
        total = 0
        for p in corpus.papers.values():
            for target, _ in p.references:
                total += 1
                if set(p.authors) & set(corpus.papers[target].authors):
                    self_refs += 1
        return self_refs / total

    low = self_share(0.0)
    high = self_share(0.6)
    assert high > low + 0.2
    assert high > 0.4


# --------------------------------------------------------------------------
# self-citation injection
# --------------------------------------------------------------------------

def _author_with_most_papers(corpus):
    return max(
        sorted(corpus.authors),
        key=lambda a: sum(1 for p in corpus.papers.values() if a in p.authors),
    )


def test_inject_zero_is_identity():
    corpus = synth_corpus(seed=8, papers=30, authors=5)
    author = _author_with_most_papers(corpus)
    assert inject_self_citations(corpus, author, 0) == corpus


def test_inject_single_paper_author_errors():
    corpus = make_corpus([
        ("A", 2020, ["solo"], []),
        ("B", 2020, ["other", "x"], []),
    ])
    with pytest.raises(ValueError, match="fewer than 2"):
        inject_self_citations(corpus, "solo", 3)


def test_injection_is_deterministic():
    corpus = synth_corpus(seed=8, papers=30, authors=5)
    author = _author_with_most_papers(corpus)
    a = inject_self_citations(corpus, author, 7, seed=3)
    b = inject_self_citations(corpus, author, 7, seed=3)
    assert serialize_corpus(a) == serialize_corpus(b)
    c = inject_self_citations(corpus, author, 7, seed=4)
    assert serialize_corpus(a) != serialize_corpus(c)


def test_injection_raises_c_by_count_and_leaves_k_prime():
    for seed in range(6):
        corpus = synth_corpus(seed=seed, papers=60, authors=8)
        author = _author_with_most_papers(corpus)
        before = compute_indexes(build_networks(corpus), corpus, author)
        count = 9
        mutated = inject_self_citations(corpus, author, count, seed=seed)
        after = compute_indexes(build_networks(mutated), mutated, author)
        assert after.citations == before.citations + count
        assert after.k_no_self == before.k_no_self
        assert after.citing_articles >= before.citing_articles


def test_injection_temporal_consistency():
    corpus = synth_corpus(seed=2, papers=50, authors=6)
    author = _author_with_most_papers(corpus)
    mutated = inject_self_citations(corpus, author, 12, seed=1)
    for p in mutated.papers.values():
        for target, _ in p.references:
            assert mutated.papers[target].year <= p.year


def test_manipulation_asymmetry():
    """Padding with self-citations moves CA far more than it moves K."""
    rel_k = []
    rel_ca = []
    trials = 0
    seed = 0
    while trials < 30:
        seed += 1
        corpus = synth_corpus(seed=seed, papers=70, authors=9,
                              self_cite_rate=0.05)
        author = _author_with_most_papers(corpus)
        before = compute_indexes(build_networks(corpus), corpus, author)
        if before.k < 1 or before.citing_articles < 1:
            continue
        mutated = inject_self_citations(corpus, author, 10, seed=seed)
        after = compute_indexes(build_networks(mutated), mutated, author)
        assert after.k_no_self == before.k_no_self
        rel_k.append((after.k - before.k) / before.k)
        rel_ca.append((after.citing_articles - before.citing_articles)
                      / before.citing_articles)
        trials += 1
    assert statistics.median(rel_k) <= statistics.median(rel_ca)
