"""Citation-network analytics: author-paper networks and frontier indexes."""

from .analysis import (
    FraudIndicators,
    PanelIndex,
    PrizeCurve,
    Quadrant,
    QuadrantLabel,
    RankedPanel,
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
from .corpus import (
    AuthorId,
    CitationReport,
    Corpus,
    CorpusFormatError,
    ExternalReferenceWarning,
    PanelFormatError,
    PanelRow,
    PanelRowWarning,
    PaperRecord,
    ReportEntry,
    ReportFormatError,
    UnknownAuthorError,
    parse_citation_report,
    parse_corpus,
    parse_panel,
    serialize_citation_report,
    serialize_corpus,
    serialize_panel,
)
from .indexes import (
    IndexReport,
    compute_indexes,
    hirsch_frontier,
    k_group,
    k_index,
    k_proximal,
    k_recent,
    lobby_index,
)
from .networks import (
    DerivedNetworks,
    SparseMatrix,
    build_networks,
    citation_report_from_corpus,
    dump_matrix,
    macro_citation_network,
    self_citation_mask,
    theta,
)
from .synth import SynthConfig, generate, inject_self_citations

__version__ = "0.1.0"

__all__ = [
    "AuthorId",
    "CitationReport",
    "Corpus",
    "CorpusFormatError",
    "DerivedNetworks",
    "ExternalReferenceWarning",
    "FraudIndicators",
    "IndexReport",
    "PanelFormatError",
    "PanelIndex",
    "PanelRow",
    "PanelRowWarning",
    "PaperRecord",
    "PrizeCurve",
    "Quadrant",
    "QuadrantLabel",
    "RankedPanel",
    "ReportEntry",
    "ReportFormatError",
    "SparseMatrix",
    "SynthConfig",
    "UnknownAuthorError",
    "build_networks",
    "citation_report_from_corpus",
    "classify_quadrant",
    "coefficient_of_variation",
    "compute_indexes",
    "cv_from_summary",
    "default_thresholds",
    "dump_matrix",
    "fraud_indicators",
    "generate",
    "hirsch_frontier",
    "inject_self_citations",
    "k_group",
    "k_index",
    "k_proximal",
    "k_recent",
    "linear_fit",
    "lobby_index",
    "macro_citation_network",
    "paper_panel",
    "parse_citation_report",
    "parse_corpus",
    "parse_panel",
    "pearson",
    "prize_curve",
    "rank_panel",
    "self_citation_mask",
    "serialize_citation_report",
    "serialize_corpus",
    "serialize_panel",
    "theta",
]
