"""Subfield visibility inside and across journals.

Windowed impact factors, entropy-based subfield diversity and the citation
success index, computed over a corpus of papers tagged with PACS codes.
"""
from .diversity import WeightMode, WeightVector, subfield_weights, true_diversity
from .ingest import Policy, ValidationReport, load_corpus, write_corpus
from .metrics import (
    CitationDistribution,
    Dispersion,
    ImpactFactorPoint,
    citation_distribution,
    dispersion,
    impact_factor,
)
from .model import CitationEdge, Corpus, GroupSelector, Paper, YearRange, resolve_group
from .pacs import PacsCode, SubfieldKey, parse_pacs, subfield_key
from .pipeline import (
    PairwiseMatrix,
    RelevanceConfig,
    diversity_series,
    inter_journal_matrix,
    intra_journal_matrix,
    journal_comparison_series,
    journal_vs_journal,
    pairwise_matrix,
    relevant_subfields,
    subfield_if_dispersion,
    subfield_if_series,
)
from .success import (
    K_EXPONENT,
    Method,
    Orientation,
    SuccessResult,
    oriented_max,
    success_exact,
    success_from_if,
    success_simplified,
)
from .synth import SynthConfig, generate, write_synth

__version__ = "0.1.0"

__all__ = [
    "K_EXPONENT",
    "CitationDistribution",
    "CitationEdge",
    "Corpus",
    "Dispersion",
    "GroupSelector",
    "ImpactFactorPoint",
    "Method",
    "Orientation",
    "PacsCode",
    "PairwiseMatrix",
    "Paper",
    "Policy",
    "RelevanceConfig",
    "SubfieldKey",
    "SuccessResult",
    "SynthConfig",
    "ValidationReport",
    "WeightMode",
    "WeightVector",
    "YearRange",
    "citation_distribution",
    "dispersion",
    "diversity_series",
    "generate",
    "impact_factor",
    "inter_journal_matrix",
    "intra_journal_matrix",
    "journal_comparison_series",
    "journal_vs_journal",
    "load_corpus",
    "oriented_max",
    "pairwise_matrix",
    "parse_pacs",
    "relevant_subfields",
    "resolve_group",
    "subfield_if_dispersion",
    "subfield_if_series",
    "subfield_key",
    "subfield_weights",
    "success_exact",
    "success_from_if",
    "success_simplified",
    "true_diversity",
    "write_corpus",
    "write_synth",
]
