from .genes import GeneLexicon, assign_gene_signatures, gene_signature_coverage, load_lexicon
from .normalize import (
    DEFAULT_CONFIG,
    DEFAULT_PREFIXES,
    NormalizationConfig,
    normalize_name,
    normalize_species_names,
)
from .ontology import SboOntology, ancestors, default_ontology, load_ontology
from .reactions import DEFAULT_RULES, Rule, infer_reaction_types

__all__ = [
    "DEFAULT_CONFIG",
    "DEFAULT_PREFIXES",
    "DEFAULT_RULES",
    "GeneLexicon",
    "NormalizationConfig",
    "Rule",
    "SboOntology",
    "ancestors",
    "assign_gene_signatures",
    "default_ontology",
    "gene_signature_coverage",
    "infer_reaction_types",
    "load_lexicon",
    "load_ontology",
    "normalize_name",
    "normalize_species_names",
]
