"""Offline gene-identifier assignment from a name lexicon.

Lexicon TSV: ``name<TAB>id[,id...]``. Repeated names accumulate ids.
Keys are case-folded and whitespace-collapsed at load time; species are
looked up by their normalized name, whole string only.
"""

from __future__ import annotations

import dataclasses
from collections import defaultdict
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Protocol

from ..errors import BadLine
from ..model import PathwayGraph, build_graph


def _key(name: str) -> str:
    return " ".join(name.casefold().split())


@dataclass(frozen=True, eq=False)
class GeneLexicon:
    entries: Mapping[str, frozenset]

    def lookup(self, normalized_name: str) -> frozenset:
        return self.entries.get(_key(normalized_name), frozenset())

    def __len__(self):
        return len(self.entries)

    @classmethod
    def from_mapping(cls, mapping):
        return cls(MappingProxyType({_key(k): frozenset(map(str, v)) for k, v in mapping.items()}))


class GeneNormalizer(Protocol):
    """Hook for a remote normalization service; anything with ``lookup`` fits."""

    def lookup(self, normalized_name: str) -> frozenset: ...


def load_lexicon(text: str, source: str = "") -> GeneLexicon:
    acc = defaultdict(set)
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 2 or not cols[0].strip():
            raise BadLine(lineno, line, "expected name<TAB>id[,id...]", source)
        ids = [i.strip() for i in cols[1].split(",") if i.strip()]
        if not ids:
            raise BadLine(lineno, line, "no identifiers", source)
        acc[_key(cols[0])].update(ids)
    return GeneLexicon(MappingProxyType({k: frozenset(v) for k, v in acc.items()}))


def assign_gene_signatures(g: PathwayGraph, lex: GeneNormalizer) -> PathwayGraph:
    species = [
        dataclasses.replace(s, gene_signature=lex.lookup(s.normalized_name))
        for s in g.species.values()
    ]
    return build_graph(species, g.reactions.values(), g.edges)


def gene_signature_coverage(g: PathwayGraph) -> float:
    """Percentage of species carrying a nonempty gene signature (0 for no species)."""
    if not g.species:
        return 0.0
    covered = sum(1 for s in g.species.values() if s.gene_signature)
    return 100.0 * covered / len(g.species)
