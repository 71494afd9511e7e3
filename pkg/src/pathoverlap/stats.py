"""Dataset-level statistics and unique-item overlap metrics.

Percentages are kept at full precision; rounding happens when reports are
written.
"""

from __future__ import annotations

import statistics
from collections import Counter, defaultdict
from dataclasses import dataclass

from .annotate.normalize import DEFAULT_CONFIG, NormalizationConfig, normalize_name
from .matchers import (
    MatchConfig,
    NameMode,
    ReactionMatchMode,
    SignatureMode,
    reaction_match,
    similar_at,
)
from .model import PathwayGraph, Reaction, constituent_closure


@dataclass(frozen=True)
class PrecisionRecall:
    precision: float
    recall: float

    @property
    def fscore(self):
        return fscore(self.precision, self.recall)

    def rounded(self):
        return round(self.precision, 2), round(self.recall, 2), round(self.fscore, 2)


def fscore(p: float, r: float) -> float:
    if p + r == 0:
        return 0.0
    return 2 * p * r / (p + r)


def _pct(part, whole):
    return 100.0 * part / whole if whole else 0.0


# -- species ---------------------------------------------------------------


@dataclass(frozen=True)
class NameCounts:
    species: int
    names: int
    approximate_names: int
    gene_signatures: int


def approximate_clusters(names, cutoff: int) -> list:
    """Single-link clusters of ``names`` at the similarity cutoff.

    Seeds are taken in lexicographic order; each cluster absorbs every name
    reachable through pairs at or above the cutoff.
    """
    pending = sorted(set(names))
    by_len = defaultdict(list)
    for n in pending:
        by_len[len(n)].append(n)
    unassigned = set(pending)
    clusters = []
    for seed in pending:
        if seed not in unassigned:
            continue
        unassigned.discard(seed)
        cluster = [seed]
        todo = [seed]
        while todo:
            cur = todo.pop()
            for ln, group in by_len.items():
                # similarity >= cutoff bounds the length difference
                if (100 - cutoff) * max(ln, len(cur)) < 100 * abs(ln - len(cur)):
                    continue
                for other in group:
                    if other in unassigned and similar_at(cur, other, cutoff):
                        unassigned.discard(other)
                        cluster.append(other)
                        todo.append(other)
        clusters.append(sorted(cluster))
    return clusters


def unique_name_counts(g: PathwayGraph, cfg: NormalizationConfig = DEFAULT_CONFIG, cutoff: int = 90) -> NameCounts:
    names = {normalize_name(s.name, cfg) for s in g.species.values()}
    sigs = {s.gene_signature for s in g.species.values() if s.gene_signature}
    return NameCounts(len(g.species), len(names), len(approximate_clusters(names, cutoff)), len(sigs))


@dataclass(frozen=True)
class _Item:
    name: str
    genes: frozenset
    # (name, genes) keys of the item plus, with wc, of every nested constituent
    expansion: frozenset


def _species_items(g: PathwayGraph, cfg: MatchConfig, expand: bool):
    mode = cfg.species
    use_name = mode.name_mode is not NameMode.OFF
    use_sig = mode.signature_mode is not SignatureMode.OFF
    grouped = defaultdict(set)
    for s in g.species.values():
        if use_name and not use_sig:
            key = (s.normalized_name, frozenset())
        elif use_sig and not use_name:
            if not s.gene_signature:
                continue
            key = ("", s.gene_signature)
        else:
            key = (s.normalized_name, s.gene_signature)
        if expand and mode.with_constituents:
            for m in constituent_closure(g, s.id):
                ms = g.species[m]
                grouped[key].add((ms.normalized_name, ms.gene_signature))
        grouped[key].add((s.normalized_name, s.gene_signature))
    return [_Item(k[0], k[1], frozenset(v)) for k, v in sorted(grouped.items(), key=lambda kv: (kv[0][0], sorted(kv[0][1])))]


def _key_match(cname, cgenes, rname, rgenes, cfg: MatchConfig):
    mode = cfg.species
    if mode.name_mode is NameMode.EXACT and cname and cname == rname:
        return True
    if mode.name_mode is NameMode.APPROXIMATE and cname and rname and similar_at(cname, rname, cfg.similarity_cutoff):
        return True
    if cgenes and rgenes:
        if mode.signature_mode is SignatureMode.EQUAL and cgenes == rgenes:
            return True
        if mode.signature_mode is SignatureMode.OVERLAP and cgenes & rgenes:
            return True
    return False


def _overlap(cand_items, ref_items, match):
    hit_c = set()
    hit_r = set()
    for i, c in enumerate(cand_items):
        for j, r in enumerate(ref_items):
            if (i in hit_c and j in hit_r) or not match(c, r):
                continue
            hit_c.add(i)
            hit_r.add(j)
    return PrecisionRecall(_pct(len(hit_c), len(cand_items)), _pct(len(hit_r), len(ref_items)))


def unique_species_overlap(cand: PathwayGraph, ref: PathwayGraph, cfg: MatchConfig) -> PrecisionRecall:
    """Precision/recall over unique species items (names, signatures or both per ``cfg``)."""
    citems = _species_items(cand, cfg, expand=False)
    ritems = _species_items(ref, cfg, expand=True)

    def match(c, r):
        return any(_key_match(c.name, c.genes, n, gs, cfg) for n, gs in r.expansion)

    return _overlap(citems, ritems, match)


def unique_signature_overlap(cand: PathwayGraph, ref: PathwayGraph, mode: ReactionMatchMode, o=None) -> PrecisionRecall:
    def sigs(g):
        return sorted({r.sbo_signature for r in g.reactions.values() if r.sbo_signature}, key=sorted)

    cs = [Reaction("c", s) for s in sigs(cand)]
    rs = [Reaction("r", s) for s in sigs(ref)]
    return _overlap(cs, rs, lambda a, b: reaction_match(a, b, mode, o))


# -- reactions -------------------------------------------------------------


def reaction_type_histogram(g: PathwayGraph, o) -> dict:
    """Count each reaction under its most specific signature terms."""
    counts = Counter()
    for r in g.reactions.values():
        for t in o.most_specific(r.sbo_signature):
            counts[t] += 1
    return dict(sorted(counts.items()))


# -- complexes and connectivity --------------------------------------------


@dataclass(frozen=True)
class ComplexStats:
    complex_count: int
    total_constituents: int
    nested_complex_count: int


def complex_stats(g: PathwayGraph) -> ComplexStats:
    complexes = [s for s in g.species.values() if s.constituents]
    inside = {c for s in complexes for c in s.constituents}
    nested = sum(1 for s in complexes if s.id in inside)
    return ComplexStats(len(complexes), sum(len(s.constituents) for s in complexes), nested)


@dataclass(frozen=True)
class ConnectivityStats:
    isolated_network_count: int
    isolated_species_count: int
    component_sizes: tuple

    @property
    def component_count(self):
        return len(self.component_sizes)

    @property
    def min(self):
        return min(self.component_sizes, default=0)

    @property
    def max(self):
        return max(self.component_sizes, default=0)

    @property
    def mean(self):
        return statistics.fmean(self.component_sizes) if self.component_sizes else 0.0

    @property
    def median(self):
        return float(statistics.median(self.component_sizes)) if self.component_sizes else 0.0


def component_node_sets(g: PathwayGraph) -> list:
    """Node sets of the connected components, ordered by smallest node id."""
    seen = set()
    comps = []
    for start in sorted(list(g.species) + list(g.reactions)):
        if start in seen:
            continue
        seen.add(start)
        comp = [start]
        stack = [start]
        while stack:
            node = stack.pop()
            for e in g.incidence[node]:
                other = e.reaction if e.species == node else e.species
                if other not in seen:
                    seen.add(other)
                    comp.append(other)
                    stack.append(other)
        comps.append(frozenset(comp))
    return comps


def connectivity_stats(g: PathwayGraph) -> ConnectivityStats:
    sizes = tuple(sorted((len(c) for c in component_node_sets(g)), reverse=True))
    singles = sum(1 for n in sizes if n == 1)
    return ConnectivityStats(len(sizes) - singles, singles, sizes)
