"""Network overlap: maximum common connected subgraph per candidate component.

Every connected component of the candidate graph (isolated species removed)
is matched independently against the whole reference graph. A match is an
injective, type-preserving map of candidate nodes onto reference nodes in
which every node pair is compatible under the :class:`MatchConfig`; a
candidate edge is matched when the images of its endpoints are joined by a
reference edge with the same role. Only matches whose matched edges form one
connected subgraph count, and a match needs at least one matched edge.
Matches are ranked by matched edges, then matched nodes, then the number of
node pairs that agree exactly (equal names or gene sets, equal reaction
signatures), which keeps the choice stable when a looser strategy admits
extra placements of equal size.

Components may hit the same reference region; recall counts the union of
covered reference nodes and edges.
"""

from __future__ import annotations

import dataclasses
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

from .errors import SizeLimitExceeded
from .matchers import (
    MatchConfig,
    NameMode,
    ReactionMatchMode,
    SignatureMode,
    reaction_match,
    similar_at,
    species_match,
)
from .model import Edge, PathwayGraph, build_graph, constituent_closure
from .stats import component_node_sets

EXACT_NODE_LIMIT = 64
DEFAULT_BUDGET = 10**6
BEAM_WIDTH = 8


@dataclass(frozen=True)
class ComponentMatch:
    node_pairs: frozenset = frozenset()  # (candidate id, reference id)
    edge_pairs: frozenset = frozenset()  # (candidate Edge, reference Edge)
    exact: bool = True
    quality: int = 0

    @property
    def score(self):
        return (len(self.edge_pairs), len(self.node_pairs))

    @property
    def key(self):
        return (len(self.edge_pairs), len(self.node_pairs), self.quality)


EMPTY_MATCH = ComponentMatch()


# -- graph helpers ---------------------------------------------------------


def connected_components(g: PathwayGraph) -> list:
    """Component subgraphs ordered by their smallest node id.

    Constituent references that leave the component are dropped from the
    copy so every subgraph validates on its own.
    """
    out = []
    for nodes in component_node_sets(g):
        out.append(_subgraph(g, nodes))
    return out


def _subgraph(g, nodes):
    species = []
    for sid in g.species:
        if sid in nodes:
            s = g.species[sid]
            if any(c not in nodes for c in s.constituents):
                s = dataclasses.replace(s, constituents=tuple(c for c in s.constituents if c in nodes))
            species.append(s)
    reactions = [r for rid, r in g.reactions.items() if rid in nodes]
    edges = [e for e in g.edges if e.reaction in nodes]
    return build_graph(species, reactions, edges)


def strip_isolated(g: PathwayGraph) -> PathwayGraph:
    """Drop degree-0 species (reactions always have edges)."""
    keep = {sid for sid in g.species if g.incidence[sid]}
    species = []
    for sid, s in g.species.items():
        if sid not in keep:
            continue
        if any(c not in keep for c in s.constituents):
            s = dataclasses.replace(s, constituents=tuple(c for c in s.constituents if c in keep))
        species.append(s)
    return build_graph(species, g.reactions.values(), g.edges)


# -- reference index -------------------------------------------------------


def _exact_pair(a, b):
    """Exact agreement of two species or two reactions (tie-break quality)."""
    if hasattr(a, "sbo_signature"):
        return a.sbo_signature == b.sbo_signature
    return a.normalized_name == b.normalized_name or (
        bool(a.gene_signature) and a.gene_signature == b.gene_signature
    )


class ReferenceIndex:
    """Lookup structures over the reference graph for one strategy."""

    def __init__(self, reference: PathwayGraph, cfg: MatchConfig, ontology=None):
        self.ref = reference
        self.cfg = cfg
        self.ontology = ontology
        mode = cfg.species

        self.by_name = defaultdict(set)
        self.by_len = defaultdict(set)
        self.by_sig = defaultdict(set)
        self.by_gene = defaultdict(set)
        for s in reference.species.values():
            self.by_name[s.normalized_name].add(s.id)
            self.by_len[len(s.normalized_name)].add(s.normalized_name)
            if s.gene_signature:
                self.by_sig[s.gene_signature].add(s.id)
                for gid in s.gene_signature:
                    self.by_gene[gid].add(s.id)

        # species X -> reference species whose constituent closure holds X
        self.containers = defaultdict(set)
        if mode.with_constituents:
            for sid in reference.species:
                for m in constituent_closure(reference, sid):
                    self.containers[m].add(sid)

        self.rx_by_sig = defaultdict(list)
        for r in reference.reactions.values():
            self.rx_by_sig[r.sbo_signature].append(r)
        if cfg.reaction is ReactionMatchMode.SBOISA and ontology is not None:
            # fail early on terms the ontology does not know
            for sig in self.rx_by_sig:
                for t in sig:
                    ontology.ancestors(t)

        self.roles = defaultdict(set)  # (species, reaction) -> roles
        self.adj = defaultdict(set)  # node -> neighbours
        for e in reference.edges:
            self.roles[(e.species, e.reaction)].add(e.role)
            self.adj[e.species].add(e.reaction)
            self.adj[e.reaction].add(e.species)
        self.roles = {k: frozenset(v) for k, v in self.roles.items()}
        self.adj = {k: tuple(sorted(v)) for k, v in self.adj.items()}

        self._sp_cache = {}
        self._rx_cache = {}

    def species_candidates(self, s) -> frozenset:
        key = (s.normalized_name, s.gene_signature)
        hit = self._sp_cache.get(key)
        if hit is not None:
            return hit
        mode = self.cfg.species
        direct = set()
        if mode.name_mode is NameMode.EXACT:
            direct |= self.by_name.get(s.normalized_name, set())
        elif mode.name_mode is NameMode.APPROXIMATE:
            name, cut = s.normalized_name, self.cfg.similarity_cutoff
            for ln, names in self.by_len.items():
                if cut and abs(ln - len(name)) > max(ln, len(name)) * (100 - cut) / 100:
                    continue
                for other in names:
                    if similar_at(name, other, cut):
                        direct |= self.by_name[other]
        if s.gene_signature:
            if mode.signature_mode is SignatureMode.EQUAL:
                direct |= self.by_sig.get(s.gene_signature, set())
            elif mode.signature_mode is SignatureMode.OVERLAP:
                for gid in s.gene_signature:
                    direct |= self.by_gene.get(gid, set())
        if mode.with_constituents:
            expanded = set()
            for x in direct:
                expanded |= self.containers[x]
            direct = expanded
        out = frozenset(direct)
        self._sp_cache[key] = out
        return out

    def reaction_candidates(self, r) -> frozenset:
        hit = self._rx_cache.get(r.sbo_signature)
        if hit is not None:
            return hit
        out = set()
        for sig, rxs in self.rx_by_sig.items():
            if reaction_match(r, rxs[0], self.cfg.reaction, self.ontology):
                out.update(x.id for x in rxs)
        out = frozenset(out)
        self._rx_cache[r.sbo_signature] = out
        return out


# -- component search ------------------------------------------------------


class _Budget(Exception):
    pass


class _Search:
    def __init__(self, graph: PathwayGraph, nodes, index: ReferenceIndex):
        self.g = graph
        self.idx = index
        ref = index.ref
        self.species = sorted(n for n in nodes if n in graph.species)
        self.reactions = sorted(n for n in nodes if n in graph.reactions)
        links = defaultdict(set)
        for n in self.reactions:
            for e in graph.incidence[n]:
                links[(e.species, e.reaction)].add(e.role)
        self.links = {k: frozenset(v) for k, v in sorted(links.items())}
        self.nbrs = defaultdict(list)
        for s, r in self.links:
            self.nbrs[s].append(r)
            self.nbrs[r].append(s)
        self.total_edges = sum(len(v) for v in self.links.values())

        self.cands = {}
        for s in self.species:
            self.cands[s] = index.species_candidates(graph.species[s])
        for r in self.reactions:
            self.cands[r] = index.reaction_candidates(graph.reactions[r])
        self.quality_cache = {}
        self.ref = ref

    def link_roles(self, a, b):
        return self.links.get((a, b)) or self.links.get((b, a)) or frozenset()

    def ref_roles(self, a, b):
        r = self.idx.roles
        return r.get((a, b)) or r.get((b, a)) or frozenset()

    def quality(self, v, w):
        key = (v, w)
        q = self.quality_cache.get(key)
        if q is None:
            if v in self.g.species:
                q = int(_exact_pair(self.g.species[v], self.ref.species[w]))
            else:
                q = int(_exact_pair(self.g.reactions[v], self.ref.reactions[w]))
            self.quality_cache[key] = q
        return q

    def gain(self, v, w, mapping, excluded):
        """Edges gained by mapping v->w, or None if an excluded link would match."""
        total = 0
        for u in self.nbrs[v]:
            mu = mapping.get(u)
            if mu is None:
                continue
            shared = len(self.link_roles(u, v) & self.ref_roles(mu, w))
            if shared and frozenset((u, v)) in excluded:
                return None
            total += shared
        return total

    def options(self, u, v, mapping, used, excluded):
        """Reference images for v that match at least one edge of link (u, v)."""
        mu = mapping[u]
        want = self.link_roles(u, v)
        out = []
        cands = self.cands[v]
        for w in self.idx.adj.get(mu, ()):
            if w in used or w not in cands:
                continue
            if not (want & self.ref_roles(mu, w)):
                continue
            gain = self.gain(v, w, mapping, excluded)
            if gain is None:
                continue
            out.append((w, gain))
        return out

    def anchors(self, dead):
        """(candidate reaction, reference reaction) pairs that can match an edge."""
        out = []
        for cr in self.reactions:
            if cr in dead:
                continue
            ok = set()
            for v in self.nbrs[cr]:
                if v in dead:
                    continue
                want = self.link_roles(v, cr)
                for w in self.cands[v]:
                    for rr in self.idx.adj.get(w, ()):
                        if rr in self.cands[cr] and want & self.ref_roles(w, rr):
                            ok.add(rr)
            out.append((cr, sorted(ok)))
        return out

    # exact ----------------------------------------------------------------

    def exact(self, budget):
        self.best = None
        self.best_key = (0, 0, 0)
        self.expanded = 0
        self.budget = budget
        dead_base = {n for n in self.cands if not self.cands[n]}
        for i, (cr, rrs) in enumerate(self.anchors(dead_base)):
            # matches using an earlier reaction were found from that anchor
            dead = dead_base | set(self.reactions[: self.reactions.index(cr)])
            for rr in rrs:
                mapping = {cr: rr}
                self._dfs(mapping, {rr}, set(), dead, 0, self.quality(cr, rr))
        return self.best

    def _upper(self, mapping, excluded, dead, edges, q):
        extra_e = 0
        for (s, r), roles in self.links.items():
            if s in dead or r in dead:
                continue
            if s in mapping and r in mapping:
                continue
            if frozenset((s, r)) in excluded:
                continue
            extra_e += len(roles)
        open_nodes = sum(1 for n in self.cands if n not in mapping and n not in dead)
        return (edges + extra_e, len(mapping) + open_nodes, q + open_nodes)

    def _frontier(self, mapping, excluded, dead):
        for (s, r) in self.links:
            if (s in mapping) == (r in mapping):
                continue
            u, v = (s, r) if s in mapping else (r, s)
            if v in dead or frozenset((s, r)) in excluded:
                continue
            return u, v
        return None

    def _record(self, mapping, edges, q):
        key = (edges, len(mapping), q)
        if edges > 0 and key > self.best_key:
            self.best_key = key
            self.best = dict(mapping)

    def _dfs(self, mapping, used, excluded, dead, edges, q):
        self.expanded += 1
        if self.expanded > self.budget:
            raise _Budget
        if self._upper(mapping, excluded, dead, edges, q) <= self.best_key:
            return
        nxt = self._frontier(mapping, excluded, dead)
        if nxt is None:
            self._record(mapping, edges, q)
            return
        u, v = nxt
        for w, gain in self.options(u, v, mapping, used, excluded):
            mapping[v] = w
            used.add(w)
            self._dfs(mapping, used, excluded, dead, edges + gain, q + self.quality(v, w))
            used.discard(w)
            del mapping[v]
        link = frozenset((u, v))
        excluded.add(link)
        self._dfs(mapping, used, excluded, dead, edges, q)
        excluded.discard(link)

    # beam -----------------------------------------------------------------

    def beam(self, width=BEAM_WIDTH):
        dead = {n for n in self.cands if not self.cands[n]}
        seeds = []
        for cr, rrs in self.anchors(dead):
            for rr in rrs:
                h = 0
                for v in self.nbrs[cr]:
                    want = self.link_roles(v, cr)
                    if any(want & self.ref_roles(w, rr) for w in self.cands[v]):
                        h += 1
                seeds.append((-h, self.reactions.index(cr), rr, cr))
        seeds.sort()
        states = []
        for _, _, rr, cr in seeds[:width]:
            states.append(({cr: rr}, 0, self.quality(cr, rr)))
        best, best_key = None, (0, 0, 0)
        while states:
            children = {}
            for mapping, edges, q in states:
                used = set(mapping.values())
                for (s, r) in self.links:
                    if (s in mapping) == (r in mapping):
                        continue
                    u, v = (s, r) if s in mapping else (r, s)
                    if v in dead:
                        continue
                    for w, gain in self.options(u, v, mapping, used, frozenset()):
                        child = dict(mapping)
                        child[v] = w
                        sig = frozenset(child.items())
                        if sig not in children:
                            children[sig] = (child, edges + gain, q + self.quality(v, w))
            ranked = sorted(
                children.values(),
                key=lambda st: (-st[1], -len(st[0]), -st[2], sorted(st[0].items())),
            )
            states = ranked[:width]
            for mapping, edges, q in states[:1]:
                key = (edges, len(mapping), q)
                if edges > 0 and key > best_key:
                    best, best_key = dict(mapping), key
        return best

    def to_match(self, mapping, exact):
        if not mapping:
            return ComponentMatch(exact=exact)
        pairs = frozenset(mapping.items())
        edge_pairs = set()
        for (s, r), roles in self.links.items():
            if s in mapping and r in mapping:
                for role in roles & self.ref_roles(mapping[s], mapping[r]):
                    edge_pairs.add((Edge(s, r, role), Edge(mapping[s], mapping[r], role)))
        q = sum(self.quality(v, w) for v, w in mapping.items())
        return ComponentMatch(pairs, frozenset(edge_pairs), exact, q)


def _match_nodes(graph, nodes, index, budget=DEFAULT_BUDGET):
    search = _Search(graph, nodes, index)
    if not search.links:
        return EMPTY_MATCH
    if len(nodes) <= EXACT_NODE_LIMIT:
        try:
            return search.to_match(search.exact(budget), True)
        except _Budget:
            found = search.best
    else:
        found = None
    approx = search.beam()
    if found is not None and (approx is None or _key_of(search, found) >= _key_of(search, approx)):
        approx = found
    return search.to_match(approx, False)


def _key_of(search, mapping):
    return search.to_match(mapping, False).key


def max_overlap(component: PathwayGraph, reference: PathwayGraph, cfg: MatchConfig, o=None, budget=DEFAULT_BUDGET, index=None) -> ComponentMatch:
    """Best connected match of ``component`` into ``reference``."""
    index = index or ReferenceIndex(reference, cfg, o)
    nodes = set(component.species) | set(component.reactions)
    return _match_nodes(component, nodes, index, budget)


def brute_force_overlap(component: PathwayGraph, reference: PathwayGraph, cfg: MatchConfig, o=None) -> ComponentMatch:
    """Enumerate every injective typed map; for checking :func:`max_overlap` on small inputs."""
    if component.node_count > 8 or reference.node_count > 12:
        raise SizeLimitExceeded(
            f"brute force limited to 8 candidate / 12 reference nodes, got "
            f"{component.node_count} / {reference.node_count}"
        )
    cnodes = sorted(component.species) + sorted(component.reactions)
    choices = []
    for n in cnodes:
        if n in component.species:
            cs = component.species[n]
            opts = [w for w in sorted(reference.species) if species_match(cs, reference.species[w], reference, cfg)]
        else:
            cr = component.reactions[n]
            opts = [w for w in sorted(reference.reactions) if reaction_match(cr, reference.reactions[w], cfg.reaction, o)]
        choices.append([None] + opts)

    ref_edges = reference.edge_set
    best, best_score = {}, (0, 0)
    for combo in product(*choices):
        images = [w for w in combo if w is not None]
        if len(images) != len(set(images)):
            continue
        mapping = {n: w for n, w in zip(cnodes, combo) if w is not None}
        matched = [
            e for e in component.edges
            if e.species in mapping and e.reaction in mapping
            and Edge(mapping[e.species], mapping[e.reaction], e.role) in ref_edges
        ]
        if not matched:
            continue
        for comp_edges in _edge_components(matched):
            nodes = {e.species for e in comp_edges} | {e.reaction for e in comp_edges}
            score = (len(comp_edges), len(nodes))
            if score > best_score:
                best_score = score
                best = {n: mapping[n] for n in nodes}
    pairs = frozenset(best.items())
    edge_pairs = frozenset(
        (e, Edge(best[e.species], best[e.reaction], e.role))
        for e in component.edges
        if e.species in best and e.reaction in best
        and Edge(best[e.species], best[e.reaction], e.role) in ref_edges
    )
    return ComponentMatch(pairs, edge_pairs, True)


def _edge_components(edges):
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        parent[find(e.species)] = find(e.reaction)
    groups = defaultdict(list)
    for e in edges:
        groups[find(e.reaction)].append(e)
    return list(groups.values())


# -- whole-network report --------------------------------------------------


@dataclass
class OverlapReport:
    label: str
    node_precision: float
    node_recall: float
    edge_precision: float
    edge_recall: float
    candidate_nodes: int
    candidate_edges: int
    reference_nodes: int
    reference_edges: int
    matched_nodes: int
    matched_edges: int
    covered_nodes: int
    covered_edges: int
    by_kind: dict = field(default_factory=dict)
    matches: list = field(default_factory=list)  # (component node ids, ComponentMatch)

    @property
    def approximate_components(self):
        return sum(1 for _, m in self.matches if not m.exact)

    @property
    def exact_components(self):
        return len(self.matches) - self.approximate_components


def _pct(a, b):
    return 100.0 * a / b if b else 0.0


_WORKER = {}


def _worker_init(candidate, reference, cfg, o, budget):
    _WORKER.update(
        candidate=candidate, index=ReferenceIndex(reference, cfg, o), budget=budget
    )


def _worker_run(chunk):
    g, idx, budget = _WORKER["candidate"], _WORKER["index"], _WORKER["budget"]
    return [_match_nodes(g, nodes, idx, budget) for nodes in chunk]


def network_overlap(
    candidate: PathwayGraph,
    reference: PathwayGraph,
    cfg: MatchConfig,
    o=None,
    budget=DEFAULT_BUDGET,
    workers: int = 1,
    index: ReferenceIndex | None = None,
) -> OverlapReport:
    cand = strip_isolated(candidate)
    comps = component_node_sets(cand)
    if workers > 1 and len(comps) > 1:
        step = max(1, len(comps) // (workers * 4))
        chunks = [comps[i:i + step] for i in range(0, len(comps), step)]
        with ProcessPoolExecutor(workers, initializer=_worker_init, initargs=(cand, reference, cfg, o, budget)) as pool:
            results = [m for part in pool.map(_worker_run, chunks) for m in part]
    else:
        index = index or ReferenceIndex(reference, cfg, o)
        results = [_match_nodes(cand, nodes, index, budget) for nodes in comps]

    matched_nodes = set()
    matched_edges = set()
    covered_nodes = set()
    covered_edges = set()
    for m in results:
        for c, r in m.node_pairs:
            matched_nodes.add(c)
            covered_nodes.add(r)
        for ce, re_ in m.edge_pairs:
            matched_edges.add(ce)
            covered_edges.add(re_)

    by_kind = {
        "species_precision": _pct(sum(1 for n in matched_nodes if n in cand.species), len(cand.species)),
        "species_recall": _pct(sum(1 for n in covered_nodes if n in reference.species), len(reference.species)),
        "reaction_precision": _pct(sum(1 for n in matched_nodes if n in cand.reactions), len(cand.reactions)),
        "reaction_recall": _pct(sum(1 for n in covered_nodes if n in reference.reactions), len(reference.reactions)),
    }
    return OverlapReport(
        label=cfg.label,
        node_precision=_pct(len(matched_nodes), cand.node_count),
        node_recall=_pct(len(covered_nodes), reference.node_count),
        edge_precision=_pct(len(matched_edges), len(cand.edges)),
        edge_recall=_pct(len(covered_edges), len(reference.edges)),
        candidate_nodes=cand.node_count,
        candidate_edges=len(cand.edges),
        reference_nodes=reference.node_count,
        reference_edges=len(reference.edges),
        matched_nodes=len(matched_nodes),
        matched_edges=len(matched_edges),
        covered_nodes=len(covered_nodes),
        covered_edges=len(covered_edges),
        by_kind=by_kind,
        matches=list(zip(comps, results)),
    )
