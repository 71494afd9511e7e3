"""Pathway graph data model.

A pathway is a bipartite graph: species nodes on one side, reaction nodes on
the other, joined by edges that carry a role (reactant, product, modifier).
Complex species list their constituents directly; nesting is resolved on
demand by :func:`constituent_closure`.

Graphs are immutable once built. Transformations return new graphs.
"""

from __future__ import annotations

import dataclasses
import enum
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType

from .errors import (
    ConstituentCycle,
    DanglingConstituent,
    DanglingEdge,
    DuplicateEdge,
    DuplicateId,
    IsolatedReaction,
    UnknownSpecies,
)


class EdgeRole(str, enum.Enum):
    REACTANT = "reactant"
    PRODUCT = "product"
    MODIFIER = "modifier"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Species:
    id: str
    name: str
    normalized_name: str = ""
    gene_signature: frozenset = frozenset()
    constituents: tuple = ()

    def __post_init__(self):
        # accept any iterable from callers, store canonical immutable forms
        if not isinstance(self.gene_signature, frozenset):
            object.__setattr__(self, "gene_signature", frozenset(self.gene_signature))
        if not isinstance(self.constituents, tuple):
            object.__setattr__(self, "constituents", tuple(self.constituents))

    @property
    def is_complex(self):
        return bool(self.constituents)


@dataclass(frozen=True)
class Reaction:
    id: str
    sbo_signature: frozenset = frozenset()

    def __post_init__(self):
        if not isinstance(self.sbo_signature, frozenset):
            object.__setattr__(self, "sbo_signature", frozenset(self.sbo_signature))


@dataclass(frozen=True, order=True)
class Edge:
    species: str
    reaction: str
    role: EdgeRole

    def __post_init__(self):
        if not isinstance(self.role, EdgeRole):
            object.__setattr__(self, "role", EdgeRole(self.role))


@dataclass(frozen=True, eq=False)
class PathwayGraph:
    """Validated, immutable pathway graph. Build instances with :func:`build_graph`."""

    species: Mapping[str, Species] = field(default_factory=dict)
    reactions: Mapping[str, Reaction] = field(default_factory=dict)
    edges: tuple = ()

    def __eq__(self, other):
        if not isinstance(other, PathwayGraph):
            return NotImplemented
        return (
            dict(self.species) == dict(other.species)
            and dict(self.reactions) == dict(other.reactions)
            and frozenset(self.edges) == frozenset(other.edges)
        )

    __hash__ = None

    def __repr__(self):
        return (
            f"PathwayGraph(species={len(self.species)}, "
            f"reactions={len(self.reactions)}, edges={len(self.edges)})"
        )

    @property
    def node_count(self):
        return len(self.species) + len(self.reactions)

    def is_species(self, node_id):
        return node_id in self.species

    @cached_property
    def incidence(self) -> Mapping[str, tuple]:
        """node id -> tuple of incident edges, for species and reactions alike."""
        inc = {n: [] for n in self.species}
        inc.update((r, []) for r in self.reactions)
        for e in self.edges:
            inc[e.species].append(e)
            inc[e.reaction].append(e)
        return MappingProxyType({k: tuple(v) for k, v in inc.items()})

    def degree(self, node_id):
        return len(self.incidence[node_id])

    def neighbors(self, node_id):
        out = []
        for e in self.incidence[node_id]:
            other = e.reaction if e.species == node_id else e.species
            if other not in out:
                out.append(other)
        return out

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def replace(self, species=None, reactions=None, edges=None) -> PathwayGraph:
        """Rebuild with some parts swapped out; the result is validated again."""
        return build_graph(
            self.species.values() if species is None else species,
            self.reactions.values() if reactions is None else reactions,
            self.edges if edges is None else edges,
        )


def _coerce_edge(e):
    if isinstance(e, Edge):
        return e
    if isinstance(e, Mapping):
        return Edge(e["species"], e["reaction"], EdgeRole(e["role"]))
    s, r, role = e
    return Edge(s, r, EdgeRole(role))


def build_graph(
    species: Iterable[Species],
    reactions: Iterable[Reaction],
    edges: Iterable,
) -> PathwayGraph:
    """Validate the records and assemble a :class:`PathwayGraph`.

    Species without a normalized name get one from the default
    normalization profile. Edges may be :class:`Edge` objects or
    ``(species, reaction, role)`` triples.

    Raises DuplicateId, DuplicateEdge, DanglingEdge, DanglingConstituent,
    IsolatedReaction or ConstituentCycle.
    """
    from .annotate.normalize import normalize_name

    sp: dict[str, Species] = {}
    for s in species:
        if not s.id:
            raise DuplicateId(s.id, "empty species")
        if s.id in sp:
            raise DuplicateId(s.id, "species")
        if not s.normalized_name:
            s = dataclasses.replace(s, normalized_name=normalize_name(s.name or s.id))
        sp[s.id] = s

    rx: dict[str, Reaction] = {}
    for r in reactions:
        if not r.id:
            raise DuplicateId(r.id, "empty reaction")
        if r.id in rx:
            raise DuplicateId(r.id, "reaction")
        if r.id in sp:
            raise DuplicateId(r.id, "node")
        rx[r.id] = r

    seen = set()
    edge_list = []
    for raw in edges:
        e = _coerce_edge(raw)
        if e.species not in sp:
            raise DanglingEdge(e.species, e)
        if e.reaction not in rx:
            raise DanglingEdge(e.reaction, e)
        if e in seen:
            raise DuplicateEdge(e)
        seen.add(e)
        edge_list.append(e)

    touched = {e.reaction for e in edge_list}
    for rid in rx:
        if rid not in touched:
            raise IsolatedReaction(rid)

    for s in sp.values():
        for c in s.constituents:
            if c == s.id:
                raise ConstituentCycle(s.id)
            if c not in sp:
                raise DanglingConstituent(s.id, c)
    _check_containment_acyclic(sp)

    return PathwayGraph(MappingProxyType(sp), MappingProxyType(rx), tuple(edge_list))


def _check_containment_acyclic(sp):
    WHITE, GREY, BLACK = 0, 1, 2
    colour = dict.fromkeys(sp, WHITE)
    for root in sp:
        if colour[root] != WHITE or not sp[root].constituents:
            continue
        colour[root] = GREY
        stack = [(root, iter(sp[root].constituents))]
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                colour[node] = BLACK
                stack.pop()
            elif colour[nxt] == GREY:
                raise ConstituentCycle(nxt)
            elif colour[nxt] == WHITE:
                colour[nxt] = GREY
                stack.append((nxt, iter(sp[nxt].constituents)))


def constituent_closure(g: PathwayGraph, s: str) -> frozenset:
    """``s`` plus every directly or transitively nested constituent."""
    if s not in g.species:
        raise UnknownSpecies(s)
    seen = {s}
    todo = [s]
    while todo:
        for c in g.species[todo.pop()].constituents:
            if c not in seen:
                seen.add(c)
                todo.append(c)
    return frozenset(seen)


def empty_graph() -> PathwayGraph:
    return PathwayGraph(MappingProxyType({}), MappingProxyType({}), ())
