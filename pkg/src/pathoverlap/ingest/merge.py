"""Disjoint union of pathway graphs."""

from __future__ import annotations

import dataclasses

from ..model import Edge, PathwayGraph, build_graph


def merge_graphs(gs, namespaces=None) -> PathwayGraph:
    """Union ``gs`` without unifying anything across documents.

    Ids are prefixed ``<ns>:`` where ``ns`` is the source index unless
    ``namespaces`` supplies one label per graph.
    """
    gs = list(gs)
    if namespaces is None:
        namespaces = [str(i) for i in range(len(gs))]
    species, reactions, edges = [], [], []
    for ns, g in zip(namespaces, gs, strict=True):
        def q(ident, ns=ns):
            return f"{ns}:{ident}"

        species.extend(
            dataclasses.replace(s, id=q(s.id), constituents=tuple(q(c) for c in s.constituents))
            for s in g.species.values()
        )
        reactions.extend(dataclasses.replace(r, id=q(r.id)) for r in g.reactions.values())
        edges.extend(Edge(q(e.species), q(e.reaction), e.role) for e in g.edges)
    return build_graph(species, reactions, edges)
