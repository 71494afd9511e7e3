"""Canonical JSON interchange for pathway graphs.

Schema::

    {"species":   [{"id", "name", "normalized_name"?, "gene_signature": [...], "constituents": [...]}],
     "reactions": [{"id", "sbo_signature": [...]}],
     "edges":     [{"species", "reaction", "role"}]}

``role`` is one of ``reactant``, ``product``, ``modifier``. Output uses
sorted keys and sorted set members so equal graphs serialize to equal bytes.
"""

from __future__ import annotations

import json

from ..errors import GraphError, JsonMalformed, SchemaViolation
from ..model import Edge, EdgeRole, PathwayGraph, Reaction, Species, build_graph

_ROLES = {r.value for r in EdgeRole}


def graph_to_dict(g: PathwayGraph) -> dict:
    return {
        "species": [
            {
                "id": s.id,
                "name": s.name,
                "normalized_name": s.normalized_name,
                "gene_signature": sorted(s.gene_signature),
                "constituents": list(s.constituents),
            }
            for s in g.species.values()
        ],
        "reactions": [
            {"id": r.id, "sbo_signature": sorted(r.sbo_signature)} for r in g.reactions.values()
        ],
        "edges": [
            {"species": e.species, "reaction": e.reaction, "role": e.role.value} for e in g.edges
        ],
    }


def write_graph_json(g: PathwayGraph) -> str:
    return json.dumps(graph_to_dict(g), sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def _req(obj, key, kind, where):
    if not isinstance(obj, dict):
        raise SchemaViolation(f"{where}: expected an object")
    if key not in obj:
        raise SchemaViolation(f"{where}: missing key {key!r}")
    val = obj[key]
    if kind is str and not (isinstance(val, str) and val):
        raise SchemaViolation(f"{where}.{key}: expected a nonempty string")
    if kind is list and not (isinstance(val, list) and all(isinstance(v, str) for v in val)):
        raise SchemaViolation(f"{where}.{key}: expected a list of strings")
    return val


def graph_from_dict(doc) -> PathwayGraph:
    if not isinstance(doc, dict):
        raise SchemaViolation("top level must be an object")
    for key in ("species", "reactions", "edges"):
        if not isinstance(doc.get(key), list):
            raise SchemaViolation(f"top-level key {key!r} must be a list")

    species = []
    for i, s in enumerate(doc["species"]):
        where = f"species[{i}]"
        sid = _req(s, "id", str, where)
        name = s.get("name", sid)
        if not isinstance(name, str):
            raise SchemaViolation(f"{where}.name: expected a string")
        norm = s.get("normalized_name", "")
        if not isinstance(norm, str):
            raise SchemaViolation(f"{where}.normalized_name: expected a string")
        genes = _req(s, "gene_signature", list, where) if "gene_signature" in s else []
        parts = _req(s, "constituents", list, where) if "constituents" in s else []
        species.append(Species(sid, name, norm, frozenset(genes), tuple(parts)))

    reactions = []
    for i, r in enumerate(doc["reactions"]):
        where = f"reactions[{i}]"
        rid = _req(r, "id", str, where)
        sig = _req(r, "sbo_signature", list, where) if "sbo_signature" in r else []
        reactions.append(Reaction(rid, frozenset(sig)))

    edges = []
    for i, e in enumerate(doc["edges"]):
        where = f"edges[{i}]"
        role = _req(e, "role", str, where)
        if role not in _ROLES:
            raise SchemaViolation(f"{where}.role: {role!r} not in {sorted(_ROLES)}")
        edges.append(Edge(_req(e, "species", str, where), _req(e, "reaction", str, where), EdgeRole(role)))

    try:
        return build_graph(species, reactions, edges)
    except GraphError as exc:
        raise SchemaViolation(str(exc)) from exc


def parse_graph_json(text: str) -> PathwayGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise JsonMalformed(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return graph_from_dict(doc)
