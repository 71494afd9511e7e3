"""Reader and writer for a plain SBML subset.

Only the elements below are read; everything else (compartments, kinetic
laws, CellDesigner extensions) is ignored. Namespaces are ignored too, so
Level 2 and Level 3 documents both load.

    sbml/model/listOfSpecies/species(@id, @name)
        annotation/constituents   "id,id,..."
        annotation/genes          "id,id,..."      (optional)
    sbml/model/listOfReactions/reaction(@id, @sboTerm)
        annotation/terms          "SBO:...,GO:..." (optional extra terms)
        listOfReactants/speciesReference(@species)
        listOfProducts/speciesReference(@species)
        listOfModifiers/modifierSpeciesReference(@species)
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET

from ..model import Edge, EdgeRole, PathwayGraph, Reaction, Species, build_graph
from ..errors import MissingId, UnresolvedSpeciesReference, XmlMalformed

SBML_NS = "http://www.sbml.org/sbml/level2/version4"

_REF_LISTS = (
    ("listOfReactants", "speciesReference", EdgeRole.REACTANT),
    ("listOfProducts", "speciesReference", EdgeRole.PRODUCT),
    ("listOfModifiers", "modifierSpeciesReference", EdgeRole.MODIFIER),
)


def _local(tag):
    return tag.rsplit("}", 1)[-1]


def _child(elem, name):
    for c in elem:
        if _local(c.tag) == name:
            return c
    return None


def _children(elem, name):
    if elem is None:
        return []
    return [c for c in elem if _local(c.tag) == name]


def _csv_text(elem):
    if elem is None or not elem.text:
        return []
    return [t.strip() for t in elem.text.split(",") if t.strip()]


def sbo_term(value: str) -> str:
    """Canonical ``SBO:0000216`` form for ``216``, ``0000216`` or ``SBO:216``."""
    v = value.strip()
    m = re.fullmatch(r"(?:SBO:)?(\d+)", v, flags=re.IGNORECASE)
    if m:
        return f"SBO:{int(m.group(1)):07d}"
    return v


def parse_sbml(text: str) -> PathwayGraph:
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise XmlMalformed(str(exc)) from exc

    model = root if _local(root.tag) == "model" else _child(root, "model")
    if model is None:
        raise XmlMalformed("no <model> element")

    species = []
    declared = set()
    for el in _children(_child(model, "listOfSpecies"), "species"):
        sid = el.get("id")
        if not sid:
            raise MissingId("species")
        ann = _child(el, "annotation")
        parts = _csv_text(_child(ann, "constituents")) if ann is not None else []
        genes = _csv_text(_child(ann, "genes")) if ann is not None else []
        species.append(Species(sid, el.get("name") or sid, "", frozenset(genes), tuple(parts)))
        declared.add(sid)

    reactions = []
    edges = []
    seen = set()
    for el in _children(_child(model, "listOfReactions"), "reaction"):
        rid = el.get("id")
        if not rid:
            raise MissingId("reaction")
        terms = set()
        if el.get("sboTerm"):
            terms.add(sbo_term(el.get("sboTerm")))
        ann = _child(el, "annotation")
        if ann is not None:
            terms.update(sbo_term(t) for t in _csv_text(_child(ann, "terms")))
        reactions.append(Reaction(rid, frozenset(terms)))
        for list_name, ref_name, role in _REF_LISTS:
            holder = _child(el, list_name)
            if holder is None:
                continue
            for ref in _children(holder, ref_name):
                target = ref.get("species")
                if not target:
                    raise MissingId(ref_name)
                if target not in declared:
                    raise UnresolvedSpeciesReference(target)
                e = Edge(target, rid, role)
                if e not in seen:  # stoichiometry is not modelled
                    seen.add(e)
                    edges.append(e)

    return build_graph(species, reactions, edges)


def write_sbml(g: PathwayGraph, model_id: str = "pathway") -> str:
    root = ET.Element("sbml", {"xmlns": SBML_NS, "level": "2", "version": "4"})
    model = ET.SubElement(root, "model", {"id": model_id})
    los = ET.SubElement(model, "listOfSpecies")
    for s in g.species.values():
        el = ET.SubElement(los, "species", {"id": s.id, "name": s.name})
        if s.constituents or s.gene_signature:
            ann = ET.SubElement(el, "annotation")
            if s.constituents:
                ET.SubElement(ann, "constituents").text = ",".join(s.constituents)
            if s.gene_signature:
                ET.SubElement(ann, "genes").text = ",".join(sorted(s.gene_signature))

    by_reaction = {r: [] for r in g.reactions}
    for e in g.edges:
        by_reaction[e.reaction].append(e)
    lor = ET.SubElement(model, "listOfReactions")
    for r in g.reactions.values():
        terms = sorted(r.sbo_signature)
        sbo = [t for t in terms if t.startswith("SBO:")]
        attrs = {"id": r.id}
        if sbo:
            attrs["sboTerm"] = sbo[0]
        el = ET.SubElement(lor, "reaction", attrs)
        rest = [t for t in terms if t != attrs.get("sboTerm")]
        if rest:
            ET.SubElement(ET.SubElement(el, "annotation"), "terms").text = ",".join(rest)
        for list_name, ref_name, role in _REF_LISTS:
            refs = [e for e in by_reaction[r.id] if e.role is role]
            if refs:
                holder = ET.SubElement(el, list_name)
                for e in refs:
                    ET.SubElement(holder, ref_name, {"species": e.species})
    ET.indent(root)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"
