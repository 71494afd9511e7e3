"""Turn standoff events into a pathway graph.

Every non-trigger entity becomes a species, so mentions that take part in no
event survive as isolated species. Each event becomes one reaction, except a
regulation whose theme is another event: its cause is attached as a modifier
of the regulated reaction instead.

Conversion classes, keyed by event kind:

    modification  Theme -> Reactant, synthesized product "<token><theme name>"
    binding       Theme* -> Reactant, synthesized complex product
    relocation    Theme -> Reactant, synthesized relocated product
    expression    Theme -> Product
    degradation   Theme -> Reactant
    regulation    Cause -> Modifier of the regulated reaction, or a standalone
                  reaction with Theme -> Product when the theme is an entity
    generic       Theme -> Reactant

In every class Cause arguments become modifiers and explicit Product
arguments become products. Site and location arguments are dropped.
"""

from __future__ import annotations

from importlib import resources

from ..errors import BadLine, UnmappedTrigger
from ..model import Edge, EdgeRole, PathwayGraph, Reaction, Species, build_graph
from .standoff import EventSet, event_order, role_base

MODIFICATION_TOKENS = {
    "Phosphorylation": "p-",
    "Dephosphorylation": "dep-",
    "Ubiquitination": "ub-",
    "Deubiquitination": "deub-",
    "Acetylation": "ac-",
    "Deacetylation": "deac-",
    "Methylation": "me-",
    "Demethylation": "deme-",
    "Hydroxylation": "oh-",
    "Dehydroxylation": "deoh-",
    "Glycosylation": "gly-",
    "Deglycosylation": "degly-",
}
RELOCATION_TOKENS = {"Localization": "loc-", "Transport": "tr-", "Translocation": "tr-"}
EXPRESSION = {"Gene_expression", "Transcription", "Translation"}
DEGRADATION = {"Protein_catabolism", "Degradation", "Dissociation"}
BINDING = {"Binding"}
REGULATION = {
    "Regulation",
    "Positive_regulation",
    "Negative_regulation",
    "Activation",
    "Inactivation",
}

_DROPPED_ROLES = {"Site", "CSite", "Location", "AtLoc", "ToLoc", "FromLoc", "Contextgene", "Sidechain"}


def load_trigger_map(text: str, source: str = "") -> dict:
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = [c.strip() for c in line.split("\t")]
        if len(cols) != 2 or not all(cols):
            raise BadLine(lineno, line, "expected kind<TAB>term", source)
        out[cols[0]] = cols[1]
    return out


def default_trigger_map() -> dict:
    text = resources.files("pathoverlap.data").joinpath("trigger_map.tsv").read_text("utf-8")
    return load_trigger_map(text, "trigger_map.tsv")


class _Builder:
    def __init__(self):
        self.species = {}
        self.reactions = {}
        self.signatures = {}
        self.edges = []
        self.seen = set()

    def add_species(self, sid, name, constituents=()):
        if sid not in self.species:
            self.species[sid] = Species(sid, name, constituents=tuple(constituents))
        return sid

    def add_edge(self, sid, rid, role, warnings):
        e = Edge(sid, rid, role)
        if e in self.seen:
            warnings.append(f"duplicate {role.value} {sid} on {rid} dropped")
            return
        self.seen.add(e)
        self.edges.append(e)

    def graph(self):
        touched = {e.reaction for e in self.edges}
        reactions = [Reaction(r, self.signatures[r]) for r in self.reactions if r in touched]
        return build_graph(self.species.values(), reactions, self.edges)


def events_to_graph(es: EventSet, trigger_map: dict | None = None, warnings: list | None = None) -> PathwayGraph:
    """Convert one document's events; non-fatal issues are appended to ``warnings``."""
    if trigger_map is None:
        trigger_map = default_trigger_map()
    if warnings is None:
        warnings = []
    for ev in es.events:
        if ev.trigger_kind not in trigger_map:
            raise UnmappedTrigger(ev.trigger_kind)

    entities = es._entities
    triggers = {ev.trigger_entity for ev in es.events}
    b = _Builder()
    for ent in es.entities:
        if ent.id not in triggers:
            b.add_species(ent.id, ent.surface or ent.id)

    output = {}  # event id -> species standing for the event's result
    reaction_of = {}  # event id -> reaction id that carries the event

    def resolve(target):
        if target in entities:
            return b.add_species(target, entities[target].surface or target)
        return output.get(target)

    for ev in event_order(es):
        kind = ev.trigger_kind
        term = trigger_map[kind]
        for role, _ in ev.arguments:
            if role_base(role) in _DROPPED_ROLES:
                warnings.append(f"{ev.id}: {role} argument dropped")

        themes = [t for t in ev.args("Theme", "Participant") if resolve(t) is not None]
        causes = [c for c in ev.args("Cause") if resolve(c) is not None]
        products = [p for p in ev.args("Product") if resolve(p) is not None]
        theme_ids = [resolve(t) for t in themes]

        if kind in REGULATION and themes and themes[0] in reaction_of:
            inner = themes[0]
            rid = reaction_of[inner]
            for c in causes:
                b.add_edge(resolve(c), rid, EdgeRole.MODIFIER, warnings)
            if not causes:
                warnings.append(f"{ev.id}: regulation without cause has no effect")
            reaction_of[ev.id] = rid
            output[ev.id] = output.get(inner)
            continue

        rid = ev.id
        before = len(b.edges)
        b.reactions[rid] = True
        b.signatures[rid] = frozenset({term})
        result = None

        if kind in REGULATION or kind in EXPRESSION:
            for sid in theme_ids:
                b.add_edge(sid, rid, EdgeRole.PRODUCT, warnings)
            result = theme_ids[0] if theme_ids else None
        elif kind in BINDING:
            for sid in theme_ids:
                b.add_edge(sid, rid, EdgeRole.REACTANT, warnings)
            parts = list(dict.fromkeys(theme_ids))
            if len(parts) >= 2:
                name = ":".join(b.species[s].name for s in parts)
                result = b.add_species(f"{ev.id}.complex", name, parts)
                b.add_edge(result, rid, EdgeRole.PRODUCT, warnings)
            elif parts:
                result = parts[0]
        else:
            for sid in theme_ids:
                b.add_edge(sid, rid, EdgeRole.REACTANT, warnings)
            token = MODIFICATION_TOKENS.get(kind) or RELOCATION_TOKENS.get(kind)
            if token and theme_ids and not products:
                base = b.species[theme_ids[0]].name
                result = b.add_species(f"{ev.id}.product", token + base)
                b.add_edge(result, rid, EdgeRole.PRODUCT, warnings)
            elif theme_ids and kind not in DEGRADATION:
                result = theme_ids[0]

        for p in products:
            sid = resolve(p)
            b.add_edge(sid, rid, EdgeRole.PRODUCT, warnings)
            result = result if result is not None else sid
        for c in causes:
            b.add_edge(resolve(c), rid, EdgeRole.MODIFIER, warnings)

        if len(b.edges) == before:
            warnings.append(f"{ev.id}: no resolvable participants, event dropped")
            del b.reactions[rid]
            continue
        reaction_of[ev.id] = rid
        output[ev.id] = result if result is not None else (theme_ids[0] if theme_ids else None)

    if es.modifiers:
        warnings.append(f"{len(es.modifiers)} speculation/negation modifiers ignored")
    return b.graph()
