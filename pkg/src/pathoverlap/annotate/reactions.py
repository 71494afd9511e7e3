"""Rule-based reaction typing from reactant and product species."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Callable, Sequence

from ..model import EdgeRole, PathwayGraph, build_graph

CONVERSION = "SBO:0000182"
ASSOCIATION = "SBO:0000177"
DISSOCIATION = "SBO:0000180"

# state token -> (modification term, reverse modification term or None)
STATE_TOKENS = {
    "p-": ("SBO:0000216", "SBO:0000330"),
    "ub-": ("SBO:0000224", "GO:0016579"),
    "ac-": ("SBO:0000215", "GO:0006476"),
    "me-": ("SBO:0000214", "GO:0006482"),
    "oh-": ("SBO:0000233", None),
}

# spelled-out forms seen in curated maps
STATE_SYNONYMS = {
    "phospho-": "p-",
    "phosphorylated ": "p-",
    "ubiquitinated ": "ub-",
    "acetylated ": "ac-",
    "methylated ": "me-",
    "hydroxylated ": "oh-",
}


@dataclass(frozen=True)
class Rule:
    name: str
    term: str
    applies: Callable[[list, list, list], bool]


def _fold(s):
    return " ".join(s.name.casefold().split())


def _adds_state(tokens):
    def check(reactants, products, modifiers):
        for p in products:
            pn = _fold(p)
            for r in reactants:
                rn = _fold(r)
                if any(pn == t + rn for t in tokens):
                    return True
        return False

    return check


def _removes_state(tokens):
    def check(reactants, products, modifiers):
        return _adds_state(tokens)(products, reactants, modifiers)

    return check


def _association(reactants, products, modifiers):
    return len(reactants) >= 2 and len(products) == 1 and products[0].is_complex


def _dissociation(reactants, products, modifiers):
    return len(reactants) == 1 and reactants[0].is_complex and len(products) >= 2


def _default_rules():
    rules = []
    for token, (term, reverse) in STATE_TOKENS.items():
        spellings = (token,) + tuple(k for k, v in STATE_SYNONYMS.items() if v == token)
        rules.append(Rule(f"adds {token}", term, _adds_state(spellings)))
        if reverse:
            rules.append(Rule(f"removes {token}", reverse, _removes_state(spellings)))
    rules.append(Rule("association", ASSOCIATION, _association))
    rules.append(Rule("dissociation", DISSOCIATION, _dissociation))
    return tuple(rules)


DEFAULT_RULES: tuple = _default_rules()


def infer_reaction_types(
    g: PathwayGraph, rules: Sequence[Rule] = DEFAULT_RULES, fallback: str | None = CONVERSION
) -> PathwayGraph:
    """Add the term of the first matching rule to every reaction's signature.

    Reactions that match no rule and have no terms yet receive ``fallback``.
    Signatures only ever grow.
    """
    by_role = {r: ([], [], []) for r in g.reactions}
    slot = {EdgeRole.REACTANT: 0, EdgeRole.PRODUCT: 1, EdgeRole.MODIFIER: 2}
    for e in g.edges:
        by_role[e.reaction][slot[e.role]].append(g.species[e.species])

    out = []
    for rid, rx in g.reactions.items():
        reactants, products, modifiers = by_role[rid]
        extra = None
        for rule in rules:
            if rule.applies(reactants, products, modifiers):
                extra = rule.term
                break
        if extra is None and not rx.sbo_signature:
            extra = fallback
        if extra is not None and extra not in rx.sbo_signature:
            rx = dataclasses.replace(rx, sbo_signature=rx.sbo_signature | {extra})
        out.append(rx)
    return build_graph(g.species.values(), out, g.edges)
