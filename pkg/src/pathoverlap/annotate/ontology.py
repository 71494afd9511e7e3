"""Reaction-type ontology (SBO/GO fragment) with is_a closure.

File format is a flat TSV::

    # comment
    SBO:0000216<TAB>=<TAB>phosphorylation
    SBO:0000216<TAB>SBO:0000182

Label lines declare terms; two-column lines are ``child is_a parent``.
Declarations may appear after the edges that use them.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from types import MappingProxyType

from ..errors import BadLine, CyclicOntology, UnknownTerm, UnknownTermInEdge


@dataclass(frozen=True, eq=False)
class SboOntology:
    terms: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))
    is_a: frozenset = frozenset()

    def __contains__(self, term):
        return term in self.terms

    def __len__(self):
        return len(self.terms)

    def label(self, term):
        try:
            return self.terms[term]
        except KeyError:
            raise UnknownTerm(term) from None

    def term_for_label(self, label):
        want = label.casefold()
        for t, lab in self.terms.items():
            if lab.casefold() == want:
                return t
        raise UnknownTerm(label)

    @cached_property
    def _parents(self):
        parents = defaultdict(list)
        for child, parent in sorted(self.is_a):
            parents[child].append(parent)
        return parents

    @cached_property
    def _closure(self):
        # memo filled lazily by ancestors(); ontology is tiny, a dict is plenty
        return {}

    def ancestors(self, term) -> frozenset:
        """Reflexive-transitive is_a closure of ``term``."""
        if term not in self.terms:
            raise UnknownTerm(term)
        memo = self._closure
        hit = memo.get(term)
        if hit is not None:
            return hit
        out = {term}
        for p in self._parents.get(term, ()):
            out |= self.ancestors(p)
        memo[term] = frozenset(out)
        return memo[term]

    def is_a_related(self, x, y):
        return x == y or x in self.ancestors(y) or y in self.ancestors(x)

    def most_specific(self, signature) -> frozenset:
        """Drop every term that has a strict descendant in the same signature."""
        sig = frozenset(signature)
        for t in sig:
            if t not in self.terms:
                raise UnknownTerm(t)
        keep = set(sig)
        for t in sig:
            keep -= self.ancestors(t) - {t}
        return frozenset(keep)


def load_ontology(text: str, source: str = "") -> SboOntology:
    terms = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = [c.strip() for c in line.split("\t")]
        if len(cols) == 3 and cols[1] == "=" and cols[0]:
            terms[cols[0]] = cols[2]
        elif len(cols) == 2 and all(cols):
            edges.append((lineno, cols[0], cols[1]))
        else:
            raise BadLine(lineno, line, "expected child<TAB>parent or term<TAB>=<TAB>label", source)

    is_a = set()
    for lineno, child, parent in edges:
        for t in (child, parent):
            if t not in terms:
                raise UnknownTermInEdge(t, lineno)
        if child == parent:
            raise CyclicOntology(child)
        is_a.add((child, parent))

    _check_dag(terms, is_a)
    return SboOntology(MappingProxyType(terms), frozenset(is_a))


def _check_dag(terms, is_a):
    parents = defaultdict(list)
    for c, p in is_a:
        parents[c].append(p)
    state = dict.fromkeys(terms, 0)
    for root in sorted(terms):
        if state[root]:
            continue
        state[root] = 1
        stack = [(root, iter(parents[root]))]
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[node] = 2
                stack.pop()
            elif state[nxt] == 1:
                raise CyclicOntology(nxt)
            elif state[nxt] == 0:
                state[nxt] = 1
                stack.append((nxt, iter(parents[nxt])))


def ancestors(o: SboOntology, t: str) -> frozenset:
    return o.ancestors(t)


def default_ontology() -> SboOntology:
    """The shipped SBO/GO fragment covering the common reaction types."""
    text = resources.files("pathoverlap.data").joinpath("sbo_fragment.tsv").read_text("utf-8")
    return load_ontology(text, "sbo_fragment.tsv")
