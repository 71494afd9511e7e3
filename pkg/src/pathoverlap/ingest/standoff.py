"""BioNLP shared-task standoff reader (.a1 entities, .a2 triggers/events).

Recognised lines::

    T1<TAB>Protein 0 4<TAB>mTOR          text-bound annotation
    E1<TAB>Phosphorylation:T2 Theme:T1   event
    M1<TAB>Negation E1                   event modifier (also A lines)

Relation (R), normalization (N), equivalence (*) and note (#) lines are
skipped. Text-bound lines may appear in either file.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..errors import BadLine, CyclicEvent, UnresolvedArgument

_ROLE = re.compile(r"^([A-Za-z_\-]+?)(\d*):(\S+)$")


@dataclass(frozen=True)
class Entity:
    id: str
    kind: str
    char_start: int
    char_end: int
    surface: str


@dataclass(frozen=True)
class Event:
    id: str
    trigger_kind: str
    trigger_entity: str
    arguments: tuple  # ((role, target), ...), role keeps its numeric suffix

    def args(self, *base_roles):
        """Targets whose role (numeric suffix dropped) is one of ``base_roles``."""
        return [t for r, t in self.arguments if role_base(r) in base_roles]


@dataclass(frozen=True)
class Modifier:
    id: str
    kind: str
    target: str


@dataclass
class EventSet:
    doc_id: str = ""
    entities: list = field(default_factory=list)
    events: list = field(default_factory=list)
    modifiers: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def entity(self, ident):
        return self._entities[ident]

    def event(self, ident):
        return self._events[ident]

    @property
    def _entities(self):
        return {e.id: e for e in self.entities}

    @property
    def _events(self):
        return {e.id: e for e in self.events}


def role_base(role: str) -> str:
    return role.rstrip("0123456789")


def _parse_span(spec, lineno, line, source):
    # "Protein 0 4" or discontinuous "Protein 0 4;6 9"
    parts = spec.split(" ", 1)
    if len(parts) != 2:
        raise BadLine(lineno, line, "missing offsets", source)
    kind, offsets = parts
    starts, ends = [], []
    for frag in offsets.split(";"):
        bounds = frag.split()
        if len(bounds) != 2 or not all(b.isdigit() for b in bounds):
            raise BadLine(lineno, line, "offsets must be two integers", source)
        starts.append(int(bounds[0]))
        ends.append(int(bounds[1]))
    start, end = min(starts), max(ends)
    if start >= end:
        raise BadLine(lineno, line, "empty span", source)
    return kind, start, end


def parse_standoff(a1: str, a2: str = "", doc_id: str = "", text: str | None = None) -> EventSet:
    """Parse one document's annotation files into a resolved :class:`EventSet`.

    When ``text`` is given each entity's surface string is checked against
    the byte span it claims.
    """
    es = EventSet(doc_id=doc_id)
    ids = set()
    raw = text.encode("utf-8") if text is not None else None
    event_lines = {}

    for source, body in (("a1", a1), ("a2", a2)):
        where = f"{doc_id}.{source}" if doc_id else source
        for lineno, line in enumerate(body.splitlines(), 1):
            if not line.strip():
                continue
            cols = line.split("\t")
            ident = cols[0].strip()
            tag = ident[:1]
            if tag in "RN*#":
                continue
            if ident in ids:
                raise BadLine(lineno, line, f"duplicate id {ident}", where)
            if tag == "T":
                if len(cols) < 2:
                    raise BadLine(lineno, line, "text-bound line needs type and offsets", where)
                kind, start, end = _parse_span(cols[1], lineno, line, where)
                surface = cols[2] if len(cols) > 2 else ""
                if raw is not None:
                    actual = raw[start:end].decode("utf-8", errors="replace")
                    if end > len(raw) or actual != surface:
                        raise BadLine(lineno, line, f"surface does not match text span {actual!r}", where)
                es.entities.append(Entity(ident, kind, start, end, surface))
            elif tag == "E":
                if len(cols) < 2 or not cols[1].strip():
                    raise BadLine(lineno, line, "event needs a trigger", where)
                fields = cols[1].split()
                head = fields[0].split(":")
                if len(head) != 2 or not all(head):
                    raise BadLine(lineno, line, "trigger must be Kind:Tn", where)
                args = []
                for f in fields[1:]:
                    m = _ROLE.match(f)
                    if not m:
                        raise BadLine(lineno, line, f"bad argument {f!r}", where)
                    args.append((m.group(1) + m.group(2), m.group(3)))
                es.events.append(Event(ident, head[0], head[1], tuple(args)))
                event_lines[ident] = (lineno, line, where)
            elif tag in "MA":
                fields = cols[1].split() if len(cols) > 1 else []
                if len(fields) < 2:
                    raise BadLine(lineno, line, "modifier needs kind and target", where)
                es.modifiers.append(Modifier(ident, fields[0], fields[1]))
            else:
                raise BadLine(lineno, line, f"unknown annotation type {ident!r}", where)
            ids.add(ident)

    entities = es._entities
    events = es._events
    for ev in es.events:
        if ev.trigger_entity not in entities:
            raise UnresolvedArgument(ev.trigger_entity, ev.id)
        for _, target in ev.arguments:
            if target not in entities and target not in events:
                raise UnresolvedArgument(target, ev.id)
    for m in es.modifiers:
        if m.target not in events and m.target not in entities:
            raise UnresolvedArgument(m.target, m.id)

    _check_acyclic(events)
    return es


def _check_acyclic(events):
    state = {}
    for root in events:
        if root in state:
            continue
        state[root] = 1
        stack = [(root, iter(events[root].arguments))]
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[node] = 2
                stack.pop()
                continue
            target = nxt[1]
            if target not in events:
                continue
            if state.get(target) == 1:
                raise CyclicEvent(target)
            if target not in state:
                state[target] = 1
                stack.append((target, iter(events[target].arguments)))


def event_order(es: EventSet) -> list:
    """Events with every nested event placed before the events that use it."""
    events = es._events
    done = set()
    out = []

    def visit(eid):
        if eid in done:
            return
        done.add(eid)
        for _, t in events[eid].arguments:
            if t in events:
                visit(t)
        out.append(events[eid])

    for ev in es.events:
        visit(ev.id)
    return out
