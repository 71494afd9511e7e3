"""Exception hierarchy. Every error names the offending id, term or line."""


class PathwayError(Exception):
    """Base class for all errors raised by this package."""


# model -------------------------------------------------------------------


class GraphError(PathwayError):
    pass


class DuplicateId(GraphError):
    def __init__(self, ident, what="node"):
        self.ident = ident
        super().__init__(f"duplicate {what} id: {ident!r}")


class DuplicateEdge(DuplicateId):
    def __init__(self, edge):
        self.ident = edge
        GraphError.__init__(self, f"duplicate edge: {edge!r}")


class DanglingEdge(GraphError):
    def __init__(self, ident, edge=None):
        self.ident = ident
        self.edge = edge
        super().__init__(f"edge endpoint does not resolve: {ident!r}")


class DanglingConstituent(GraphError):
    def __init__(self, complex_id, ident):
        self.complex_id = complex_id
        self.ident = ident
        super().__init__(f"constituent {ident!r} of {complex_id!r} does not resolve")


class IsolatedReaction(GraphError):
    def __init__(self, ident):
        self.ident = ident
        super().__init__(f"reaction has no incident edge: {ident!r}")


class ConstituentCycle(GraphError):
    def __init__(self, ident):
        self.ident = ident
        super().__init__(f"complex contains itself: {ident!r}")


class UnknownSpecies(GraphError, KeyError):
    def __init__(self, ident):
        self.ident = ident
        GraphError.__init__(self, f"unknown species: {ident!r}")

    __str__ = Exception.__str__


# ingest ------------------------------------------------------------------


class IngestError(PathwayError):
    pass


class XmlMalformed(IngestError):
    pass


class MissingId(IngestError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"<{element}> element without id attribute")


class UnresolvedSpeciesReference(IngestError):
    def __init__(self, ident):
        self.ident = ident
        super().__init__(f"species reference to undeclared id: {ident!r}")


class BadLine(IngestError):
    def __init__(self, lineno, line, reason="", source=""):
        self.lineno = lineno
        self.line = line
        self.source = source
        where = f"{source}:{lineno}" if source else f"line {lineno}"
        msg = f"{where}: cannot parse {line!r}"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)


class UnresolvedArgument(IngestError):
    def __init__(self, ident, event=None):
        self.ident = ident
        self.event = event
        super().__init__(f"event {event} references unknown id: {ident!r}")


class CyclicEvent(IngestError):
    def __init__(self, ident):
        self.ident = ident
        super().__init__(f"event reference cycle through {ident!r}")


class UnmappedTrigger(IngestError):
    def __init__(self, kind):
        self.kind = kind
        super().__init__(f"no ontology term mapped for trigger kind {kind!r}")


class JsonMalformed(IngestError):
    pass


class SchemaViolation(IngestError):
    pass


# annotate ----------------------------------------------------------------


class OntologyError(PathwayError):
    pass


class CyclicOntology(OntologyError):
    def __init__(self, ident):
        self.ident = ident
        super().__init__(f"is_a cycle through {ident!r}")


class UnknownTermInEdge(OntologyError):
    def __init__(self, ident, lineno=None):
        self.ident = ident
        self.lineno = lineno
        super().__init__(f"is_a edge uses undeclared term {ident!r}")


class UnknownTerm(OntologyError, KeyError):
    def __init__(self, ident):
        self.ident = ident
        OntologyError.__init__(self, f"term not in ontology: {ident!r}")

    __str__ = Exception.__str__


# matchers / overlap ------------------------------------------------------


class UnknownStrategy(PathwayError, ValueError):
    pass


class SizeLimitExceeded(PathwayError):
    pass
