"""Node and edge matching predicates.

Species strategies are written with the clause names used in the result
tables, joined by ``/``: ``nmeq`` (normalized names equal), ``appeq`` (name
similarity at or above the cutoff), ``enteq`` (gene signatures equal),
``entov`` (gene signatures intersect) and ``wc`` (also match constituents of
the reference complex). Enabled clauses are OR-ed together. Reaction
strategies are ``sboeq``, ``sboov`` and ``sboisa``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .errors import UnknownStrategy, UnknownTerm
from .model import Edge, PathwayGraph, Reaction, Species, constituent_closure


def levenshtein(a: str, b: str) -> int:
    """Unit-cost edit distance (insert, delete, substitute)."""
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def bounded_levenshtein(a: str, b: str, limit: int) -> int:
    """Edit distance if it is at most ``limit``, otherwise ``limit + 1``.

    Only the diagonal band of width ``2*limit+1`` is filled.
    """
    if abs(len(a) - len(b)) > limit:
        return limit + 1
    if a == b:
        return 0
    n, m = len(a), len(b)
    big = limit + 1
    prev = [j if j <= limit else big for j in range(m + 1)]
    for i in range(1, n + 1):
        lo = max(1, i - limit)
        hi = min(m, i + limit)
        cur = [big] * (m + 1)
        cur[0] = i if i <= limit else big
        ca = a[i - 1]
        best = cur[0]
        for j in range(lo, hi + 1):
            v = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != b[j - 1]))
            if v > big:
                v = big
            cur[j] = v
            if v < best:
                best = v
        if best > limit:
            return big
        prev = cur
    return min(prev[m], big)


def name_similarity(a: str, b: str) -> int:
    """``floor(100 * (1 - dist / max(len)))``; 100 for two empty strings."""
    longest = max(len(a), len(b))
    if longest == 0:
        return 100
    return (100 * (longest - levenshtein(a, b))) // longest


@lru_cache(maxsize=1 << 18)
def similar_at(a: str, b: str, cutoff: int) -> bool:
    """``name_similarity(a, b) >= cutoff`` without computing distances it can rule out."""
    longest = max(len(a), len(b))
    if longest == 0:
        return True
    # sim >= cutoff  <=>  dist <= longest - ceil(cutoff * longest / 100)
    limit = longest - (-(-cutoff * longest // 100))
    if limit < 0:
        return False
    return bounded_levenshtein(a, b, limit) <= limit


class NameMode(enum.Enum):
    OFF = "off"
    EXACT = "nmeq"
    APPROXIMATE = "appeq"


class SignatureMode(enum.Enum):
    OFF = "off"
    EQUAL = "enteq"
    OVERLAP = "entov"


class ReactionMatchMode(enum.Enum):
    SBOEQ = "sboeq"
    SBOOV = "sboov"
    SBOISA = "sboisa"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SpeciesMatchMode:
    name_mode: NameMode = NameMode.EXACT
    signature_mode: SignatureMode = SignatureMode.OFF
    with_constituents: bool = False

    def __post_init__(self):
        if self.name_mode is NameMode.OFF and self.signature_mode is SignatureMode.OFF:
            raise UnknownStrategy("a species strategy needs a name or a signature clause")

    @property
    def label(self):
        parts = [m.value for m in (self.name_mode, self.signature_mode) if m.value != "off"]
        if self.with_constituents:
            parts.append("wc")
        return "/".join(parts)

    @classmethod
    def parse(cls, text: str) -> SpeciesMatchMode:
        name, sig, wc = NameMode.OFF, SignatureMode.OFF, False
        for clause in (c.strip() for c in text.split("/")):
            if clause in ("nmeq", "appeq"):
                if name is not NameMode.OFF:
                    raise UnknownStrategy(f"more than one name clause in {text!r}")
                name = NameMode(clause)
            elif clause in ("enteq", "entov"):
                if sig is not SignatureMode.OFF:
                    raise UnknownStrategy(f"more than one signature clause in {text!r}")
                sig = SignatureMode(clause)
            elif clause == "wc" and not wc:
                wc = True
            else:
                raise UnknownStrategy(f"unknown species clause {clause!r} in {text!r}")
        return cls(name, sig, wc)


@dataclass(frozen=True)
class MatchConfig:
    species: SpeciesMatchMode = SpeciesMatchMode()
    reaction: ReactionMatchMode = ReactionMatchMode.SBOEQ
    similarity_cutoff: int = 90

    def __post_init__(self):
        if not 0 <= self.similarity_cutoff <= 100:
            raise UnknownStrategy(f"cutoff {self.similarity_cutoff} outside 0..100")

    @property
    def label(self):
        return f"{self.species.label}, {self.reaction.value}"

    @classmethod
    def parse(cls, species: str, reaction: str = "sboeq", cutoff: int = 90) -> MatchConfig:
        try:
            rmode = ReactionMatchMode(reaction.strip())
        except ValueError:
            raise UnknownStrategy(f"unknown reaction mode {reaction!r}") from None
        return cls(SpeciesMatchMode.parse(species), rmode, cutoff)

    @classmethod
    def from_label(cls, label: str, cutoff: int = 90) -> MatchConfig:
        """Parse a result-table row label such as ``appeq/entov/wc, sboisa``."""
        species, sep, reaction = label.partition(",")
        if not sep:
            raise UnknownStrategy(f"expected '<species>, <reaction>' in {label!r}")
        return cls.parse(species, reaction, cutoff)


TABLE_SPECIES_MODES = (
    "nmeq",
    "nmeq/wc",
    "appeq",
    "appeq/wc",
    "appeq/enteq",
    "appeq/enteq/wc",
    "appeq/entov",
    "appeq/entov/wc",
)


def all_strategies(cutoff: int = 90) -> list:
    """The 24 strategy rows in result-table order (species outer, reaction inner)."""
    return [
        MatchConfig.parse(s, r.value, cutoff) for s in TABLE_SPECIES_MODES for r in ReactionMatchMode
    ]


def _direct_match(cand: Species, ref: Species, cfg: MatchConfig) -> bool:
    mode = cfg.species
    if mode.name_mode is NameMode.EXACT and cand.normalized_name == ref.normalized_name:
        return True
    if mode.name_mode is NameMode.APPROXIMATE and similar_at(
        cand.normalized_name, ref.normalized_name, cfg.similarity_cutoff
    ):
        return True
    if cand.gene_signature and ref.gene_signature:
        if mode.signature_mode is SignatureMode.EQUAL and cand.gene_signature == ref.gene_signature:
            return True
        if mode.signature_mode is SignatureMode.OVERLAP and cand.gene_signature & ref.gene_signature:
            return True
    return False


def species_match(cand: Species, ref: Species, ref_graph: PathwayGraph | None, cfg: MatchConfig) -> bool:
    if _direct_match(cand, ref, cfg):
        return True
    if cfg.species.with_constituents and ref_graph is not None:
        for member in sorted(constituent_closure(ref_graph, ref.id) - {ref.id}):
            if _direct_match(cand, ref_graph.species[member], cfg):
                return True
    return False


def reaction_match(a: Reaction, b: Reaction, mode: ReactionMatchMode, o=None) -> bool:
    sa, sb = a.sbo_signature, b.sbo_signature
    if not sa or not sb:
        return False
    if mode is ReactionMatchMode.SBOEQ:
        return sa == sb
    if mode is ReactionMatchMode.SBOOV:
        return bool(sa & sb)
    if o is None:
        raise UnknownTerm(next(iter(sorted(sa))))
    for t in sorted(sa | sb):
        if t not in o:
            raise UnknownTerm(t)
    return any(o.is_a_related(x, y) for x in sa for y in sb)


def edge_match(e1: Edge, e2: Edge) -> bool:
    return e1.role == e2.role
