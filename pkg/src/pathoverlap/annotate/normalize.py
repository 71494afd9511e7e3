"""Species name condensation."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from ..model import PathwayGraph, build_graph

DEFAULT_PREFIXES = (
    "phosphorylated",
    "activated",
    "active",
    "inactive",
    "total",
    "human",
    "recombinant",
    "p-",
    "phospho-",
)


@dataclass(frozen=True)
class NormalizationConfig:
    strip_prefixes: tuple = DEFAULT_PREFIXES
    case_fold: bool = True
    collapse_whitespace: bool = True

    def __post_init__(self):
        if not isinstance(self.strip_prefixes, tuple):
            object.__setattr__(self, "strip_prefixes", tuple(self.strip_prefixes))

    @classmethod
    def with_prefixes(cls, prefixes):
        """Build a config from a comma-separated string or an iterable of tokens."""
        if isinstance(prefixes, str):
            prefixes = [p.strip() for p in prefixes.split(",")]
        return cls(strip_prefixes=tuple(p for p in prefixes if p))


DEFAULT_CONFIG = NormalizationConfig()


def normalize_name(name: str, cfg: NormalizationConfig = DEFAULT_CONFIG) -> str:
    """Case-fold, collapse whitespace and strip leading modifier tokens.

    A prefix ending in ``-`` is also peeled off the front of a longer token,
    so ``p-Akt1`` and ``p- Akt1`` both reduce to ``akt1``. If stripping
    would consume every token the folded input is returned as is.
    """
    base = name.casefold() if cfg.case_fold else name
    tokens = base.split() if cfg.collapse_whitespace else base.strip().split(" ")
    if cfg.collapse_whitespace:
        base = " ".join(tokens)
    prefixes = [p.casefold() if cfg.case_fold else p for p in cfg.strip_prefixes]
    exact = set(prefixes)
    glued = [p for p in prefixes if p.endswith("-")]

    i = 0
    head = tokens[0] if tokens else ""
    while i < len(tokens):
        if head in exact:
            i += 1
            head = tokens[i] if i < len(tokens) else ""
            continue
        for p in glued:
            if head.startswith(p) and len(head) > len(p):
                head = head[len(p):]
                break
        else:
            break
    if i >= len(tokens):
        return base
    return " ".join([head, *tokens[i + 1:]])


def normalize_species_names(g: PathwayGraph, cfg: NormalizationConfig = DEFAULT_CONFIG) -> PathwayGraph:
    """Recompute every species' normalized name under ``cfg``."""
    species = [
        dataclasses.replace(s, normalized_name=normalize_name(s.name, cfg))
        for s in g.species.values()
    ]
    return build_graph(species, g.reactions.values(), g.edges)
