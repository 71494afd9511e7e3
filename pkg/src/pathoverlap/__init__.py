"""Compare pathway graphs by species, reactions and network overlap."""

__version__ = "0.1.0"
