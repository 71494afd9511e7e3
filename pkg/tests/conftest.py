import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pathoverlap.annotate import default_ontology  # noqa: E402
from pathoverlap.model import Edge, Reaction, Species, build_graph  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"
PHOS = "SBO:0000216"
CONV = "SBO:0000182"
ASSOC = "SBO:0000177"
ACT = "GO:0043085"


@pytest.fixture(scope="session")
def ontology():
    return default_ontology()


@pytest.fixture
def rng():
    return random.Random(1234)


def triad(prefix="", a="A", b="B", sig=(PHOS,)):
    return build_graph(
        [Species(prefix + "a", a), Species(prefix + "b", b)],
        [Reaction(prefix + "r", frozenset(sig))],
        [Edge(prefix + "a", prefix + "r", "reactant"), Edge(prefix + "b", prefix + "r", "product")],
    )
