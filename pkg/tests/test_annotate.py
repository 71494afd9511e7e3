import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ACT, ASSOC, CONV, FIXTURES, PHOS
from pathoverlap.annotate import (
    GeneLexicon,
    NormalizationConfig,
    ancestors,
    assign_gene_signatures,
    gene_signature_coverage,
    infer_reaction_types,
    load_lexicon,
    load_ontology,
    normalize_name,
    normalize_species_names,
)
from pathoverlap.errors import BadLine, CyclicOntology, UnknownTerm, UnknownTermInEdge
from pathoverlap.model import Edge, Reaction, Species, build_graph

# -- ontology -----------------------------------------------------------------


def test_two_term_ontology():
    o = load_ontology("SBO:0000216\t=\tphosphorylation\nSBO:0000182\t=\tconversion\nSBO:0000216\tSBO:0000182\n")
    assert len(o) == 2
    assert o.is_a == {(PHOS, CONV)}
    assert o.label(PHOS) == "phosphorylation"


def test_cycle_and_unknown_edge_term():
    with pytest.raises(CyclicOntology):
        load_ontology("A\t=\ta\nB\t=\tb\nA\tB\nB\tA\n")
    with pytest.raises(UnknownTermInEdge):
        load_ontology("A\t=\ta\nA\tZ\n")
    with pytest.raises(BadLine):
        load_ontology("A\tB\tC\tD\n")


def test_empty_ontology():
    assert len(load_ontology("")) == 0


def test_shipped_fragment(ontology):
    assert ancestors(ontology, PHOS) == {PHOS, CONV, "SBO:0000375"}
    assert ontology.most_specific({PHOS, CONV}) == {PHOS}
    assert ontology.most_specific({PHOS, ACT}) == {PHOS, ACT}
    with pytest.raises(UnknownTerm):
        ontology.ancestors("SBO:9999999")


def test_root_and_diamond():
    o = load_ontology("A\t=\ta\nB\t=\tb\nC\t=\tc\nD\t=\td\nA\tB\nA\tC\nB\tD\nC\tD\n")
    assert ancestors(o, "D") == {"D"}
    assert ancestors(o, "A") == {"A", "B", "C", "D"}


def test_ancestors_monotone(ontology):
    for child, parent in ontology.is_a:
        assert child in ancestors(ontology, child)
        assert ancestors(ontology, parent) <= ancestors(ontology, child)


# -- names --------------------------------------------------------------------


@pytest.mark.parametrize(
    "raw,want",
    [
        ("phosphorylated mTOR", "mtor"),
        ("mTOR", "mtor"),
        ("  activated   p-  Akt1 ", "akt1"),
        ("p-AKT1", "akt1"),
        ("phosphorylated", "phosphorylated"),
        ("Active  Raptor complex", "raptor complex"),
        ("", ""),
    ],
)
def test_normalize_examples(raw, want):
    assert normalize_name(raw) == want


def test_custom_prefixes():
    cfg = NormalizationConfig.with_prefixes("total")
    assert normalize_name("phosphorylated total ERK", cfg) == "phosphorylated total erk"
    assert normalize_name("total ERK", cfg) == "erk"
    keep_case = NormalizationConfig(case_fold=False)
    assert normalize_name("p-Akt1", keep_case) == "Akt1"


names = st.lists(
    st.sampled_from(["phosphorylated", "p-", "p-akt", "Active", " ", "mTOR", "phospho-", "x", "\t"]), max_size=6
).map(" ".join) | st.text(max_size=12)


@settings(max_examples=300)
@given(names)
def test_normalize_idempotent(raw):
    once = normalize_name(raw)
    assert normalize_name(once) == once
    if raw.split():
        assert once


# -- reaction typing ----------------------------------------------------------


def reaction_graph(reactants, products, sig=frozenset(), complex_product=False):
    species = {}
    for n in reactants + products:
        species[n] = Species(n, n)
    if complex_product:
        species[products[0]] = Species(products[0], products[0], constituents=tuple(reactants))
    edges = [Edge(n, "R", "reactant") for n in reactants] + [Edge(n, "R", "product") for n in products]
    return build_graph(species.values(), [Reaction("R", frozenset(sig))], edges)


def test_phosphorylation_rule():
    g = infer_reaction_types(reaction_graph(["A"], ["p-A"]))
    assert g.reactions["R"].sbo_signature == {PHOS}


def test_association_rule():
    g = infer_reaction_types(reaction_graph(["A", "B"], ["A:B"], complex_product=True))
    assert g.reactions["R"].sbo_signature == {ASSOC}


def test_fallback_conversion():
    g = infer_reaction_types(reaction_graph(["A"], ["B"]))
    assert g.reactions["R"].sbo_signature == {CONV}


def test_existing_signature_extended_not_replaced():
    g = infer_reaction_types(reaction_graph(["A"], ["p-A"], sig={ACT}))
    assert g.reactions["R"].sbo_signature == {ACT, PHOS}
    g2 = infer_reaction_types(reaction_graph(["A"], ["B"], sig={ACT}))
    assert g2.reactions["R"].sbo_signature == {ACT}


def test_dephosphorylation_rule():
    g = infer_reaction_types(reaction_graph(["phosphorylated A"], ["A"]))
    assert g.reactions["R"].sbo_signature == {"SBO:0000330"}


def test_infer_idempotent_and_monotone(rng):
    from synth import random_graph

    for _ in range(20):
        g = random_graph(rng, 8, 5)
        once = infer_reaction_types(g)
        for rid, r in g.reactions.items():
            assert r.sbo_signature <= once.reactions[rid].sbo_signature
        assert infer_reaction_types(once) == once


# -- gene signatures ------------------------------------------------------------


def test_lexicon_assignment():
    lex = GeneLexicon.from_mapping({"mtor": {"2475"}})
    g = build_graph([Species("a", "mTOR"), Species("b", "phosphorylated mTOR"), Species("c", "zzz")], [], [])
    g = assign_gene_signatures(g, lex)
    assert g.species["a"].gene_signature == {"2475"}
    assert g.species["b"].gene_signature == g.species["a"].gene_signature
    assert g.species["c"].gene_signature == frozenset()
    assert gene_signature_coverage(g) == pytest.approx(200 / 3)


def test_lexicon_file():
    lex = load_lexicon((FIXTURES / "lexicon.tsv").read_text())
    assert lex.lookup("MTOR") == {"2475"}
    merged = load_lexicon("akt\t207\nAKT\t208,209\n")
    assert merged.lookup("akt") == {"207", "208", "209"}
    with pytest.raises(BadLine):
        load_lexicon("akt 207\n")
    assert gene_signature_coverage(build_graph([], [], [])) == 0.0


def test_assignment_ignores_species_order():
    lex = load_lexicon((FIXTURES / "lexicon.tsv").read_text())
    species = [Species(f"s{i}", n) for i, n in enumerate(["mTOR", "AKT1", "p-AKT1", "foo", "Raptor"])]
    a = assign_gene_signatures(build_graph(species, [], []), lex)
    shuffled = species[:]
    random.Random(3).shuffle(shuffled)
    b = assign_gene_signatures(build_graph(shuffled, [], []), lex)
    assert {k: v.gene_signature for k, v in a.species.items()} == {k: v.gene_signature for k, v in b.species.items()}


def test_normalize_species_names_recomputes():
    g = build_graph([Species("a", "total ERK")], [], [])
    assert normalize_species_names(g, NormalizationConfig.with_prefixes("total")).species["a"].normalized_name == "erk"
