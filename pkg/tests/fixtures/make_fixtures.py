"""Regenerate the fixture files in this directory.

    python3 tests/fixtures/make_fixtures.py
"""

from pathlib import Path

from pathoverlap.annotate import assign_gene_signatures, load_lexicon, normalize_species_names
from pathoverlap.ingest import write_graph_json
from pathoverlap.model import Edge, Reaction, Species, build_graph

HERE = Path(__file__).parent

LEXICON = {
    "akt1": "207", "pdk1": "5163", "tsc1": "7248", "tsc2": "7249", "rheb": "6009",
    "mtor": "2475", "s6k1": "6198", "4ebp1": "1978", "raptor": "57521", "rictor": "253260",
    "irs1": "3667", "insr": "3643", "pik3ca": "5290", "ampk": "5562", "lkb1": "6794",
    "phlpp": "23239", "eif4e": "1977", "ulk1": "8408", "hif1a": "3091", "deptor": "64798",
    "insulin": "3630", "stat3": "6774",
}

PHOS, DEPHOS, ASSOC, POSREG = "SBO:0000216", "SBO:0000330", "SBO:0000177", "SBO:0000170"

# (kind, theme(s), cause)
REFERENCE = [
    ("phos", "AKT1", "PDK1"),
    ("phos", "TSC2", "p-AKT1"),
    ("bind", ("TSC1", "TSC2"), None),
    ("reg", "MTOR", "RHEB"),
    ("phos", "S6K1", "MTOR"),
    ("phos", "4EBP1", "MTOR"),
    ("bind", ("MTOR", "RAPTOR"), None),
    ("bind", ("MTOR", "RICTOR"), None),
    ("phos", "AKT1", "MTOR:RICTOR"),
    ("phos", "IRS1", "INSR"),
    ("bind", ("p-IRS1", "PIK3CA"), None),
    ("phos", "TSC2", "AMPK"),
    ("phos", "AMPK", "LKB1"),
    ("dephos", "p-AKT1", "PHLPP"),
    ("bind", ("4EBP1", "EIF4E"), None),
    ("phos", "ULK1", "MTOR"),
    ("phos", "ULK1", "AMPK"),
    ("bind", ("DEPTOR", "MTOR"), None),
]


def reference_graph():
    species, reactions, edges = {}, [], []

    def sp(name, constituents=()):
        sid = "s_" + name.lower().replace(":", "_").replace("-", "_")
        if sid not in species:
            species[sid] = Species(sid, name, constituents=tuple(constituents))
        return sid

    for i, (kind, theme, cause) in enumerate(REFERENCE, 1):
        rid = f"re{i}"
        if kind == "bind":
            parts = [sp(t) for t in theme]
            product = sp(":".join(theme), parts)
            edges += [Edge(p, rid, "reactant") for p in parts] + [Edge(product, rid, "product")]
            reactions.append(Reaction(rid, frozenset({ASSOC})))
            continue
        if kind == "reg":
            edges.append(Edge(sp(theme), rid, "product"))
            reactions.append(Reaction(rid, frozenset({POSREG})))
        elif kind == "phos":
            edges += [Edge(sp(theme), rid, "reactant"), Edge(sp("p-" + theme), rid, "product")]
            reactions.append(Reaction(rid, frozenset({PHOS})))
        else:
            edges += [Edge(sp(theme), rid, "reactant"), Edge(sp(theme[2:]), rid, "product")]
            reactions.append(Reaction(rid, frozenset({DEPHOS})))
        edges.append(Edge(sp(cause), rid, "modifier"))
    g = build_graph(species.values(), reactions, edges)
    g = normalize_species_names(g)
    return assign_gene_signatures(g, load_lexicon(lexicon_text()))


def lexicon_text():
    return "".join(f"{k}\t{v}\n" for k, v in sorted(LEXICON.items()))


# Each document: list of sentences; each sentence one event
# (kind, trigger word, theme names, cause name or None, nested kind/trigger or None)
DOCS = [
    [("Phosphorylation", "phosphorylates", ["AKT1"], "PDK1", None),
     ("Phosphorylation", "phosphorylates", ["TSC2"], "AKT1", None)],
    [("Binding", "binds", ["TSC1", "TSC2"], None, None),
     ("Positive_regulation", "activates", ["mTOR"], "RHEB", None)],
    [("Phosphorylation", "phosphorylates", ["S6K1"], "mTOR", None),
     ("Phosphorylation", "phosphorylates", ["4EBP1"], "mTOR", None)],
    [("Binding", "associates with", ["mTOR", "Raptor"], None, None),
     ("Binding", "associates with", ["mTOR", "Rictor"], None, None)],
    [("Positive_regulation", "induces", ["IRS1"], "Insulin", ("Phosphorylation", "phosphorylation of")),
     ("Binding", "binds", ["IRS1", "PIK3CA"], None, None)],
    [("Phosphorylation", "phosphorylates", ["TSC2"], "AMPK", None),
     ("Phosphorylation", "phosphorylates", ["AMPK"], "LKB1", None)],
    [("Dephosphorylation", "dephosphorylates", ["AKT1"], "PHLPP", None),
     ("Gene_expression", "expression", ["STAT3"], None, None)],
    [("Binding", "binds", ["4E-BP1", "eIF4E"], None, None),
     ("Phosphorylation", "phosphorylates", ["ULK1"], "mTOR", None)],
    [("Positive_regulation", "upregulates", ["HIF1A"], "mTOR", None),
     ("Binding", "interacts with", ["DEPTOR", "mTOR"], None, None)],
    [("Phosphorylation", "phosphorylates", ["PRAS40"], "Akt", None),
     ("Negative_regulation", "inhibits", ["mTORC1"], "PRAS40", None)],
]


def write_doc(n, events):
    text, a1, a2 = "", [], []
    t = e = 0

    def ent(kind, surface, out):
        nonlocal text, t
        t += 1
        start = len(text.encode("utf-8"))
        text += surface
        out.append(f"T{t}\t{kind} {start} {len(text.encode('utf-8'))}\t{surface}")
        return f"T{t}"

    for kind, trig, themes, cause, nested in events:
        if text:
            text += " "
        cid = None
        tids = []
        if cause:
            cid = ent("Protein", cause, a1)
            text += " "
        elif kind == "Binding":
            tids.append(ent("Protein", themes[0], a1))
            text += " "
            themes = themes[1:]
        tr = ent(kind, trig, a2)
        text += " "
        inner = None
        if nested:
            itr = ent(nested[0], nested[1], a2)
            text += " "
        for i, th in enumerate(themes):
            if i:
                text += " and "
            tids.append(ent("Protein", th, a1))
        text += "."
        if nested:
            e += 1
            inner = f"E{e}"
            a2.append(f"{inner}\t{nested[0]}:{itr} Theme:{tids[0]}")
        e += 1
        args = [f"Theme:{inner}"] if inner else [
            f"Theme{'' if i == 0 else i + 1}:{x}" for i, x in enumerate(tids)
        ]
        if cid:
            args.append(f"Cause:{cid}")
        a2.append(f"E{e}\t{kind}:{tr} " + " ".join(args))
    # text-bound trigger lines precede events in the .a2 file
    a2.sort(key=lambda line: (line[0] != "T", int(line.split("\t")[0][1:])))
    d = HERE / "standoff"
    d.mkdir(exist_ok=True)
    stem = d / f"doc{n:02d}"
    stem.with_suffix(".txt").write_text(text + "\n", encoding="utf-8")
    stem.with_suffix(".a1").write_text("\n".join(a1) + "\n", encoding="utf-8")
    stem.with_suffix(".a2").write_text("\n".join(a2) + "\n", encoding="utf-8")


def main():
    (HERE / "lexicon.tsv").write_text(lexicon_text(), encoding="utf-8")
    (HERE / "reference.json").write_text(write_graph_json(reference_graph()), encoding="utf-8")
    for n, events in enumerate(DOCS, 1):
        write_doc(n, events)
    triad = build_graph(
        [Species("a", "A"), Species("b", "B")],
        [Reaction("r", frozenset({PHOS}))],
        [Edge("a", "r", "reactant"), Edge("b", "r", "product")],
    )
    (HERE / "triad.json").write_text(write_graph_json(triad), encoding="utf-8")


if __name__ == "__main__":
    main()
