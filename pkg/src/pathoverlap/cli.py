"""Command-line front end: ``pathoverlap convert|annotate|stats|compare``.

Exit codes: 0 success, 2 input error, 3 schema error, 4 unknown strategy.
CSV reports carry the run manifest as leading ``#`` lines; wall time goes
only to the optional ``--manifest`` sidecar so reports stay byte-identical
between runs.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .annotate import (
    NormalizationConfig,
    assign_gene_signatures,
    default_ontology,
    gene_signature_coverage,
    infer_reaction_types,
    load_lexicon,
    load_ontology,
    normalize_species_names,
)
from .errors import IngestError, OntologyError, PathwayError, SchemaViolation, UnknownStrategy
from .ingest import (
    default_trigger_map,
    events_to_graph,
    load_trigger_map,
    merge_graphs,
    parse_graph_json,
    parse_sbml,
    parse_standoff,
    write_graph_json,
)
from .matchers import MatchConfig, all_strategies
from .overlap import network_overlap
from .stats import (
    complex_stats,
    connectivity_stats,
    reaction_type_histogram,
    unique_name_counts,
)

EXIT_OK, EXIT_INPUT, EXIT_SCHEMA, EXIT_STRATEGY = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, message, code=EXIT_INPUT):
        super().__init__(message)
        self.code = code


@dataclass
class RunManifest:
    command: str
    inputs: list
    config: dict
    tool_version: str = __version__
    components: list = field(default_factory=list)  # [smallest node id, size]
    approximate: dict = field(default_factory=dict)  # strategy -> component ids
    wall_time: float | None = None

    @property
    def config_hash(self):
        blob = json.dumps(self.config, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]

    def comment_lines(self):
        yield f"# command: {self.command}"
        yield f"# inputs: {' '.join(self.inputs)}"
        yield f"# config_hash: {self.config_hash}"
        yield f"# tool_version: {self.tool_version}"
        if self.components:
            yield f"# components: {len(self.components)}"
            for label, ids in self.approximate.items():
                yield f"# approximate_components[{label}]: {' '.join(ids) if ids else '-'}"

    def to_dict(self):
        return {
            "command": self.command,
            "inputs": self.inputs,
            "config": self.config,
            "config_hash": self.config_hash,
            "tool_version": self.tool_version,
            "components": self.components,
            "approximate_components": self.approximate,
            "wall_time_seconds": self.wall_time,
        }


# -- io helpers ------------------------------------------------------------


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise CliError(f"{path}: {exc}") from None


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    Path(path).write_text(text, encoding="utf-8")


def load_graph(path):
    text = _read(path)
    try:
        if str(path).endswith((".xml", ".sbml")):
            return parse_sbml(text)
        return parse_graph_json(text)
    except SchemaViolation as exc:
        raise CliError(f"{path}: {exc}", EXIT_SCHEMA) from None
    except IngestError as exc:
        raise CliError(f"{path}: {exc}") from None


def _ontology(path):
    if not path:
        return default_ontology()
    try:
        return load_ontology(_read(path), str(path))
    except (IngestError, OntologyError) as exc:
        raise CliError(f"{path}: {exc}") from None


def _csv_text(rows, manifest=None):
    buf = io.StringIO()
    if manifest is not None:
        for line in manifest.comment_lines():
            buf.write(line + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _table(rows):
    widths = [max(len(str(r[i])) for r in rows) for i in range(len(rows[0]))]
    lines = []
    for r in rows:
        cells = [str(c).ljust(w) if i == 0 else str(c).rjust(w) for i, (c, w) in enumerate(zip(r, widths))]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def _warn(msg):
    print(f"warning: {msg}", file=sys.stderr)


# -- convert ---------------------------------------------------------------


def _standoff_docs(inputs):
    """Group .a1/.a2/.txt paths by document stem, keeping first-seen order."""
    docs = {}
    for p in map(Path, inputs):
        stem = p.with_suffix("")
        docs.setdefault(stem, set()).add(p.suffix)
    out = []
    for stem in docs:
        a1 = stem.with_suffix(".a1")
        a2 = stem.with_suffix(".a2")
        txt = stem.with_suffix(".txt")
        if not a1.exists():
            raise CliError(f"{a1}: no such file")
        out.append((stem, a1, a2 if a2.exists() else None, txt if txt.exists() else None))
    return out


def cmd_convert(args):
    graphs, names = [], []
    if args.format == "standoff":
        tmap = default_trigger_map()
        if args.trigger_map:
            try:
                tmap = load_trigger_map(_read(args.trigger_map), args.trigger_map)
            except IngestError as exc:
                raise CliError(str(exc)) from None
        for stem, a1, a2, txt in _standoff_docs(args.inputs):
            warnings = []
            try:
                es = parse_standoff(
                    _read(a1), _read(a2) if a2 else "", doc_id=str(stem),
                    text=_read(txt) if txt else None,
                )
                graphs.append(events_to_graph(es, tmap, warnings))
            except IngestError as exc:
                raise CliError(f"{stem}: {exc}") from None
            for w in warnings:
                _warn(f"{stem}: {w}")
            names.append(stem.name)
    else:
        for path in args.inputs:
            if args.format == "sbml":
                try:
                    graphs.append(parse_sbml(_read(path)))
                except IngestError as exc:
                    raise CliError(f"{path}: {exc}") from None
            else:
                graphs.append(load_graph(path))
            names.append(Path(path).stem)

    if args.merge or len(graphs) == 1:
        g = graphs[0] if len(graphs) == 1 and not args.merge else merge_graphs(graphs, names)
        _write(args.output, write_graph_json(g))
        return EXIT_OK
    if not args.output:
        raise CliError("several inputs without --merge need -o DIRECTORY")
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    for name, g in zip(names, graphs):
        (out / f"{name}.json").write_text(write_graph_json(g), encoding="utf-8")
    return EXIT_OK


# -- annotate --------------------------------------------------------------


def cmd_annotate(args):
    g = load_graph(args.graph)
    cfg = NormalizationConfig()
    if args.prefixes is not None:
        cfg = cfg.with_prefixes([p for p in args.prefixes.split(",") if p])
    g = normalize_species_names(g, cfg)
    if args.lexicon:
        try:
            lex = load_lexicon(_read(args.lexicon), args.lexicon)
        except IngestError as exc:
            raise CliError(str(exc)) from None
        if not len(lex):
            _warn(f"{args.lexicon}: lexicon is empty")
        g = assign_gene_signatures(g, lex)
    if not args.no_infer:
        g = infer_reaction_types(g)
    _write(args.output, write_graph_json(g))
    print(f"gene signature coverage: {gene_signature_coverage(g):.1f}%", file=sys.stderr)
    return EXIT_OK


# -- stats -----------------------------------------------------------------


def stats_rows(g, cutoff=90):
    names = unique_name_counts(g, cutoff=cutoff)
    cx = complex_stats(g)
    conn = connectivity_stats(g)
    networks = [n for n in conn.component_sizes if n > 1]
    return [
        ("species", names.species),
        ("reactions", len(g.reactions)),
        ("edges", len(g.edges)),
        ("unique_names", names.names),
        ("unique_approximate_names", names.approximate_names),
        ("unique_gene_signatures", names.gene_signatures),
        ("complexes", cx.complex_count),
        ("complex_constituents", cx.total_constituents),
        ("nested_complexes", cx.nested_complex_count),
        ("components", conn.isolated_network_count),
        ("isolated_species", conn.isolated_species_count),
        ("min", min(networks, default=0)),
        ("max", conn.max),
        ("mean", f"{conn.mean:.2f}"),
        ("median", f"{conn.median:.2f}"),
    ]


def cmd_stats(args):
    g = load_graph(args.graph)
    o = _ontology(args.ontology)
    manifest = RunManifest("stats", [args.graph], {"cutoff": args.cutoff})
    rows = stats_rows(g, args.cutoff)
    _write(args.output, _csv_text([("metric", "value"), *rows], manifest))
    try:
        hist = reaction_type_histogram(g, o)
    except OntologyError as exc:
        raise CliError(f"{args.graph}: {exc}") from None
    hist_rows = [("term", "label", "count")] + [(t, o.label(t), n) for t, n in hist.items()]
    if args.histogram:
        _write(args.histogram, _csv_text(hist_rows, manifest))
    if args.output not in (None, "-"):
        sys.stdout.write(_table([("metric", "value"), *rows]))
        if len(hist_rows) > 1:
            sys.stdout.write("\n" + _table(hist_rows))
    return EXIT_OK


# -- compare ---------------------------------------------------------------


def _threads(requested):
    env = os.environ.get("PATHOVERLAP_THREADS")
    cap = None
    if env:
        try:
            cap = max(1, int(env))
        except ValueError:
            _warn(f"ignoring PATHOVERLAP_THREADS={env!r}")
    n = requested if requested else (cap or 1)
    return min(n, cap) if cap else max(1, n)


def _strategies(args):
    try:
        if args.all_strategies:
            return all_strategies(args.cutoff)
        return [MatchConfig.parse(args.species, args.reaction, args.cutoff)]
    except UnknownStrategy as exc:
        raise CliError(str(exc), EXIT_STRATEGY) from None


def _fmt(x):
    return f"{x:.2f}"


def _edge_text(e):
    return f"{e.species} -{e.role.value}-> {e.reaction}"


def cmd_compare(args):
    configs = _strategies(args)
    cand = load_graph(args.candidate)
    ref = load_graph(args.reference)
    o = _ontology(args.ontology)
    workers = _threads(args.threads)
    manifest = RunManifest(
        "compare",
        [args.candidate, args.reference],
        {
            "strategies": [c.label for c in configs],
            "cutoff": args.cutoff,
            "ontology": args.ontology or "builtin",
        },
    )
    started = time.perf_counter()
    header = ("species", "reaction", "node_precision", "node_recall", "edge_precision", "edge_recall")
    rows = [header]
    dump = []
    for cfg in configs:
        try:
            rep = network_overlap(cand, ref, cfg, o, workers=workers)
        except OntologyError as exc:
            raise CliError(f"{cfg.label}: {exc}") from None
        rows.append((cfg.species.label, cfg.reaction.value, _fmt(rep.node_precision), _fmt(rep.node_recall),
                     _fmt(rep.edge_precision), _fmt(rep.edge_recall)))
        if not manifest.components:
            manifest.components = [[min(nodes), len(nodes)] for nodes, _ in rep.matches]
        manifest.approximate[cfg.label] = [min(nodes) for nodes, m in rep.matches if not m.exact]
        if args.dump_matches:
            for nodes, m in rep.matches:
                matched = {c for c, _ in m.node_pairs}
                dump.append({
                    "strategy": cfg.label,
                    "component": min(nodes),
                    "exact": m.exact,
                    "nodes": sorted(m.node_pairs),
                    "edges": sorted((_edge_text(a), _edge_text(b)) for a, b in m.edge_pairs),
                    "unmatched_nodes": sorted(nodes - matched),
                })
    manifest.wall_time = round(time.perf_counter() - started, 3)

    _write(args.output, _csv_text(rows, manifest))
    if args.output not in (None, "-"):
        text_rows = [("strategy", *header[2:])] + [(f"{r[0]}, {r[1]}", *r[2:]) for r in rows[1:]]
        sys.stdout.write(_table(text_rows))
    if args.dump_matches:
        _write(args.dump_matches, "".join(json.dumps(d, sort_keys=True) + "\n" for d in dump))
    if args.manifest:
        _write(args.manifest, json.dumps(manifest.to_dict(), sort_keys=True, indent=1) + "\n")
    return EXIT_OK


# -- entry point -----------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="pathoverlap", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("convert", help="convert SBML, standoff or JSON input to canonical JSON")
    c.add_argument("inputs", nargs="+")
    c.add_argument("--format", choices=("sbml", "standoff", "json"), required=True)
    c.add_argument("--trigger-map", help="TSV mapping event kinds to ontology terms")
    c.add_argument("--merge", action="store_true", help="write one disjoint union of all inputs")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_convert)

    a = sub.add_parser("annotate", help="normalize names, assign gene signatures, infer reaction types")
    a.add_argument("graph")
    a.add_argument("--ontology", help="ontology TSV (default: bundled fragment)")
    a.add_argument("--lexicon", help="TSV of name<TAB>gene id[,id...]")
    a.add_argument("--prefixes", help="comma-separated prefixes to strip (replaces the defaults)")
    a.add_argument("--no-infer", action="store_true", help="leave reaction signatures untouched")
    a.add_argument("-o", "--output")
    a.set_defaults(func=cmd_annotate)

    s = sub.add_parser("stats", help="dataset statistics as CSV")
    s.add_argument("graph")
    s.add_argument("--ontology")
    s.add_argument("--cutoff", type=int, default=90)
    s.add_argument("--histogram", help="write the reaction-type histogram CSV here")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_stats)

    m = sub.add_parser("compare", help="network overlap of a candidate against a reference")
    m.add_argument("candidate")
    m.add_argument("reference")
    m.add_argument("--species", default="nmeq")
    m.add_argument("--reaction", default="sboeq")
    m.add_argument("--cutoff", type=int, default=90)
    m.add_argument("--all-strategies", action="store_true")
    m.add_argument("--ontology")
    m.add_argument("--threads", type=int, default=0, help="worker processes (default: PATHOVERLAP_THREADS or 1)")
    m.add_argument("--dump-matches", help="write per-component matches as JSON lines")
    m.add_argument("--manifest", help="write the run manifest (with wall time) as JSON")
    m.add_argument("-o", "--output")
    m.set_defaults(func=cmd_compare)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except UnknownStrategy as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STRATEGY
    except PathwayError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
