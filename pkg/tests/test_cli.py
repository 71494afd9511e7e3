import json
import shutil

import pytest

from conftest import FIXTURES
from pathoverlap.cli import main
from pathoverlap.ingest import parse_graph_json

GOLDEN = FIXTURES / "golden"


@pytest.fixture
def work(tmp_path, monkeypatch):
    shutil.copytree(FIXTURES / "standoff", tmp_path / "standoff")
    for name in ("reference.json", "triad.json", "lexicon.tsv"):
        shutil.copy(FIXTURES / name, tmp_path / name)
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("PATHOVERLAP_THREADS", raising=False)
    return tmp_path


def test_convert_single_document(work):
    assert main(["convert", "--format", "standoff", "standoff/doc01.a1", "standoff/doc01.a2", "-o", "doc.json"]) == 0
    g = parse_graph_json((work / "doc.json").read_text())
    assert len(g.reactions) == 2


def test_convert_merge(work):
    docs = sorted(str(p.relative_to(work)) for p in (work / "standoff").glob("*.a1"))
    assert main(["convert", "--format", "standoff", *docs, "--merge", "-o", "all.json"]) == 0
    g = parse_graph_json((work / "all.json").read_text())
    assert any(s.startswith("doc10:") for s in g.species)


def test_convert_per_document_directory(work):
    docs = [str(p.relative_to(work)) for p in sorted((work / "standoff").glob("doc0[12].a1"))]
    assert main(["convert", "--format", "standoff", *docs, "-o", "out"]) == 0
    assert sorted(p.name for p in (work / "out").iterdir()) == ["doc01.json", "doc02.json"]


def test_convert_bad_xml(work, capsys):
    (work / "bad.xml").write_text("<sbml><model>")
    assert main(["convert", "--format", "sbml", "bad.xml"]) == 2
    err = capsys.readouterr().err
    assert "bad.xml" in err and "line" in err


def test_convert_bad_standoff_line(work, capsys):
    (work / "standoff" / "doc01.a1").write_text("T1\tProtein zero 4\tmTOR\n")
    assert main(["convert", "--format", "standoff", "standoff/doc01.a1"]) == 2
    assert "doc01.a1:1" in capsys.readouterr().err


def test_convert_schema_error(work):
    (work / "bad.json").write_text('{"species":[{"id":"a","name":"A"}],"reactions":[],"edges":[{"species":"a","reaction":"r","role":"catalyst"}]}')
    assert main(["convert", "--format", "json", "bad.json"]) == 3


def test_annotate_and_idempotence(work, capsys):
    assert main(["convert", "--format", "standoff", "standoff/doc02.a1", "-o", "d.json"]) == 0
    assert main(["annotate", "d.json", "--lexicon", "lexicon.tsv", "-o", "a.json"]) == 0
    assert "gene signature coverage: " in capsys.readouterr().err
    assert main(["annotate", "a.json", "--lexicon", "lexicon.tsv", "-o", "b.json"]) == 0
    assert (work / "a.json").read_bytes() == (work / "b.json").read_bytes()


def test_annotate_empty_lexicon(work, capsys):
    (work / "empty.tsv").write_text("")
    assert main(["annotate", "triad.json", "--lexicon", "empty.tsv", "-o", "t.json"]) == 0
    err = capsys.readouterr().err
    assert "warning" in err and "coverage: 0.0%" in err


def test_annotate_missing_resource(work):
    assert main(["annotate", "triad.json", "--lexicon", "nope.tsv"]) == 2


def test_stats_golden(work):
    assert main(["stats", "triad.json", "-o", "s.csv", "--histogram", "h.csv"]) == 0
    assert (work / "s.csv").read_text() == (GOLDEN / "stats_triad.csv").read_text()
    assert (work / "h.csv").read_text() == (GOLDEN / "hist_triad.csv").read_text()
    rows = dict(line.split(",") for line in (work / "s.csv").read_text().splitlines() if not line.startswith("#"))
    assert (rows["components"], rows["isolated_species"], rows["max"]) == ("1", "0", "3")


def test_stats_empty_graph(work):
    (work / "e.json").write_text('{"species":[],"reactions":[],"edges":[]}')
    assert main(["stats", "e.json", "-o", "e.csv"]) == 0
    values = [line.split(",")[1] for line in (work / "e.csv").read_text().splitlines()[5:]]
    assert all(float(v) == 0 for v in values)


def test_compare_golden(work):
    assert main(["compare", "triad.json", "triad.json", "-o", "c.csv"]) == 0
    text = (work / "c.csv").read_text()
    assert text == (GOLDEN / "compare_triad.csv").read_text()
    assert "nmeq,sboeq,100.00,100.00,100.00,100.00" in text


def test_compare_text_table(work, capsys):
    assert main(["compare", "triad.json", "triad.json", "-o", "c.csv"]) == 0
    out = capsys.readouterr().out
    assert "nmeq, sboeq" in out and "100.00" in out


def test_compare_relaxed_label_and_all(work):
    assert main(["compare", "triad.json", "reference.json", "--species", "appeq/entov/wc", "--reaction", "sboisa"]) == 0
    assert main(["compare", "triad.json", "reference.json", "--all-strategies", "-o", "all.csv"]) == 0
    rows = [r for r in (work / "all.csv").read_text().splitlines() if not r.startswith("#")]
    assert len(rows) == 25


@pytest.mark.parametrize("flags", [["--species", "bogus"], ["--reaction", "sbofoo"], ["--cutoff", "300"]])
def test_compare_unknown_strategy(work, flags):
    assert main(["compare", "triad.json", "triad.json", *flags]) == 4


def test_compare_manifest_and_dump(work):
    assert main(["compare", "triad.json", "reference.json", "--manifest", "m.json", "--dump-matches", "d.jsonl", "-o", "c.csv"]) == 0
    man = json.loads((work / "m.json").read_text())
    assert man["components"] == [["a", 3]]
    assert man["approximate_components"] == {"nmeq, sboeq": []}
    assert man["wall_time_seconds"] >= 0
    assert man["config_hash"] in (work / "c.csv").read_text()
    dump = [json.loads(line) for line in (work / "d.jsonl").read_text().splitlines()]
    assert dump[0]["component"] == "a" and dump[0]["exact"] is True


def test_thread_env_cap(work, monkeypatch):
    assert main(["compare", "triad.json", "reference.json", "--all-strategies", "-o", "one.csv"]) == 0
    monkeypatch.setenv("PATHOVERLAP_THREADS", "2")
    assert main(["compare", "triad.json", "reference.json", "--all-strategies", "--threads", "4", "-o", "two.csv"]) == 0
    assert (work / "one.csv").read_bytes() == (work / "two.csv").read_bytes()


def test_missing_input(work):
    assert main(["stats", "nope.json"]) == 2
