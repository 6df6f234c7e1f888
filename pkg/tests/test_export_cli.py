import csv
import hashlib
import io
import json
import os
import subprocess
import sys

import pytest

from numsg.chains import (
    chain_children,
    count_infinite_chains,
    in_infinite_chain,
    is_fertile,
    is_type_c,
    left_gcd,
    max_descendant,
)
from numsg.cli import classify_record, main
from numsg.core import NumericalSemigroup
from numsg.errors import SemigroupError
from numsg.export import ExportGraph, ExportNode, build_graph, highlight_sets
from numsg.families import TABLE1, table1
from numsg.formulas import _M4_MOTIF_EDGES, _m4_motif_sets
from numsg.tree import multiplicity_subtree_root

G = NumericalSemigroup.from_gaps
N0 = NumericalSemigroup.natural()


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_subprocess(*argv, env_extra=None):
    env = dict(os.environ, **(env_extra or {}))
    proc = subprocess.run([sys.executable, "-m", "numsg", *argv], env=env, capture_output=True)
    return proc.returncode, proc.stdout, proc.stderr


# -- count ---------------------------------------------------------------------


def test_count_rows(capsys):
    code, out, _ = run(capsys, "count", "--genus", "5")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["genus", "count"]
    assert [int(r["count"]) for r in rows] == [1, 1, 2, 4, 7, 12]


def test_count_filtered(capsys):
    code, out, _ = run(capsys, "count", "--genus", "5", "--filter", "infinitechains")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["genus", "count", "filtered_count"]
    assert rows[5] == {"genus": "5", "count": "12", "filtered_count": "6"}


def test_count_multiplicity_four(capsys):
    code, out, _ = run(capsys, "count", "--genus", "40", "--multiplicity", "4",
                       "--filter", "infinitechains", "--format", "json")
    rows = json.loads(out)
    assert rows[40]["filtered_count"] == 13
    assert rows[2] == {"genus": 2, "count": 0, "filtered_count": 0}


def test_count_genus_below_root(capsys):
    code, out, _ = run(capsys, "count", "--genus", "2", "--multiplicity", "5")
    assert code == 0
    assert out.splitlines() == ["genus,count", "0,0", "1,0", "2,0"]


@pytest.mark.parametrize("argv", [
    ["count", "--genus", "-1"],
    ["count", "--genus", "x"],
    ["count", "--genus", "3", "--filter", "nope"],
    ["count", "--genus", "3", "--jobs", "0"],
    ["count"],
])
def test_count_bad_flags_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


# -- tree ----------------------------------------------------------------------


def test_tree_genus_zero(capsys):
    code, out, _ = run(capsys, "tree", "--genus", "0", "--format", "json")
    doc = json.loads(out)
    assert len(doc["nodes"]) == 1 and doc["edges"] == []
    assert doc["nodes"][0]["gaps"] == [] and doc["nodes"][0]["frobenius"] == -1


def test_tree_m4_motif_genus_4_to_7(capsys):
    code, out, _ = run(capsys, "tree", "--genus", "7", "--multiplicity", "4", "--filter",
                       "infinitechains", "--trim", "--from-genus", "4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    motif = _m4_motif_sets()
    by_key = {s.key: label for label, s in motif.items()}
    assert {n["key"] for n in doc["nodes"]} == set(by_key)
    edges = {(by_key[e["parent"]], by_key[e["child"]]) for e in doc["edges"]}
    assert edges == set(_M4_MOTIF_EDGES)
    root = doc["nodes"][0]
    assert root["key"] == motif["A"].key and root["label"] == "(2)_1"


def test_tree_without_from_genus_keeps_ordinary_root(capsys):
    code, out, _ = run(capsys, "tree", "--genus", "7", "--multiplicity", "4", "--filter",
                       "infinitechains", "--trim", "--format", "json")
    doc = json.loads(out)
    assert doc["nodes"][0]["label"] == "{0,4,→}"
    assert len(doc["nodes"]) == 8


def test_tree_trim_drops_other_multiplicities(capsys):
    _, out, _ = run(capsys, "tree", "--genus", "8", "--multiplicity", "3", "--trim", "--format", "json")
    assert {n["multiplicity"] for n in json.loads(out)["nodes"]} == {3}
    _, out, _ = run(capsys, "tree", "--genus", "8", "--multiplicity", "3", "--format", "json")
    assert len({n["multiplicity"] for n in json.loads(out)["nodes"]}) > 1


def test_tree_dot_shape(capsys):
    code, out, _ = run(capsys, "tree", "--genus", "3")
    assert out.startswith("digraph sgtree {\n") and out.endswith("}\n")
    assert out.count("->") == 1 + 2 + 4
    assert 'n0 [label="{0,→}", genus="0"];' in out


def test_tree_tikz(capsys):
    code, out, _ = run(capsys, "tree", "--genus", "7", "--multiplicity", "4", "--filter",
                       "infinitechains", "--trim", "--from-genus", "4", "--format", "tikz")
    assert code == 0
    assert out.startswith("\\begin{tikzpicture}") and out.rstrip().endswith("\\end{tikzpicture}")
    assert "\\Tree[.{$(2)_{1}$}" in out
    assert out.count("[.") == 7 and out.count("\\edge") == 6
    assert out.count("[") - out.count("\\edge [") == out.count("]") - out.count("\\edge [")


def test_tree_highlight(capsys):
    code, out, _ = run(capsys, "tree", "--genus", "13", "--multiplicity", "6", "--filter",
                       "infinitechains", "--trim", "--highlight", "tau:1", "--format", "json")
    doc = json.loads(out)
    marked = {n["key"] for n in doc["nodes"] if n["highlight"] == "tau"}
    assert marked == {table1(lab, 1).key for lab in TABLE1 if table1(lab, 1).genus <= 13}
    _, dot, _ = run(capsys, "tree", "--genus", "13", "--multiplicity", "6", "--filter",
                    "infinitechains", "--trim", "--highlight", "tau:1")
    assert 'class="tau", fontcolor=blue' in dot and "color=blue" in dot and "color=red" in dot


def test_tree_out_file(tmp_path, capsys):
    target = tmp_path / "t.dot"
    code, out, _ = run(capsys, "tree", "--genus", "4", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text(encoding="utf-8").startswith("digraph")


def test_tree_unwritable_path(tmp_path, capsys):
    bad = tmp_path / "missing" / "t.dot"
    code, _, err = run(capsys, "tree", "--genus", "3", "--out", str(bad))
    assert code == 1 and str(bad) in err


@pytest.mark.parametrize("argv", [
    ["tree", "--genus", "2", "--multiplicity", "4"],
    ["tree", "--genus", "5", "--trim"],
    ["tree", "--genus", "5", "--from-genus", "6"],
    ["tree", "--genus", "5", "--from-genus", "3"],
    ["tree", "--genus", "5", "--highlight", "tau"],
    ["tree", "--genus", "5", "--highlight", "zeta:1"],
])
def test_tree_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("numsg:")


# -- export graph --------------------------------------------------------------


def test_json_round_trip_identical_bytes():
    root = multiplicity_subtree_root(6)
    graph = build_graph(root, 18, in_infinite_chain, multiplicity=6, label_multiplicity=6,
                        highlights=["tau:1", "gamma-chain:1"])
    text = graph.to_json()
    again = ExportGraph.from_json(text)
    assert again.to_json() == text
    assert again.to_dot() == graph.to_dot()
    assert again.to_tikz() == graph.to_tikz()


def test_from_json_rejects_tampering():
    text = build_graph(N0, 3).to_json()
    doc = json.loads(text)
    doc["nodes"][1]["genus"] = 7
    with pytest.raises(SemigroupError):
        ExportGraph.from_json(json.dumps(doc))
    with pytest.raises(SemigroupError):
        ExportGraph.from_json(json.dumps({"format": "other"}))


def test_export_graph_validation():
    a = ExportNode.of(N0, "r")
    b = ExportNode.of(G([1]), "b")
    c = ExportNode.of(G([1, 2]), "c")
    with pytest.raises(SemigroupError):
        ExportGraph([a, a], [])
    with pytest.raises(SemigroupError):
        ExportGraph([a, b], [("", "zz", 1)])
    with pytest.raises(SemigroupError):
        ExportGraph([a, b, c], [("", "1", 1)])
    with pytest.raises(SemigroupError):
        ExportGraph([a], []).render("svg")


def test_highlight_sets():
    name, nodes = highlight_sets("gamma-chain:2", 40)
    assert name == "gamma-chain" and table1("S", 2) in nodes
    with pytest.raises(SemigroupError):
        highlight_sets("tau:0", 10)


# -- determinism ---------------------------------------------------------------


def _digest(data):
    return hashlib.sha256(data).hexdigest()


@pytest.mark.parametrize("fmt", ["dot", "json"])
def test_tree_export_bytes_stable_across_processes_and_jobs(fmt):
    base = ["tree", "--genus", "24", "--multiplicity", "6", "--filter", "infinitechains",
            "--trim", "--format", fmt]
    outs = set()
    for seed, jobs in [("0", "1"), ("1", "1"), ("12345", "4"), ("7", "3")]:
        code, out, _ = run_subprocess(*base, "--jobs", jobs, env_extra={"PYTHONHASHSEED": seed})
        assert code == 0
        outs.add(_digest(out))
    assert len(outs) == 1


def test_count_output_stable_across_jobs(capsys):
    _, a, _ = run(capsys, "count", "--genus", "16", "--filter", "infinitechains")
    _, b, _ = run(capsys, "count", "--genus", "16", "--filter", "infinitechains", "--jobs", "3")
    assert a == b


# -- classify ------------------------------------------------------------------


def test_classify_a(capsys):
    code, out, _ = run(capsys, "classify", "--gaps", "1,2,3,5")
    rec = json.loads(out)
    assert rec["in_infinite_chain"] and rec["chain_count"] == "infinite"
    assert rec["type_c"] and rec["left_gcd"] == 4


def test_classify_leaf(capsys):
    code, out, _ = run(capsys, "classify", "--gens", "4,5,6")
    rec = json.loads(out)
    assert rec["node_type"] == "leaf" and not rec["in_infinite_chain"]
    assert rec["max_descendant"] == rec["gaps"] == [1, 2, 3, 7]
    assert rec["chain_count"] == "not-in-chain"


def test_classify_hyperelliptic(capsys):
    _, out, _ = run(capsys, "classify", "--gaps", "1,3")
    rec = json.loads(out)
    assert rec["in_infinite_chain"] and rec["chain_count"] == 1 and rec["hyperelliptic"]


def test_classify_errors(capsys):
    code, _, err = run(capsys, "classify", "--gaps", "2")
    assert code == 2 and "witness 1 + 1" in err
    code, _, err = run(capsys, "classify", "--gens", "4,6")
    assert code == 2 and "common divisor 2" in err
    with pytest.raises(SystemExit) as exc:
        main(["classify", "--gaps", "1,x"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main(["classify", "--gaps", "1", "--gens", "1"])


def test_classify_record_self_consistent(upto):
    for s in upto(9):
        rec = json.loads(json.dumps(classify_record(s)))
        t = G(rec["gaps"])
        assert t == s
        assert rec["genus"] == len(rec["gaps"])
        assert rec["conductor"] == (max(rec["gaps"]) + 1 if rec["gaps"] else 0)
        assert rec["frobenius"] == rec["conductor"] - 1
        assert rec["multiplicity"] == t.multiplicity
        assert rec["effective_generators"] == t.effective_generators()
        assert rec["efficacy"] == len(rec["effective_generators"])
        assert rec["in_infinite_chain"] == in_infinite_chain(t)
        assert rec["left_gcd"] == (None if t.is_ordinary() else left_gcd(t))
        assert rec["chain_children"] == [list(c.gaps) for c in chain_children(t)]
        assert rec["fertile"] == is_fertile(t) and rec["type_c"] == is_type_c(t)
        if rec["in_infinite_chain"]:
            cc = count_infinite_chains(t)
            assert rec["chain_count"] == ("infinite" if cc.infinite else cc.n)
        elif not t.is_ordinary():
            assert rec["max_descendant"] == list(max_descendant(t).gaps)


# -- verify --------------------------------------------------------------------


def test_verify_m4(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "m4", "--max-genus", "25")
    assert code == 0 and "all match" in out


def test_verify_fertile_reports_genus_two(capsys):
    code, out, err = run(capsys, "verify", "--suite", "fertile", "--max-genus", "6")
    assert code == 1 and "genus 2" in err and "MISMATCH" in out


def test_verify_all_small(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all", "--max-genus", "8")
    for name in ("prime", "m4", "m6", "fertile", "majority"):
        assert f"suite {name}" in out
    assert code == 1  # the fertile suite fails at genus 2


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.startswith("numsg ")
