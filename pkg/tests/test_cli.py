from __future__ import annotations

import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIXTURES, chain, i_cross, i_fan, i_fan3
from dagcross.cli import main
from dagcross.documents import (
    dump_certificate,
    dump_graph,
    load_certificate,
    load_dot,
    load_graph,
    read_graph,
)
from dagcross.engine import solve
from dagcross.errors import DocumentError
from dagcross.generator import GenConfig, GenMode, generate
from dagcross.graph import Instance
from dagcross.normalize import GeneralCertificate, decide_linkage


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, [json.loads(line) for line in err.splitlines()]


# -- documents -----------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_graph_round_trip(name):
    text = dump_graph(FIXTURES[name]())
    assert dump_graph(load_graph(text)) == text
    assert load_graph(text) == FIXTURES[name]()


def test_general_round_trip():
    text = dump_graph(chain())
    assert '"mode": "general"' in text
    assert dump_graph(load_graph(text)) == text


def test_one_key_per_line():
    lines = dump_graph(i_fan()).splitlines()
    assert [json.loads("{" + line.strip("{},") + "}") for line in lines[:2]] == [
        {"format": "dagcross-graph/1"},
        {"mode": "strict"},
    ]
    assert len(lines) == 6


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_certificate_round_trip(name):
    text = dump_certificate(solve(FIXTURES[name]()))
    assert dump_certificate(load_certificate(text)) == text


def test_general_certificate_round_trip():
    for gi in (chain(), generate(GenConfig(n=10, seed=4, mode=GenMode.GENERAL))):
        text = dump_certificate(GeneralCertificate.from_result(decide_linkage(gi)))
        assert dump_certificate(load_certificate(text)) == text


@settings(max_examples=40, deadline=None)
@given(st.integers(5, 30), st.integers(0, 10_000), st.sampled_from(list(GenMode)))
def test_generated_round_trip(n, seed, mode):
    text = dump_graph(generate(GenConfig(n=n, seed=seed, mode=mode)))
    assert dump_graph(load_graph(text)) == text


def test_malformed_documents():
    good = json.loads(dump_graph(i_fan()))
    with pytest.raises(DocumentError, match='"x"'):
        load_graph(json.dumps({**good, "edges": [["s1", "x"]]}))
    with pytest.raises(DocumentError, match="duplicate"):
        load_graph(json.dumps({**good, "vertices": ["s1", "s1"]}))
    with pytest.raises(DocumentError, match="format"):
        load_graph(json.dumps({**good, "format": "other"}))
    with pytest.raises(DocumentError):
        load_graph("[1, 2]")
    with pytest.raises(DocumentError):
        load_certificate('{"format": "dagcross-certificate/1", "kind": "banana"}')


def test_dot_import():
    dot = """
    digraph G {
      s1 [role=source, index=1]; s2 [role=source, index=2];
      t1 [role=sink, index=1]; "t2" [role="sink", index="2"];
      s1 -> v; s2 -> v; v -> t1; v -> t2;
    }
    """
    inst = load_dot(dot)
    assert inst == i_fan()
    assert read_graph(dot) == i_fan()
    with pytest.raises(DocumentError, match="without gaps"):
        load_dot("digraph { a [role=source, index=2]; a -> b; }")


# -- commands ------------------------------------------------------------------


def test_solve_exit_codes(files, capsys):
    code, out, _ = run(["solve", files("cross.json", dump_graph(i_cross()))], capsys)
    assert code == 10 and json.loads(out)["kind"] == "cross"
    code, out, _ = run(["solve", files("fan.json", dump_graph(i_fan()))], capsys)
    assert code == 0 and json.loads(out)["rim"] == ["s1", "s2", "t2", "t1"]


def test_solve_malformed_label(files, capsys):
    doc = json.loads(dump_graph(i_fan()))
    doc["edges"].append(["v", "ghost"])
    code, out, diags = run(["solve", files("bad.json", json.dumps(doc))], capsys)
    assert code == 2 and out == ""
    assert "ghost" in diags[0]["message"]


def test_solve_invalid_instance(files, capsys):
    fan = i_fan()
    broken = Instance(fan.graph.edit(drop_edges=[("s2", "v")]), fan.sources, fan.sinks)
    code, _, diags = run(["solve", files("b.json", dump_graph(broken))], capsys)
    assert code == 2
    assert {"error": "InvalidInstance", "level": "error", "message": "internal vertex v has in-degree 1"} in diags


def test_solve_mode_flags(files, capsys):
    code, _, diags = run(["solve", "--general", files("fan.json", dump_graph(i_fan()))], capsys)
    assert code == 2 and diags[0]["error"] == "Refusal"
    code, _, _ = run(["solve", "--strict", files("chain.json", dump_graph(chain()))], capsys)
    assert code == 2
    code, out, _ = run(["solve", "--general", files("chain2.json", dump_graph(chain()))], capsys)
    assert code == 10 and json.loads(out)["paths"] == [["a", "x", "c"], ["b", "y", "d"]]


def test_verify(files, capsys):
    fan = files("fan.json", dump_graph(i_fan()))
    emb = files("emb.json", dump_certificate(solve(i_fan())))
    crs = files("crs.json", dump_certificate(solve(i_cross())))
    code, out, _ = run(["verify", fan, emb], capsys)
    assert code == 0 and json.loads(out)["verdict"] == "accept"
    code, out, diags = run(["verify", fan, crs], capsys)
    assert code == 11
    assert any("paths not present in graph" in d["message"] for d in diags)


def test_verify_tampered_rotation(files, capsys):
    doc = json.loads(dump_certificate(solve(i_fan())))
    rot = doc["rotation"]["v"]
    rot[0], rot[1] = rot[1], rot[0]
    cert = files("t.json", json.dumps(doc))
    code, out, _ = run(["verify", files("fan.json", dump_graph(i_fan())), cert], capsys)
    assert code == 11
    assert any(f.startswith("Euler check failed") for f in json.loads(out)["failures"])


def test_verify_kind_mismatch(files, capsys):
    general = GeneralCertificate.from_result(decide_linkage(chain()))
    code, _, diags = run(
        ["verify", files("fan.json", dump_graph(i_fan())), files("g.json", dump_certificate(general))], capsys
    )
    assert code == 2 and diags[0]["error"] == "KindMismatch"


def test_verify_general(files, capsys):
    gi = generate(GenConfig(n=11, seed=2, density=0.5, mode=GenMode.GENERAL))
    graph = files("g.json", dump_graph(gi))
    code, out, _ = run(["solve", graph], capsys)
    cert = files("c.json", out)
    assert run(["verify", graph, cert], capsys)[0] == 0
    assert code in (0, 10)


def test_oracle(files, capsys):
    code, out, _ = run(["oracle", files("f3.json", dump_graph(i_fan3()))], capsys)
    assert code == 10 and json.loads(out)["cross"]
    assert run(["solve", files("f3b.json", dump_graph(i_fan3()))], capsys)[0] == 10
    big = generate(GenConfig(n=30, seed=1, mode=GenMode.DRAWABLE))
    code, _, diags = run(["oracle", "--max-vertices", "14", files("big.json", dump_graph(big))], capsys)
    assert code == 2 and "capped at 14" in diags[0]["message"]
    code, out, _ = run(["oracle", files("chain.json", dump_graph(chain()))], capsys)
    assert code == 10 and json.loads(out)["linkage"]


def test_gen_and_normalize(files, capsys, tmp_path):
    out_path = tmp_path / "g.json"
    assert run(["gen", "--mode", "general", "--seed", "3", "--n", "10", "--out", str(out_path)], capsys)[0] == 0
    trace = tmp_path / "trace.jsonl"
    code, out, diags = run(["normalize", str(out_path), "--trace", str(trace)], capsys)
    assert code == 0
    assert out or diags[0]["verdict"] == "no-linkage"
    code, out, _ = run(["normalize", files("chain.json", dump_graph(chain()))], capsys)
    assert load_graph(out).sources == ("a", "b")


def test_svg_output(files, capsys, tmp_path):
    svg = tmp_path / "fan.svg"
    code, _, _ = run(["solve", files("fan.json", dump_graph(i_fan())), "--svg", str(svg)], capsys)
    text = svg.read_text()
    assert code == 0 and text.startswith("<svg") and text.count("<line") == 4
    code, _, _ = run(["solve", files("c.json", dump_graph(i_cross())), "--svg", str(svg)], capsys)
    assert code == 10 and "#d62728" in svg.read_text()


def test_gen_pipe_into_solve_subprocess():
    gen = subprocess.run(
        [sys.executable, "-m", "dagcross", "gen", "--mode", "drawable", "--seed", "7"],
        capture_output=True, text=True, check=True,
    )
    solved = subprocess.run([sys.executable, "-m", "dagcross", "solve", "-"], input=gen.stdout, capture_output=True, text=True)
    assert solved.returncode == 0
    assert json.loads(solved.stdout)["kind"] == "embedding"


def test_exit_codes_are_stable(files, capsys):
    golden = {"fan": 0, "planar4": 0, "glue": 0, "cross": 10, "fan3": 10, "k22": 10}
    for name, expected in golden.items():
        path = files(f"{name}.json", dump_graph(FIXTURES[name]()))
        assert run(["solve", path], capsys)[0] == expected
