import io
import json
import subprocess
import sys

import pytest

from gradedverse.cli import run
from gradedverse.io import graph_from_json
from gradedverse.stages import build_stage


def call(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


CHAIN = '{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"]]}'


@pytest.fixture
def chain_file(tmp_path):
    p = tmp_path / "g.json"
    p.write_text(CHAIN)
    return str(p)


def test_hf_encode_empty():
    assert call("hf", "encode", "{}") == (0, "0\n", "")


def test_hf_commands():
    assert call("hf", "decode", "11")[1] == "{{},{{}},{{},{{}}}}\n"
    assert call("hf", "tc", "{{{}}}")[1] == "{{},{{}}}\n"
    code, out, _ = call("hf", "digraph", "{{}}")
    g = graph_from_json(out)
    assert code == 0 and len(g.vertices) == 2 and len(g.edges) == 1
    obj = json.loads(call("--format", "json", "hf", "encode", "{{}}")[1])
    assert obj == {"set": "{{}}", "code": "1"}


def test_gamma_stage_two_matches_builder():
    code, out, _ = call("gamma", "stage", "2")
    g = graph_from_json(out)
    ref = build_stage(2).graph
    assert code == 0 and len(g.vertices) == 6
    assert g.edges == ref.edges and all(g.value(v) == ref.value(v) for v in ref.vertices)


def test_gamma_stage_bound_override():
    assert call("gamma", "stage", "4")[0] == 1
    assert call("--bound", "2", "gamma", "stage", "3")[0] == 1


def test_gamma_embed(chain_file):
    code, out, _ = call("gamma", "embed", chain_file, "--mode", "order-preserving", "--seed", "5")
    obj = json.loads(out)
    assert code == 0 and obj["verified"] and obj["seed"] == 5 and obj["embed_mode"] == "order-preserving"
    assert set(obj["map"]) == {"a", "b", "c"}


def test_stdin_graph():
    code, out, _ = call("grade", "-", stdin=CHAIN)
    assert code == 0
    assert json.loads(out)["values"] == {"a": "0", "b": "1", "c": "2"}


def test_surrogate_demo_verified():
    code, out, _ = call("surrogate", "demo", "{{},{{}}}")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "VERIFIED" and len(lines) == 4
    code, out, _ = call("surrogate", "demo", "{{},{{}}}", "--lambdas", "1,2,3", "--format", "json")
    obj = json.loads(out)
    assert obj["verdict"] == "VERIFIED" and obj["lambdas"] == ["1", "2", "3"]


def test_surrogate_embed(chain_file):
    code, out, _ = call("--mode", "random", "surrogate", "embed", chain_file)
    assert code == 0 and json.loads(out)["verified"]


def test_collapse_commands(chain_file):
    code, out, _ = call("collapse", "realize", chain_file)
    obj = json.loads(out)
    assert code == 0 and obj["a"] == {"set": "{{{}}}", "code": "2"}
    assert call("collapse", "j", "{}", "--format", "text")[1] == "{{{}}}\n"


def test_surreal_and_hypnagogic():
    assert call("surreal", "cmp", "{|}", "{{|}|}")[1] == "<\n"
    assert call("surreal", "cmp", "{{|}|}", "{{|{|}},{|}|}")[1] == "=\n"
    assert call("surreal", "cmp", "{{|}|}", "{|}")[1] == ">\n"
    assert len(call("surreal", "born", "2")[1].splitlines()) == 7
    g = graph_from_json(call("hypnagogic", "stage", "1")[1])
    assert len(g.vertices) == 3 and len(g.edges) == 2


def test_dot_output(chain_file):
    out = call("--format", "dot", "grade", chain_file)[1]
    assert out.startswith("digraph") and '"a" -> "b";' in out


@pytest.mark.parametrize("argv", [
    ("--seed", "x", "hf", "encode", "{}"),
    ("--seed", "-1", "hf", "encode", "{}"),
    ("--lambdas", "3,2", "surrogate", "demo", "{}"),
    ("gamma", "stage", "-1"),
    ("nosuch",),
    ("hf", "encode", "{"),
    ("grade", "/nonexistent/graph.json"),
    ("--format", "dot", "surreal", "born", "1"),
    ("check", "--only", "99"),
])
def test_usage_errors_exit_2(argv, capsys):
    assert call(*argv)[0] == 2


def test_domain_errors_exit_1():
    assert call("grade", "-", stdin='{"vertices":["a","b"],"edges":[["a","b"],["b","a"]]}')[0] == 1
    assert call("surreal", "cmp", "{{{|}|}|{|}}", "{|}")[0] == 1
    assert call("hf", "encode", "{{{{{{{{}}}}}}}}")[0] == 1


def test_deterministic_output(chain_file):
    for argv in (("--seed", "3", "--mode", "random", "surrogate", "demo", "{{{}},{}}"),
                 ("--seed", "9", "--mode", "random", "gamma", "embed", chain_file)):
        assert call(*argv) == call(*argv)


def test_json_round_trips_through_schema():
    for argv in (("gamma", "stage", "3"), ("hypnagogic", "stage", "2"), ("hf", "digraph", "{{{}},{}}")):
        out = call(*argv)[1]
        g = graph_from_json(out)
        obj = json.loads(out)
        assert len(g.vertices) == len(obj["vertices"]) and len(g.edges) == len(obj["edges"])


def test_check_subset():
    code, out, _ = call("check", "--only", "5,11")
    assert code == 0 and out.count("[PASS]") == 2 and "2/2 criteria passed" in out


def test_console_entry_point_subprocess():
    # identical argv and seed give byte-identical output across processes
    cmd = [sys.executable, "-m", "gradedverse", "--seed", "4", "--mode", "random", "surrogate", "demo", "{{}}"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.startswith(b"VERIFIED")
