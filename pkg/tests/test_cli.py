import json

import pytest

from hopmst.cli import main, parse_seeds
from hopmst.graph import dump_graph, generate

TRIANGLE = "p 3 3\ne 0 1 1\ne 1 2 1\ne 0 2 5\n"


@pytest.fixture
def gfile(tmp_path):
    def write(text, name="g.txt"):
        f = tmp_path / name
        f.write_text(text)
        return str(f)

    return write


def test_solve_json(gfile, capsys):
    path = gfile(TRIANGLE)
    assert main(["solve", "--input", path, "--h", "2", "--epsilon", "0.5", "--seed", "3", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert set(doc) >= {"root", "parent", "edges", "total_weight", "hop_diameter", "rounds_used", "seed"}
    assert doc["total_weight"] == 2 and doc["seed"] == 3


def test_global_flags_before_subcommand(gfile, capsys):
    path = gfile(TRIANGLE)
    assert main(["--format", "json", "--seed", "3", "solve", "--input", path, "--h", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["seed"] == 3


def test_solve_trace_and_determinism(gfile, tmp_path, capsys):
    path = gfile(dump_graph(generate("gnp", 40, {"p": 0.2, "weights": "int"}, seed=1)))
    outs = []
    for k in range(2):
        trace = tmp_path / f"t{k}.json"
        out = tmp_path / f"o{k}.json"
        args = ["solve", "--input", path, "--h", "6", "--epsilon", "0.4", "--seed", "9",
                "--trace", str(trace), "--output", str(out), "--format", "json"]
        assert main(args) == 0
        outs.append((trace.read_bytes(), out.read_bytes()))
    assert outs[0] == outs[1]
    rounds = json.loads(outs[0][0])
    assert {"active", "sampled", "merges", "partial_weight"} <= set(rounds[0])
    merge = rounds[0]["merges"][0]
    assert {"u", "target", "path", "weight"} <= set(merge)


def test_solve_trials_and_matching(gfile, capsys):
    path = gfile(dump_graph(generate("star", 6)))
    assert main(["solve", "--input", path, "--h", "2", "--trials", "4", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["total_weight"] == 5
    assert main(["solve", "--algo", "matching", "--input", path, "--h", "2"]) == 0
    assert capsys.readouterr().out.startswith("weight 5.0")


def test_exit_codes(gfile):
    assert main(["solve", "--input", gfile("p 4 3\ne 0 1 1\ne 1 2 1\ne 2 3 1\n"), "--h", "2", "--quiet"]) == 1
    assert main(["solve", "--input", gfile("p 3 1\ne 0 1 1\n"), "--h", "2", "--quiet"]) == 1
    assert main(["solve", "--input", gfile("p 2 1\ne 0 0 1\n"), "--h", "2", "--quiet"]) == 2
    assert main(["solve", "--input", "/nonexistent/g.txt", "--h", "2", "--quiet"]) == 2


def test_dist(gfile, capsys):
    path = gfile(TRIANGLE)
    assert main(["dist", "--input", path, "--source", "0", "--h", "1"]) == 0
    assert capsys.readouterr().out.split() == ["0.0", "1.0", "5.0"]
    assert main(["dist", "--input", gfile("p 3 2\ne 0 1 1\ne 1 2 1\n", "p.txt"), "--source", "0", "--h", "1",
                 "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["dist"] == [0.0, 1.0, None]


def test_oracle(gfile, capsys):
    path = gfile(TRIANGLE)
    assert main(["oracle", "--input", path, "--h", "2", "--format", "json",
                 "--ratios", "--epsilon", "0.5", "--seeds", "0..9"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["opt_weight"] == 2 and doc["ratios"]["runs"] == 10
    assert main(["oracle", "--input", path, "--h", "1", "--quiet"]) == 1


def test_verify(gfile, tmp_path, capsys):
    g = generate("gnp", 7, {"p": 0.5, "weights": "int"}, seed=4)
    path = gfile(dump_graph(g))
    assert main(["oracle", "--input", path, "--h", "6", "--format", "json"]) == 0
    witness = json.loads(capsys.readouterr().out)["witness"]
    ref = tmp_path / "ref.json"
    ref.write_text(json.dumps(witness))
    assert main(["verify", "--input", path, "--h", "6", "--epsilon", "0.5", "--seed", "1",
                 "--reference", str(ref), "--trials", "200"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["claim_med"] and report["claim_hard"]["pass"] and report["sum_exps"]
    assert all({"increment", "phi"} <= set(r) for r in report["per_round"])


def test_bench_and_gen(tmp_path, capsys):
    g = tmp_path / "g.txt"
    assert main(["gen", "--family", "gnp", "--n", "12", "--p", "0.4", "--weights", "int",
                 "--seed", "5", "--output", str(g)]) == 0
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "instances": [{"file": str(g)}, {"family": "wheel", "n": 9}],
        "h": [4], "epsilon": [0.5, 1.0], "seeds": [0, 1], "algorithms": ["sampling", "matching"],
    }))
    outs = []
    for k in range(2):
        out = tmp_path / f"b{k}.csv"
        assert main(["bench", "--config", str(cfg), "--output", str(out), "--no-timing",
                     "--report", str(tmp_path / "r.csv")]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    assert len(outs[0].decode().strip().splitlines()) == 1 + 2 * (2 * 2 + 1)
    assert (tmp_path / "r.csv").read_text().startswith("# matching")


def test_parse_seeds():
    assert parse_seeds("0..3") == [0, 1, 2, 3]
    assert parse_seeds("4,7") == [4, 7]
