import csv
import io
import json

import pytest

from hopmst.bench import BenchConfig, BenchRecord, COLUMNS, emit_report, records_to_csv, records_to_json, run_bench
from hopmst.errors import InputError
from hopmst.graph import dump_graph, generate


def _config(**kw):
    base = dict(
        instances=[{"family": "gnp", "n": 30, "params": {"p": 0.3, "weights": "int"}, "seed": 1}],
        h=[5],
        epsilon=[0.5],
        seeds=[0],
    )
    base.update(kw)
    return BenchConfig(**base)


def test_single_cell():
    records, summary = run_bench(_config())
    assert len(records) == 1 and records[0].status == "ok"
    assert list(summary) == ["sampling"]


def test_rounds_column_follows_budget():
    records, _ = run_bench(_config(epsilon=[0.25, 0.5, 1.0]))
    assert [r.rounds_used for r in records] == [12, 6, 3]


def test_log_regime_rounds():
    import math

    cfg = _config(
        instances=[{"family": "gnp", "n": 256, "params": {"p": 0.05}, "seed": 2}],
        h=["auto"],
        epsilon=[1 / math.log2(256)],
    )
    records, _ = run_bench(cfg)
    assert records[0].status == "ok" and records[0].rounds_used == 24


def test_slack_and_ratio_fields():
    cfg = _config(
        instances=[{"family": "gnp", "n": 7, "params": {"p": 0.6, "weights": "int"}, "seed": 3}],
        h=[6],
        seeds=[0, 1, 2],
        algorithms=["sampling", "matching"],
    )
    records, summary = run_bench(cfg)
    assert len(records) == 4
    for r in records:
        assert r.diameter_slack == r.hop_diameter / r.h
        assert r.diameter_slack <= 4 * r.rounds_used
        assert (r.weight_ratio is None) == (r.opt_weight is None)
        assert r.opt_weight is not None
    assert set(summary) == {"matching", "sampling"}


def test_errors_are_rows():
    cfg = _config(
        instances=[
            {"family": "path", "n": 6},
            {"family": "gnp", "n": 40, "params": {"p": 0.001, "max_retries": 2}},
        ],
        h=[2, 5],
    )
    records, _ = run_bench(cfg)
    statuses = [r.status.split(":")[0] for r in records]
    assert statuses == ["InfeasibleError", "ok", "InputError"]


def test_file_instance(tmp_path):
    f = tmp_path / "g.txt"
    f.write_text(dump_graph(generate("wheel", 8)))
    records, _ = run_bench(_config(instances=[{"file": str(f), "id": "wheel8"}], h=[2]))
    assert records[0].instance == "wheel8" and records[0].status == "ok"


def test_config_validation(tmp_path):
    with pytest.raises(InputError):
        _config(h=[])
    with pytest.raises(InputError):
        _config(algorithms=["blossom"])
    with pytest.raises(InputError):
        _config(instances=[{"file": str(tmp_path / "missing.txt")}])
    with pytest.raises(InputError):
        BenchConfig.from_dict({"instances": [], "bogus": 1})


def test_csv_deterministic_without_timing():
    cfg = _config(seeds=[0, 1, 2], epsilon=[0.3, 1.0], algorithms=["sampling", "matching"])
    a = records_to_csv(run_bench(cfg)[0], timing=False)
    b = records_to_csv(run_bench(cfg)[0], timing=False)
    assert a == b
    header = next(csv.reader(io.StringIO(a)))
    assert header == [c for c in COLUMNS if c != "wall_time"]


def test_parallel_matches_serial():
    cfg = _config(seeds=[0, 1, 2, 3])
    serial = records_to_csv(run_bench(cfg)[0], timing=False)
    cfg.workers = 2
    assert records_to_csv(run_bench(cfg)[0], timing=False) == serial


def test_json_mirrors_csv():
    records, _ = run_bench(_config())
    rows = json.loads(records_to_json(records))
    assert list(rows[0]) == COLUMNS


def test_report_shapes():
    one = [BenchRecord("a", 5, 4, 4, 0.5, "sampling", 0, "ok", 4.0, 4, 6, 0.01, None, None, 1.0)]
    text = emit_report(one)
    lines = text.strip().splitlines()
    assert lines[0] == "# sampling" and len(lines) == 3
    # missing opt leaves the ratio cell empty
    assert lines[2].split(",")[3] == ""
    mixed = one + [BenchRecord("a", 5, 4, 4, None, "matching", None, "ok", 4.0, 4, 2, 0.01, 4.0, 1.0, 1.0)]
    assert json.loads(emit_report(mixed, "json")).keys() == {"matching", "sampling"}
    assert "# matching" in emit_report(mixed)
    with pytest.raises(InputError):
        emit_report([])
