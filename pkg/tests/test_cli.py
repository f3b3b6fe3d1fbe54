import json

from genlimit.cli import main


def read_jsonl(path):
    return [json.loads(line) for line in path.read_text().splitlines()]


def test_run_subcommand(tmp_path):
    out = tmp_path / "run.jsonl"
    assert main(["run", "--collection", "cofinite1", "--target", "2",
                 "--generator", "greedy", "--horizon", "3",
                 "--out", str(out)]) == 0
    rows = read_jsonl(out)
    assert [list(r) for r in rows[:-1]] == [["t", "x", "z", "valid"]] * 3
    assert list(rows[-1]["summary"]) == ["t_star", "violations", "verdict"]


def test_run_feedback_subcommand(tmp_path):
    out = tmp_path / "fb.jsonl"
    assert main(["run-feedback", "--collection", "evenodd", "--target",
                 "1", "--generator", "greedy", "--horizon", "2",
                 "--out", str(out)]) == 0
    rows = read_jsonl(out)
    assert list(rows[0]) == ["t", "x", "y", "a", "z", "valid"]


def test_config_file_with_overrides(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "collection": "evenodd", "target": 1,
        "generator": "probe-feedback",
        "generator_params": {"probes": [-2]}, "horizon": 5}))
    out = tmp_path / "fb.jsonl"
    assert main(["run-feedback", "--config", str(cfg), "--horizon", "2",
                 "--out", str(out)]) == 0
    rows = read_jsonl(out)
    assert len(rows) == 3  # horizon flag overrode the config file
    assert rows[0]["y"] == -2


def test_check_and_dimension_subcommands(tmp_path):
    out = tmp_path / "check.jsonl"
    assert main(["check", "breadth", "--collection", "cofinite1",
                 "--target", "1", "--generator", "exhaustive-critical",
                 "--horizon", "30", "--out", str(out)]) == 0
    assert read_jsonl(out)[0]["verdict"] == "stable"
    assert main(["check", "nonuniform", "--collection", "cofinite1",
                 "--target", "2", "--generator", "greedy",
                 "--horizon", "40", "--permutations", "3",
                 "--out", str(out)]) == 0
    assert read_jsonl(out)[0]["verdict"] == "ok"
    assert main(["dimension", "closure", "--collection", "cofinite12",
                 "--d", "2", "--out", str(out)]) == 0
    record = read_jsonl(out)[0]
    assert record["found"] and len(record["witness_set"]) == 2


def test_adversary_subcommands(tmp_path):
    out = tmp_path / "adv.jsonl"
    assert main(["adversary", "exhaustive-lb", "--collection", "tails",
                 "--generator", "exhaustive-critical",
                 "--out", str(out)]) == 0
    record = read_jsonl(out)[0]
    assert record["verdict"] == "violation"
    assert record["verified"] == "confirmed"
    assert main(["adversary", "mq", "--mq-generator", "closure-prober",
                 "--out", str(out)]) == 0
    assert read_jsonl(out)[0]["verified"] == "confirmed"
    assert main(["adversary", "existence-violation", "--collection",
                 "cofinite1", "--target", "1", "--out", str(out)]) == 0
    assert read_jsonl(out)[0]["verdict"] == "condition-satisfied"
