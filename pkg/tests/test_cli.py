import json

import pytest

from twistlab.cli import main

PAIR_CONFIG = {
    "curves": ["a", "b"],
    "multicurves": {"A": ["a"], "B": ["b"]},
    "dist": [["a", "b", 3]],
    "inter": [["a", "b", 1]],
}


@pytest.fixture
def config_path(tmp_path):
    path = tmp_path / "sys.json"
    path.write_text(json.dumps(PAIR_CONFIG))
    return str(path)


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_success(capsys, config_path):
    code, out, _ = _run(capsys, ["analyze", "--config", config_path, "--word", "a^201 b^-201"])
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["theorem"] == "Main3.1"
    assert doc["result"]["exact"] == 2
    assert doc["tool_version"]
    assert any("M" in w for w in doc["warnings"])


def test_analyze_condition_unmet_exit_one(capsys, config_path):
    code, out, _ = _run(capsys, ["analyze", "--config", config_path, "--word", "a^10 b^10"])
    assert code == 1
    doc = json.loads(out)
    assert doc["result"]["theorem"] == "None"
    assert doc["result"]["pseudo_anosov"] is None
    assert doc["result"]["conditions"]


def test_analyze_malformed_word_exit_two(capsys, config_path):
    code, out, err = _run(capsys, ["analyze", "--config", config_path, "--word", "a^0"])
    assert code == 2
    assert not out
    assert "zero exponent" in err


def test_analyze_malformed_config_exit_two(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"curves": ["a"], "zzz": 1}))
    code, _, err = _run(capsys, ["analyze", "--config", str(bad), "--word", "a^2 b^2"])
    assert code == 2
    assert "unknown configuration fields" in err


def test_analyze_forced_theorem(capsys, config_path):
    code, out, _ = _run(
        capsys,
        ["analyze", "--config", config_path, "--word", "a^10 b^-10", "--theorem", "main31"],
    )
    assert code == 1
    doc = json.loads(out)
    assert doc["result"]["theorem"] == "Main3.1"
    assert doc["result"]["verified"] is False


def test_analyze_m_override(capsys, config_path):
    code, out, _ = _run(
        capsys,
        ["analyze", "--config", config_path, "--word", "a^11 b^-11", "--theorem", "main31", "--M", "5"],
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["verified"] is True
    assert doc["warnings"] == []  # explicit M carries no default warning


def test_farey_dist(capsys):
    code, out, _ = _run(capsys, ["farey", "dist", "1/0", "0/1"])
    assert code == 0
    assert json.loads(out)["result"] == {"distance": 1}


def test_farey_verify(capsys):
    code, out, _ = _run(
        capsys,
        ["farey", "verify", "--a", "1/0", "--b", "3/5", "--word", "a^201 b^-201", "--mmax", "2"],
    )
    assert code == 0
    doc = json.loads(out)
    rows = doc["result"]["rows"]
    assert [r["distance"] for r in rows] == [6, 12]
    assert doc["warnings"]


def test_farey_verify_rejects_bad_alphabet(capsys):
    code, _, err = _run(
        capsys,
        ["farey", "verify", "--a", "1/0", "--b", "3/5", "--word", "a^201 c^-201"],
    )
    assert code == 2
    assert "letters a and b" in err


def test_thurston_command(capsys, tmp_path):
    matrix = tmp_path / "N.json"
    matrix.write_text("[[1]]")
    code, out, _ = _run(
        capsys,
        ["thurston", "--matrix", str(matrix), "--word", "A B^-1", "--precision", "1e-9"],
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["hyperbolic"] is True
    lo, hi = (float(x) for x in doc["result"]["lambda_interval"])
    assert lo <= 2.618033988749895 <= hi
    assert hi - lo < 1e-8
    assert doc["result"]["trace_poly"]["mu_coefficients"] == [2, 1]


def test_thurston_not_hyperbolic_is_reported(capsys, tmp_path):
    matrix = tmp_path / "N.json"
    matrix.write_text("[[1]]")
    code, out, _ = _run(capsys, ["thurston", "--matrix", str(matrix), "--word", "A"])
    assert code == 0
    assert json.loads(out)["result"]["hyperbolic"] is False


def test_ratio_command(capsys, config_path):
    code, out, _ = _run(capsys, ["ratio", "--config", config_path, "--word", "a^201 b^-201"])
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["lC"] == 2
    assert doc["result"]["tau_within_bound"] is True
    lo, hi = doc["result"]["tau_interval"]
    assert float(lo) <= float(hi)


def test_raag_command(capsys, config_path):
    code, out, _ = _run(
        capsys,
        ["raag", "--config", config_path, "--mode", "two_multicurves", "--multicurves", "A,B"],
    )
    assert code == 0
    assert json.loads(out)["result"]["required_power"] == 204


def test_minword_command(capsys, config_path):
    code, out, _ = _run(
        capsys,
        ["minword", "--config", config_path, "--word", "a^204 b^-204 a^204 b^-204", "--A", "A", "--B", "B"],
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["collected"] == "a^408 b^-408"
    assert doc["result"]["verdict"] == "strictly_greater"


def test_minword_zero_total_exit_one(capsys, config_path):
    code, out, _ = _run(
        capsys,
        ["minword", "--config", config_path, "--word", "a^204 b^-204 a^-204 b^204", "--A", "A", "--B", "B"],
    )
    assert code == 1
    assert json.loads(out)["error"]["type"] == "ZeroTotal"


def test_batch(capsys, tmp_path, config_path):
    lines = [
        json.dumps({"mode": "farey_dist", "x": "1/0", "y": "3/5"}),
        json.dumps({"mode": "analyze", "config": PAIR_CONFIG, "word": "a^201 b^-201"}),
        "{not json",
    ]
    batch = tmp_path / "batch.jsonl"
    batch.write_text("\n".join(lines) + "\n")
    code, out, _ = _run(capsys, ["batch", str(batch)])
    assert code == 0
    docs = [json.loads(line) for line in out.strip().splitlines()]
    assert len(docs) == 4
    assert docs[0]["status"] == "ok" and docs[0]["result"]["distance"] == 3
    assert docs[1]["status"] == "ok"
    assert docs[2]["status"] == "error"
    assert docs[3] == {"pass": 2, "fail": 1}


def test_batch_empty_file(capsys, tmp_path):
    batch = tmp_path / "empty.jsonl"
    batch.write_text("")
    code, out, _ = _run(capsys, ["batch", str(batch)])
    assert code == 0
    assert json.loads(out.strip()) == {"pass": 0, "fail": 0}


def test_batch_order_is_input_order(capsys, tmp_path):
    pairs = [("1/0", "0/1"), ("1/0", "1/2"), ("1/0", "3/5")]
    batch = tmp_path / "b.jsonl"
    batch.write_text(
        "\n".join(json.dumps({"mode": "farey_dist", "x": x, "y": y}) for x, y in pairs)
    )
    code, out, _ = _run(capsys, ["batch", str(batch)])
    docs = [json.loads(line) for line in out.strip().splitlines()]
    assert [d["result"]["distance"] for d in docs[:-1]] == [1, 2, 3]


def test_repeat_runs_byte_identical(capsys, config_path):
    _, out1, _ = _run(capsys, ["analyze", "--config", config_path, "--word", "a^201 b^-201"])
    _, out2, _ = _run(capsys, ["analyze", "--config", config_path, "--word", "a^201 b^-201"])
    assert out1 == out2


def test_analyze_forced_cycle(capsys, tmp_path):
    config = {
        "curves": ["x", "y"],
        "multicurves": {"X": ["x"], "Y": ["y"]},
        "dist": [["x", "y", 3]],
        "inter": [["x", "y", 1]],
    }
    path = tmp_path / "c.json"
    path.write_text(json.dumps(config))
    code, out, _ = _run(
        capsys,
        [
            "analyze",
            "--config",
            str(path),
            "--word",
            "x^205 y^205",
            "--theorem",
            "multicycle35",
            "--cycle",
            "X,Y",
        ],
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["theorem"] == "MultiCycle3.5"
    assert [doc["result"]["lower"], doc["result"]["upper"]] == [2, 6]


def test_farey_verify_threshold_violation(capsys):
    code, out, _ = _run(
        capsys,
        [
            "farey", "verify", "--a", "1/0", "--b", "3/5",
            "--word", "a^100 b^-201", "--threshold", "200",
        ],
    )
    assert code == 1
    assert json.loads(out)["error"]["type"] == "ConditionUnmet"


def test_analyze_empty_word_is_identity(capsys, config_path):
    code, out, _ = _run(capsys, ["analyze", "--config", config_path, "--word", ""])
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["exact"] == 0
    assert doc["result"]["pseudo_anosov"] is False


def test_text_format(capsys, config_path):
    code, out, _ = _run(
        capsys,
        ["analyze", "--config", config_path, "--word", "a^201 b^-201", "--format", "text"],
    )
    assert code == 0
    assert "result.theorem: Main3.1" in out


def test_verify_sample_batch_mode(capsys, tmp_path):
    batch = tmp_path / "s.jsonl"
    batch.write_text(
        json.dumps({"mode": "verify_sample", "count": 2, "cap": 402, "mmax": 2}) + "\n"
    )
    code, out, _ = _run(capsys, ["batch", str(batch)])
    assert code == 0
    docs = [json.loads(line) for line in out.strip().splitlines()]
    assert docs[0]["result"]["count"] == 2
    assert len(docs[0]["result"]["instances"]) == 2
