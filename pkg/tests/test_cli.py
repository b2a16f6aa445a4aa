import csv
import io
import json

import pytest

import logsymp
from run_logger import RunLogger

RUNNING_GERM = {"complex": {"kind": "germ", "vertices": 3}, "matrix": [[0, 1, -1], [-1, 0, 1], [1, -1, 0]]}
ZERO_SUM_GERM = {"complex": {"kind": "germ", "vertices": 3}, "matrix": [[0, 1, 2], [-1, 0, 1], [-2, -1, 0]]}
PENTAGON = {"vertices": 5, "edges": [
    {"e": [0, 1], "orders": {"3": 2}}, {"e": [1, 2], "orders": {"4": 2}}, {"e": [2, 3], "orders": {"0": 2}},
    {"e": [3, 4], "orders": {"1": 2}}, {"e": [0, 4], "orders": {"2": 2}},
]}


@pytest.fixture
def write_json(tmp_path):
    def write(payload, name="input.json"):
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return str(path)
    return write


def run(capsys, *argv):
    code = logsymp.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_running_germ(capsys, write_json):
    code, out, _ = run(capsys, "analyze", write_json(RUNNING_GERM))
    assert code == 0
    report = json.loads(out)
    assert report["holonomic"] is True
    assert report["nondegenerate"] is True
    assert all(e["smoothable"] for e in report["edges"])
    assert report["deformations"]["hp2"] == 6
    assert report["deformations"]["local_components"] == 8


def test_analyze_zero_class(capsys, write_json):
    payload = {"complex": {"kind": "P2n", "n": 2}, "chart": [[0] * 4 for _ in range(4)]}
    code, out, _ = run(capsys, "analyze", write_json(payload))
    assert code == 0
    assert json.loads(out)["nondegenerate"] is False


def test_analyze_text_format(capsys, write_json):
    code, out, _ = run(capsys, "analyze", write_json(RUNNING_GERM), "--format", "text")
    assert code == 0
    assert out.strip()


def test_malformed_json_exits_with_parse_code(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    code, out, err = run(capsys, "analyze", str(path))
    assert code == 2
    assert out == ""
    assert "❌" in err


def test_missing_file_exits_with_parse_code(capsys, tmp_path):
    code, _, _ = run(capsys, "analyze", str(tmp_path / "missing.json"))
    assert code == 2


def test_unsupported_complex_exits_with_code_3(capsys, write_json):
    payload = {
        "complex": {"kind": "custom", "vertices": 3, "facets": [[0, 1, 2]], "chern_mode": "unsupported"},
        "matrix": [[0, 1, -1], [-1, 0, 1], [1, -1, 0]],
    }
    code, _, _ = run(capsys, "analyze", write_json(payload))
    assert code == 3


def test_unknown_subcommand_is_a_usage_error(capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == 2


@pytest.mark.parametrize("space", ["P5", "X4", "P0"])
def test_classify_rejects_malformed_space(capsys, space):
    code, _, _ = run(capsys, "classify", "--space", space)
    assert code == 2


def test_classify_size_guard(capsys):
    code, _, err = run(capsys, "classify", "--space", "P8")
    assert code == 4
    assert "❌" in err


def test_verify_golden_requires_p4(capsys):
    code, _, _ = run(capsys, "classify", "--space", "P2", "--verify-golden")
    assert code == 2


def test_classify_p2(capsys):
    code, out, _ = run(capsys, "classify", "--space", "P2")
    assert code == 0
    entries = json.loads(out)
    assert len(entries) == 1
    assert entries[0]["dimension"] == 1


@pytest.mark.slow
def test_classify_p4_csv(capsys):
    code, out, _ = run(capsys, "classify", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["encoding", "edges", "dimension", "orbit_size"]
    assert len(rows) == 41


@pytest.mark.slow
def test_classify_p4_without_pruning_is_identical(capsys):
    _, pruned, _ = run(capsys, "classify")
    _, unpruned, _ = run(capsys, "classify", "--no-pruning")
    assert pruned == unpruned


@pytest.mark.slow
def test_classify_p4_verify_golden(capsys):
    code, _, _ = run(capsys, "classify", "--verify-golden")
    assert code == 0


def test_triple_points(capsys):
    code, out, _ = run(capsys, "triple-points")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["triple_points"]) == 10
    assert "chains" not in payload


def test_triple_points_with_chains(capsys):
    code, out, _ = run(capsys, "triple-points", "--chains", "--max-order", "3")
    assert code == 0
    chains = json.loads(out)["chains"]
    assert sum(c["kind"] == "double" for c in chains) == 10


def test_triple_points_csv(capsys):
    code, out, _ = run(capsys, "triple-points", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][:3] == ["kind", "orders", "label"]
    assert len(rows) == 11


def test_cohomology_running_germ(capsys, write_json):
    code, out, _ = run(capsys, "cohomology", write_json(RUNNING_GERM))
    assert code == 0
    report = json.loads(out)
    assert report["poincare"] == [1, 3, 6, 4]
    assert report["hp2"] == 6


def test_cohomology_symplectic_plane(capsys, write_json):
    code, out, _ = run(capsys, "cohomology", write_json({"n_divisor": 2, "matrix": [[0, 1], [-1, 0]]}))
    assert code == 0
    assert json.loads(out)["poincare"] == [1, 2, 2]


def test_cohomology_non_holonomic_germ(capsys, write_json):
    code, out, err = run(capsys, "cohomology", write_json(ZERO_SUM_GERM))
    assert code == 5
    assert out == ""
    assert "{0,1,2}" in err


def test_cohomology_has_no_dot_rendering(capsys, write_json):
    code, _, _ = run(capsys, "cohomology", write_json(RUNNING_GERM), "--format", "dot")
    assert code == 2


def test_render_empty_diagram(capsys, write_json):
    code, out, _ = run(capsys, "render", write_json({"vertices": 3, "edges": []}))
    assert code == 0
    assert "--" not in out
    assert out.count("v") >= 3


def test_render_pentagon(capsys, write_json):
    code, out, _ = run(capsys, "render", write_json(PENTAGON))
    assert code == 0
    assert out.count("color=red") == 5


def test_render_text(capsys, write_json):
    code, out, _ = run(capsys, "render", write_json(PENTAGON), "--format", "text")
    assert code == 0
    assert out == "01[m=2@v3] 04[m=2@v2] 12[m=2@v4] 23[m=2@v0] 34[m=2@v1]\n"

    code, out, _ = run(capsys, "render", write_json({"vertices": 3, "edges": []}), "--format", "text")
    assert code == 0
    assert out == "∅\n"


def test_render_rejects_bad_diagram(capsys, write_json):
    code, _, _ = run(capsys, "render", write_json({"vertices": 3, "edges": [{"e": [0, 7]}]}))
    assert code == 2


def test_stratum_on_p4(capsys, write_json):
    diagram = {"vertices": 5, "edges": [{"e": [3, 4], "orders": {"1": 2}}]}
    code, out, _ = run(capsys, "stratum", write_json(diagram))
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "Realizable"
    assert report["dimension"] == 4


def test_stratum_on_germ(capsys, write_json):
    diagram = {"vertices": 3, "edges": [{"e": [0, 1], "orders": {"2": 1}}, {"e": [1, 2], "orders": {"0": 1}}]}
    code, out, _ = run(capsys, "stratum", write_json(diagram), "--space", "germ")
    assert code == 0
    assert json.loads(out)["dimension"] == 1


def test_runs_reads_the_run_log(capsys, write_json, monkeypatch, tmp_path):
    log_file = tmp_path / "logs" / "runs.log"
    monkeypatch.setattr(logsymp, "RunLogger", lambda: RunLogger(enabled=True, log_file=log_file))

    assert run(capsys, "classify", "--space", "P2")[0] == 0
    assert run(capsys, "cohomology", write_json(RUNNING_GERM))[0] == 0

    export = tmp_path / "classify.csv"
    code, out, _ = run(capsys, "runs", "--export", str(export))
    assert code == 0
    summary = json.loads(out)
    assert summary["runs"] == 2
    assert summary["by_command"] == {"classify": 1, "cohomology": 1}
    assert summary["last_classes_by_space"] == {"P2": 1}
    assert export.exists()
