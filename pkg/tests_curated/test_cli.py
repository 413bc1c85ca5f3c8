import json

import pytest

from omviz.charts.svg import parse
from omviz.cli import run
from omviz.contracts.types import AnalysisReport


def test_gen_walk_writes_csv_and_manifest(tmp_path):
    out = tmp_path / "walk.csv"
    assert run(["gen-walk", "--seed", "5", "--out", str(out)]) == 0
    assert out.read_text().startswith("index,value\n")
    assert len(out.read_text().splitlines()) == 101
    manifest = json.loads(out.with_suffix(".json").read_text())
    assert manifest["seed"] == 5 and manifest["kind"] == "walk"


def test_gen_trend(tmp_path):
    out = tmp_path / "trend.csv"
    assert run(["gen-trend", "--kind", "exponential", "--seed", "2", "--out", str(out)]) == 0
    assert json.loads(out.with_suffix(".json").read_text())["kind"] == "exponential"


def test_default_output_directory(tmp_path, monkeypatch):
    monkeypatch.setattr("omviz.cli.OUTPUT_DIR", str(tmp_path / "env-out"))
    assert run(["gen-walk", "--seed", "5"]) == 0
    assert (tmp_path / "env-out" / "walk-5.csv").is_file()


def test_render_from_csv_is_deterministic(tmp_path):
    walk = tmp_path / "walk.csv"
    run(["gen-walk", "--seed", "5", "--out", str(walk)])
    first, second = tmp_path / "a.svg", tmp_path / "b.svg"
    for out in (first, second):
        assert run(["render", "--design", "omh", "--input", str(walk), "--out", str(out)]) == 0
    assert first.read_bytes() == second.read_bytes()
    root = parse(first.read_text())
    assert (root.get("width"), root.get("height")) == ("972", "350")


def test_render_with_markers_and_size(tmp_path):
    out = tmp_path / "log.svg"
    code = run(["render", "--design", "log", "--seed", "3", "--out", str(out),
                "--width", "600", "--height", "200", "--marker", "A:3", "B:40"])
    assert code == 0
    text = out.read_text()
    assert 'width="600"' in text
    assert 'id="markers"' in text


def test_render_json_input(tmp_path):
    data = tmp_path / "values.json"
    data.write_text("[12, 340, 5600, 78000]")
    out = tmp_path / "ssb.svg"
    assert run(["render", "--design", "ssb", "--input", str(data), "--out", str(out)]) == 0


@pytest.mark.parametrize("argv", [
    ["render", "--design", "pie"],
    ["gen-trend", "--kind", "quadratic", "--seed", "1"],
    ["gen-walk", "--seed", "1", "--bogus"],
    ["render", "--design", "omh", "--marker", "A3"],
    ["render", "--design", "omh", "--marker", "A:100"],
    ["analyze", "--scored", "x.csv", "--alpha", "2"],
    ["render", "--design", "horizon", "--n-bands", "0"],
    ["render", "--design", "oml", "--width", "0"],
    [],
])
def test_usage_errors_exit_2(argv, tmp_path, monkeypatch):
    monkeypatch.setattr("omviz.cli.OUTPUT_DIR", str(tmp_path))
    assert run(argv) == 2


def test_missing_input_exits_1_with_path(tmp_path, capsys):
    missing = tmp_path / "nowhere.csv"
    assert run(["render", "--design", "omh", "--input", str(missing), "--out", str(tmp_path / "x.svg")]) == 1
    assert str(missing) in capsys.readouterr().err


def test_out_of_range_input_exits_1(tmp_path):
    data = tmp_path / "values.json"
    data.write_text("[5, 500000]")
    assert run(["render", "--design", "omh", "--input", str(data), "--out", str(tmp_path / "x.svg")]) == 1


def test_build_study_is_reproducible(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(["build-study", "--master-seed", "7", "--out-dir", str(a)]) == 0
    assert run(["build-study", "--master-seed", "7", "--out-dir", str(b)]) == 0
    datasets = sorted((a / "datasets").glob("*.csv"))
    assert len(datasets) == 60
    assert (a / "study.json").read_bytes() == (b / "study.json").read_bytes()
    for path in datasets:
        assert path.read_bytes() == (b / "datasets" / path.name).read_bytes()


def test_build_study_render_writes_stimuli(tmp_path):
    assert run(["build-study", "--master-seed", "3", "--out-dir", str(tmp_path), "--render"]) == 0
    assert len(list((tmp_path / "stimuli").glob("*.svg"))) == 60


def test_pipeline_perfect_responder_has_zero_error(tmp_path):
    study = tmp_path / "study"
    assert run(["build-study", "--master-seed", "9", "--out-dir", str(study)]) == 0
    responses, scored, report = tmp_path / "responses.csv", tmp_path / "scored.csv", tmp_path / "report.json"
    assert run(["simulate", "--study", str(study / "study.json"), "--out", str(responses)]) == 0
    assert run(["score", "--study", str(study / "study.json"), "--responses", str(responses),
                "--out", str(scored)]) == 0
    assert run(["analyze", "--scored", str(scored), "--out", str(report)]) == 0

    parsed = AnalysisReport.model_validate_json(report.read_text())
    for task in parsed.tasks:
        assert all(s.error_mean == 0.0 for s in task.designs)
        assert all(m.pairwise is None for m in task.measures)
    assert report.with_suffix(".txt").read_text().startswith("alpha=0.05")


def test_pipeline_bad_design_detected(tmp_path):
    study = tmp_path / "study"
    run(["build-study", "--master-seed", "9", "--out-dir", str(study)])
    responses, scored, report = tmp_path / "responses.csv", tmp_path / "scored.csv", tmp_path / "report.json"
    run(["simulate", "--study", str(study / "study.json"), "--out", str(responses), "--bad-design", "horizon"])
    run(["score", "--study", str(study / "study.json"), "--responses", str(responses), "--out", str(scored)])
    assert run(["analyze", "--scored", str(scored), "--out", str(report)]) == 0

    parsed = AnalysisReport.model_validate_json(report.read_text())
    matrix = parsed.task("estimation").measure("error").pairwise
    assert matrix.get("horizon", "omh").significant(parsed.config.alpha)


def test_malformed_responses_exit_1(tmp_path):
    study = tmp_path / "study"
    run(["build-study", "--master-seed", "9", "--out-dir", str(study)])
    responses = tmp_path / "responses.csv"
    responses.write_text("participant_id,design\np1,omh\n")
    assert run(["score", "--study", str(study / "study.json"), "--responses", str(responses)]) == 1
