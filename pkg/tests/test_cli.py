"""End-user command checks, all through main(argv) with captured output."""

import json

import pytest

from pelli.cli import main
from pelli.corpus import load_corpus
from pelli.gateway import build_refinement_prompt

from suite_paths import CORPUS_ROOT, REPLAY_ROOT, STUB_SHIM


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- analyze -----------------------------------------------------------------


def test_analyze_clean_file(tmp_path, capsys):
    path = tmp_path / "clean.py"
    path.write_text(
        '"""Tiny module."""\n'
        "\n"
        "def double(value):\n"
        '    """Twice the value."""\n'
        "    return value * 2\n"
    )
    code, out, _ = run_cli(capsys, "analyze", str(path))
    assert code == 0
    payload = json.loads(out)
    assert payload["usable"] is True
    assert payload["file"] == str(path)
    assert payload["metrics"]["loc"] == 5
    assert payload["metrics"]["method_count"] == 1
    assert payload["findings"] == []


def test_analyze_reports_findings(tmp_path, capsys):
    path = tmp_path / "messy.py"
    path.write_text("x = 1\n")
    code, out, _ = run_cli(capsys, "analyze", str(path))
    assert code == 0
    payload = json.loads(out)
    findings = payload["findings"]
    assert findings, "expected lint findings for an undocumented module"
    for finding in findings:
        assert sorted(finding) == ["category", "code", "col", "line", "message", "symbol"]


def test_analyze_unusable_file_exits_nonzero(tmp_path, capsys):
    path = tmp_path / "broken.py"
    path.write_text("def broken(:\n")
    code, out, _ = run_cli(capsys, "analyze", str(path))
    assert code == 1
    payload = json.loads(out)
    assert payload["usable"] is False
    assert any(f["category"] == "fatal" for f in payload["findings"])


# --- score -------------------------------------------------------------------


def score_row(solution_id, warning_count, loc):
    return {
        "solution_id": solution_id,
        "metrics": {
            "warning_count": warning_count,
            "loc": loc,
            "sloc": 5,
            "method_count": 1,
            "mi": 50.0,
        },
    }


def test_score_single_group(tmp_path, capsys):
    infile = tmp_path / "metrics.json"
    infile.write_text(
        json.dumps(
            {
                "group_key": "demo",
                "solutions": [
                    score_row("a", 0, 10),
                    score_row("b", 2, 20),
                    score_row("c", 5, 50),
                ],
            }
        )
    )
    code, out, _ = run_cli(capsys, "score", "--in", str(infile))
    assert code == 0
    payload = json.loads(out)
    scores = payload["scores"]
    assert [s["solution_id"] for s in scores] == ["a", "b", "c"]
    assert all(s["group_key"] == "demo" for s in scores)
    processed = [s["entries"]["warnings"]["processed"] for s in scores]
    assert processed[0] == pytest.approx(0.9900497512437811, rel=1e-12)
    assert processed[1] == pytest.approx(0.0, abs=1e-15)
    assert processed[2] == pytest.approx(0.0029850746268655914, rel=1e-12)


def test_score_multiple_groups(tmp_path, capsys):
    infile = tmp_path / "metrics.json"
    infile.write_text(
        json.dumps(
            {
                "groups": [
                    {"group_key": "g1", "solutions": [score_row("a", 1, 10)]},
                    {"group_key": "g2", "solutions": [score_row("b", 3, 10)]},
                ]
            }
        )
    )
    code, out, _ = run_cli(capsys, "score", "--in", str(infile))
    assert code == 0
    scores = json.loads(out)["scores"]
    assert [(s["solution_id"], s["group_key"]) for s in scores] == [
        ("a", "g1"),
        ("b", "g2"),
    ]


def test_score_rejects_unknown_metric_fields(tmp_path, capsys):
    infile = tmp_path / "metrics.json"
    infile.write_text(
        json.dumps(
            {"solutions": [{"solution_id": "a", "metrics": {"halstead_magic": 3}}]}
        )
    )
    with pytest.raises(SystemExit, match="halstead_magic"):
        main(["score", "--in", str(infile)])


# --- corpus validate ---------------------------------------------------------


def test_corpus_validate_ok(capsys):
    code, out, err = run_cli(capsys, "corpus", "validate", str(CORPUS_ROOT))
    assert code == 0
    assert out.strip() == "corpus OK: 9 tasks, 27 prompts, 9 baselines"
    assert err == ""


def test_corpus_validate_reports_problems(tmp_path, capsys):
    import shutil

    broken = tmp_path / "corpus"
    shutil.copytree(CORPUS_ROOT, broken)
    (broken / "prompts" / "quicksort" / "short.txt").unlink()
    code, out, err = run_cli(capsys, "corpus", "validate", str(broken))
    assert code == 1
    assert out == ""
    assert "corpus invalid" in err
    assert "quicksort" in err and "short" in err


# --- refine ------------------------------------------------------------------


def expected_refinement(task, tier, categories, metrics):
    corpus = load_corpus(CORPUS_ROOT)
    return build_refinement_prompt(
        corpus.prompt(task, tier), categories, metrics
    ).prompt_text


def test_refine_inline_findings(capsys):
    findings = {"categories": {"convention": 2}, "metrics": {"mi": 61.25}}
    code, out, err = run_cli(
        capsys,
        "refine",
        "--task", "quicksort",
        "--tier", "short",
        "--findings", json.dumps(findings),
        "--corpus", str(CORPUS_ROOT),
    )
    assert code == 0
    assert out == expected_refinement(
        "quicksort", "short", {"convention": 2}, {"mi": 61.25}
    )
    assert "2 convention findings" in out
    assert "mi=61.25" in out


def test_refine_findings_from_file(tmp_path, capsys):
    findings_path = tmp_path / "findings.json"
    findings_path.write_text(json.dumps({"categories": {"error": 1}, "metrics": {}}))
    code, out, _ = run_cli(
        capsys,
        "refine",
        "--task", "huffman",
        "--tier", "long",
        "--findings", str(findings_path),
        "--corpus", str(CORPUS_ROOT),
    )
    assert code == 0
    assert out == expected_refinement("huffman", "long", {"error": 1}, {})


def test_refine_bare_category_mapping(capsys):
    # a findings blob that is already a category mapping works as-is
    code, out, _ = run_cli(
        capsys,
        "refine",
        "--task", "quicksort",
        "--tier", "medium",
        "--findings", json.dumps({"refactor": 3}),
        "--corpus", str(CORPUS_ROOT),
    )
    assert code == 0
    assert "3 refactor findings" in out


def test_refine_unknown_task_fails(capsys):
    with pytest.raises(SystemExit, match="flubber"):
        main(
            [
                "refine",
                "--task", "flubber",
                "--tier", "short",
                "--findings", "{}",
                "--corpus", str(CORPUS_ROOT),
            ]
        )


# --- run ---------------------------------------------------------------------


def test_run_replay_demo(tmp_path, capsys):
    config_path = tmp_path / "run.json"
    config_path.write_text(
        json.dumps(
            {
                "corpus_root": str(CORPUS_ROOT),
                "shim_path": str(STUB_SHIM),
                "replay_store": str(REPLAY_ROOT),
                "mode": "replay",
                "task_filter": ["quicksort"],
                "runs_per_solution": 2,
                "providers": [
                    {"provider_id": "nova", "model": "nova-demo"},
                    {"provider_id": "quasar", "model": "quasar-demo"},
                ],
            }
        )
    )
    out_dir = tmp_path / "out"
    code, out, _ = run_cli(
        capsys, "run", "--config", str(config_path), "--out", str(out_dir)
    )
    assert code == 0
    assert "solutions: 7 (7 included, 0 excluded)" in out
    assert f"report written to {out_dir / 'report.json'}" in out
    assert (out_dir / "report.json").is_file()
    assert (out_dir / "scores.csv").is_file()


def test_missing_subcommand_is_usage_error(capsys):
    with pytest.raises(SystemExit):
        main([])
    with pytest.raises(SystemExit):
        main(["refine", "--task", "t", "--tier", "huge", "--findings", "{}"])
