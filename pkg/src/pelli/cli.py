"""Command line surface.

Subcommands: run (full pipeline from a JSON config), analyze (single-file
metric dump), score (preprocessing algebra over raw metrics), corpus
validate, and refine (render a feedback-augmented prompt). Credentials come
only from environment variables named in the provider config; nothing else
reads the environment.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .analysis import MetricVector, analyze
from .corpus import CorpusValidationError, load_corpus
from .gateway import build_refinement_prompt
from .pipeline import load_config, run_pipeline
from .scoring import load_metric_specs, process_group


def _cmd_run(args) -> int:
    overrides = {}
    if args.mode:
        overrides["mode"] = args.mode
    if args.out:
        overrides["out_dir"] = args.out
    config = load_config(args.config, overrides)
    report = run_pipeline(config)
    included = sum(1 for r in report.solutions if r.included)
    print(f"solutions: {len(report.solutions)} ({included} included, "
          f"{len(report.exclusions)} excluded)")
    for record in report.exclusions:
        print(f"  excluded {record.solution_id}: {record.exclusion_reason}")
    print(f"report written to {Path(config.out_dir) / 'report.json'}")
    return 0


def _cmd_analyze(args) -> int:
    source = Path(args.file).read_text()
    report = analyze(source)
    payload = {
        "file": args.file,
        "usable": report.usable,
        "metrics": report.vector.to_dict(),
        "findings": [
            {
                "code": f.code,
                "symbol": f.symbol,
                "category": f.category,
                "message": f.message,
                "line": f.line,
                "col": f.col,
            }
            for f in report.findings
        ],
    }
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0 if report.usable else 1


def _vector_from_dict(metrics: dict) -> MetricVector:
    known = {f.name for f in dataclasses.fields(MetricVector)}
    unknown = set(metrics) - known
    if unknown:
        raise SystemExit(f"unknown metric fields: {sorted(unknown)}")
    return MetricVector(**metrics)


def _cmd_score(args) -> int:
    raw = json.loads(Path(args.infile).read_text())
    groups = raw.get("groups")
    if groups is None:
        groups = [raw]
    specs = load_metric_specs(args.metric_specs)
    output = []
    for group in groups:
        vectors = [
            (row["solution_id"], _vector_from_dict(row["metrics"]))
            for row in group["solutions"]
        ]
        for score in process_group(vectors, specs, group.get("group_key", "group")):
            entries = {
                metric_id: {
                    "raw": entry.raw,
                    "normalized": entry.normalized,
                    "scaled": entry.scaled,
                    "processed": entry.processed,
                    "flags": entry.flags,
                }
                for metric_id, entry in sorted(score.entries.items())
            }
            output.append(
                {
                    "solution_id": score.solution_id,
                    "group_key": score.group_key,
                    "entries": entries,
                }
            )
    print(json.dumps({"scores": output}, indent=2, sort_keys=True))
    return 0


def _cmd_corpus_validate(args) -> int:
    try:
        corpus = load_corpus(args.root)
    except CorpusValidationError as exc:
        print(f"corpus invalid ({len(exc.problems)} problems):", file=sys.stderr)
        for problem in exc.problems:
            print(f"  {problem}", file=sys.stderr)
        return 1
    print(
        f"corpus OK: {len(corpus.tasks)} tasks, {len(corpus.prompts)} prompts, "
        f"{len(corpus.baselines)} baselines"
    )
    return 0


def _cmd_refine(args) -> int:
    corpus = load_corpus(args.corpus)
    if (args.task, args.tier) not in corpus.prompts:
        raise SystemExit(f"no prompt for task {args.task!r} tier {args.tier!r}")
    findings_path = Path(args.findings)
    text = findings_path.read_text() if findings_path.is_file() else args.findings
    findings = json.loads(text)
    categories = findings.get("categories", findings if "metrics" not in findings else {})
    metrics = findings.get("metrics", {})
    request = build_refinement_prompt(
        corpus.prompt(args.task, args.tier), categories, metrics
    )
    print(request.prompt_text, end="")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="pelli")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute the full pipeline from a config")
    run_p.add_argument("--config", required=True)
    run_p.add_argument("--mode", choices=("live", "replay", "record"))
    run_p.add_argument("--out")
    run_p.set_defaults(func=_cmd_run)

    analyze_p = sub.add_parser("analyze", help="metric dump for one source file")
    analyze_p.add_argument("file")
    analyze_p.set_defaults(func=_cmd_analyze)

    score_p = sub.add_parser("score", help="run the preprocessing algebra only")
    score_p.add_argument("--in", dest="infile", required=True)
    score_p.add_argument("--metric-specs", dest="metric_specs", default=None)
    score_p.set_defaults(func=_cmd_score)

    corpus_p = sub.add_parser("corpus", help="corpus maintenance")
    corpus_sub = corpus_p.add_subparsers(dest="corpus_command", required=True)
    validate_p = corpus_sub.add_parser("validate", help="check corpus layout and tiers")
    validate_p.add_argument("root")
    validate_p.set_defaults(func=_cmd_corpus_validate)

    refine_p = sub.add_parser("refine", help="render a feedback-augmented prompt")
    refine_p.add_argument("--task", required=True)
    refine_p.add_argument("--tier", required=True, choices=("short", "medium", "long"))
    refine_p.add_argument("--findings", required=True, help="JSON text or path")
    refine_p.add_argument("--corpus", default="corpus")
    refine_p.set_defaults(func=_cmd_refine)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
