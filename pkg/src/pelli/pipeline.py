"""Run driver: generate, adjust, gate, analyze, profile, score, report.

The loop walks every (task, producer, tier) cell plus the human baseline per
task. A cell that never reaches adequacy within max_attempts is recorded as
rejected with its reasons and the run continues; partial failures never
abort anything.

The adequacy gate is executability only: the source parses and one child run
exits cleanly. Whether the algorithm is right is out of scope by design.

Minor adjustments form a closed registry: inserting an import the task
allowlists, and synthesizing a top-level entry wrapper when a solution only
offers the entry point as a class method. Anything else is a major change
and goes back through a follow-up generation instead of silent repair.
"""

from __future__ import annotations

import dataclasses
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .analysis import parse_module, SourceSyntaxError, analyze
from .analysis.ast_nodes import ClassDef, ExprStmt, FunctionDef, String
from .analysis.lint import LintConfig, registry
from .analysis.scopes import build_scopes, resolve_names
from .corpus import Corpus, Solution, TaskSpec, TIERS, load_corpus
from .gateway import (
    Gateway,
    GatewayError,
    GenerationParams,
    GenerationRequest,
    HttpProvider,
    RecordingProvider,
    ReplayProvider,
    ReplayStore,
)
from .inputs import standardized_inputs
from .profiling import Profiler, ProfilerConfig, RunAggregate
from .report import RunReport, SolutionRecord, build_report, corpus_hash, export
from .scoring import load_metric_specs, process_group

MODES = ("live", "replay", "record")


@dataclass(frozen=True)
class ProviderSpec:
    provider_id: str
    endpoint: str = ""
    model: str = ""
    credential_env: str | None = None
    temperature: float = 0.2
    max_tokens: int = 2048

    def params(self) -> GenerationParams:
        return GenerationParams(temperature=self.temperature, max_tokens=self.max_tokens)


@dataclass
class PipelineConfig:
    corpus_root: Path
    shim_path: Path
    providers: list[ProviderSpec] = field(default_factory=list)
    mode: str = "replay"
    replay_store: Path | None = None
    out_dir: Path = Path("out")
    max_attempts: int = 3
    runs_per_solution: int = 5
    sample_interval: float = 0.01
    aggregator: str = "mean"
    interpreter: str = sys.executable
    seed: int = 0
    disabled_rules: tuple[str, ...] = ()
    metric_specs_path: Path | None = None
    task_filter: tuple[str, ...] = ()
    tiers: tuple[str, ...] = TIERS
    scale_includes_baseline: bool = True
    require_complete_corpus: bool = True

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.runs_per_solution < 1:
            raise ValueError("runs_per_solution must be >= 1")
        if self.mode in ("replay", "record") and self.replay_store is None:
            raise ValueError(f"{self.mode} mode requires a replay store path")
        for tier in self.tiers:
            if tier not in TIERS:
                raise ValueError(f"unknown tier {tier!r}")

    def snapshot(self) -> dict:
        """Config as reported; no credentials, paths as given."""
        return {
            "corpus_root": str(self.corpus_root),
            "mode": self.mode,
            "max_attempts": self.max_attempts,
            "runs_per_solution": self.runs_per_solution,
            "aggregator": self.aggregator,
            "seed": self.seed,
            "disabled_rules": sorted(self.disabled_rules),
            "task_filter": sorted(self.task_filter),
            "tiers": list(self.tiers),
            "scale_includes_baseline": self.scale_includes_baseline,
            "providers": [
                {"provider_id": p.provider_id, "model": p.model} for p in self.providers
            ],
        }


def load_config(path: str | Path, overrides: dict | None = None) -> PipelineConfig:
    """Read a JSON config; relative paths resolve against the file's folder."""
    path = Path(path)
    raw = json.loads(path.read_text())
    raw.update(overrides or {})
    base = path.parent

    def respath(key, default=None):
        value = raw.get(key, default)
        if value is None:
            return None
        value = Path(value)
        return value if value.is_absolute() else base / value

    providers = [
        ProviderSpec(
            provider_id=p["provider_id"],
            endpoint=p.get("endpoint", ""),
            model=p.get("model", ""),
            credential_env=p.get("credential_env"),
            temperature=p.get("temperature", 0.2),
            max_tokens=p.get("max_tokens", 2048),
        )
        for p in raw.get("providers", [])
    ]
    return PipelineConfig(
        corpus_root=respath("corpus_root", "corpus"),
        shim_path=respath("shim_path", "shim.py"),
        providers=providers,
        mode=raw.get("mode", "replay"),
        replay_store=respath("replay_store"),
        out_dir=respath("out_dir", "out"),
        max_attempts=raw.get("max_attempts", 3),
        runs_per_solution=raw.get("runs_per_solution", 5),
        sample_interval=raw.get("sample_interval", 0.01),
        aggregator=raw.get("aggregator", "mean"),
        interpreter=raw.get("interpreter", sys.executable),
        seed=raw.get("seed", 0),
        disabled_rules=tuple(raw.get("disabled_rules", [])),
        metric_specs_path=respath("metric_specs_path"),
        task_filter=tuple(raw.get("task_filter", [])),
        tiers=tuple(raw.get("tiers", TIERS)),
        scale_includes_baseline=raw.get("scale_includes_baseline", True),
        require_complete_corpus=raw.get("require_complete_corpus", True),
    )


# --- minor adjustments ------------------------------------------------------


def _module_or_none(source: str):
    try:
        return parse_module(source)
    except SourceSyntaxError:
        return None


def _docstring_end(module) -> int:
    if module.body:
        first = module.body[0]
        if (
            isinstance(first, ExprStmt)
            and isinstance(first.value, String)
            and not first.value.is_fstring
        ):
            return first.value.end_line
    return 0


def _insert_missing_imports(solution: Solution, task: TaskSpec) -> Solution:
    module = _module_or_none(solution.source_text)
    if module is None:
        return solution
    unresolved = resolve_names(build_scopes(module), registry().builtins)
    wanted = sorted(
        {load.name for load in unresolved} & set(task.allowed_imports)
    )
    if not wanted:
        return solution
    lines = solution.source_text.splitlines()
    at = _docstring_end(module)
    for offset, name in enumerate(wanted):
        lines.insert(at + offset, f"import {name}")
    solution.source_text = "\n".join(lines) + "\n"
    for name in wanted:
        solution.adjustments.append(f"inserted import {name}")
    solution.status = "adjusted"
    return solution


def _synthesize_entry_wrapper(solution: Solution, task: TaskSpec) -> Solution:
    module = _module_or_none(solution.source_text)
    if module is None:
        return solution
    entry = task.entry_point.name
    for stmt in module.body:
        if isinstance(stmt, FunctionDef) and stmt.name == entry:
            return solution
    owner = None
    for stmt in module.body:
        if isinstance(stmt, ClassDef):
            for member in stmt.body:
                if isinstance(member, FunctionDef) and member.name == entry:
                    owner = stmt.name
                    break
        if owner:
            break
    if owner is None:
        return solution
    wrapper = (
        f"\n\ndef {entry}(*args, **kwargs):\n"
        f"    return {owner}().{entry}(*args, **kwargs)\n"
    )
    solution.source_text = solution.source_text.rstrip("\n") + wrapper
    solution.adjustments.append(f"synthesized top-level wrapper {entry} via class {owner}")
    solution.status = "adjusted"
    return solution


ADJUSTMENTS = (_insert_missing_imports, _synthesize_entry_wrapper)


def apply_minor_adjustments(solution: Solution, task: TaskSpec) -> Solution:
    """Run the registered transformations; non-applicable ones are no-ops."""
    for adjustment in ADJUSTMENTS:
        solution = adjustment(solution, task)
    return solution


# --- adequacy ---------------------------------------------------------------


@dataclass
class AdequacyVerdict:
    adequate: bool
    reasons: list[str] = field(default_factory=list)
    adjustments_applied: list[str] = field(default_factory=list)


def adequacy(
    solution: Solution,
    task: TaskSpec,
    profiler: Profiler,
    solution_path: Path,
    input_path: Path,
) -> AdequacyVerdict:
    """Executability gate: parse plus one clean child run. Not correctness."""
    reasons: list[str] = []
    try:
        parse_module(solution.source_text)
    except SourceSyntaxError as exc:
        reasons.append(f"fatal parse: {exc}")
        return AdequacyVerdict(False, reasons, list(solution.adjustments))
    solution_path.parent.mkdir(parents=True, exist_ok=True)
    solution_path.write_text(solution.source_text)
    exec_report = profiler.sanity_execute(solution_path, task.id, input_path, task.timeout)
    if not exec_report.ok:
        reasons.append(exec_report.reason or f"exit status {exec_report.exit_status}")
    return AdequacyVerdict(not reasons, reasons, list(solution.adjustments))


# --- run driver -------------------------------------------------------------


def _build_gateway(config: PipelineConfig, store: ReplayStore | None) -> Gateway:
    providers = {}
    for spec in config.providers:
        if config.mode == "replay":
            providers[spec.provider_id] = ReplayProvider(spec.provider_id, store)
            continue
        live = HttpProvider(
            provider_id=spec.provider_id,
            endpoint=spec.endpoint,
            model=spec.model,
            credential_env=spec.credential_env,
        )
        if config.mode == "record":
            providers[spec.provider_id] = RecordingProvider(live, store)
        else:
            providers[spec.provider_id] = live
    return Gateway(providers)


@dataclass
class _Cell:
    """One (task, producer, tier) slot as the run loop sees it."""

    task: TaskSpec
    producer: str
    tier: str
    solution: Solution | None = None
    attempts: int = 0
    reject_reason: str | None = None

    @property
    def solution_id(self) -> str:
        return f"{self.task.id}/{self.producer}/{self.tier}"

    def solution_path(self, work_dir: Path) -> Path:
        return work_dir / "solutions" / self.task.id / f"{self.producer}-{self.tier}.py"


def _generate_cell(
    gateway: Gateway,
    config: PipelineConfig,
    corpus: Corpus,
    task: TaskSpec,
    spec: ProviderSpec,
    tier: str,
    profiler: Profiler,
    work_dir: Path,
    input_path: Path,
) -> _Cell:
    cell = _Cell(task, spec.provider_id, tier)
    prompt = corpus.prompt(task.id, tier)
    request = GenerationRequest(prompt.text, spec.provider_id, spec.params(), attempt=1)
    prior = None
    last_reasons = ["no attempts made"]
    for attempt in range(1, config.max_attempts + 1):
        cell.attempts = attempt
        try:
            if prior is None:
                prior = gateway.generate(request)
            else:
                prior = gateway.follow_up(request, prior)
        except GatewayError as exc:
            failure = f"generation failed: {exc}"
            last_reasons = [failure] if prior is None else last_reasons + [failure]
            break
        if not prior.extracted_source:
            last_reasons = ["no code found in response"]
            continue
        solution = Solution(
            task_id=task.id,
            tier=tier,
            producer=spec.provider_id,
            attempt=attempt,
            source_text=prior.extracted_source,
        )
        solution = apply_minor_adjustments(solution, task)
        verdict = adequacy(solution, task, profiler, cell.solution_path(work_dir), input_path)
        if verdict.adequate:
            solution.status = "adequate"
            cell.solution = solution
            return cell
        last_reasons = verdict.reasons
    cell.reject_reason = "; ".join(last_reasons)
    return cell


def _measure(
    profiler: Profiler,
    store: ReplayStore | None,
    mode: str,
    task: TaskSpec,
    solution_path: Path,
    source_text: str,
    input_path: Path,
) -> tuple[RunAggregate, RunAggregate]:
    """Returns (reported, live). The loop always runs; in replay mode the
    reported numbers come from the store so reports stay byte-stable."""
    live = profiler.profile(solution_path, task.id, input_path, task.timeout)
    if mode == "record" and store is not None and live.success:
        store.record_measurement(task.id, source_text, live.to_payload())
    if mode == "replay" and store is not None:
        recorded = store.lookup_measurement(task.id, source_text)
        if recorded is not None:
            return RunAggregate.from_payload(recorded, replayed=True), live
    return live, live


def run_pipeline(config: PipelineConfig) -> RunReport:
    corpus = load_corpus(config.corpus_root, require_complete=config.require_complete_corpus)
    tasks = corpus.ordered_tasks()
    if config.task_filter:
        unknown = set(config.task_filter) - set(corpus.tasks)
        if unknown:
            raise ValueError(f"task_filter names unknown tasks: {sorted(unknown)}")
        tasks = [t for t in tasks if t.id in config.task_filter]

    store = ReplayStore(config.replay_store) if config.replay_store else None
    gateway = _build_gateway(config, store)
    profiler = Profiler(
        ProfilerConfig(
            shim_path=config.shim_path,
            interpreter=config.interpreter,
            runs_per_solution=config.runs_per_solution,
            sample_interval=config.sample_interval,
            aggregator=config.aggregator,
        )
    )
    specs = load_metric_specs(config.metric_specs_path)
    metric_ids = [s.metric_id for s in specs]
    lint_config = LintConfig(disable=list(config.disabled_rules))
    work_dir = Path(config.out_dir) / "work"
    (work_dir / "inputs").mkdir(parents=True, exist_ok=True)

    records: list[SolutionRecord] = []
    vectors_by_id: dict[str, object] = {}
    live_samples: dict[str, dict] = {}

    for task in tasks:
        bundle = standardized_inputs(task, seed_offset=config.seed)
        input_path = work_dir / "inputs" / f"{task.id}.json"
        input_path.write_text(bundle.to_json())

        cells: list[_Cell] = []
        if task.id in corpus.baselines:
            stored = corpus.baselines[task.id]
            baseline = Solution(
                task_id=stored.task_id,
                tier=stored.tier,
                producer=stored.producer,
                attempt=1,
                source_text=stored.source_text,
            )
            baseline = apply_minor_adjustments(baseline, task)
            cell = _Cell(task, baseline.producer, baseline.tier, attempts=1)
            verdict = adequacy(baseline, task, profiler, cell.solution_path(work_dir), input_path)
            if verdict.adequate:
                cell.solution = baseline
            else:
                cell.reject_reason = "; ".join(verdict.reasons)
            cells.append(cell)
        for spec in config.providers:
            for tier in config.tiers:
                cells.append(
                    _generate_cell(
                        gateway, config, corpus, task, spec, tier,
                        profiler, work_dir, input_path,
                    )
                )

        for cell in cells:
            record = SolutionRecord(
                solution_id=cell.solution_id,
                task_id=task.id,
                domain=task.domain,
                algorithm=task.algorithm,
                producer=cell.producer,
                tier=cell.tier,
                attempts=cell.attempts,
            )
            records.append(record)
            if cell.solution is None:
                record.included = False
                record.exclusion_reason = cell.reject_reason
                continue
            record.adjustments = list(cell.solution.adjustments)
            analysis = analyze(cell.solution.source_text, lint_config)
            if not analysis.usable:
                record.included = False
                record.exclusion_reason = "fatal analysis"
                continue
            reported, live = _measure(
                profiler, store, config.mode, task,
                cell.solution_path(work_dir), cell.solution.source_text, input_path,
            )
            live_samples[record.solution_id] = live.to_payload()
            record.measurement_replayed = reported.replayed
            vector = analysis.vector
            if reported.success:
                vector = dataclasses.replace(
                    vector, cpu_usage=reported.cpu_usage, memory_usage=reported.memory_usage
                )
            else:
                record.measurement_failure = reported.failure_reason
            record.metrics = vector.to_dict()
            vectors_by_id[record.solution_id] = vector

    # score per algorithm group
    by_task: dict[str, list[SolutionRecord]] = {}
    for record in records:
        if record.included and record.solution_id in vectors_by_id:
            by_task.setdefault(record.task_id, []).append(record)
    for task_id, group in sorted(by_task.items()):
        scorable = [
            r for r in group
            if config.scale_includes_baseline or r.producer != "baseline"
        ]
        if not scorable:
            continue
        by_id = {r.solution_id: r for r in scorable}
        vectors = [(r.solution_id, vectors_by_id[r.solution_id]) for r in scorable]
        for score in process_group(vectors, specs, group_key=task_id):
            by_id[score.solution_id].score = score

    report = build_report(
        config_snapshot=config.snapshot(),
        corpus_digest=corpus_hash(config.corpus_root),
        records=records,
        metric_ids=metric_ids,
    )
    out_dir = Path(config.out_dir)
    export(report, out_dir)
    # machine-local timings; deliberately outside the byte-stable artifact set
    (out_dir / "profile_samples.json").write_text(
        json.dumps(live_samples, indent=2, sort_keys=True) + "\n"
    )
    return report
