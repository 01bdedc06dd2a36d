"""Benchmark corpus: task specs, tiered prompts, human baselines.

On-disk layout under one root:

    corpus/tasks/<id>.json          one TaskSpec per file
    corpus/prompts/<id>/short.txt   prompt text per tier
    corpus/prompts/<id>/medium.txt
    corpus/prompts/<id>/long.txt
    corpus/baselines/<id>.py        optional human solution

Prompt tiers carry monotone requirements: the medium tier must ask for
functionality, use case, documentation, and type hints; the long tier must
additionally ask for edge cases, unspecified arguments, and data types, and
must still contain everything the medium tier requires. A short prompt asks
for the bare algorithm and nothing else. Tier conformance is checked with a
clause keyword checklist, not string containment, so prompt prose stays
editable.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

DOMAINS = ("HPC", "ML", "DataProcessing")
ALGORITHMS = (
    "QuickSort",
    "StrassenMatrixMultiplication",
    "MonteCarloSimulation",
    "Attention",
    "Convolution",
    "PCA",
    "HuffmanCoding",
    "PageRank",
    "RabinKarp",
)
TIERS = ("short", "medium", "long")

# Clause detectors for the tier checklist. A clause "appears" in a prompt when
# its pattern matches case-insensitively.
CLAUSE_PATTERNS: dict[str, str] = {
    "functionality": r"functionality",
    "use_case": r"use case",
    "documentation": r"docstring|documentation",
    "type_hints": r"type hint",
    "edge_cases": r"edge case",
    "unspecified_arguments": r"unspecified argument",
    "data_types": r"data type",
}

MEDIUM_CLAUSES = ("functionality", "use_case", "documentation", "type_hints")
LONG_CLAUSES = MEDIUM_CLAUSES + ("edge_cases", "unspecified_arguments", "data_types")


@dataclass(frozen=True)
class EntryPoint:
    name: str
    arity: int


@dataclass(frozen=True)
class TaskSpec:
    id: str
    domain: str
    algorithm: str
    entry_point: EntryPoint
    input_spec: dict
    timeout: float
    allowed_imports: tuple[str, ...] = ()


@dataclass(frozen=True)
class PromptVariant:
    task_id: str
    tier: str
    text: str


@dataclass
class Solution:
    task_id: str
    tier: str  # short/medium/long or "baseline"
    producer: str
    attempt: int
    source_text: str
    adjustments: list[str] = field(default_factory=list)
    status: str = "raw"  # raw/adjusted/adequate/rejected

    @property
    def solution_id(self) -> str:
        return f"{self.task_id}/{self.producer}/{self.tier}"


@dataclass
class Corpus:
    root: Path
    tasks: dict[str, TaskSpec] = field(default_factory=dict)
    prompts: dict[tuple[str, str], PromptVariant] = field(default_factory=dict)
    baselines: dict[str, Solution] = field(default_factory=dict)

    def prompt(self, task_id: str, tier: str) -> PromptVariant:
        return self.prompts[(task_id, tier)]

    def ordered_tasks(self) -> list[TaskSpec]:
        return [self.tasks[key] for key in sorted(self.tasks)]


class CorpusValidationError(Exception):
    """Carries every violation found, not just the first."""

    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = problems


def detect_clauses(text: str) -> set[str]:
    found = set()
    for clause, pattern in CLAUSE_PATTERNS.items():
        if re.search(pattern, text, re.IGNORECASE):
            found.add(clause)
    return found


def check_tier_requirements(task_id: str, tier: str, text: str) -> list[str]:
    """Return all checklist violations for one prompt text."""
    problems = []
    clauses = detect_clauses(text)
    if tier == "short":
        for clause in sorted(clauses):
            problems.append(
                f"task {task_id}: short prompt must request only the algorithm "
                f"but contains clause {clause!r}"
            )
    elif tier == "medium":
        for clause in MEDIUM_CLAUSES:
            if clause not in clauses:
                problems.append(f"task {task_id}: medium prompt missing clause {clause!r}")
    elif tier == "long":
        for clause in LONG_CLAUSES:
            if clause not in clauses:
                problems.append(f"task {task_id}: long prompt missing clause {clause!r}")
    return problems


def _load_task(path: Path, problems: list[str]) -> TaskSpec | None:
    try:
        raw = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        problems.append(f"task file {path.name}: unreadable ({exc})")
        return None
    try:
        task_id = raw["id"]
        entry = EntryPoint(raw["entry_point"]["name"], int(raw["entry_point"]["arity"]))
        task = TaskSpec(
            id=task_id,
            domain=raw["domain"],
            algorithm=raw["algorithm"],
            entry_point=entry,
            input_spec=dict(raw["input_spec"]),
            timeout=float(raw["timeout"]),
            allowed_imports=tuple(raw.get("allowed_imports", [])),
        )
    except (KeyError, TypeError, ValueError) as exc:
        problems.append(f"task file {path.name}: malformed ({exc})")
        return None
    if task.id != path.stem:
        problems.append(f"task file {path.name}: id {task.id!r} does not match filename")
    if task.domain not in DOMAINS:
        problems.append(f"task {task.id}: unknown domain {task.domain!r}")
    if task.algorithm not in ALGORITHMS:
        problems.append(f"task {task.id}: unknown algorithm {task.algorithm!r}")
    if task.timeout <= 0:
        problems.append(f"task {task.id}: timeout must be positive")
    if task.entry_point.arity < 0:
        problems.append(f"task {task.id}: negative arity")
    return task


def load_corpus(root: str | Path, require_complete: bool = True) -> Corpus:
    root = Path(root)
    problems: list[str] = []
    corpus = Corpus(root)

    tasks_dir = root / "tasks"
    task_files = sorted(tasks_dir.glob("*.json")) if tasks_dir.is_dir() else []
    if not task_files:
        raise CorpusValidationError(["no tasks found"])

    for path in task_files:
        task = _load_task(path, problems)
        if task is None:
            continue
        if task.id in corpus.tasks:
            problems.append(f"duplicate task id {task.id!r}")
            continue
        corpus.tasks[task.id] = task

    for task_id in sorted(corpus.tasks):
        for tier in TIERS:
            prompt_path = root / "prompts" / task_id / f"{tier}.txt"
            if not prompt_path.is_file():
                problems.append(f"task {task_id}: missing {tier} prompt")
                continue
            text = prompt_path.read_text()
            if not text.strip():
                problems.append(f"task {task_id}: empty {tier} prompt")
                continue
            problems.extend(check_tier_requirements(task_id, tier, text))
            corpus.prompts[(task_id, tier)] = PromptVariant(task_id, tier, text)

    baselines_dir = root / "baselines"
    if baselines_dir.is_dir():
        for path in sorted(baselines_dir.glob("*.py")):
            task_id = path.stem
            if task_id not in corpus.tasks:
                problems.append(f"baseline {path.name}: no matching task")
                continue
            corpus.baselines[task_id] = Solution(
                task_id=task_id,
                tier="baseline",
                producer="baseline",
                attempt=1,
                source_text=path.read_text(),
            )

    if require_complete:
        if len(corpus.tasks) != len(ALGORITHMS):
            problems.append(
                f"corpus must define exactly {len(ALGORITHMS)} tasks, found {len(corpus.tasks)}"
            )
        for domain in DOMAINS:
            count = sum(1 for t in corpus.tasks.values() if t.domain == domain)
            if count != 3:
                problems.append(f"domain {domain} must own exactly 3 tasks, found {count}")
        seen = [t.algorithm for t in corpus.tasks.values()]
        for algorithm in ALGORITHMS:
            if seen.count(algorithm) != 1:
                problems.append(f"algorithm {algorithm} must appear exactly once")
        for task_id in sorted(corpus.tasks):
            if task_id not in corpus.baselines:
                problems.append(f"task {task_id}: missing baseline solution")

    if problems:
        raise CorpusValidationError(problems)
    return corpus
