"""Aggregation and export of a finished run.

Groupings follow the reporting views: per producer, per domain, per prompt
tier, and the producer/tier cross. Every group row carries a five-number
summary plus two percent deltas, one against the human baseline mean and one
against the overall average, so both comparison phrasings are available.

Exports: ``report.json`` (full, stable key order), ``scores.csv`` (long
format), ``groups.csv``, and ``plots/*.json`` (series for any plotting front
end). All exports are a pure function of their inputs; CSV floats use 12
significant digits.
"""

from __future__ import annotations

import hashlib
import json
import statistics
from dataclasses import dataclass, field
from pathlib import Path

from .scoring import ScoreVector

DIMENSIONS = ("producer", "domain", "tier", "cross")
BASELINE_PRODUCER = "baseline"


@dataclass
class SolutionRecord:
    """Everything the report keeps about one (task, producer, tier) cell."""

    solution_id: str
    task_id: str
    domain: str
    algorithm: str
    producer: str
    tier: str
    attempts: int
    adjustments: list[str] = field(default_factory=list)
    included: bool = True
    exclusion_reason: str | None = None
    metrics: dict | None = None
    score: ScoreVector | None = None
    measurement_replayed: bool = False
    measurement_failure: str | None = None

    def group_value(self, metric_id: str) -> float | None:
        if self.score is None:
            return None
        return self.score.value(metric_id)


@dataclass(frozen=True)
class GroupStat:
    dimension: str
    group: str
    metric_id: str
    count: int
    mean: float
    minimum: float
    q1: float
    median: float
    q3: float
    maximum: float
    baseline_delta_percent: float | None
    average_delta_percent: float | None


@dataclass
class RunReport:
    config_snapshot: dict
    corpus_hash: str
    solutions: list[SolutionRecord]
    group_stats: list[GroupStat]
    metric_ids: list[str]

    @property
    def exclusions(self) -> list[SolutionRecord]:
        return [record for record in self.solutions if not record.included]


def corpus_hash(root: str | Path) -> str:
    """SHA-256 over sorted relative paths and file bytes under the root."""
    root = Path(root)
    digest = hashlib.sha256()
    for path in sorted(p for p in root.rglob("*") if p.is_file()):
        digest.update(str(path.relative_to(root)).encode("utf-8"))
        digest.update(b"\x00")
        digest.update(path.read_bytes())
        digest.update(b"\x00")
    return digest.hexdigest()


def _group_key(record: SolutionRecord, dimension: str) -> str:
    if dimension == "producer":
        return record.producer
    if dimension == "domain":
        return record.domain
    if dimension == "tier":
        return record.tier
    if dimension == "cross":
        return f"{record.producer}/{record.tier}"
    raise ValueError(f"unknown grouping dimension {dimension!r}")


def _five_numbers(values: list[float]) -> tuple[float, float, float, float, float]:
    if len(values) == 1:
        only = values[0]
        return only, only, only, only, only
    q1, median, q3 = statistics.quantiles(values, n=4, method="inclusive")
    return min(values), q1, median, q3, max(values)


def _delta_percent(group_mean: float, reference_mean: float | None) -> float | None:
    if reference_mean is None:
        return None
    if reference_mean == 0:
        return 0.0 if group_mean == 0 else None
    return (group_mean - reference_mean) / reference_mean * 100.0


def aggregate(
    records: list[SolutionRecord], dimension: str, metric_ids: list[str]
) -> list[GroupStat]:
    """GroupStats for one dimension, ordered by (group, metric)."""
    included = [r for r in records if r.included and r.score is not None]
    stats: list[GroupStat] = []
    groups: dict[str, list[SolutionRecord]] = {}
    for record in included:
        groups.setdefault(_group_key(record, dimension), []).append(record)

    for metric_id in metric_ids:
        overall = [
            v for r in included if (v := r.group_value(metric_id)) is not None
        ]
        overall_mean = statistics.mean(overall) if overall else None
        baseline = [
            v
            for r in included
            if r.producer == BASELINE_PRODUCER
            and (v := r.group_value(metric_id)) is not None
        ]
        baseline_mean = statistics.mean(baseline) if baseline else None
        for group in sorted(groups):
            values = [
                v for r in groups[group] if (v := r.group_value(metric_id)) is not None
            ]
            if not values:
                continue
            mean = statistics.mean(values)
            minimum, q1, median, q3, maximum = _five_numbers(values)
            stats.append(
                GroupStat(
                    dimension=dimension,
                    group=group,
                    metric_id=metric_id,
                    count=len(values),
                    mean=mean,
                    minimum=minimum,
                    q1=q1,
                    median=median,
                    q3=q3,
                    maximum=maximum,
                    baseline_delta_percent=_delta_percent(mean, baseline_mean),
                    average_delta_percent=_delta_percent(mean, overall_mean),
                )
            )
    stats.sort(key=lambda s: (s.group, s.metric_id))
    return stats


def build_report(
    config_snapshot: dict,
    corpus_digest: str,
    records: list[SolutionRecord],
    metric_ids: list[str],
) -> RunReport:
    records = sorted(records, key=lambda r: r.solution_id)
    group_stats: list[GroupStat] = []
    for dimension in DIMENSIONS:
        group_stats.extend(aggregate(records, dimension, metric_ids))
    return RunReport(
        config_snapshot=config_snapshot,
        corpus_hash=corpus_digest,
        solutions=records,
        group_stats=group_stats,
        metric_ids=metric_ids,
    )


# --- serialization ----------------------------------------------------------


def _score_payload(score: ScoreVector | None) -> dict | None:
    if score is None:
        return None
    entries = {}
    for metric_id, entry in sorted(score.entries.items()):
        entries[metric_id] = {
            "raw": entry.raw,
            "normalized": entry.normalized,
            "scaled": entry.scaled,
            "processed": entry.processed,
            "flags": list(entry.flags),
        }
    return {"group_key": score.group_key, "entries": entries}


def _record_payload(record: SolutionRecord) -> dict:
    return {
        "solution_id": record.solution_id,
        "task_id": record.task_id,
        "domain": record.domain,
        "algorithm": record.algorithm,
        "producer": record.producer,
        "tier": record.tier,
        "attempts": record.attempts,
        "adjustments": list(record.adjustments),
        "included": record.included,
        "exclusion_reason": record.exclusion_reason,
        "metrics": record.metrics,
        "score": _score_payload(record.score),
        "measurement_replayed": record.measurement_replayed,
        "measurement_failure": record.measurement_failure,
    }


def _stat_payload(stat: GroupStat) -> dict:
    return {
        "dimension": stat.dimension,
        "group": stat.group,
        "metric_id": stat.metric_id,
        "count": stat.count,
        "mean": stat.mean,
        "min": stat.minimum,
        "q1": stat.q1,
        "median": stat.median,
        "q3": stat.q3,
        "max": stat.maximum,
        "baseline_delta_percent": stat.baseline_delta_percent,
        "average_delta_percent": stat.average_delta_percent,
    }


def report_payload(report: RunReport) -> dict:
    return {
        "config": report.config_snapshot,
        "corpus_hash": report.corpus_hash,
        "metric_ids": list(report.metric_ids),
        "solutions": [_record_payload(r) for r in report.solutions],
        "group_stats": [_stat_payload(s) for s in report.group_stats],
        "exclusions": [
            {"solution_id": r.solution_id, "reason": r.exclusion_reason}
            for r in report.exclusions
        ],
    }


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def _scores_csv(report: RunReport) -> str:
    lines = ["solution,metric,raw,processed"]
    for record in report.solutions:
        if not record.included or record.score is None:
            continue
        for metric_id in report.metric_ids:
            entry = record.score.entries.get(metric_id)
            raw = entry.raw if entry else None
            processed = entry.processed if entry else None
            lines.append(
                f"{record.solution_id},{metric_id},{_fmt(raw)},{_fmt(processed)}"
            )
    return "\n".join(lines) + "\n"


def _groups_csv(report: RunReport) -> str:
    header = (
        "dimension,group,metric,count,mean,min,q1,median,q3,max,"
        "baseline_delta_percent,average_delta_percent"
    )
    lines = [header]
    for stat in report.group_stats:
        lines.append(
            ",".join(
                [
                    stat.dimension,
                    stat.group,
                    stat.metric_id,
                    str(stat.count),
                    _fmt(stat.mean),
                    _fmt(stat.minimum),
                    _fmt(stat.q1),
                    _fmt(stat.median),
                    _fmt(stat.q3),
                    _fmt(stat.maximum),
                    _fmt(stat.baseline_delta_percent),
                    _fmt(stat.average_delta_percent),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def _plot_series(report: RunReport, dimension: str) -> dict:
    series: dict[str, list[dict]] = {}
    for stat in report.group_stats:
        if stat.dimension != dimension:
            continue
        series.setdefault(stat.metric_id, []).append(
            {
                "group": stat.group,
                "count": stat.count,
                "mean": stat.mean,
                "min": stat.minimum,
                "q1": stat.q1,
                "median": stat.median,
                "q3": stat.q3,
                "max": stat.maximum,
            }
        )
    return {"dimension": dimension, "metrics": series}


def export(report: RunReport, out_dir: str | Path) -> list[Path]:
    """Write all report artifacts; returns the paths written."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []

    report_path = out_dir / "report.json"
    report_path.write_text(
        json.dumps(report_payload(report), indent=2, sort_keys=True) + "\n"
    )
    written.append(report_path)

    scores_path = out_dir / "scores.csv"
    scores_path.write_text(_scores_csv(report), encoding="utf-8")
    written.append(scores_path)

    groups_path = out_dir / "groups.csv"
    groups_path.write_text(_groups_csv(report), encoding="utf-8")
    written.append(groups_path)

    plots_dir = out_dir / "plots"
    plots_dir.mkdir(exist_ok=True)
    for dimension in DIMENSIONS:
        plot_path = plots_dir / f"{dimension}.json"
        plot_path.write_text(
            json.dumps(_plot_series(report, dimension), indent=2, sort_keys=True) + "\n"
        )
        written.append(plot_path)
    return written
