"""Score preprocessing: smooth, normalize, scale, invert.

Stages run in exactly that order per metric over one algorithm group, because
max-observed scaling needs every observation of the group in hand before any
value can be scaled. The per-metric stage selection ships in
``data/metric_specs.json``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .analysis import MetricVector

DEFAULT_K = 0.01


@dataclass(frozen=True)
class Scaler:
    kind: str  # "max_observed" | "fixed_range"
    upper: float | None = None


@dataclass(frozen=True)
class MetricSpec:
    metric_id: str
    source_field: str
    smoothing_k: float | None
    normalizer: str  # "none" | "loc" | "methods"
    scaler: Scaler
    inverse: bool


@dataclass
class ScoreEntry:
    """One metric's journey through the stages, kept for provenance."""

    metric_id: str
    raw: float | None
    normalized: float | None = None
    scaled: float | None = None
    processed: float | None = None
    flags: list[str] = field(default_factory=list)


@dataclass
class ScoreVector:
    solution_id: str
    group_key: str
    entries: dict[str, ScoreEntry] = field(default_factory=dict)

    def value(self, metric_id: str) -> float | None:
        entry = self.entries.get(metric_id)
        return entry.processed if entry else None


def load_metric_specs(path: str | Path | None = None) -> list[MetricSpec]:
    if path is None:
        raw = json.loads(
            resources.files("pelli.data").joinpath("metric_specs.json").read_text()
        )
    else:
        raw = json.loads(Path(path).read_text())
    specs = []
    for row in raw["metrics"]:
        scaler = Scaler(row["scaler"]["kind"], row["scaler"].get("upper"))
        specs.append(
            MetricSpec(
                metric_id=row["metric_id"],
                source_field=row["source_field"],
                smoothing_k=row["smoothing_k"],
                normalizer=row["normalizer"],
                scaler=scaler,
                inverse=row["inverse"],
            )
        )
    return specs


def smooth(count: float, k: float = DEFAULT_K) -> float:
    if k <= 0:
        raise ValueError("smoothing constant must be positive")
    return count + k


def normalize(value: float, denom: float) -> tuple[float, bool]:
    """Divide by the denominator; a denominator below 1 falls back to 1.

    Returns (normalized, fallback_used). Dropping zero-denominator rows would
    silently shrink scaling groups, so they stay in with the fallback flagged.
    """
    if denom < 1:
        return value, True
    return value / denom, False


def scale_fixed(value: float, upper: float) -> float:
    return value / upper


def scale_max_observed(values: list[float]) -> list[float]:
    """Scale a group by its max; an all-zero group maps to all zeros."""
    if not values:
        return []
    peak = max(values)
    if peak <= 0:
        return [0.0 for _ in values]
    return [v / peak for v in values]


def invert(scaled: float) -> float:
    return 1.0 - scaled


def _denominator(spec: MetricSpec, vector: MetricVector) -> float | None:
    if spec.normalizer == "none":
        return None
    if spec.normalizer == "loc":
        return float(vector.loc)
    if spec.normalizer == "methods":
        return float(vector.method_count)
    raise ValueError(f"unknown normalizer {spec.normalizer!r}")


def process_group(
    vectors: list[tuple[str, MetricVector]],
    specs: list[MetricSpec],
    group_key: str,
) -> list[ScoreVector]:
    """Run the four stages for every metric over one algorithm group.

    ``vectors`` must contain only usable observations for a single algorithm;
    a missing runtime value (unprofiled solution) keeps its entry at None and
    does not participate in that metric's max.
    """
    for _, vector in vectors:
        if not vector.usable:
            raise ValueError("unusable vectors must be excluded before scoring")

    scores = [ScoreVector(solution_id, group_key) for solution_id, _ in vectors]

    for spec in specs:
        normalized: list[float | None] = []
        flags: list[list[str]] = []
        for _, vector in vectors:
            raw = getattr(vector, spec.source_field)
            row_flags: list[str] = []
            if raw is None:
                normalized.append(None)
                flags.append(row_flags)
                continue
            value = float(raw)
            if spec.smoothing_k is not None:
                value = smooth(value, spec.smoothing_k)
            denom = _denominator(spec, vector)
            if denom is not None:
                value, fallback = normalize(value, denom)
                if fallback:
                    row_flags.append(f"{spec.normalizer}-denominator-fallback")
            normalized.append(value)
            flags.append(row_flags)

        present = [v for v in normalized if v is not None]
        if spec.scaler.kind == "max_observed":
            scaled_present = scale_max_observed(present)
            if present and max(present) <= 0:
                for row_flags, v in zip(flags, normalized):
                    if v is not None:
                        row_flags.append("all-zero-group")
            it = iter(scaled_present)
            scaled = [next(it) if v is not None else None for v in normalized]
        else:
            upper = spec.scaler.upper
            if upper is None:
                raise ValueError(f"fixed_range scaler for {spec.metric_id} lacks an upper bound")
            scaled = [scale_fixed(v, upper) if v is not None else None for v in normalized]

        for score, (solution_id, vector), norm, scl, row_flags in zip(
            scores, vectors, normalized, scaled, flags
        ):
            raw = getattr(vector, spec.source_field)
            processed = None
            if scl is not None:
                processed = invert(scl) if spec.inverse else scl
            score.entries[spec.metric_id] = ScoreEntry(
                metric_id=spec.metric_id,
                raw=None if raw is None else float(raw),
                normalized=norm,
                scaled=scl,
                processed=processed,
                flags=row_flags,
            )
    return scores
