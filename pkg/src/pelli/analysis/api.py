"""Composed static analysis: one call, one metric vector."""

from __future__ import annotations

from dataclasses import dataclass, field

from .complexity import CyclomaticReport, cyclomatic_complexity
from .halstead import HalsteadReport, halstead
from .lexer import tokenize
from .lint import Finding, LintConfig, LintResult, lint
from .maintainability import maintainability_index
from .parser import Parser
from .stats import SourceStats, source_stats
from .tokens import SourceSyntaxError


@dataclass
class MetricVector:
    """Raw measurements for one solution.

    Static fields are filled by analyze(); cpu_usage and memory_usage stay
    None until profiling runs. ``usable`` is False when the source failed to
    parse, which excludes the vector from scoring groups.
    """

    mi: float = 0.0
    convention_count: int = 0
    refactor_count: int = 0
    comment_lines: int = 0
    comments_to_loc: float = 0.0
    sloc: int = 0
    method_count: int = 0
    cc_total: int = 0
    delivered_bugs: float = 0.0
    warning_count: int = 0
    error_count: int = 0
    loc: int = 0
    cpu_usage: float | None = None
    memory_usage: float | None = None
    usable: bool = True

    def to_dict(self) -> dict:
        return {
            "mi": self.mi,
            "convention_count": self.convention_count,
            "refactor_count": self.refactor_count,
            "comment_lines": self.comment_lines,
            "comments_to_loc": self.comments_to_loc,
            "sloc": self.sloc,
            "method_count": self.method_count,
            "cc_total": self.cc_total,
            "delivered_bugs": self.delivered_bugs,
            "warning_count": self.warning_count,
            "error_count": self.error_count,
            "loc": self.loc,
            "cpu_usage": self.cpu_usage,
            "memory_usage": self.memory_usage,
            "usable": self.usable,
        }


@dataclass
class AnalysisReport:
    vector: MetricVector
    findings: list[Finding] = field(default_factory=list)
    stats: SourceStats | None = None
    halstead: HalsteadReport | None = None
    cyclomatic: CyclomaticReport | None = None

    @property
    def usable(self) -> bool:
        return self.vector.usable


def analyze(source: str, lint_config: LintConfig | None = None) -> AnalysisReport:
    """Run every static measurement over one source text.

    A syntax error yields an unusable zeroed vector carrying the single fatal
    finding; nothing else is attempted on such input.
    """
    lint_result: LintResult = lint(source, lint_config)
    if lint_result.fatal:
        return AnalysisReport(MetricVector(usable=False), lint_result.findings)

    tokens = tokenize(source)
    module = Parser(tokens).parse_module()
    stats = source_stats(source, tokens, module)
    hal = halstead(tokens=tokens)
    cx = cyclomatic_complexity(module)
    mi = maintainability_index(stats, hal.volume, cx.total)

    vector = MetricVector(
        mi=mi,
        convention_count=lint_result.count("convention"),
        refactor_count=lint_result.count("refactor"),
        comment_lines=stats.comment_lines,
        comments_to_loc=stats.comments_to_loc,
        sloc=stats.sloc,
        method_count=stats.method_count,
        cc_total=cx.total,
        delivered_bugs=hal.delivered_bugs,
        warning_count=lint_result.count("warning"),
        error_count=lint_result.count("error"),
        loc=stats.loc,
    )
    return AnalysisReport(vector, lint_result.findings, stats, hal, cx)
