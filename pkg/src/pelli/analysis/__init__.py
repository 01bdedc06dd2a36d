"""From-scratch static analysis for Python source: lexer, parser, metrics."""

from .api import AnalysisReport, MetricVector, analyze
from .complexity import BlockComplexity, CyclomaticReport, cyclomatic_complexity
from .halstead import HalsteadReport, halstead
from .lexer import Lexer, tokenize
from .lint import Finding, LintConfig, LintResult, lint
from .maintainability import maintainability_index
from .parser import Parser, parse_module
from .stats import SourceStats, source_stats
from .tokens import SourceSyntaxError, Token, TokenType

__all__ = [
    "AnalysisReport",
    "BlockComplexity",
    "CyclomaticReport",
    "Finding",
    "HalsteadReport",
    "Lexer",
    "LintConfig",
    "LintResult",
    "MetricVector",
    "Parser",
    "SourceStats",
    "SourceSyntaxError",
    "Token",
    "TokenType",
    "analyze",
    "cyclomatic_complexity",
    "halstead",
    "lint",
    "maintainability_index",
    "parse_module",
    "source_stats",
    "tokenize",
]
