"""Prompt-driven code quality harness.

Generates candidate solutions for a fixed task corpus through pluggable
LLM backends (or a deterministic replay store), measures each solution with
an 11-metric static/runtime model, pushes raw values through the
smooth/normalize/scale/invert pipeline, and reports grouped comparisons
against human baselines.
"""

__version__ = "0.1.0"
