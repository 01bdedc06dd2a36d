"""Maintainability index on the 0-100 scale.

The clamped Visual-Studio-style variant with a comment bonus; the full term
derivation is written out in docs/metric-definitions.md. Inputs are floored so
degenerate files stay defined: volume at 1, total complexity at 1 (a runnable
module has one straight-line path), and a file without source lines scores a
clean 100.
"""

from __future__ import annotations

import math

from .stats import SourceStats


def maintainability_index(stats: SourceStats, volume: float, cc_total: int) -> float:
    if stats.sloc < 1:
        return 100.0
    v = max(volume, 1.0)
    cc = max(cc_total, 1)
    comment_radians = math.radians(stats.comment_percent)
    raw = (
        171.0
        - 5.2 * math.log(v)
        - 0.23 * cc
        - 16.2 * math.log(stats.sloc)
        + 50.0 * math.sin(math.sqrt(2.4 * comment_radians))
    )
    return max(0.0, min(100.0, raw * 100.0 / 171.0))
