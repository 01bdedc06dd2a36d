"""Scaled dot-product attention on plain nested lists."""

import math


def _softmax(row: list[float]) -> list[float]:
    peak = max(row)
    exps = [math.exp(value - peak) for value in row]
    total = sum(exps)
    return [value / total for value in exps]


def _matmul(a: list[list[float]], b: list[list[float]]) -> list[list[float]]:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def attention(
    queries: list[list[float]],
    keys: list[list[float]],
    values: list[list[float]],
) -> list[list[float]]:
    """softmax(Q K^T / sqrt(d)) V for one attention head."""
    dim = len(queries[0])
    scale = 1.0 / math.sqrt(dim)
    scores = [
        [scale * sum(q * k for q, k in zip(q_row, k_row)) for k_row in keys]
        for q_row in queries
    ]
    weights = [_softmax(row) for row in scores]
    return _matmul(weights, values)
