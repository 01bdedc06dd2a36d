"""Principal component analysis via power iteration with deflation."""

import math

ITERATIONS = 100


def _center(data: list[list[float]]) -> list[list[float]]:
    count = len(data)
    means = [sum(col) / count for col in zip(*data)]
    return [[value - mean for value, mean in zip(row, means)] for row in data]


def _covariance(centered: list[list[float]]) -> list[list[float]]:
    count = len(centered)
    features = len(centered[0])
    cov = [[0.0] * features for _ in range(features)]
    for row in centered:
        for i in range(features):
            for j in range(features):
                cov[i][j] += row[i] * row[j]
    denom = max(count - 1, 1)
    return [[value / denom for value in row] for row in cov]


def _power_iteration(matrix: list[list[float]]) -> tuple[list[float], float]:
    size = len(matrix)
    vector = [1.0 / math.sqrt(size)] * size
    eigenvalue = 0.0
    for _ in range(ITERATIONS):
        product = [sum(matrix[i][j] * vector[j] for j in range(size)) for i in range(size)]
        norm = math.sqrt(sum(value * value for value in product))
        if norm == 0.0:
            break
        vector = [value / norm for value in product]
        eigenvalue = norm
    return vector, eigenvalue


def _deflate(
    matrix: list[list[float]], vector: list[float], eigenvalue: float
) -> list[list[float]]:
    size = len(matrix)
    return [
        [matrix[i][j] - eigenvalue * vector[i] * vector[j] for j in range(size)]
        for i in range(size)
    ]


def pca(data: list[list[float]], num_components: int) -> list[list[float]]:
    """Project ``data`` onto its ``num_components`` leading components."""
    centered = _center(data)
    cov = _covariance(centered)
    components = []
    for _ in range(min(num_components, len(cov))):
        vector, eigenvalue = _power_iteration(cov)
        components.append(vector)
        cov = _deflate(cov, vector, eigenvalue)
    return [
        [sum(value * axis for value, axis in zip(row, component)) for component in components]
        for row in centered
    ]
