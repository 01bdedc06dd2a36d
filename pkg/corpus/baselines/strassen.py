"""Strassen matrix multiplication with a naive cutoff for small blocks."""

CUTOFF = 8


def _add(a: list[list[float]], b: list[list[float]]) -> list[list[float]]:
    return [[x + y for x, y in zip(row_a, row_b)] for row_a, row_b in zip(a, b)]


def _sub(a: list[list[float]], b: list[list[float]]) -> list[list[float]]:
    return [[x - y for x, y in zip(row_a, row_b)] for row_a, row_b in zip(a, b)]


def _naive(a: list[list[float]], b: list[list[float]]) -> list[list[float]]:
    size = len(a)
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def _split(m: list[list[float]]) -> tuple:
    half = len(m) // 2
    top, bottom = m[:half], m[half:]
    return (
        [row[:half] for row in top],
        [row[half:] for row in top],
        [row[:half] for row in bottom],
        [row[half:] for row in bottom],
    )


def _pad(m: list[list[float]], size: int) -> list[list[float]]:
    padded = [row + [0.0] * (size - len(row)) for row in m]
    while len(padded) < size:
        padded.append([0.0] * size)
    return padded


def _strassen(a: list[list[float]], b: list[list[float]]) -> list[list[float]]:
    size = len(a)
    if size <= CUTOFF:
        return _naive(a, b)
    a11, a12, a21, a22 = _split(a)
    b11, b12, b21, b22 = _split(b)
    m1 = _strassen(_add(a11, a22), _add(b11, b22))
    m2 = _strassen(_add(a21, a22), b11)
    m3 = _strassen(a11, _sub(b12, b22))
    m4 = _strassen(a22, _sub(b21, b11))
    m5 = _strassen(_add(a11, a12), b22)
    m6 = _strassen(_sub(a21, a11), _add(b11, b12))
    m7 = _strassen(_sub(a12, a22), _add(b21, b22))
    c11 = _add(_sub(_add(m1, m4), m5), m7)
    c12 = _add(m3, m5)
    c21 = _add(m2, m4)
    c22 = _add(_add(_sub(m1, m2), m3), m6)
    top = [left + right for left, right in zip(c11, c12)]
    bottom = [left + right for left, right in zip(c21, c22)]
    return top + bottom


def strassen_multiply(
    matrix_a: list[list[float]], matrix_b: list[list[float]]
) -> list[list[float]]:
    """Multiply two square matrices, padding up to a power of two first."""
    size = len(matrix_a)
    padded = 1
    while padded < size:
        padded *= 2
    product = _strassen(_pad(matrix_a, padded), _pad(matrix_b, padded))
    return [row[:size] for row in product[:size]]
