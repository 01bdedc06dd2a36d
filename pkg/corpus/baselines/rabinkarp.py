"""Rabin-Karp substring search with a rolling polynomial hash."""

BASE = 256
MODULUS = 1_000_000_007


def rabin_karp(text: str, pattern: str) -> list[int]:
    """Every start index where ``pattern`` occurs in ``text``."""
    n, m = len(text), len(pattern)
    if m == 0 or m > n:
        return []
    high = pow(BASE, m - 1, MODULUS)
    pattern_hash = 0
    window_hash = 0
    for i in range(m):
        pattern_hash = (pattern_hash * BASE + ord(pattern[i])) % MODULUS
        window_hash = (window_hash * BASE + ord(text[i])) % MODULUS
    matches = []
    for start in range(n - m + 1):
        if window_hash == pattern_hash and text[start:start + m] == pattern:
            matches.append(start)
        if start < n - m:
            window_hash = (window_hash - ord(text[start]) * high) % MODULUS
            window_hash = (window_hash * BASE + ord(text[start + m])) % MODULUS
    return matches
