"""Huffman coding: frequency tree plus bitstring encoder."""

import heapq
from collections import Counter


def _build_codes(text: str) -> dict[str, str]:
    counts = Counter(text)
    if len(counts) == 1:
        return {next(iter(counts)): "0"}
    heap = [(count, index, char, None, None) for index, (char, count) in enumerate(sorted(counts.items()))]
    heapq.heapify(heap)
    index = len(heap)
    while len(heap) > 1:
        left = heapq.heappop(heap)
        right = heapq.heappop(heap)
        heapq.heappush(heap, (left[0] + right[0], index, None, left, right))
        index += 1
    codes: dict[str, str] = {}
    stack = [(heap[0], "")]
    while stack:
        node, prefix = stack.pop()
        _, _, char, left, right = node
        if char is not None:
            codes[char] = prefix
            continue
        stack.append((left, prefix + "0"))
        stack.append((right, prefix + "1"))
    return codes


def huffman_encode(text: str) -> str:
    """Encode ``text`` as a string of 0s and 1s using Huffman codes."""
    if not text:
        return ""
    codes = _build_codes(text)
    return "".join(codes[char] for char in text)
