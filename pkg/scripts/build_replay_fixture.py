"""Build the shipped replay store for the offline demo run.

Writes transcripts for two synthetic producers over three tasks and all
three prompt tiers, then profiles every resulting solution (and the human
baselines) once on this machine and freezes the aggregates into the store.
Rebuilding refreshes the measurement numbers; the transcripts are static.

The two producers are deliberately different: `nova` writes tidy, documented
code; `quasar` writes terse code with short names, answers one prompt with
no code at all on the first attempt, ships one solution as a class (top
level wrapper gets synthesized), and forgets an import once (import gets
inserted from the task allowlist).

Usage: python scripts/build_replay_fixture.py [--repo-root PATH]
"""

import argparse
import sys
import tempfile
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO_ROOT / "src"))

from pelli.corpus import Solution, load_corpus  # noqa: E402
from pelli.gateway import ReplayStore, extract_source  # noqa: E402
from pelli.inputs import standardized_inputs  # noqa: E402
from pelli.pipeline import apply_minor_adjustments  # noqa: E402
from pelli.profiling import Profiler, ProfilerConfig  # noqa: E402

FIXTURE_TASKS = ("quicksort", "attention", "huffman")
TIERS = ("short", "medium", "long")


def _fence(code: str, before: str, after: str = "") -> str:
    text = before.rstrip("\n") + "\n\n```python\n" + code.strip("\n") + "\n```\n"
    if after:
        text += "\n" + after.rstrip("\n") + "\n"
    return text


NOVA_QUICKSORT_SHORT = _fence(
    """
def quick_sort(values):
    if len(values) <= 1:
        return list(values)
    pivot = values[len(values) // 2]
    left = [item for item in values if item < pivot]
    middle = [item for item in values if item == pivot]
    right = [item for item in values if item > pivot]
    return quick_sort(left) + middle + quick_sort(right)
""",
    "Here is a straightforward recursive quicksort:",
    "It returns a new sorted list and leaves the input untouched.",
)

NOVA_QUICKSORT_MEDIUM = _fence(
    '''
"""Quicksort for integer lists.

Typical use case: ordering moderate collections of scores or ids where a
dependency-free, readable sort is preferred over library calls.
"""


def quick_sort(values: list[int]) -> list[int]:
    """Return the values as a new list in ascending order."""
    if len(values) <= 1:
        return list(values)
    pivot = values[len(values) // 2]
    left = [item for item in values if item < pivot]
    middle = [item for item in values if item == pivot]
    right = [item for item in values if item > pivot]
    return quick_sort(left) + middle + quick_sort(right)
''',
    "Below is a documented quicksort with type hints.",
)

NOVA_QUICKSORT_LONG = _fence(
    '''
"""Quicksort for integer lists.

Functionality: recursive three-way quicksort returning a new list.
Use case: sorting integer collections without external dependencies.
Defaults: the single argument is required; no optional behaviour exists.
"""


def quick_sort(values: list[int]) -> list[int]:
    """Sort ascending; empty lists, single elements and duplicates are fine.

    Raises TypeError when the argument is not a list of numbers.
    """
    if not isinstance(values, list):
        raise TypeError("values must be a list")
    for item in values:
        if isinstance(item, bool) or not isinstance(item, (int, float)):
            raise TypeError("values must contain only numbers")
    if len(values) <= 1:
        return list(values)
    pivot = values[len(values) // 2]
    left = [item for item in values if item < pivot]
    middle = [item for item in values if item == pivot]
    right = [item for item in values if item > pivot]
    return quick_sort(left) + middle + quick_sort(right)
''',
    "Here is a defensive quicksort covering the edge cases you listed.",
)

QUASAR_QUICKSORT_SHORT = """Sure. Paste this into your project:

def quick_sort(a):
    if len(a) < 2:
        return list(a)
    p = a[len(a) // 2]
    l = [x for x in a if x < p]
    m = [x for x in a if x == p]
    r = [x for x in a if x > p]
    return quick_sort(l) + m + quick_sort(r)

It picks the middle element as the pivot.
"""

QUASAR_QUICKSORT_MEDIUM = _fence(
    '''
"""Sorts ints. Use case: sorting lists of numbers."""


def quick_sort(a: list[int]) -> list[int]:
    """Quicksort, returns a new list."""
    if len(a) < 2:
        return list(a)
    p = a[len(a) // 2]
    return (
        quick_sort([x for x in a if x < p])
        + [x for x in a if x == p]
        + quick_sort([x for x in a if x > p])
    )
''',
    "Documented version:",
)

QUASAR_QUICKSORT_LONG = _fence(
    '''
"""Quicksort.

Functionality: sorts a list. Use case: integer data. Defaults: none.
"""


def quick_sort(a: list[int]) -> list[int]:
    """Sort a list; empty and single-element inputs come back as copies."""
    if not isinstance(a, list):
        raise TypeError("need a list")
    if len(a) < 2:
        return list(a)
    p = a[len(a) // 2]
    l = [x for x in a if x < p]
    e = [x for x in a if x == p]
    g = [x for x in a if x > p]
    return quick_sort(l) + e + quick_sort(g)
''',
    "This one validates the input type and handles the edge cases.",
)

NOVA_ATTENTION_SHORT = _fence(
    """
import math


def attention(queries, keys, values):
    dim = len(queries[0])
    scale = 1.0 / math.sqrt(dim)
    output = []
    for q_row in queries:
        scores = [scale * sum(q * k for q, k in zip(q_row, k_row)) for k_row in keys]
        peak = max(scores)
        weights = [math.exp(s - peak) for s in scores]
        total = sum(weights)
        weights = [w / total for w in weights]
        row = [
            sum(w * v_row[col] for w, v_row in zip(weights, values))
            for col in range(len(values[0]))
        ]
        output.append(row)
    return output
""",
    "Scaled dot-product attention in plain Python:",
)

NOVA_ATTENTION_MEDIUM = _fence(
    '''
"""Scaled dot-product attention on nested lists.

Use case: checking transformer computations against a reference that has no
framework dependencies.
"""

import math


def softmax(row: list[float]) -> list[float]:
    """Numerically stable softmax of one score row."""
    peak = max(row)
    exps = [math.exp(value - peak) for value in row]
    total = sum(exps)
    return [value / total for value in exps]


def attention(
    queries: list[list[float]],
    keys: list[list[float]],
    values: list[list[float]],
) -> list[list[float]]:
    """Return softmax(Q K^T / sqrt(d)) V for a single head."""
    dim = len(queries[0])
    scale = 1.0 / math.sqrt(dim)
    output = []
    for q_row in queries:
        scores = [scale * sum(q * k for q, k in zip(q_row, k_row)) for k_row in keys]
        weights = softmax(scores)
        output.append(
            [
                sum(w * v_row[col] for w, v_row in zip(weights, values))
                for col in range(len(values[0]))
            ]
        )
    return output
''',
    "Here is the documented implementation with a separate softmax helper.",
)

NOVA_ATTENTION_LONG = _fence(
    '''
"""Scaled dot-product attention on nested lists.

Functionality: softmax(Q K^T / sqrt(d)) V for one head.
Use case: a dependency-free reference for validating transformer layers.
Defaults: none; all three matrices are required and unscaled.
"""

import math


def softmax(row: list[float]) -> list[float]:
    """Numerically stable softmax of one score row."""
    peak = max(row)
    exps = [math.exp(value - peak) for value in row]
    total = sum(exps)
    return [value / total for value in exps]


def attention(
    queries: list[list[float]],
    keys: list[list[float]],
    values: list[list[float]],
) -> list[list[float]]:
    """Attention output; validates shapes and input data types.

    Raises TypeError for non-list inputs and ValueError when keys and
    values disagree on the row count. A single position is fine.
    """
    for name, matrix in (("queries", queries), ("keys", keys), ("values", values)):
        if not isinstance(matrix, list) or not matrix:
            raise TypeError(f"{name} must be a non-empty list of rows")
    if len(keys) != len(values):
        raise ValueError("keys and values must have the same number of rows")
    dim = len(queries[0])
    scale = 1.0 / math.sqrt(dim)
    output = []
    for q_row in queries:
        scores = [scale * sum(q * k for q, k in zip(q_row, k_row)) for k_row in keys]
        weights = softmax(scores)
        output.append(
            [
                sum(w * v_row[col] for w, v_row in zip(weights, values))
                for col in range(len(values[0]))
            ]
        )
    return output
''',
    "This version validates shapes and types before computing.",
)

QUASAR_ATTENTION_SHORT = _fence(
    """
import math


class Attention:
    def attention(self, q, k, v):
        d = len(q[0])
        out = []
        for qr in q:
            s = [sum(a * b for a, b in zip(qr, kr)) / math.sqrt(d) for kr in k]
            m = max(s)
            e = [math.exp(x - m) for x in s]
            t = sum(e)
            w = [x / t for x in e]
            out.append(
                [sum(wi * vr[j] for wi, vr in zip(w, v)) for j in range(len(v[0]))]
            )
        return out
""",
    "I wrapped it in a small class so you can extend it later:",
)

QUASAR_ATTENTION_MEDIUM = _fence(
    '''
"""Attention. Use case: transformer layers."""

import math


def attention(
    q: list[list[float]], k: list[list[float]], v: list[list[float]]
) -> list[list[float]]:
    """Softmax-weighted values."""
    d = len(q[0])
    out = []
    for qr in q:
        s = [sum(a * b for a, b in zip(qr, kr)) / math.sqrt(d) for kr in k]
        m = max(s)
        e = [math.exp(x - m) for x in s]
        t = sum(e)
        w = [x / t for x in e]
        out.append([sum(wi * vr[j] for wi, vr in zip(w, v)) for j in range(len(v[0]))])
    return out
''',
    "Function with hints and docstrings:",
)

QUASAR_ATTENTION_LONG = _fence(
    '''
"""Attention.

Functionality: scaled dot-product attention. Use case: model debugging.
Defaults: none.
"""

import math


def attention(
    q: list[list[float]], k: list[list[float]], v: list[list[float]]
) -> list[list[float]]:
    """Attention with basic validation; single rows are an edge case that works."""
    if not isinstance(q, list) or not isinstance(k, list) or not isinstance(v, list):
        raise TypeError("inputs must be lists of rows")
    if len(k) != len(v):
        raise ValueError("k and v row counts differ")
    d = len(q[0])
    out = []
    for qr in q:
        s = [sum(a * b for a, b in zip(qr, kr)) / math.sqrt(d) for kr in k]
        m = max(s)
        e = [math.exp(x - m) for x in s]
        t = sum(e)
        w = [x / t for x in e]
        out.append([sum(wi * vr[j] for wi, vr in zip(w, v)) for j in range(len(v[0]))])
    return out
''',
    "Added the validation you asked for.",
)

NOVA_HUFFMAN_SHORT = _fence(
    """
import heapq
from collections import Counter


def huffman_encode(text):
    if not text:
        return ""
    counts = Counter(text)
    if len(counts) == 1:
        return "0" * len(text)
    heap = [
        (count, index, char, None, None)
        for index, (char, count) in enumerate(sorted(counts.items()))
    ]
    heapq.heapify(heap)
    next_id = len(heap)
    while len(heap) > 1:
        first = heapq.heappop(heap)
        second = heapq.heappop(heap)
        heapq.heappush(heap, (first[0] + second[0], next_id, None, first, second))
        next_id += 1
    codes = {}
    stack = [(heap[0], "")]
    while stack:
        node, prefix = stack.pop()
        if node[2] is not None:
            codes[node[2]] = prefix
            continue
        stack.append((node[3], prefix + "0"))
        stack.append((node[4], prefix + "1"))
    return "".join(codes[char] for char in text)
""",
    "Huffman encoding with a tuple-based tree:",
)

NOVA_HUFFMAN_MEDIUM = _fence(
    '''
"""Huffman coding over character frequencies.

Use case: compact encoding of redundant text streams, e.g. log payloads.
"""

import heapq
from collections import Counter


def build_codes(text: str) -> dict[str, str]:
    """Map each character to its prefix-free bit code."""
    counts = Counter(text)
    if len(counts) == 1:
        return {char: "0" for char in counts}
    heap = [
        (count, index, char, None, None)
        for index, (char, count) in enumerate(sorted(counts.items()))
    ]
    heapq.heapify(heap)
    next_id = len(heap)
    while len(heap) > 1:
        first = heapq.heappop(heap)
        second = heapq.heappop(heap)
        heapq.heappush(heap, (first[0] + second[0], next_id, None, first, second))
        next_id += 1
    codes: dict[str, str] = {}
    stack = [(heap[0], "")]
    while stack:
        node, prefix = stack.pop()
        if node[2] is not None:
            codes[node[2]] = prefix
            continue
        stack.append((node[3], prefix + "0"))
        stack.append((node[4], prefix + "1"))
    return codes


def huffman_encode(text: str) -> str:
    """Encode the text as a string of 0 and 1 characters."""
    if not text:
        return ""
    codes = build_codes(text)
    return "".join(codes[char] for char in text)
''',
    "Split into a code-building step and the encoder itself:",
)

NOVA_HUFFMAN_LONG = _fence(
    '''
"""Huffman coding over character frequencies.

Functionality: builds the optimal prefix tree and emits the bitstring.
Use case: compressing repetitive text before storage or transfer.
Defaults: none; the input string is the only argument.
"""

import heapq
from collections import Counter


def build_codes(text: str) -> dict[str, str]:
    """Map each character to its prefix-free bit code.

    A single distinct character degenerates to the code "0".
    """
    counts = Counter(text)
    if len(counts) == 1:
        return {char: "0" for char in counts}
    heap = [
        (count, index, char, None, None)
        for index, (char, count) in enumerate(sorted(counts.items()))
    ]
    heapq.heapify(heap)
    next_id = len(heap)
    while len(heap) > 1:
        first = heapq.heappop(heap)
        second = heapq.heappop(heap)
        heapq.heappush(heap, (first[0] + second[0], next_id, None, first, second))
        next_id += 1
    codes: dict[str, str] = {}
    stack = [(heap[0], "")]
    while stack:
        node, prefix = stack.pop()
        if node[2] is not None:
            codes[node[2]] = prefix
            continue
        stack.append((node[3], prefix + "0"))
        stack.append((node[4], prefix + "1"))
    return codes


def huffman_encode(text: str) -> str:
    """Encode text as 0/1 characters; empty input encodes to the empty string.

    Raises TypeError when the argument is not a string.
    """
    if not isinstance(text, str):
        raise TypeError("text must be a string")
    if not text:
        return ""
    codes = build_codes(text)
    return "".join(codes[char] for char in text)
''',
    "Covers the empty string and the single-character alphabet explicitly.",
)

QUASAR_HUFFMAN_NO_CODE = (
    "Huffman coding can be implemented in several ways depending on whether "
    "you need the tree, the code table, or a packed bitstream. Could you "
    "clarify which output format you expect and how ties between equal "
    "frequencies should be broken?\n"
)

QUASAR_HUFFMAN_SHORT = _fence(
    """
def huffman_encode(s):
    if not s:
        return ""
    f = {}
    for c in s:
        f[c] = f.get(c, 0) + 1
    h = [[w, [c, ""]] for c, w in sorted(f.items())]
    heapq.heapify(h)
    if len(h) == 1:
        h[0][1][1] = "0"
    while len(h) > 1:
        lo = heapq.heappop(h)
        hi = heapq.heappop(h)
        for p in lo[1:]:
            p[1] = "0" + p[1]
        for p in hi[1:]:
            p[1] = "1" + p[1]
        heapq.heappush(h, [lo[0] + hi[0]] + lo[1:] + hi[1:])
    codes = {}
    for p in h[0][1:]:
        codes[p[0]] = p[1]
    return "".join(codes[c] for c in s)
""",
    "Fine, here is a compact version:",
)

QUASAR_HUFFMAN_MEDIUM = _fence(
    '''
"""Huffman encoder. Use case: text compression."""

import heapq


def huffman_encode(s: str) -> str:
    """Return the 0/1 encoding of s."""
    if not s:
        return ""
    f: dict[str, int] = {}
    for c in s:
        f[c] = f.get(c, 0) + 1
    h = [[w, [c, ""]] for c, w in sorted(f.items())]
    heapq.heapify(h)
    if len(h) == 1:
        h[0][1][1] = "0"
    while len(h) > 1:
        lo = heapq.heappop(h)
        hi = heapq.heappop(h)
        for p in lo[1:]:
            p[1] = "0" + p[1]
        for p in hi[1:]:
            p[1] = "1" + p[1]
        heapq.heappush(h, [lo[0] + hi[0]] + lo[1:] + hi[1:])
    codes = {p[0]: p[1] for p in h[0][1:]}
    return "".join(codes[c] for c in s)
''',
    "With documentation and hints:",
)

QUASAR_HUFFMAN_LONG = _fence(
    '''
"""Huffman encoder.

Functionality: frequency-ordered prefix codes. Use case: shrinking text.
Defaults: none.
"""

import heapq


def huffman_encode(s: str) -> str:
    """Encode s as 0/1 characters.

    Edge cases: empty string gives "", one distinct character maps to "0".
    Raises TypeError for non-string input data types.
    """
    if not isinstance(s, str):
        raise TypeError("expected a string")
    if not s:
        return ""
    f: dict[str, int] = {}
    for c in s:
        f[c] = f.get(c, 0) + 1
    h = [[w, [c, ""]] for c, w in sorted(f.items())]
    heapq.heapify(h)
    if len(h) == 1:
        h[0][1][1] = "0"
    while len(h) > 1:
        lo = heapq.heappop(h)
        hi = heapq.heappop(h)
        for p in lo[1:]:
            p[1] = "0" + p[1]
        for p in hi[1:]:
            p[1] = "1" + p[1]
        heapq.heappush(h, [lo[0] + hi[0]] + lo[1:] + hi[1:])
    codes = {p[0]: p[1] for p in h[0][1:]}
    return "".join(codes[c] for c in s)
''',
    "Handles the edge cases and validates the input type.",
)

RESPONSES: dict[tuple[str, str, str], list[str]] = {
    ("nova", "quicksort", "short"): [NOVA_QUICKSORT_SHORT],
    ("nova", "quicksort", "medium"): [NOVA_QUICKSORT_MEDIUM],
    ("nova", "quicksort", "long"): [NOVA_QUICKSORT_LONG],
    ("nova", "attention", "short"): [NOVA_ATTENTION_SHORT],
    ("nova", "attention", "medium"): [NOVA_ATTENTION_MEDIUM],
    ("nova", "attention", "long"): [NOVA_ATTENTION_LONG],
    ("nova", "huffman", "short"): [NOVA_HUFFMAN_SHORT],
    ("nova", "huffman", "medium"): [NOVA_HUFFMAN_MEDIUM],
    ("nova", "huffman", "long"): [NOVA_HUFFMAN_LONG],
    ("quasar", "quicksort", "short"): [QUASAR_QUICKSORT_SHORT],
    ("quasar", "quicksort", "medium"): [QUASAR_QUICKSORT_MEDIUM],
    ("quasar", "quicksort", "long"): [QUASAR_QUICKSORT_LONG],
    ("quasar", "attention", "short"): [QUASAR_ATTENTION_SHORT],
    ("quasar", "attention", "medium"): [QUASAR_ATTENTION_MEDIUM],
    ("quasar", "attention", "long"): [QUASAR_ATTENTION_LONG],
    ("quasar", "huffman", "short"): [QUASAR_HUFFMAN_NO_CODE, QUASAR_HUFFMAN_SHORT],
    ("quasar", "huffman", "medium"): [QUASAR_HUFFMAN_MEDIUM],
    ("quasar", "huffman", "long"): [QUASAR_HUFFMAN_LONG],
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repo-root", type=Path, default=REPO_ROOT)
    args = parser.parse_args()
    root = args.repo_root

    corpus = load_corpus(root / "corpus")
    store = ReplayStore(root / "replay")

    for (producer, task_id, tier), attempts in sorted(RESPONSES.items()):
        prompt = corpus.prompt(task_id, tier)
        for ordinal, raw in enumerate(attempts, start=1):
            store.record(producer, prompt.text, ordinal, raw)
    print(f"transcripts: {sum(len(v) for v in RESPONSES.values())}")

    profiler = Profiler(ProfilerConfig(shim_path=root / "tests" / "stub_shim.py"))
    work = Path(tempfile.mkdtemp(prefix="pelli-fixture-"))
    recorded = 0

    def measure(task, source_text: str, label: str):
        nonlocal recorded
        bundle = standardized_inputs(task)
        input_path = work / f"{task.id}.json"
        input_path.write_text(bundle.to_json())
        solution_path = work / f"{label}.py"
        solution_path.write_text(source_text)
        aggregate = profiler.profile(solution_path, task.id, input_path, task.timeout)
        if not aggregate.success:
            raise SystemExit(f"{label}: profiling failed: {aggregate.failure_reason}")
        store.record_measurement(task.id, source_text, aggregate.to_payload())
        recorded += 1

    for (producer, task_id, tier), attempts in sorted(RESPONSES.items()):
        task = corpus.tasks[task_id]
        extracted = extract_source(attempts[-1])
        if not extracted:
            raise SystemExit(f"{producer}/{task_id}/{tier}: nothing extracted")
        solution = Solution(task_id, tier, producer, len(attempts), extracted)
        solution = apply_minor_adjustments(solution, task)
        measure(task, solution.source_text, f"{task_id}-{producer}-{tier}")
        if solution.adjustments:
            print(f"  {producer}/{task_id}/{tier}: {', '.join(solution.adjustments)}")

    for task_id in FIXTURE_TASKS:
        task = corpus.tasks[task_id]
        baseline = corpus.baselines[task_id]
        solution = Solution(task_id, "baseline", "baseline", 1, baseline.source_text)
        solution = apply_minor_adjustments(solution, task)
        measure(task, solution.source_text, f"{task_id}-baseline")

    print(f"measurements: {recorded}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
