"""Standardized inputs for profiling runs.

Every solution for a task is exercised with the same argument bundle so
runtime measurements are comparable. Bundles are generated deterministically
from the task id (plus an optional explicit seed in the input spec) and
serialized as canonical JSON: sorted keys, no whitespace. Identical spec in,
identical bytes out.

Bundle shape:

    {"task_id": "...", "entry_point": "...", "args": [...]}

The child-process shim loads the bundle, resolves the entry point in the
solution module and calls it with ``*args``.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass

from .corpus import TaskSpec


@dataclass(frozen=True)
class InputBundle:
    task_id: str
    entry_point: str
    args: tuple

    def to_json(self) -> str:
        payload = {
            "task_id": self.task_id,
            "entry_point": self.entry_point,
            "args": list(self.args),
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _seed_for(task: TaskSpec) -> int:
    explicit = task.input_spec.get("seed")
    if explicit is not None:
        return int(explicit)
    digest = hashlib.sha256(task.id.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def _int_list(rng: random.Random, length: int, low: int = -10_000, high: int = 10_000) -> list[int]:
    return [rng.randint(low, high) for _ in range(length)]


def _matrix(rng: random.Random, rows: int, cols: int) -> list[list[float]]:
    return [[round(rng.uniform(-1.0, 1.0), 6) for _ in range(cols)] for _ in range(rows)]


def _gen_int_array(spec: dict, rng: random.Random) -> tuple:
    return (_int_list(rng, int(spec.get("length", 2000))),)


def _gen_square_matrix_pair(spec: dict, rng: random.Random) -> tuple:
    size = int(spec.get("size", 16))
    return (_matrix(rng, size, size), _matrix(rng, size, size))


def _gen_monte_carlo(spec: dict, rng: random.Random) -> tuple:
    num_paths = int(spec.get("num_paths", 200))
    num_steps = int(spec.get("num_steps", 50))
    return (num_paths, num_steps, rng.randint(0, 2**31 - 1))


def _gen_attention(spec: dict, rng: random.Random) -> tuple:
    count = int(spec.get("count", 16))
    dim = int(spec.get("dim", 8))
    return (
        _matrix(rng, count, dim),
        _matrix(rng, count, dim),
        _matrix(rng, count, dim),
    )


def _gen_convolution(spec: dict, rng: random.Random) -> tuple:
    size = int(spec.get("image_size", 32))
    kernel = int(spec.get("kernel_size", 3))
    return (_matrix(rng, size, size), _matrix(rng, kernel, kernel))


def _gen_pca(spec: dict, rng: random.Random) -> tuple:
    samples = int(spec.get("samples", 40))
    features = int(spec.get("features", 6))
    components = int(spec.get("components", 2))
    return (_matrix(rng, samples, features), components)


def _gen_text(spec: dict, rng: random.Random) -> tuple:
    length = int(spec.get("length", 2000))
    alphabet = spec.get("alphabet", "abcdefghijklmnopqrstuvwxyz ")
    return ("".join(rng.choice(alphabet) for _ in range(length)),)


def _gen_adjacency(spec: dict, rng: random.Random) -> tuple:
    nodes = int(spec.get("nodes", 30))
    damping = float(spec.get("damping", 0.85))
    max_iterations = int(spec.get("max_iterations", 50))
    adjacency = [[0] * nodes for _ in range(nodes)]
    for row in range(nodes):
        # every node links somewhere, so rank mass never strands
        degree = rng.randint(1, max(1, nodes // 4))
        for target in rng.sample(range(nodes), degree):
            adjacency[row][target] = 1
    return (adjacency, damping, max_iterations)


def _gen_text_search(spec: dict, rng: random.Random) -> tuple:
    length = int(spec.get("length", 4000))
    pattern_length = int(spec.get("pattern_length", 12))
    alphabet = spec.get("alphabet", "ab")
    text = "".join(rng.choice(alphabet) for _ in range(length))
    start = rng.randint(0, max(0, length - pattern_length))
    pattern = text[start:start + pattern_length]
    return (text, pattern)


GENERATORS = {
    "int_array": _gen_int_array,
    "square_matrix_pair": _gen_square_matrix_pair,
    "monte_carlo_params": _gen_monte_carlo,
    "attention_tensors": _gen_attention,
    "image_kernel": _gen_convolution,
    "pca_data": _gen_pca,
    "text": _gen_text,
    "adjacency": _gen_adjacency,
    "text_search": _gen_text_search,
}


def standardized_inputs(task: TaskSpec, seed_offset: int = 0) -> InputBundle:
    """Build the task's canonical argument bundle.

    A nonzero ``seed_offset`` shifts every task's generator seed; recorded
    measurements are keyed to the default inputs, so offsets belong to live
    experiments only.
    """
    kind = task.input_spec.get("kind")
    try:
        generator = GENERATORS[kind]
    except KeyError:
        raise ValueError(f"task {task.id}: unknown input kind {kind!r}") from None
    rng = random.Random(_seed_for(task) + seed_offset)
    args = generator(task.input_spec, rng)
    if len(args) != task.entry_point.arity:
        raise ValueError(
            f"task {task.id}: generator produced {len(args)} args, "
            f"entry point takes {task.entry_point.arity}"
        )
    return InputBundle(task.id, task.entry_point.name, args)
