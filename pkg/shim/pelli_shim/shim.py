"""Run one solution file inside the measured process and report how it went.

Invocation contract (the parent harness spawns this as a child):

    <interpreter> shim.py --solution <path> --task <id> --input <path>

The input bundle is JSON with "entry_point" (top-level function name),
"args" (the positional call arguments) and "task_id". The shim loads the
solution module, resolves the entry point by exact name at module top level,
calls it once, and prints a machine-readable status as the final stdout
line:

    PELLI-SHIM:{"entry_point_found": ..., "exception": ..., "ok": ..., "result_digest": ...}

Exit codes: 0 success, 3 missing entry point, 4 uncaught exception (during
module import or the call), 5 unreadable or malformed input bundle. The
status line is printed in every case and exit code 0 holds exactly when
"ok" is true. Tracebacks go to stderr so the parent's stderr tail stays
useful.

Only the standard library is imported here; per-run overhead is the
interpreter start plus one module exec, constant across solutions of a
task. Solutions may print to stdout; as long as their output is
newline-terminated the status line stays parseable as the final line.
"""

from __future__ import annotations

import argparse
import hashlib
import importlib.util
import json
import sys
import traceback
from dataclasses import dataclass

STATUS_PREFIX = "PELLI-SHIM:"

EXIT_OK = 0
EXIT_NO_ENTRY = 3
EXIT_EXCEPTION = 4
EXIT_BAD_INPUT = 5


@dataclass(frozen=True)
class ShimStatus:
    """What the parent learns about one run; ok implies the entry point was
    found and no exception is carried."""

    ok: bool
    entry_point_found: bool
    exception: dict | None
    result_digest: str | None
    exit_code: int = EXIT_OK

    def payload(self) -> dict:
        return {
            "ok": self.ok,
            "entry_point_found": self.entry_point_found,
            "exception": self.exception,
            "result_digest": self.result_digest,
        }


def _describe(exc: BaseException) -> dict:
    return {"type": type(exc).__name__, "message": str(exc)}


def _digest(result) -> str:
    """Content hash of the returned value's serialized form.

    Used for cross-run stability checks only, never for correctness, so a
    repr fallback for non-JSON values is acceptable."""
    try:
        blob = json.dumps(result, sort_keys=True, default=repr)
    except (TypeError, ValueError):
        blob = repr(result)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def run_solution(solution_path: str, task_id: str, input_path: str) -> ShimStatus:
    try:
        with open(input_path, encoding="utf-8") as handle:
            bundle = json.load(handle)
        entry_name = bundle["entry_point"]
        call_args = bundle["args"]
    except Exception as exc:
        return ShimStatus(False, False, _describe(exc), None, EXIT_BAD_INPUT)

    try:
        spec = importlib.util.spec_from_file_location("solution_under_test", solution_path)
        module = importlib.util.module_from_spec(spec)
        spec.loader.exec_module(module)
    except BaseException as exc:
        traceback.print_exc(file=sys.stderr)
        return ShimStatus(False, False, _describe(exc), None, EXIT_EXCEPTION)

    entry = getattr(module, entry_name, None)
    if not callable(entry):
        return ShimStatus(False, False, None, None, EXIT_NO_ENTRY)

    try:
        result = entry(*call_args)
    except BaseException as exc:
        traceback.print_exc(file=sys.stderr)
        return ShimStatus(False, True, _describe(exc), None, EXIT_EXCEPTION)

    return ShimStatus(True, True, None, _digest(result), EXIT_OK)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="pelli-shim")
    parser.add_argument("--solution", required=True)
    parser.add_argument("--task", required=True)
    parser.add_argument("--input", dest="input_path", required=True)
    args = parser.parse_args(argv)

    status = run_solution(args.solution, args.task, args.input_path)
    print(STATUS_PREFIX + json.dumps(status.payload(), sort_keys=True))
    sys.stdout.flush()
    return status.exit_code


if __name__ == "__main__":
    sys.exit(main())
