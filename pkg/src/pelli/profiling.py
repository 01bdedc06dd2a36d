"""Child-process runtime measurement.

Each solution is executed in an isolated child through the execution shim,
five times sequentially, never overlapping (the single-flight lock below).
A sampler thread reads OS process statistics at a fixed interval; the
measured code is never instrumented in-process. CPU is process CPU time over
wall time, single-core-normalized and clamped to [0, 100]; memory is peak
resident set size in bytes.

Child invocation contract:

    <interpreter> shim.py --solution <path> --task <id> --input <path>

The shim's final stdout line is ``PELLI-SHIM:{json}`` and its exit code is 0
on success. Anything else is a protocol violation and fails the run.
"""

from __future__ import annotations

import statistics
import subprocess
import sys
import threading
import time
from dataclasses import dataclass
from pathlib import Path

import psutil

STATUS_PREFIX = "PELLI-SHIM:"
STDERR_TAIL_CHARS = 2000

# at most one profiled child exists at any time, even across profiler objects
_EXEC_LOCK = threading.Lock()


@dataclass(frozen=True)
class RunSample:
    cpu_percent: float
    peak_rss_bytes: int
    wall_time: float
    exit_status: int | None
    stderr_tail: str


@dataclass(frozen=True)
class ExecReport:
    ok: bool
    exit_status: int | None
    stderr_tail: str
    status: dict | None
    reason: str | None


@dataclass(frozen=True)
class RunAggregate:
    samples: tuple[RunSample, ...]
    cpu_usage: float | None
    memory_usage: float | None
    success: bool
    failure_reason: str | None = None
    replayed: bool = False

    def to_payload(self) -> dict:
        return {
            "cpu_usage": self.cpu_usage,
            "memory_usage": self.memory_usage,
            "success": self.success,
            "failure_reason": self.failure_reason,
            "samples": [
                {
                    "cpu_percent": s.cpu_percent,
                    "peak_rss_bytes": s.peak_rss_bytes,
                    "wall_time": s.wall_time,
                    "exit_status": s.exit_status,
                }
                for s in self.samples
            ],
        }

    @classmethod
    def from_payload(cls, payload: dict, replayed: bool = False) -> "RunAggregate":
        samples = tuple(
            RunSample(
                cpu_percent=s["cpu_percent"],
                peak_rss_bytes=s["peak_rss_bytes"],
                wall_time=s["wall_time"],
                exit_status=s["exit_status"],
                stderr_tail="",
            )
            for s in payload.get("samples", [])
        )
        return cls(
            samples=samples,
            cpu_usage=payload["cpu_usage"],
            memory_usage=payload["memory_usage"],
            success=payload["success"],
            failure_reason=payload.get("failure_reason"),
            replayed=replayed,
        )


class _Sampler(threading.Thread):
    """Polls rss and cpu_times for one pid until stopped."""

    def __init__(self, pid: int, interval: float):
        super().__init__(daemon=True)
        self.peak_rss = 0
        self.cpu_seconds = 0.0
        self._pid = pid
        self._interval = interval
        self._stop_event = threading.Event()

    def run(self):
        try:
            proc = psutil.Process(self._pid)
        except psutil.NoSuchProcess:
            return
        while True:
            self._sample(proc)
            if self._stop_event.wait(self._interval):
                self._sample(proc)  # catch the final cpu_times if still readable
                return

    def _sample(self, proc: psutil.Process):
        try:
            rss = proc.memory_info().rss
            times = proc.cpu_times()
        except (psutil.NoSuchProcess, psutil.ZombieProcess, psutil.AccessDenied):
            return
        if rss > self.peak_rss:
            self.peak_rss = rss
        self.cpu_seconds = times.user + times.system

    def stop(self):
        self._stop_event.set()


def _parse_status(stdout_text: str, exit_status: int | None) -> tuple[dict | None, str | None]:
    """Return (status dict, problem). problem is None only for a clean run."""
    status = None
    lines = [line for line in stdout_text.splitlines() if line.strip()]
    if lines and lines[-1].startswith(STATUS_PREFIX):
        import json

        try:
            status = json.loads(lines[-1][len(STATUS_PREFIX):])
        except json.JSONDecodeError:
            return None, "shim protocol violation: status line is not valid JSON"
    if exit_status == 0:
        if status is None:
            return None, "shim protocol violation: missing status line"
        if status.get("ok") is not True:
            return status, "shim protocol violation: exit 0 but ok is not true"
        return status, None
    if exit_status == 3:
        return status, "missing entry point"
    if exit_status == 4:
        detail = ""
        if status and status.get("exception"):
            exc = status["exception"]
            detail = f": {exc.get('type')}: {exc.get('message')}"
        return status, "uncaught exception" + detail
    if exit_status == 5:
        return status, "bad input bundle"
    return status, f"exit status {exit_status}"


@dataclass
class ProfilerConfig:
    shim_path: Path
    interpreter: str = sys.executable
    runs_per_solution: int = 5
    sample_interval: float = 0.01
    aggregator: str = "mean"  # or "median"

    def __post_init__(self):
        if self.runs_per_solution < 1:
            raise ValueError("runs_per_solution must be >= 1")
        if self.aggregator not in ("mean", "median"):
            raise ValueError(f"unknown aggregator {self.aggregator!r}")


class Profiler:
    def __init__(self, config: ProfilerConfig):
        self.config = config

    def _run_once(
        self, solution_path: Path, task_id: str, input_path: Path, timeout: float
    ) -> tuple[RunSample, dict | None, str | None]:
        cmd = [
            str(self.config.interpreter),
            str(self.config.shim_path),
            "--solution", str(solution_path),
            "--task", task_id,
            "--input", str(input_path),
        ]
        started = time.monotonic()
        proc = subprocess.Popen(
            cmd, stdout=subprocess.PIPE, stderr=subprocess.PIPE, text=True
        )
        sampler = _Sampler(proc.pid, self.config.sample_interval)
        sampler.start()
        timed_out = False
        try:
            out, err = proc.communicate(timeout=timeout)
        except subprocess.TimeoutExpired:
            timed_out = True
            proc.kill()
            out, err = proc.communicate()
        wall = time.monotonic() - started
        sampler.stop()
        sampler.join()
        if timed_out:
            wall = timeout  # the run was cut at the deadline
        cpu_percent = 0.0
        if wall > 0:
            cpu_percent = min(100.0, max(0.0, sampler.cpu_seconds / wall * 100.0))
        sample = RunSample(
            cpu_percent=cpu_percent,
            peak_rss_bytes=sampler.peak_rss,
            wall_time=wall,
            exit_status=proc.returncode,
            stderr_tail=err[-STDERR_TAIL_CHARS:],
        )
        if timed_out:
            return sample, None, f"timeout after {timeout:g}s"
        status, problem = _parse_status(out, proc.returncode)
        return sample, status, problem

    def profile(self, solution_path: Path, task_id: str, input_path: Path, timeout: float) -> RunAggregate:
        """Five sequential runs; success only if every run is clean."""
        samples: list[RunSample] = []
        with _EXEC_LOCK:
            for _ in range(self.config.runs_per_solution):
                sample, _, problem = self._run_once(solution_path, task_id, input_path, timeout)
                samples.append(sample)
                if problem is not None:
                    return RunAggregate(tuple(samples), None, None, False, problem)
        combine = statistics.mean if self.config.aggregator == "mean" else statistics.median
        cpu = float(combine([s.cpu_percent for s in samples]))
        mem = float(combine([s.peak_rss_bytes for s in samples]))
        return RunAggregate(tuple(samples), cpu, mem, True, None)

    def sanity_execute(self, solution_path: Path, task_id: str, input_path: Path, timeout: float) -> ExecReport:
        """One unprofiled run: parse/launch/exit only, no correctness claim."""
        with _EXEC_LOCK:
            sample, status, problem = self._run_once(solution_path, task_id, input_path, timeout)
        return ExecReport(
            ok=problem is None,
            exit_status=sample.exit_status,
            stderr_tail=sample.stderr_tail,
            status=status,
            reason=problem,
        )
