"""Child execution protocol: exits, sampling, timeouts, aggregation."""

import json
import sys
import time

import pytest

from pelli.profiling import (
    STATUS_PREFIX,
    Profiler,
    ProfilerConfig,
    RunAggregate,
)


def write_input(tmp_path, task_id="demo", entry_point="run", args=(3,)):
    path = tmp_path / "input.json"
    path.write_text(
        json.dumps(
            {"task_id": task_id, "entry_point": entry_point, "args": list(args)},
            sort_keys=True,
            separators=(",", ":"),
        )
    )
    return path


def write_solution(tmp_path, body, name="solution.py"):
    path = tmp_path / name
    path.write_text(body)
    return path


def make_profiler(stub_shim, runs=3, aggregator="mean"):
    return Profiler(
        ProfilerConfig(
            shim_path=stub_shim,
            interpreter=sys.executable,
            runs_per_solution=runs,
            sample_interval=0.005,
            aggregator=aggregator,
        )
    )


def test_happy_path_aggregate(tmp_path, stub_shim):
    solution = write_solution(tmp_path, "def run(n):\n    return n * 2\n")
    bundle = write_input(tmp_path)
    profiler = make_profiler(stub_shim, runs=3)
    agg = profiler.profile(solution, "demo", bundle, timeout=10.0)
    assert agg.success
    assert agg.failure_reason is None
    assert len(agg.samples) == 3
    assert not agg.replayed
    for sample in agg.samples:
        assert sample.exit_status == 0
        assert 0.0 <= sample.cpu_percent <= 100.0
        assert sample.peak_rss_bytes > 0
        assert 0.0 < sample.wall_time < 10.0
    assert agg.cpu_usage == pytest.approx(
        sum(s.cpu_percent for s in agg.samples) / 3
    )
    assert agg.memory_usage == pytest.approx(
        sum(s.peak_rss_bytes for s in agg.samples) / 3
    )


def test_missing_entry_point_fails_fast(tmp_path, stub_shim):
    solution = write_solution(tmp_path, "def other_name(n):\n    return n\n")
    bundle = write_input(tmp_path)
    profiler = make_profiler(stub_shim, runs=3)
    agg = profiler.profile(solution, "demo", bundle, timeout=10.0)
    assert not agg.success
    assert "entry point" in agg.failure_reason
    # fail fast: no further runs after the first failure
    assert len(agg.samples) == 1
    assert agg.samples[0].exit_status == 3
    assert agg.cpu_usage is None
    assert agg.memory_usage is None


def test_uncaught_exception_reported(tmp_path, stub_shim):
    solution = write_solution(
        tmp_path, "def run(n):\n    raise RuntimeError('boom %d' % n)\n"
    )
    bundle = write_input(tmp_path)
    profiler = make_profiler(stub_shim, runs=2)
    agg = profiler.profile(solution, "demo", bundle, timeout=10.0)
    assert not agg.success
    assert agg.samples[0].exit_status == 4
    assert "boom" in agg.samples[0].stderr_tail


def test_unreadable_input_reported(tmp_path, stub_shim):
    solution = write_solution(tmp_path, "def run(n):\n    return n\n")
    bad = tmp_path / "missing.json"
    profiler = make_profiler(stub_shim, runs=2)
    agg = profiler.profile(solution, "demo", bad, timeout=10.0)
    assert not agg.success
    assert agg.samples[0].exit_status == 5


def test_timeout_kills_child_and_clamps_wall_time(tmp_path, stub_shim):
    solution = write_solution(
        tmp_path, "import time\n\n\ndef run(n):\n    time.sleep(30)\n"
    )
    bundle = write_input(tmp_path)
    profiler = make_profiler(stub_shim, runs=2)
    start = time.monotonic()
    agg = profiler.profile(solution, "demo", bundle, timeout=0.8)
    elapsed = time.monotonic() - start
    assert not agg.success
    assert "timeout" in agg.failure_reason
    assert agg.samples[0].wall_time == 0.8
    assert elapsed < 10.0  # the 30 s sleep did not run to completion


def test_protocol_violation_detected(tmp_path):
    # a shim that exits cleanly without the trailer breaks the contract
    silent = tmp_path / "silent_shim.py"
    silent.write_text("import sys\nsys.exit(0)\n")
    profiler = Profiler(
        ProfilerConfig(shim_path=silent, interpreter=sys.executable, runs_per_solution=2)
    )
    solution = tmp_path / "ignored.py"
    solution.write_text("x = 1\n")
    agg = profiler.profile(solution, "demo", write_input(tmp_path), timeout=5.0)
    assert not agg.success
    assert "status" in agg.failure_reason


def test_stray_stdout_tolerated_before_trailer(tmp_path, stub_shim):
    solution = write_solution(
        tmp_path, "def run(n):\n    print('progress', n)\n    return n\n"
    )
    bundle = write_input(tmp_path)
    profiler = make_profiler(stub_shim, runs=2)
    agg = profiler.profile(solution, "demo", bundle, timeout=10.0)
    assert agg.success  # trailer is still the final line


def test_sanity_execute_single_run(tmp_path, stub_shim):
    solution = write_solution(tmp_path, "def run(n):\n    return n + 1\n")
    bundle = write_input(tmp_path)
    profiler = make_profiler(stub_shim, runs=5)
    report = profiler.sanity_execute(solution, "demo", bundle, timeout=10.0)
    assert report.ok
    assert report.exit_status == 0
    assert report.status["ok"] is True

    missing = write_solution(tmp_path, "HELPER = 1\n", name="other.py")
    report = profiler.sanity_execute(missing, "demo", bundle, timeout=10.0)
    assert not report.ok
    assert report.exit_status == 3
    assert "entry point" in report.reason


def test_busy_beats_sleepy_cpu(tmp_path, stub_shim):
    busy = write_solution(
        tmp_path,
        "def run(n):\n"
        "    total = 0\n"
        "    for i in range(2_500_000):\n"
        "        total += i * i\n"
        "    return total\n",
        name="busy.py",
    )
    sleepy = write_solution(
        tmp_path,
        "import time\n\n\ndef run(n):\n    time.sleep(0.25)\n",
        name="sleepy.py",
    )
    bundle = write_input(tmp_path)
    profiler = make_profiler(stub_shim, runs=2)
    busy_agg = profiler.profile(busy, "demo", bundle, timeout=30.0)
    sleepy_agg = profiler.profile(sleepy, "demo", bundle, timeout=30.0)
    assert busy_agg.success and sleepy_agg.success
    assert busy_agg.cpu_usage > sleepy_agg.cpu_usage


def test_aggregator_median(tmp_path, stub_shim):
    solution = write_solution(tmp_path, "def run(n):\n    return n\n")
    bundle = write_input(tmp_path)
    profiler = make_profiler(stub_shim, runs=3, aggregator="median")
    agg = profiler.profile(solution, "demo", bundle, timeout=10.0)
    assert agg.success
    cpus = sorted(s.cpu_percent for s in agg.samples)
    assert agg.cpu_usage == cpus[1]


def test_invalid_aggregator_rejected(stub_shim):
    with pytest.raises(ValueError):
        ProfilerConfig(shim_path=stub_shim, aggregator="mode")


def test_invalid_runs_rejected(stub_shim):
    with pytest.raises(ValueError):
        ProfilerConfig(shim_path=stub_shim, runs_per_solution=0)


def test_aggregate_payload_roundtrip():
    payload = {"cpu_usage": 42.5, "memory_usage": 2048.0, "success": True}
    agg = RunAggregate.from_payload(payload, replayed=True)
    assert agg.replayed
    assert agg.cpu_usage == 42.5
    assert agg.success
    assert not agg.samples
    back = agg.to_payload()
    assert back["cpu_usage"] == 42.5
    assert back["memory_usage"] == 2048.0
    assert back["success"] is True


def test_status_prefix_is_stable():
    # child protocol marker; changing it breaks recorded stores
    assert STATUS_PREFIX == "PELLI-SHIM:"
