"""Rule engine behavior: configuration, thresholds, positions, fatal path."""

import pytest

from metric_cases import _DISABLED_RULE_SOURCE
from pelli.analysis.lint import LintConfig, lint, registry


def symbols(result):
    return [f.symbol for f in result.findings]


def test_registry_has_the_documented_rule_set():
    reg = registry()
    assert set(reg.by_code) == {
        "C0103", "C0114", "C0116", "C0301", "C0303",
        "R0911", "R0912", "R0913", "R0914", "R0915",
        "W0611", "W0612", "W0622", "W0702",
        "E0104", "E0108", "E0602",
        "F0001",
    }
    disabled = {code for code, spec in reg.by_code.items() if not spec["enabled"]}
    assert disabled == {"C0301", "C0303"}


def test_disabled_rules_fire_when_enabled():
    quiet = lint(_DISABLED_RULE_SOURCE)
    assert "line-too-long" not in symbols(quiet)
    assert "trailing-whitespace" not in symbols(quiet)

    loud = lint(_DISABLED_RULE_SOURCE, LintConfig(enable=["C0301", "C0303"]))
    long_lines = [f for f in loud.findings if f.symbol == "line-too-long"]
    trailing = [f for f in loud.findings if f.symbol == "trailing-whitespace"]
    assert [f.line for f in long_lines] == [3]
    assert [f.line for f in trailing] == [4]


def test_enable_accepts_symbols_too():
    loud = lint(_DISABLED_RULE_SOURCE, LintConfig(enable=["line-too-long"]))
    assert "line-too-long" in symbols(loud)


def test_disable_suppresses_default_rules():
    src = "a = b + c\n"
    result = lint(src, LintConfig(disable=["undefined-name", "C0114", "C0103"]))
    assert result.findings == []


def test_unknown_rule_key_raises():
    with pytest.raises(KeyError):
        lint("pass\n", LintConfig(disable=["no-such-rule"]))


def test_param_override_changes_threshold():
    src = "def f(a1, b1, c1):\n    return a1 + b1 + c1\n"
    relaxed = lint(src, LintConfig(disable=["C0103", "C0114", "C0116"]))
    assert "too-many-arguments" not in symbols(relaxed)
    strict = lint(
        src,
        LintConfig(
            disable=["C0103", "C0114", "C0116"],
            params={"too-many-arguments": {"max_args": 2}},
        ),
    )
    assert "too-many-arguments" in symbols(strict)


def test_too_many_branches_threshold():
    body = "".join(f"    if x == {i}:\n        pass\n" for i in range(13))
    src = f"def f(x):\n{body}"
    result = lint(src, LintConfig(disable=["C0114", "C0116"]))
    assert "too-many-branches" in symbols(result)
    shorter = "".join(f"    if x == {i}:\n        pass\n" for i in range(12))
    result = lint(f"def f(x):\n{shorter}", LintConfig(disable=["C0114", "C0116"]))
    assert "too-many-branches" not in symbols(result)


def test_too_many_locals_counts_bindings():
    assigns = "".join(f"    var_{i:02d} = {i}\n" for i in range(16))
    src = f"def f():\n{assigns}    return 0\n"
    result = lint(src, LintConfig(disable=["C0114", "C0116", "W0612"]))
    assert "too-many-locals" in symbols(result)


def test_too_many_statements_threshold():
    body = "    value = 0\n" + "".join("    value += 1\n" for _ in range(50))
    src = f"def f():\n{body}"
    result = lint(src, LintConfig(disable=["C0114", "C0116"]))
    assert "too-many-statements" in symbols(result)


def test_statement_count_ignores_nested_defs():
    # the inner function's body must not count against the outer one
    inner = "        inner_total = 0\n" + "".join(
        "        inner_total += 1\n" for _ in range(49)
    )
    src = (
        "def outer():\n"
        "    def inner():\n"
        f"{inner}"
        "        return inner_total\n"
        "    return inner\n"
    )
    result = lint(src, LintConfig(disable=["C0114", "C0116"]))
    flagged = [f for f in result.findings if f.symbol == "too-many-statements"]
    assert [f.line for f in flagged] == [2]


def test_private_functions_exempt_from_docstring_rule():
    src = "def _helper():\n    return 1\n\n\ndef public():\n    return 2\n"
    result = lint(src, LintConfig(disable=["C0114"]))
    docs = [f for f in result.findings if f.symbol == "missing-function-docstring"]
    assert [f.line for f in docs] == [5]


def test_findings_sorted_by_position():
    src = "a = b + c\nd = e\n"
    result = lint(src)
    positions = [(f.line, f.col, f.code) for f in result.findings]
    assert positions == sorted(positions)


def test_fatal_syntax_error_short_circuits():
    result = lint("def f(:\n    pass\n")
    assert result.fatal
    assert len(result.findings) == 1
    finding = result.findings[0]
    assert finding.code == "F0001"
    assert finding.category == "fatal"
    assert result.counts()["fatal"] == 1


def test_category_partition_is_total():
    reg = registry()
    categories = {spec["category"] for spec in reg.by_code.values()}
    assert categories == {"convention", "refactor", "warning", "error", "fatal"}
    src = "a = b + c\n"
    result = lint(src)
    assert sum(result.counts().values()) == len(result.findings)
