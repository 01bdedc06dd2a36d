"""Hand-verified analyzer fixtures.

Every number below was derived on paper from the documented definitions in
docs/metric-definitions.md: lines were counted by eye, tokens classified one
by one against the shipped operator/operand table, decision points ticked off
the fixed list, and findings walked through each rule's stated predicate.
Nothing here was copied from analyzer output.

Volume, delivered bugs and MI are not frozen as decimals; the tests derive
them from the hand-counted integers through the documented formulas, which
keeps the floats honest to 1e-9 without hand-rounding error.
"""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class OracleCase:
    name: str
    source: str
    loc: int
    sloc: int
    comment_lines: int
    blank_lines: int
    methods: int
    cc_total: int
    n1: int
    n2: int
    N1: int
    N2: int
    convention: int = 0
    refactor: int = 0
    warning: int = 0
    error: int = 0
    notes: str = ""


# Line 3 must exceed 100 characters and line 4 must carry trailing blanks for
# the disabled-rule checks; built by concatenation so editors cannot silently
# strip the whitespace.
_DISABLED_RULE_SOURCE = (
    '"""Wide."""\n'
    "\n"
    'WIDE = "x" * 300  # stretched annotation that keeps going until it sails far beyond the hundred character mark\n'
    "NEXT = 1   \n"
)
assert len(_DISABLED_RULE_SOURCE.split("\n")[2]) > 100
assert _DISABLED_RULE_SOURCE.split("\n")[3].endswith("   ")

STRASSEN_STYLE_SOURCE = (
    'def strassen_step(A_11, A_12, B_11, B_21):\n'
    '    """One quadrant product."""\n'
    "    M_1 = A_11 * B_11\n"
    "    M_2 = A_12 * B_21\n"
    "    P = M_1 + M_2\n"
    "    return P\n"
)

STRASSEN_SNAKE_SOURCE = (
    'def strassen_step(a_11, a_12, b_11, b_21):\n'
    '    """One quadrant product."""\n'
    "    m_1 = a_11 * b_11\n"
    "    m_2 = a_12 * b_21\n"
    "    total = m_1 + m_2\n"
    "    return total\n"
)

CASES = [
    OracleCase(
        name="minimal_statement",
        source="pass\n",
        # one keyword operator, nothing else; missing module docstring
        loc=1, sloc=1, comment_lines=0, blank_lines=0, methods=0,
        cc_total=0,
        n1=1, n2=0, N1=1, N2=0,
        convention=1,
    ),
    OracleCase(
        name="binary_assignment",
        source="a = b + c\n",
        # operators {=, +}; operands {a, b, c}; finds C0114, C0103 on the
        # module-level 'a' (constant style) and two undefined loads
        loc=1, sloc=1, comment_lines=0, blank_lines=0, methods=0,
        cc_total=0,
        n1=2, n2=3, N1=2, N2=3,
        convention=2, error=2,
    ),
    OracleCase(
        name="documented_function",
        source=(
            '"""Pair sum helpers."""\n'
            "\n"
            "\n"
            "def add_pair(first, second):\n"
            '    """Add two numbers."""\n'
            "    # trivial but explicit\n"
            "    return first + second\n"
        ),
        # operators {def ( , : return +} = 6/6; operands: two docstrings,
        # add_pair, first x2, second x2 = 5 distinct / 7 total
        loc=7, sloc=2, comment_lines=3, blank_lines=2, methods=1,
        cc_total=1,
        n1=6, n2=5, N1=6, N2=7,
    ),
    OracleCase(
        name="class_with_methods",
        source=(
            "class Box:\n"
            '    """Container."""\n'
            "\n"
            "    def put(self, item):\n"
            '        """Store item."""\n'
            "        self.item = item\n"
            "\n"
            "    def take(self):\n"
            '        """Return item."""\n'
            "        return self.item\n"
        ),
        # operators {class : def ( , . = return} with N1 13; operands 8
        # distinct / 14 total, so n = 16 and V = 27 * 4 exactly
        loc=10, sloc=5, comment_lines=3, blank_lines=2, methods=2,
        cc_total=2,
        n1=8, n2=8, N1=13, N2=14,
        convention=1,  # module docstring only
    ),
    OracleCase(
        name="branch_ladder",
        source=(
            "def grade(score):\n"
            '    """Letter grade."""\n'
            '    if score >= 90 and score <= 100:\n'
            '        return "A"\n'
            '    elif score >= 80 or score == 79.5:\n'
            '        return "B"\n'
            "    elif score >= 70:\n"
            '        return "C"\n'
            '    label = "pass" if score >= 60 else "fail"\n'
            "    return label\n"
        ),
        # points: if, and, elif, or, elif, ternary = 6, block cc 7
        loc=10, sloc=9, comment_lines=1, blank_lines=0, methods=1,
        cc_total=7,
        n1=13, n2=15, N1=24, N2=22,
        convention=1,
    ),
    OracleCase(
        name="loops_and_comprehension",
        source=(
            "def summarize(rows):\n"
            '    """Totals and evens."""\n'
            "    evens = [row for row in rows if row % 2 == 0]\n"
            "    total = 0\n"
            "    for row in rows:\n"
            "        total += row\n"
            "    while total > 1000:\n"
            "        total -= 1000\n"
            "    return evens, total\n"
        ),
        # points: comp-for, comp-if, for, while = 4, block cc 5
        loc=9, sloc=8, comment_lines=1, blank_lines=0, methods=1,
        cc_total=5,
        n1=16, n2=9, N1=21, N2=22,
        convention=1,
    ),
    OracleCase(
        name="exception_paths",
        source=(
            "def read_config(path):\n"
            '    """Parse key=value lines."""\n'
            "    table = {}\n"
            "    try:\n"
            "        with open(path) as handle:\n"
            "            text = handle.read()\n"
            "    except OSError as exc:\n"
            '        raise ValueError("unreadable") from exc\n'
            "    except:\n"
            "        return table\n"
            "    finally:\n"
            "        assert path\n"
            "    for line in text.splitlines():\n"
            '        key, _, value = line.partition("=")\n'
            "        table[key] = value\n"
            "    return table\n"
        ),
        # points: two except clauses, assert, for = 4, block cc 5; the bare
        # except is the one warning
        loc=16, sloc=15, comment_lines=1, blank_lines=0, methods=1,
        cc_total=5,
        n1=19, n2=19, N1=39, N2=30,
        convention=1, warning=1,
    ),
    OracleCase(
        name="unused_and_shadowed",
        source=(
            '"""Inventory helpers."""\n'
            "\n"
            "import json\n"
            "import os\n"
            "\n"
            "\n"
            "def tally(items):\n"
            '    """Count items."""\n'
            "    list = []\n"
            "    leftovers = 0\n"
            "    for item in items:\n"
            "        list.append(json.dumps(item))\n"
            "    return list\n"
        ),
        # warnings: unused import os, unused local leftovers, list shadows
        # the builtin
        loc=13, sloc=8, comment_lines=2, blank_lines=3, methods=1,
        cc_total=2,
        n1=10, n2=12, N1=16, N2=17,
        warning=3,
    ),
    OracleCase(
        name="oversized_signature",
        source=(
            "def dispatch(kind, payload, retries, timeout, verbose, strict):\n"
            '    """Route a request."""\n'
            '    if kind == "a":\n'
            "        return 1\n"
            '    if kind == "b":\n'
            "        return 2\n"
            '    if kind == "c":\n'
            "        return 3\n"
            '    if kind == "d":\n'
            "        return 4\n"
            '    if kind == "e":\n'
            "        return 5\n"
            '    if kind == "f":\n'
            "        return 6\n"
            "    return 0\n"
        ),
        # refactor: 6 positional args (> 5) and 7 returns (> 6)
        loc=15, sloc=14, comment_lines=1, blank_lines=0, methods=1,
        cc_total=7,
        n1=7, n2=21, N1=33, N2=27,
        convention=1, refactor=2,
    ),
    OracleCase(
        name="error_trio",
        source=(
            "def route(func, func):\n"
            "    return func(seed)\n"
            "\n"
            "\n"
            "return route\n"
        ),
        # errors: duplicate argument, undefined 'seed', return at module level
        loc=5, sloc=3, comment_lines=0, blank_lines=2, methods=1,
        cc_total=1,
        n1=5, n2=3, N1=7, N2=6,
        convention=2, error=3,
    ),
    OracleCase(
        name="strassen_style_names",
        source=STRASSEN_STYLE_SOURCE,
        # C0114 plus seven single-letter/uppercase bindings rejected by the
        # snake_case rule: four params, M_1, M_2, P
        loc=6, sloc=5, comment_lines=1, blank_lines=0, methods=1,
        cc_total=1,
        n1=8, n2=9, N1=13, N2=16,
        convention=8,
    ),
    OracleCase(
        name="disabled_rules_stay_silent",
        source=_DISABLED_RULE_SOURCE,
        # the long line and the trailing blanks must produce nothing under
        # the default configuration
        loc=4, sloc=2, comment_lines=2, blank_lines=1, methods=0,
        cc_total=0,
        n1=2, n2=6, N1=3, N2=6,
    ),
    OracleCase(
        name="walrus_and_fstring",
        source=(
            '"""Format helpers."""\n'
            "\n"
            "LIMIT = 4\n"
            "\n"
            "\n"
            "def shrink(text):\n"
            '    """Clip text."""\n'
            "    if (size := len(text)) > LIMIT:\n"
            '        return f"{text[:LIMIT]}... ({size} chars)"\n'
            "    return text\n"
        ),
        # the f-string is a single operand; size is used through its field
        loc=10, sloc=5, comment_lines=2, blank_lines=3, methods=1,
        cc_total=2,
        n1=8, n2=9, N1=12, N2=12,
    ),
    OracleCase(
        name="comment_only_module",
        source="# configuration notes\n# nothing executable here\n\n",
        # no code tokens at all; MI takes the sloc < 1 shortcut
        loc=3, sloc=0, comment_lines=2, blank_lines=1, methods=0,
        cc_total=0,
        n1=0, n2=0, N1=0, N2=0,
        convention=1,
    ),
    OracleCase(
        name="nested_closures",
        source=(
            "def make_scaler(factor):\n"
            '    """Return a scaling closure."""\n'
            '    def apply_scale(values, mode="all" if factor else "none"):\n'
            '        """Scale values."""\n'
            '        selected = [v for v in values if mode == "all" or v > 0]\n'
            "        return list(map(lambda v: v * factor, selected))\n"
            "    return apply_scale\n"
        ),
        # the default's ternary belongs to make_scaler (cc 2); comp-for,
        # comp-if and the or give apply_scale cc 4; 'v' fails naming twice
        loc=7, sloc=5, comment_lines=2, blank_lines=0, methods=2,
        cc_total=6,
        n1=16, n2=14, N1=26, N2=25,
        convention=3,
    ),
    OracleCase(
        name="annotated_class_attrs",
        source=(
            '"""Limits."""\n'
            "\n"
            "\n"
            "class RateLimiter:\n"
            '    """Token bucket."""\n'
            "\n"
            "    burst: int = 10\n"
            "    Refill = 1.5\n"
            "\n"
            "    def allow(self, now):\n"
            '        """Check the bucket."""\n'
            "        return now > self.burst\n"
        ),
        # class attributes use the permissive attribute pattern, so Refill
        # is acceptable while module constants would not be
        loc=12, sloc=5, comment_lines=3, blank_lines=4, methods=1,
        cc_total=1,
        n1=9, n2=12, N1=12, N2=15,
    ),
]

CASE_IDS = [case.name for case in CASES]
