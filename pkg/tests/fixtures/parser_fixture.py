"""Kitchen-sink module used to pin the parser's node census.

Every statement and expression form the parser supports appears at least
once. Kept deliberately free of implicit string concatenation and of
match/case, which are outside the supported subset.
"""

import math
import os.path as osp
from collections import OrderedDict, defaultdict
from typing import Optional

GLOBAL_LIMIT: int = 128
_cache = {}
names = ["alpha", "beta", "gamma"]
pairs = {"a": 1, "b": 2}
unique = {1, 2, 3}
point = (3.5, -2.0)
ratio = GLOBAL_LIMIT / 4 + 2 ** 3 - 1
flag = not (ratio > 10 and ratio < 100 or ratio == 0)
label = f"ratio={ratio!r} flag={flag}"
ellipsis_marker = ...


def decorate(func):
    """Wrap a callable, counting invocations."""
    def wrapper(*args, **kwargs):
        wrapper.calls += 1
        return func(*args, **kwargs)
    wrapper.calls = 0
    return wrapper


@decorate
def classify(value, threshold=10, *extras, scale: float = 1.0, **options):
    """Bucket a value, exercising branch-heavy statement forms."""
    if value is None:
        return "missing"
    elif value < 0:
        result = "negative"
    elif value < threshold:
        result = "small"
    else:
        result = "large"
    total = 0
    for index, item in enumerate(extras):
        if item is None:
            continue
        if index > 50:
            break
        total += item
    else:
        total -= 1
    while total > 100:
        total //= 2
    try:
        ratio_local = value / total
    except ZeroDivisionError as exc:
        raise ValueError("empty total") from exc
    except (TypeError, KeyError):
        ratio_local = 0.0
    finally:
        options.setdefault("seen", True)
    assert ratio_local is not None, "ratio must exist"
    del total
    squares = [nn * nn for nn in range(10) if nn % 2 == 0]
    doubled = {nn: nn * 2 for nn in squares if nn > 0}
    uniques = {nn % 3 for nn in squares}
    lazy = (nn + 1 for nn in squares)
    first = next(lazy, None)
    head, *tail = squares
    swap = head if first is None else first
    combined = [*tail, swap]
    sliced = combined[1:-1:2]
    item = combined[0]
    scaled = [vv * scale for vv in combined]
    mapper = lambda vv, offset=1: vv + offset
    shifted = mapper(item)
    return {
        "result": result,
        "ratio": ratio_local,
        "doubled": doubled,
        "uniques": uniques,
        "sliced": sliced,
        "scaled": scaled,
        "shifted": shifted,
    }


class Accumulator(OrderedDict):
    """Stateful tally with generator plumbing."""

    kind = "tally"

    def __init__(self, seed: Optional[int] = None):
        super().__init__()
        self.seed = seed or 0

    def feed(self, values):
        for value in values:
            key = str(value)
            current = self.get(key, 0)
            self[key] = current + 1
            yield key, current

    def drain(self):
        while self:
            yield self.popitem()

    def merge(self, other):
        yield from self.feed(other)


class Weighted(Accumulator, metaclass=type):
    """Subclass with keyword base arguments."""

    def weight(self, factor):
        global GLOBAL_LIMIT
        GLOBAL_LIMIT += 1

        def inner(value):
            nonlocal factor
            factor += 0
            return value * factor
        return inner


async def gather(source, sink):
    """Asynchronous pump used to pin async node handling."""
    async with source as stream:
        async for chunk in stream:
            await sink.push(chunk)


def windows(seq, width=2):
    """Yield overlapping windows while a walrus guard holds."""
    start = 0
    while (window := seq[start:start + width]) and len(window) == width:
        yield tuple(window)
        start += 1


with open(osp.devnull) as sink_file, open(osp.devnull) as _other:
    sink_file.read(0)

counts = defaultdict(int)
for name in names:
    counts[name[0]] += 1

summary = classify(
    5,
    20,
    1,
    2,
    scale=0.5,
    mode="demo",
)
totals = Accumulator(seed=GLOBAL_LIMIT)
drained = list(totals.drain())
windowed = list(windows(list(range(6)), width=3))
exponent = math.copysign(1.0, -0.0)
print(label, summary["result"], drained, windowed, exponent, unique, pairs, point, _cache, flag, counts["a"], Weighted)
