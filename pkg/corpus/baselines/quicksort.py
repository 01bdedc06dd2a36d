"""Recursive quicksort over integer lists."""


def quick_sort(values: list[int]) -> list[int]:
    """Return a new ascending list; the input is left untouched."""
    if len(values) <= 1:
        return list(values)
    pivot = values[len(values) // 2]
    smaller = [item for item in values if item < pivot]
    equal = [item for item in values if item == pivot]
    larger = [item for item in values if item > pivot]
    return quick_sort(smaller) + equal + quick_sort(larger)
