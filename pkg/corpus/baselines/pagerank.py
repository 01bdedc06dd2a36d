"""Iterative PageRank over a dense adjacency matrix."""

TOLERANCE = 1e-10


def pagerank(
    adjacency: list[list[int]], damping: float, max_iterations: int
) -> list[float]:
    """Rank each node; dangling rows spread their mass uniformly."""
    count = len(adjacency)
    if count == 0:
        return []
    out_degree = [sum(row) for row in adjacency]
    ranks = [1.0 / count] * count
    base = (1.0 - damping) / count
    for _ in range(max_iterations):
        dangling = sum(rank for rank, degree in zip(ranks, out_degree) if degree == 0)
        shared = damping * dangling / count
        updated = [base + shared] * count
        for source in range(count):
            if out_degree[source] == 0:
                continue
            share = damping * ranks[source] / out_degree[source]
            row = adjacency[source]
            for target in range(count):
                if row[target]:
                    updated[target] += share
        shift = sum(abs(new - old) for new, old in zip(updated, ranks))
        ranks = updated
        if shift < TOLERANCE:
            break
    return ranks
