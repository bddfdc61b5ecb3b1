"""A small iterative backtracking driver shared by every enumerator."""
from __future__ import annotations

from typing import Callable, Iterable, Iterator, Sequence


def backtrack(
    n: int,
    candidates: Callable[[int, list], Iterable],
    consistent: Callable[[int, list], bool] | None = None,
) -> Iterator[list]:
    """Yield every assignment ``a[0..n-1]`` accepted step by step.

    ``candidates(i, a)`` may inspect ``a[:i]``; ``consistent(i, a)`` is called
    right after ``a[i]`` is set.  Yielded lists are fresh copies.
    """
    if n == 0:
        yield []
        return
    a: list = [None] * n
    its: list = [None] * n
    its[0] = iter(candidates(0, a))
    i = 0
    while i >= 0:
        it = its[i]
        for v in it:
            a[i] = v
            if consistent is None or consistent(i, a):
                break
        else:
            a[i] = None
            i -= 1
            continue
        if i == n - 1:
            yield list(a)
        else:
            i += 1
            its[i] = iter(candidates(i, a))


def greedy_order(items: Sequence, neighbours: Callable[[object], Iterable]) -> list:
    """Order ``items`` so each one is as connected as possible to its predecessors."""
    remaining = list(items)
    order: list = []
    placed: set = set()
    weight = {x: sum(1 for _ in neighbours(x)) for x in remaining}
    while remaining:
        best = max(
            remaining,
            key=lambda x: (sum(1 for y in neighbours(x) if y in placed), weight[x]),
        )
        order.append(best)
        placed.add(best)
        remaining.remove(best)
    return order
