"""Independent brute-force oracles used only by the tests."""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations


@lru_cache(maxsize=None)
def count_syt(shape: tuple[int, ...]) -> int:
    """Standard Young tableaux counted by removing the largest entry (corner recursion)."""
    if not shape:
        return 1
    total = 0
    for i, p in enumerate(shape):
        below = shape[i + 1] if i + 1 < len(shape) else 0
        if p > below:
            smaller = list(shape)
            smaller[i] -= 1
            total += count_syt(tuple(x for x in smaller if x))
    return total


def enumerate_syt(shape: tuple[int, ...]) -> list[tuple[tuple[int, ...], ...]]:
    """Every standard filling of ``shape``, built by placing 1, 2, ... in turn."""
    n = sum(shape)
    out = []

    def rec(rows: list[list[int]], label: int) -> None:
        if label > n:
            out.append(tuple(tuple(r) for r in rows))
            return
        for i in range(len(shape)):
            if len(rows[i]) < shape[i] and (i == 0 or len(rows[i - 1]) > len(rows[i])):
                rows[i].append(label)
                rec(rows, label + 1)
                rows[i].pop()

    rec([[] for _ in shape], 1)
    return out


def count_skew_syt(outer: tuple[int, ...], inner: tuple[int, ...]) -> int:
    """Chains inner = mu_0 < mu_1 < ... < outer adding one box at a time."""

    @lru_cache(maxsize=None)
    def rec(current: tuple[int, ...]) -> int:
        if current == outer:
            return 1
        total = 0
        padded = list(current) + [0]
        for i in range(len(padded)):
            if i >= len(outer) or padded[i] >= outer[i]:
                continue
            if i > 0 and padded[i - 1] <= padded[i]:
                continue
            nxt = padded.copy()
            nxt[i] += 1
            total += rec(tuple(x for x in nxt if x))
        return total

    return rec(tuple(x for x in inner if x))


def partition_count(n: int) -> int:
    """Euler's pentagonal recurrence."""
    p = [1] + [0] * n
    for m in range(1, n + 1):
        k, total = 1, 0
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p[n]


def cycle_type(perm: tuple[int, ...]) -> tuple[int, ...]:
    seen, lengths = set(), []
    for start in range(len(perm)):
        if start in seen:
            continue
        length, x = 0, start
        while x not in seen:
            seen.add(x)
            x = perm[x]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def all_permutations(n: int):
    return permutations(range(n))
