"""Integer partitions, Young diagram corners and Russian-notation profiles.

Boxes are addressed by 1-based ``(row, column)`` pairs and located on the
real line by their *content* ``column - row``.  Rotating a diagram by 45
degrees (Russian convention) turns its upper boundary into a 1-Lipschitz
piecewise-linear function ``omega`` with ``omega(x) = |x|`` far away from the
origin; local minima of ``omega`` sit at the contents of addable boxes and
local maxima at the contents of removable boxes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Iterable, Iterator, Sequence


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Trailing zeros are stripped on construction so ``Partition([3, 1, 0])``
    equals ``Partition([3, 1])``.  Because this is a ``tuple`` subclass,
    partitions hash and compare like plain tuples and can key dictionaries.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()) -> "Partition":
        values = [int(p) for p in parts]
        while values and values[-1] == 0:
            values.pop()
        for i, p in enumerate(values):
            if p <= 0:
                raise ValueError(f"partition parts must be positive, got {values}")
            if i and p > values[i - 1]:
                raise ValueError(f"partition parts must be non-increasing, got {values}")
        return super().__new__(cls, values)

    def __repr__(self) -> str:
        return f"Partition({list(self)})"

    def size(self) -> int:
        return sum(self)

    def length(self) -> int:
        return len(self)

    def colength(self) -> int:
        """Size minus length; the Cayley length of a permutation of this cycle type."""
        return self.size() - self.length()

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def cells(self) -> Iterator[tuple[int, int]]:
        """Yield the boxes as 1-based ``(row, column)`` pairs, row by row."""
        for i, p in enumerate(self, start=1):
            for j in range(1, p + 1):
                yield (i, j)

    def contents(self) -> list[int]:
        return [j - i for i, j in self.cells()]

    def contains(self, other: Sequence[int]) -> bool:
        """True when the diagram of ``other`` fits inside this diagram."""
        if len(other) > len(self):
            return False
        return all(o <= s for o, s in zip(other, self))

    def add_box(self, row: int) -> "Partition":
        """Return the partition obtained by adding a box at the end of 1-based ``row``."""
        parts = list(self) + [0]
        parts[row - 1] += 1
        return Partition(parts)

    def remove_box(self, row: int) -> "Partition":
        parts = list(self)
        parts[row - 1] -= 1
        return Partition(parts)

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self:
            out[p] = out.get(p, 0) + 1
        return out

    def to_json(self) -> list[int]:
        return list(self)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "Partition":
        return cls(data)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"5,3,2"`` (commas, semicolons or spaces); an empty string is the empty partition."""
        cleaned = text.replace(";", ",").replace(" ", ",")
        return cls(int(tok) for tok in cleaned.split(",") if tok.strip())


EMPTY = Partition()


@dataclass(frozen=True)
class CornerData:
    """Contents of addable (minima) and removable (maxima) boxes, both sorted."""

    minima: tuple[int, ...]
    maxima: tuple[int, ...]

    def interlaces(self) -> bool:
        if len(self.minima) != len(self.maxima) + 1:
            return False
        merged = []
        for i, x in enumerate(self.minima):
            merged.append(x)
            if i < len(self.maxima):
                merged.append(self.maxima[i])
        return all(a < b for a, b in zip(merged, merged[1:]))


def addable_cells(lam: Sequence[int]) -> list[tuple[int, int]]:
    """1-based cells that can be added to ``lam`` keeping it a partition."""
    parts = list(lam)
    out = []
    for i in range(len(parts) + 1):
        current = parts[i] if i < len(parts) else 0
        above = parts[i - 1] if i > 0 else None
        if above is None or current < above:
            out.append((i + 1, current + 1))
    return out


def removable_cells(lam: Sequence[int]) -> list[tuple[int, int]]:
    parts = list(lam)
    out = []
    for i, p in enumerate(parts):
        below = parts[i + 1] if i + 1 < len(parts) else 0
        if p > below:
            out.append((i + 1, p))
    return out


def corners(lam: Sequence[int]) -> CornerData:
    """Minima and maxima of the Russian profile of ``lam``.

    >>> corners(Partition([5, 3, 2, 2, 1]))
    CornerData(minima=(-5, -3, 0, 2, 5), maxima=(-4, -2, 1, 4))
    """
    minima = sorted(c - r for r, c in addable_cells(lam))
    maxima = sorted(c - r for r, c in removable_cells(lam))
    return CornerData(tuple(minima), tuple(maxima))


def hook_lengths(lam: Sequence[int]) -> list[int]:
    conj = Partition(lam).conjugate()
    return [lam[i - 1] - j + conj[j - 1] - i + 1 for i, j in Partition(lam).cells()]


def dim_syt(lam: Sequence[int]) -> int:
    """Number of standard Young tableaux of shape ``lam`` (hook-length formula)."""
    lam = Partition(lam)
    return factorial(lam.size()) // prod(hook_lengths(lam))


def _inverse_factorial(m: int) -> Fraction:
    return Fraction(0) if m < 0 else Fraction(1, factorial(m))


def _det(matrix: list[list[Fraction]]) -> Fraction:
    """Exact determinant by fraction-valued Gaussian elimination."""
    a = [row[:] for row in matrix]
    size = len(a)
    sign = 1
    result = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            sign = -sign
        p = a[col][col]
        result *= p
        for r in range(col + 1, size):
            if a[r][col] != 0:
                factor = a[r][col] / p
                for c in range(col, size):
                    a[r][c] -= factor * a[col][c]
    return sign * result


def dim_skew(lam: Sequence[int], mu: Sequence[int]) -> int:
    """Number of standard tableaux of skew shape ``lam / mu``.

    Uses Aitken's determinant ``|lam/mu|! * det[1 / (lam_i - mu_j - i + j)!]``.

    Raises:
        ValueError: if ``mu`` is not contained in ``lam``.
    """
    lam, mu = Partition(lam), Partition(mu)
    if not lam.contains(mu):
        raise ValueError(f"{mu!r} is not contained in {lam!r}")
    size = len(lam)
    if size == 0:
        return 1
    mus = list(mu) + [0] * (size - len(mu))
    matrix = [
        [_inverse_factorial(lam[i] - mus[j] - i + j) for j in range(size)]
        for i in range(size)
    ]
    value = _det(matrix) * factorial(lam.size() - mu.size())
    if value.denominator != 1:
        raise ArithmeticError("skew dimension is not an integer")  # pragma: no cover
    return int(value)


def rem_k(mu: Sequence[int], k: int) -> Partition:
    """Delete every row of length two, then the first column of what is left.

    Defined on partitions of ``k`` whose parts are all at least two.
    """
    mu = Partition(mu)
    if mu.size() != k:
        raise ValueError(f"rem_k expects a partition of {k}, got size {mu.size()}")
    if any(p < 2 for p in mu):
        raise ValueError("rem_k is only defined when every part is at least 2")
    return Partition(p - 1 for p in mu if p != 2)


def rem_k_preimage(lam: Sequence[int], k: int) -> Partition | None:
    """The unique ``mu`` with ``rem_k(mu, k) == lam``, or ``None`` if there is none."""
    lam = Partition(lam)
    if any(p < 2 for p in lam):
        return None
    slack = k - lam.size() - lam.length()
    if slack < 0 or slack % 2:
        return None
    return Partition([p + 1 for p in lam] + [2] * (slack // 2))


def rem_k_image(k: int) -> list[Partition]:
    """All partitions reachable as ``rem_k(mu, k)`` with every part of ``mu`` at least 2."""
    return [rem_k(mu, k) for mu in enumerate_partitions(k) if all(p >= 2 for p in mu)]


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse lexicographic order, e.g. (4), (3,1), (2,2), (2,1,1), (1,1,1,1)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    out: list[Partition] = []

    def rec(remaining: int, cap: int, prefix: list[int]) -> None:
        if remaining == 0:
            out.append(Partition(prefix))
            return
        for part in range(min(remaining, cap), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(n, n, [])
    return out


def restricted_partitions(n: int, min_part: int = 2) -> list[Partition]:
    return [p for p in enumerate_partitions(n) if all(x >= min_part for x in p)]


class Profile:
    """The Russian-notation profile ``omega`` of a partition, evaluated exactly."""

    def __init__(self, lam: Sequence[int]):
        self.partition = Partition(lam)
        self.corners = corners(self.partition)
        merged: list[int] = []
        for i, x in enumerate(self.corners.minima):
            merged.append(x)
            if i < len(self.corners.maxima):
                merged.append(self.corners.maxima[i])
        self._knots = merged

    def breakpoints(self) -> list[int]:
        return sorted(set(self._knots) | {0})

    def slope(self, x: Fraction) -> int:
        """Right derivative of omega at ``x``."""
        knots = self._knots
        if x < knots[0]:
            return -1
        if x >= knots[-1]:
            return 1
        for idx in range(len(knots) - 1):
            if knots[idx] <= x < knots[idx + 1]:
                return 1 if idx % 2 == 0 else -1
        raise AssertionError("unreachable")  # pragma: no cover

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        knots = self._knots
        if x <= knots[0] or x >= knots[-1]:
            return abs(x)
        value = Fraction(abs(knots[0]))
        for idx in range(len(knots) - 1):
            a, b = knots[idx], knots[idx + 1]
            step = 1 if idx % 2 == 0 else -1
            if x <= b:
                return value + step * (x - a)
            value += step * (b - a)
        raise AssertionError("unreachable")  # pragma: no cover

    def area(self) -> Fraction:
        """Exact value of the integral of ``(omega(x) - |x|) / 2``; equals the partition size."""
        pts = self.breakpoints()
        total = Fraction(0)
        for a, b in zip(pts, pts[1:]):
            fa = self(a) - abs(Fraction(a))
            fb = self(b) - abs(Fraction(b))
            total += (fa + fb) * (b - a) / 2
        return total / 2
