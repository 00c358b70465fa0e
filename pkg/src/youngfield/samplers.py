"""Seeded samplers for growth processes and standard Young tableaux.

Randomness comes from a counter-based Philox stream keyed by
``(seed, path_index)``, so every path is reproducible on its own and paths
can be generated in any order or in parallel.  Discrete choices with exact
rational probabilities are made by comparing a 64-bit uniform integer
against the exact cumulative distribution.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .characters import ThomaParams
from .partitions import EMPTY, Partition, corners, dim_skew, dim_syt, removable_cells

_TWO64 = 1 << 64


def rng_stream(seed: int, path_index: int = 0) -> np.random.Generator:
    """Independent, platform-stable stream for one path."""
    if seed < 0 or path_index < 0:
        raise ValueError("seed and path index must be non-negative")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, path_index])))


def uniform64(rng: np.random.Generator) -> int:
    return int(rng.integers(0, _TWO64, dtype=np.uint64, endpoint=False))


def draw_index(weights: Sequence[Fraction], rng: np.random.Generator) -> int:
    """Inverse-CDF draw from exact rational weights summing to one."""
    u = uniform64(rng)
    cumulative = Fraction(0)
    for i, w in enumerate(weights):
        cumulative += w
        if cumulative.numerator * _TWO64 > u * cumulative.denominator:
            return i
    return len(weights) - 1


@dataclass(frozen=True)
class GrowthPath:
    """``shapes[t]`` is a partition of ``t``; consecutive shapes differ by one box."""

    shapes: tuple[Partition, ...]
    seed: int
    model: str
    path_index: int = 0

    def __post_init__(self):
        shapes = tuple(Partition(s) for s in self.shapes)
        if not shapes or shapes[0] != EMPTY:
            raise ValueError("a growth path starts at the empty partition")
        for t, (a, b) in enumerate(zip(shapes, shapes[1:])):
            if b.size() != t + 1 or not b.contains(a):
                raise ValueError(f"shapes {a!r} -> {b!r} do not differ by a single box")
        object.__setattr__(self, "shapes", shapes)

    @property
    def steps(self) -> int:
        return len(self.shapes) - 1

    def final(self) -> Partition:
        return self.shapes[-1]

    def added_cells(self) -> list[tuple[int, int]]:
        """1-based cell added at each step (row, column)."""
        out = []
        for a, b in zip(self.shapes, self.shapes[1:]):
            row = next(i for i in range(len(b)) if i >= len(a) or b[i] != a[i])
            out.append((row + 1, b[row]))
        return out

    def tableau(self) -> list[list[int]]:
        """The standard Young tableau recording the order in which boxes appear."""
        rows: list[list[int]] = []
        for label, (r, _) in enumerate(self.added_cells(), start=1):
            if r > len(rows):
                rows.append([])
            rows[r - 1].append(label)
        return rows

    def csv_rows(self) -> list[tuple[int, str]]:
        return [(t, ";".join(map(str, s))) for t, s in enumerate(self.shapes)]


def _path_from_rows(row_history: Iterable[int], seed: int, model: str, path_index: int) -> GrowthPath:
    shapes = [EMPTY]
    parts: list[int] = []
    for row in row_history:
        if row == len(parts):
            parts.append(1)
        else:
            parts[row] += 1
        shapes.append(Partition(parts))
    return GrowthPath(tuple(shapes), seed, model, path_index)


# ---------------------------------------------------------------------------
# Plancherel growth and RSK
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1 << 14)
def transition_weights(lam: Partition) -> tuple[tuple[int, Fraction], ...]:
    """``(row, probability)`` of each addable box under the Plancherel growth chain.

    Uses the corner product formula ``prod_j (x_i - y_j) / prod_{j != i} (x_i - x_j)``.
    """
    data = corners(lam)
    out = []
    for i, x in enumerate(data.minima):
        num, den = 1, 1
        for y in data.maxima:
            num *= x - y
        for j, other in enumerate(data.minima):
            if j != i:
                den *= x - other
        # the addable box with content x is in 0-based row r where lam_r - r = x
        row = next(r for r in range(len(lam) + 1) if (lam[r] if r < len(lam) else 0) - r == x)
        out.append((row, Fraction(num, den)))
    return tuple(out)


def plancherel_growth(steps: int, seed: int, path_index: int = 0) -> GrowthPath:
    """Markov chain adding one box at a time with the transition-measure weights."""
    if steps < 1:
        raise ValueError("steps must be at least 1")
    rng = rng_stream(seed, path_index)
    lam = EMPTY
    rows = []
    for _ in range(steps):
        options = transition_weights(lam)
        idx = draw_index([w for _, w in options], rng)
        row = options[idx][0]
        rows.append(row)
        lam = lam.add_box(row + 1)
    return _path_from_rows(rows, seed, "plancherel", path_index)


def rsk_insert(rows: list[list], x, strict=None) -> int:
    """Row-insert ``x`` in place; returns the 0-based row where a box was created.

    A letter bumps the leftmost entry strictly greater than itself, so equal
    letters line up along a row.  ``strict`` is an optional predicate marking
    letters that must instead bump the leftmost entry greater than *or equal*
    to themselves (equal letters then line up down a column); it is applied
    to whichever letter is travelling, including bumped ones.
    """
    r = 0
    while True:
        if r == len(rows):
            rows.append([x])
            return r
        row = rows[r]
        pos = bisect_left(row, x) if strict is not None and strict(x) else bisect_right(row, x)
        if pos == len(row):
            row.append(x)
            return r
        row[pos], x = x, row[pos]
        r += 1


def rsk_shape_sequence(word: Iterable, strict=None) -> list[int]:
    """Rows receiving a new box as each letter of ``word`` is inserted."""
    rows: list[list] = []
    return [rsk_insert(rows, x, strict) for x in word]


def rsk_growth(steps: int, seed: int, path_index: int = 0) -> GrowthPath:
    """Shape evolution of RSK row insertion of i.i.d. uniform reals."""
    if steps < 1:
        raise ValueError("steps must be at least 1")
    rng = rng_stream(seed, path_index)
    return _path_from_rows(rsk_shape_sequence(rng.random(steps)), seed, "rsk", path_index)


def rsk_shapes_at(times: Sequence[int], seed: int, path_index: int = 0) -> dict[int, Partition]:
    """Shapes of the uniform-RSK growth process at selected times only (fast path)."""
    wanted = set(times)
    horizon = max(times)
    rng = rng_stream(seed, path_index)
    values = rng.random(horizon)
    rows: list[list] = []
    out = {}
    if 0 in wanted:
        out[0] = EMPTY
    for t, x in enumerate(values, start=1):
        rsk_insert(rows, x)
        if t in wanted:
            out[t] = Partition(len(r) for r in rows)
    return out


def schur_weyl_growth(steps: int, D: int, seed: int, path_index: int = 0) -> GrowthPath:
    """RSK shapes of a uniform random word over ``D`` letters (the Schur--Weyl measure at every time)."""
    if steps < 1:
        raise ValueError("steps must be at least 1")
    if D < 1:
        raise ValueError("D must be at least 1")
    rng = rng_stream(seed, path_index)
    word = rng.integers(0, D, size=steps).tolist()
    return _path_from_rows(rsk_shape_sequence(word), seed, "schur-weyl", path_index)


def uniform_involution(n: int, rng: np.random.Generator) -> list[int]:
    """One-line notation (0-based) of a uniform involution of ``{0..n-1}``.

    Element ``m`` is fixed with probability ``I_{m-1} / I_m``, otherwise it is
    paired with a uniform earlier element; the recursion runs top-down.
    """
    counts = [1, 1]
    for m in range(2, n + 1):
        counts.append(counts[-1] + (m - 1) * counts[-2])
    image = list(range(n))
    free = list(range(n))
    while free:
        m = len(free)
        top = free.pop()
        if m == 1 or draw_index([Fraction(counts[m - 1], counts[m]), Fraction((m - 1) * counts[m - 2], counts[m])], rng) == 0:
            continue
        partner = free.pop(int(rng.integers(0, m - 1)))
        image[top], image[partner] = partner, top
    return image


def gelfand_growth(steps: int, seed: int, path_index: int = 0) -> GrowthPath:
    """RSK shapes of the prefixes of a uniform involution; the final shape has the Gelfand law."""
    if steps < 1:
        raise ValueError("steps must be at least 1")
    rng = rng_stream(seed, path_index)
    return _path_from_rows(rsk_shape_sequence(uniform_involution(steps, rng)), seed, "gelfand", path_index)


# ---------------------------------------------------------------------------
# Thoma growth (super-RSK)
# ---------------------------------------------------------------------------

def thoma_letters(params: ThomaParams, steps: int, rng: np.random.Generator) -> list[tuple]:
    """Draw ``steps`` letters: ``(0, i)`` w.p. ``alpha_i``, ``(1, j)`` w.p. ``beta_j``, ``(2, u)`` w.p. ``gamma``."""
    probs = [float(a) for a in params.alpha] + [float(b) for b in params.beta] + [float(params.gamma)]
    probs = np.clip(np.asarray(probs, dtype=float), 0.0, None)
    probs = probs / probs.sum()
    kinds = rng.choice(len(probs), size=steps, p=probs)
    uniforms = rng.random(steps)
    na, nb = len(params.alpha), len(params.beta)
    out = []
    for kind, u in zip(kinds, uniforms):
        kind = int(kind)
        if kind < na:
            out.append((0, kind, 0.0))
        elif kind < na + nb:
            out.append((1, kind - na, 0.0))
        else:
            out.append((2, 0, float(u)))
    return out


def _is_column_letter(letter: tuple) -> bool:
    return letter[0] == 1


def thoma_growth(steps: int, params: ThomaParams, seed: int, path_index: int = 0) -> GrowthPath:
    """Mixed-alphabet RSK growth driven by a Thoma point.

    Row letters (``alpha``) may repeat along rows, column letters (``beta``)
    may repeat only down columns, and the continuous part (``gamma``) never
    ties.  Letter order is row letters < column letters < continuous.
    """
    if steps < 1:
        raise ValueError("steps must be at least 1")
    rng = rng_stream(seed, path_index)
    letters = thoma_letters(params, steps, rng)
    rows = rsk_shape_sequence(letters, _is_column_letter)
    return _path_from_rows(rows, seed, "thoma", path_index)


# ---------------------------------------------------------------------------
# Fixed shape: hook walk and downward chain
# ---------------------------------------------------------------------------

def hook_walk_syt(lam: Sequence[int], seed: int, path_index: int = 0) -> GrowthPath:
    """Uniform standard Young tableau of shape ``lam`` via the Greene--Nijenhuis--Wilf hook walk."""
    lam = Partition(lam)
    if not lam:
        raise ValueError("shape must be non-empty")
    rng = rng_stream(seed, path_index)
    parts = list(lam)
    removal_rows: list[int] = []
    while parts:
        size = sum(parts)
        idx = int(rng.integers(0, size))
        r = 0
        while idx >= parts[r]:
            idx -= parts[r]
            r += 1
        c = idx
        while True:
            arm = parts[r] - c - 1
            leg = sum(1 for rr in range(r + 1, len(parts)) if parts[rr] > c)
            if arm == 0 and leg == 0:
                break
            step = int(rng.integers(0, arm + leg))
            if step < arm:
                c += step + 1
            else:
                r += step - arm + 1
        removal_rows.append(r)
        parts[r] -= 1
        if parts[r] == 0:
            parts.pop()
    return _path_from_rows(reversed(removal_rows), seed, "fixed-shape", path_index)


@lru_cache(maxsize=1 << 14)
def _dim(lam: Partition) -> int:
    return dim_syt(lam)


def cotransition_weights(lam: Partition) -> list[tuple[int, Fraction]]:
    """``(row, dim(lam - box) / dim(lam))`` for each removable box (0-based rows)."""
    base = _dim(lam)
    return [(r - 1, Fraction(_dim(lam.remove_box(r)), base)) for r, _ in removable_cells(lam)]


def downward_chain(lam: Sequence[int], m: int, seed: int, path_index: int = 0) -> Partition:
    """Remove boxes one at a time with co-transition weights until ``m`` boxes remain."""
    lam = Partition(lam)
    if not 0 <= m <= lam.size():
        raise ValueError("m must lie between 0 and |lam|")
    rng = rng_stream(seed, path_index)
    while lam.size() > m:
        options = cotransition_weights(lam)
        idx = draw_index([w for _, w in options], rng)
        lam = lam.remove_box(options[idx][0] + 1)
    return lam


def downward_law(lam: Sequence[int], m: int) -> dict[Partition, Fraction]:
    """Exact law of :func:`downward_chain` by composing single-step probabilities."""
    law = {Partition(lam): Fraction(1)}
    while next(iter(law)).size() > m:
        nxt: dict[Partition, Fraction] = {}
        for shape, p in law.items():
            for row, w in cotransition_weights(shape):
                child = shape.remove_box(row + 1)
                nxt[child] = nxt.get(child, 0) + p * w
        law = nxt
    return law


def branching_probability(lam: Sequence[int], mu: Sequence[int]) -> Fraction:
    """``dim(lam / mu) dim(mu) / dim(lam)``."""
    lam, mu = Partition(lam), Partition(mu)
    if not lam.contains(mu):
        return Fraction(0)
    return Fraction(dim_skew(lam, mu) * dim_syt(mu), dim_syt(lam))


# ---------------------------------------------------------------------------
# Height function
# ---------------------------------------------------------------------------

def diagonal_count(lam: Sequence[int], x: int) -> int:
    """Number of boxes of ``lam`` with content ``x``."""
    return sum(1 for i, p in enumerate(lam, start=1) if 1 <= i + x <= p)


def height_function(path: GrowthPath, x: int, t: int) -> int:
    """``H(x, t)``: boxes on diagonal ``x`` at time ``t``."""
    if not 0 <= t <= path.steps:
        raise ValueError(f"time {t} outside 0..{path.steps}")
    return diagonal_count(path.shapes[t], x)


def height_field(path: GrowthPath) -> list[tuple[int, int, int]]:
    """``(x, t, H)`` rows covering every diagonal that is ever non-empty."""
    n = path.steps
    out = []
    for t, shape in enumerate(path.shapes):
        for x in range(-n, n + 1):
            out.append((x, t, diagonal_count(shape, x)))
    return out
