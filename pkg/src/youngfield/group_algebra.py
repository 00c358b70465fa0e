"""Exact arithmetic in the rational group algebra of the symmetric group.

Permutations act on ``{1..n}`` and are stored as 0-based image tuples.
Products compose right to left: ``(s * t)(i) = s(t(i))``.  The operators
built here -- class sums ``Sigma_lambda``, the trace operators ``D_k`` and
powers of Jucys--Murphy elements -- are the algebraic side of the moment
method for random partitions.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator, Mapping, Sequence

from .partitions import Partition

DEFAULT_SIZE_CAP = 8


class Perm(tuple):
    """A permutation of ``{1..n}``; the tuple holds 0-based images."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int]) -> "Perm":
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return tuple.__new__(cls, range(n))

    @classmethod
    def from_one_line(cls, images: Sequence[int]) -> "Perm":
        """From 1-based one-line notation, e.g. ``[2, 1, 3]``."""
        return cls(i - 1 for i in images)

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Perm":
        """From 1-based cycles, e.g. ``Perm.from_cycles(4, [(1, 2), (3, 4)])``."""
        images = list(range(n))
        for cycle in cycles:
            for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
                images[a - 1] = b - 1
        return cls(images)

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> "Perm":
        return cls.from_cycles(n, [(a, b)])

    @property
    def n(self) -> int:
        return len(self)

    def __mul__(self, other: "Perm") -> "Perm":
        if not isinstance(other, Perm):
            return NotImplemented
        if len(other) != len(self):
            raise ValueError("permutations of different degrees")
        return tuple.__new__(Perm, (self[i] for i in other))

    def inverse(self) -> "Perm":
        out = [0] * len(self)
        for i, j in enumerate(self):
            out[j] = i
        return tuple.__new__(Perm, out)

    def __call__(self, i: int) -> int:
        """Image of the 1-based point ``i``."""
        return self[i - 1] + 1

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, 1-based, each starting at its minimum."""
        seen = [False] * len(self)
        out = []
        for start in range(len(self)):
            if seen[start]:
                continue
            cycle = []
            i = start
            while not seen[i]:
                seen[i] = True
                cycle.append(i + 1)
                i = self[i]
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def cycle_type(self) -> Partition:
        """Cycle lengths with fixed points dropped."""
        return Partition(sorted((len(c) for c in self.cycles()), reverse=True))

    def support(self) -> list[int]:
        return [i + 1 for i, j in enumerate(self) if i != j]

    def cayley_length(self) -> int:
        return self.cycle_type().colength()

    def sign(self) -> int:
        return -1 if self.cayley_length() % 2 else 1

    def one_line(self) -> list[int]:
        return [j + 1 for j in self]

    def extend(self, n: int) -> "Perm":
        return tuple.__new__(Perm, tuple(self) + tuple(range(len(self), n)))

    def __repr__(self) -> str:
        cycles = self.cycles()
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in cycles) or "e"
        return f"Perm[{len(self)}]{body}"


def _swap(images: list[int], a: int, b: int) -> None:
    images[a], images[b] = images[b], images[a]


class AlgebraElement:
    """Finite rational combination of permutations of ``{1..n}``."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Perm, object] | None = None):
        self.n = n
        self.terms: dict[Perm, Fraction] = {}
        for perm, coeff in (terms or {}).items():
            if len(perm) != n:
                raise ValueError("term degree does not match n")
            coeff = Fraction(coeff)
            if coeff:
                self.terms[perm] = coeff

    @classmethod
    def identity(cls, n: int) -> "AlgebraElement":
        return cls(n, {Perm.identity(n): 1})

    @classmethod
    def zero(cls, n: int) -> "AlgebraElement":
        return cls(n)

    @classmethod
    def _raw(cls, n: int, terms: dict) -> "AlgebraElement":
        out = object.__new__(cls)
        out.n = n
        out.terms = {p: Fraction(c) for p, c in terms.items() if c}
        return out

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, 0) + c
        return AlgebraElement._raw(self.n, out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement._raw(self.n, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, factor) -> "AlgebraElement":
        factor = Fraction(factor)
        return AlgebraElement._raw(self.n, {p: c * factor for p, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):  # pragma: no cover
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"AlgebraElement(n={self.n}, {len(self.terms)} terms)"

    def _check(self, other: "AlgebraElement") -> None:
        if self.n != other.n:
            raise ValueError(f"mismatched degrees {self.n} and {other.n}")

    def coefficient(self, perm: Perm) -> Fraction:
        return self.terms.get(perm, Fraction(0))

    def identity_coefficient(self) -> Fraction:
        return self.coefficient(Perm.identity(self.n))

    def conjugate(self, g: Perm) -> "AlgebraElement":
        ginv = g.inverse()
        return AlgebraElement._raw(self.n, {g * p * ginv: c for p, c in self.terms.items()})

    def is_central(self) -> bool:
        """Invariant under conjugation by every adjacent transposition (these generate S_n)."""
        return all(
            self.conjugate(Perm.transposition(self.n, i, i + 1)) == self for i in range(1, self.n)
        )

    def embed(self, n: int) -> "AlgebraElement":
        """View an element of Q[S_m] inside Q[S_n] for ``n >= m``."""
        if n < self.n:
            raise ValueError("can only embed into a larger symmetric group")
        return AlgebraElement._raw(n, {p.extend(n): c for p, c in self.terms.items()})

    def to_json(self) -> list:
        return [[p.one_line(), c.numerator, c.denominator] for p, c in sorted(self.terms.items())]


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Convolution product in Q[S_n]."""
    a._check(b)
    out: dict[Perm, Fraction] = {}
    for p, c in a.terms.items():
        for q, d in b.terms.items():
            r = p * q
            out[r] = out.get(r, 0) + c * d
    return AlgebraElement._raw(a.n, out)


def _guard(n: int, cap: int) -> None:
    if n > cap:
        raise ValueError(f"degree n = {n} exceeds the configured cap {cap}")


def _distinct_tuples(pool: Sequence[int], size: int) -> Iterator[tuple[int, ...]]:
    def rec(prefix: list[int], used: set[int]) -> Iterator[tuple[int, ...]]:
        if len(prefix) == size:
            yield tuple(prefix)
            return
        for x in pool:
            if x not in used:
                prefix.append(x)
                used.add(x)
                yield from rec(prefix, used)
                used.discard(x)
                prefix.pop()

    yield from rec([], set())


def sigma_lambda(lam: Sequence[int], n: int, m: int | None = None, cap: int = DEFAULT_SIZE_CAP) -> AlgebraElement:
    """``Sigma_lambda`` restricted to ``{1..m}``: one term per tuple of distinct indices.

    The tuple is cut into consecutive cycles of lengths ``lam_1, lam_2, ...``;
    there are ``m ff |lam|`` tuples, so every permutation of cycle type
    ``lam`` supported in ``{1..m}`` appears with multiplicity
    ``prod_i lam_i * prod_j (multiplicity of j)!``.
    """
    lam = Partition(lam)
    m = n if m is None else m
    if m > n:
        raise ValueError("m must not exceed n")
    if any(p < 2 for p in lam):
        raise ValueError("parts of lambda must be at least 2")
    _guard(n, cap)
    if lam.size() > m:
        return AlgebraElement.zero(n)
    out: dict[Perm, Fraction] = {}
    for tup in _distinct_tuples(range(1, m + 1), lam.size()):
        cycles, start = [], 0
        for part in lam:
            cycles.append(tup[start:start + part])
            start += part
        perm = Perm.from_cycles(n, cycles)
        out[perm] = out.get(perm, 0) + 1
    return AlgebraElement._raw(n, out)


def d_k(k: int, n: int, m: int | None = None, cap: int = DEFAULT_SIZE_CAP) -> AlgebraElement:
    """The trace operator ``D_k`` restricted to ``{1..m}``.

    ``(1/(m+1)) sum (i_1 i_2)(i_2 i_3)...(i_k i_1)`` over tuples in
    ``{0..m}^k`` whose cyclically consecutive entries differ, with every
    transposition touching the sentinel 0 read as the identity.
    """
    m = n if m is None else m
    if k < 0:
        raise ValueError("k must be non-negative")
    if m > n:
        raise ValueError("m must not exceed n")
    _guard(n, cap)
    if k == 0:
        return AlgebraElement.identity(n)
    if k == 1:
        return AlgebraElement.zero(n)
    counts: dict[Perm, int] = {}
    images = list(range(n))

    def rec(depth: int, first: int, prev: int) -> None:
        if depth == k:
            if prev == first:
                return
            if prev and first:
                _swap(images, prev - 1, first - 1)
            perm = tuple.__new__(Perm, images)
            counts[perm] = counts.get(perm, 0) + 1
            if prev and first:
                _swap(images, prev - 1, first - 1)
            return
        for nxt in range(m + 1):
            if nxt == prev:
                continue
            touched = prev and nxt
            if touched:
                _swap(images, prev - 1, nxt - 1)
            rec(depth + 1, first, nxt)
            if touched:
                _swap(images, prev - 1, nxt - 1)

    for first in range(m + 1):
        rec(1, first, first)
    return AlgebraElement._raw(n, {p: Fraction(c, m + 1) for p, c in counts.items()})


def jucys_murphy(n: int) -> AlgebraElement:
    """``X_n = sum_{i<n} (i n)`` in Q[S_n]."""
    return AlgebraElement(n, {Perm.transposition(n, i, n): 1 for i in range(1, n)})


def jucys_murphy_power_expectation(k: int, n: int, cap: int = DEFAULT_SIZE_CAP) -> AlgebraElement:
    """Project ``X_{n+1}^k`` from Q[S_{n+1}] to Q[S_n] by discarding permutations moving ``n+1``."""
    _guard(n, cap)
    x = jucys_murphy(n + 1)
    power = AlgebraElement.identity(n + 1)
    for _ in range(k):
        power = multiply(power, x)
    out = {Perm(p[:n]): c for p, c in power.terms.items() if p[n] == n}
    return AlgebraElement._raw(n, out)


def class_decompose(a: AlgebraElement) -> dict[Partition, Fraction]:
    """Total coefficient over each conjugacy class (cycle types without fixed points)."""
    out: dict[Partition, Fraction] = {}
    for p, c in a.terms.items():
        key = p.cycle_type()
        out[key] = out.get(key, 0) + c
    return {lam: c for lam, c in out.items() if c}


def class_size(mu: Sequence[int], n: int) -> int:
    """Number of permutations of ``{1..n}`` with non-trivial cycle type ``mu``."""
    mu = Partition(p for p in mu if p > 1)
    if mu.size() > n:
        return 0
    fixed = n - mu.size()
    denom = factorial(fixed)
    for part, mult in mu.multiplicities().items():
        denom *= part**mult * factorial(mult)
    return factorial(n) // denom


def class_representative(mu: Sequence[int], n: int) -> Perm:
    mu = Partition(p for p in mu if p > 1)
    cycles, start = [], 1
    for part in mu:
        cycles.append(tuple(range(start, start + part)))
        start += part
    return Perm.from_cycles(n, cycles)


def apply_class_function(a: AlgebraElement, M) -> Fraction:
    """Linear extension ``sum_sigma c_sigma M(sigma)`` of a function on permutations."""
    total = 0
    for p, c in a.terms.items():
        total = total + c * M(p)
    return total


def interpolate(points: Sequence[tuple[int, Fraction]]) -> list[Fraction]:
    """Coefficients (lowest first) of the interpolating polynomial through ``points``."""
    size = len(points)
    coeffs = [Fraction(0)] * size
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xj * basis[t + 1]
            denom *= xi - xj
        for t in range(size):
            coeffs[t] += Fraction(yi) * basis[t] / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs
