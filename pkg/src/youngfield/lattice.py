"""Set-partition lattice, cumulants, non-crossing partitions and falling factorials.

Set partitions of ``{1..r}`` are stored canonically: each block is a sorted
tuple and blocks are ordered by their minimum.  Cumulant routines take
*moment oracles* -- callables from a frozenset of indices to a value -- so
that the same code serves classical random variables, class functions on
permutations and the weighted variants.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Callable, Iterable, Iterator, Sequence

from .partitions import Partition


class SetPartition(tuple):
    """Canonical set partition: a tuple of sorted tuples ordered by minimum."""

    __slots__ = ()

    def __new__(cls, blocks: Iterable[Iterable[int]]) -> "SetPartition":
        canon = sorted((tuple(sorted(b)) for b in blocks if len(tuple(b)) > 0), key=lambda b: b[0])
        seen: set[int] = set()
        for block in canon:
            for x in block:
                if x in seen:
                    raise ValueError(f"element {x} appears in two blocks")
                seen.add(x)
        return super().__new__(cls, canon)

    def __repr__(self) -> str:
        return "{" + ", ".join("{" + ",".join(map(str, b)) + "}" for b in self) + "}"

    @property
    def ground(self) -> tuple[int, ...]:
        return tuple(sorted(x for b in self for x in b))

    def block_of(self) -> dict[int, int]:
        return {x: i for i, b in enumerate(self) for x in b}

    def block_sizes(self) -> Partition:
        return Partition(sorted((len(b) for b in self), reverse=True))

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self]

    @classmethod
    def from_json(cls, data) -> "SetPartition":
        return cls(data)


def finest(r: int) -> SetPartition:
    return SetPartition([i] for i in range(1, r + 1))


def coarsest(r: int) -> SetPartition:
    return SetPartition([range(1, r + 1)])


def set_partitions_of(elements: Sequence[int]) -> Iterator[SetPartition]:
    """Yield every set partition of ``elements`` (restricted-growth order)."""
    elements = list(elements)
    if not elements:
        yield SetPartition([])
        return

    def rec(idx: int, blocks: list[list[int]]) -> Iterator[SetPartition]:
        if idx == len(elements):
            yield SetPartition(blocks)
            return
        x = elements[idx]
        for block in blocks:
            block.append(x)
            yield from rec(idx + 1, blocks)
            block.pop()
        blocks.append([x])
        yield from rec(idx + 1, blocks)
        blocks.pop()

    yield from rec(0, [])


def enumerate_set_partitions(r: int) -> list[SetPartition]:
    if r < 1:
        raise ValueError("r must be at least 1")
    return list(set_partitions_of(range(1, r + 1)))


def leq(a: SetPartition, b: SetPartition) -> bool:
    """Refinement order: every block of ``a`` lies inside a block of ``b``."""
    owner = b.block_of()
    return all(len({owner[x] for x in block}) == 1 for block in a)


def meet(a: SetPartition, b: SetPartition) -> SetPartition:
    owner = b.block_of()
    pieces: dict[tuple[int, int], list[int]] = {}
    for i, block in enumerate(a):
        for x in block:
            pieces.setdefault((i, owner[x]), []).append(x)
    return SetPartition(pieces.values())


def join(a: SetPartition, b: SetPartition) -> SetPartition:
    parent: dict[int, int] = {x: x for x in a.ground}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for part in (a, b):
        for block in part:
            root = find(block[0])
            for x in block[1:]:
                other = find(x)
                if other != root:
                    parent[other] = root
    groups: dict[int, list[int]] = {}
    for x in parent:
        groups.setdefault(find(x), []).append(x)
    return SetPartition(groups.values())


def mobius(a: SetPartition, b: SetPartition) -> int:
    """Moebius function of the partition lattice on the interval ``[a, b]``."""
    if not leq(a, b):
        return 0
    owner = b.block_of()
    counts: dict[int, int] = {}
    for block in a:
        idx = owner[block[0]]
        counts[idx] = counts.get(idx, 0) + 1
    return prod((-1) ** (c - 1) * factorial(c - 1) for c in counts.values())


# ---------------------------------------------------------------------------
# Cumulants
# ---------------------------------------------------------------------------

def _block_weight(num_blocks: int) -> int:
    return (-1) ** (num_blocks - 1) * factorial(num_blocks - 1)


def classical_cumulant(moment_oracle: Callable[[frozenset], object], r: int):
    """Joint cumulant from joint moments.

    Args:
        moment_oracle: maps a nonempty frozenset ``B`` of ``{1..r}`` to
            ``E[prod_{j in B} X_j]``.
        r: number of variables.

    Returns:
        ``sum_pi (-1)^{|pi|-1} (|pi|-1)! prod_{B in pi} moment_oracle(B)``.
    """
    cache: dict[frozenset, object] = {}

    def moment(block: tuple[int, ...]):
        key = frozenset(block)
        if key not in cache:
            cache[key] = moment_oracle(key)
        return cache[key]

    total = 0
    for pi in enumerate_set_partitions(r):
        term = _block_weight(len(pi))
        for block in pi:
            term = term * moment(block)
        total = total + term
    return total


def moments_from_cumulants(cumulant_oracle: Callable[[frozenset], object], r: int):
    """Inverse of :func:`classical_cumulant`: ``E[X_1..X_r] = sum_pi prod_B kappa(B)``."""
    total = 0
    for pi in enumerate_set_partitions(r):
        term = 1
        for block in pi:
            term = term * cumulant_oracle(frozenset(block))
        total = total + term
    return total


def _check_disjoint(perms: Sequence) -> None:
    seen: set[int] = set()
    for p in perms:
        support = set(p.support())
        if support & seen:
            raise ValueError("permutations must have pairwise disjoint supports")
        seen |= support


def _product(perms: Sequence):
    result = perms[0]
    for p in perms[1:]:
        result = result * p
    return result


def permutation_cumulant(M: Callable, perms: Sequence):
    """Cumulant of disjoint permutations under the class function ``M``."""
    _check_disjoint(perms)
    r = len(perms)
    return classical_cumulant(lambda B: M(_product([perms[j - 1] for j in sorted(B)])), r)


def falling_factorial(x, k: int):
    out = 1
    for i in range(k):
        out = out * (x - i)
    return out


def rising_factorial(x, k: int):
    out = 1
    for i in range(k):
        out = out * (x + i)
    return out


def generalized_ff(n_vec: Sequence[int], k_vec: Sequence[int]) -> int:
    """Generalized falling factorial ``prod_i (n_i - sum_{j<i} k_j  ff  k_i)``."""
    if len(n_vec) != len(k_vec):
        raise ValueError("n_vec and k_vec must have equal length")
    if any(a > b for a, b in zip(n_vec, n_vec[1:])):
        raise ValueError("n_vec must be non-decreasing")
    used = 0
    out = 1
    for n_i, k_i in zip(n_vec, k_vec):
        out *= falling_factorial(n_i - used, k_i)
        used += k_i
    return out


def _vec_sum(vectors: Iterable[Sequence[int]], length: int) -> list[int]:
    total = [0] * length
    for v in vectors:
        for i, x in enumerate(v):
            total[i] += x
    return total


def falling_cumulant(M: Callable, perms: Sequence, k_vecs: Sequence[Sequence[int]], n_vec: Sequence[int]):
    """Permutation-cumulant with generalized falling-factorial block weights.

    Each block ``B`` of a set partition contributes
    ``(n_vec ff sum_{j in B} k_vecs[j]) * M(prod_{j in B} perms[j])``.
    """
    _check_disjoint(perms)
    r = len(perms)
    total = 0
    for pi in enumerate_set_partitions(r):
        term = _block_weight(len(pi))
        for block in pi:
            kk = _vec_sum((k_vecs[j - 1] for j in block), len(n_vec))
            term = term * generalized_ff(n_vec, kk) * M(_product([perms[j - 1] for j in block]))
        total = total + term
    return total


def falling_weight_ledger(k_vecs: Sequence[Sequence[int]], n_vec: Sequence[int]) -> dict[SetPartition, int]:
    """The weights ``f_theta`` with ``prod_{B in pi} (n ff k_B) = sum_{theta <= pi} f_theta``.

    Computed inductively from the finest partition upwards, exactly as the
    defining recursion prescribes.
    """
    r = len(k_vecs)
    parts = sorted(enumerate_set_partitions(r), key=len, reverse=True)
    ledger: dict[SetPartition, int] = {}
    for pi in parts:
        block_product = 1
        for block in pi:
            block_product *= generalized_ff(n_vec, _vec_sum((k_vecs[j - 1] for j in block), len(n_vec)))
        ledger[pi] = block_product - sum(v for theta, v in ledger.items() if theta != pi and leq(theta, pi))
    return ledger


def falling_cumulant_expansion(M: Callable, perms: Sequence, k_vecs, n_vec):
    """``sum_theta f_theta * kappa(prod over blocks of theta)`` -- equals :func:`falling_cumulant`."""
    ledger = falling_weight_ledger(k_vecs, n_vec)
    total = 0
    for theta, weight in ledger.items():
        if weight == 0:
            continue
        grouped = [_product([perms[j - 1] for j in block]) for block in theta]
        total = total + weight * permutation_cumulant(M, grouped)
    return total


def cumulant_of_products(cumulant_oracle: Callable[[frozenset], object], grouping: SetPartition):
    """Leonov--Shiryaev expansion for cumulants of products.

    The cumulant of the variables ``prod_{j in G} X_j`` (one per block ``G``
    of ``grouping``) equals the sum over set partitions ``pi`` with
    ``pi v grouping = 1`` of ``prod_{B in pi} kappa(B)``.
    """
    r = len(grouping.ground)
    top = coarsest(r)
    total = 0
    for pi in enumerate_set_partitions(r):
        if join(pi, grouping) != top:
            continue
        term = 1
        for block in pi:
            term = term * cumulant_oracle(frozenset(block))
        total = total + term
    return total


def mobius_alternating_sum(r: int) -> int:
    """``sum_{pi} (-1)^{|pi|-1} (|pi|-1)!`` over all set partitions of ``{1..r}``."""
    return sum(_block_weight(len(pi)) for pi in enumerate_set_partitions(r))


# ---------------------------------------------------------------------------
# Non-crossing partitions
# ---------------------------------------------------------------------------

def is_noncrossing(pi: SetPartition) -> bool:
    """No ``a < b < c < d`` with ``a, c`` in one block and ``b, d`` in another."""
    owner = pi.block_of()
    for i, block in enumerate(pi):
        lo, hi = block[0], block[-1]
        for x in range(lo + 1, hi):
            j = owner.get(x)
            if j is None or j == i:
                continue
            # the block containing x must stay strictly between two consecutive elements of `block`
            other = pi[j]
            gap_lo = max(b for b in block if b < x)
            gap_hi = min(b for b in block if b > x)
            if other[0] < gap_lo or other[-1] > gap_hi:
                return False
    return True


def enumerate_noncrossing(k: int) -> list[SetPartition]:
    return [pi for pi in enumerate_set_partitions(k) if is_noncrossing(pi)]


def kreweras_complement(theta: SetPartition) -> SetPartition:
    """Kreweras complement via the odd/even interleaving of ``2k`` points.

    ``theta`` lives on the odd points ``1, 3, ..., 2k-1`` (point ``i`` at
    ``2i - 1``) and the complement on the even points (``i`` at ``2i``).  The
    complement is the coarsest partition of the even points whose union with
    the embedded ``theta`` stays non-crossing: two even points share a block
    exactly when no block of ``theta`` separates them.
    """
    k = len(theta.ground)
    if theta.ground != tuple(range(1, k + 1)):
        raise ValueError("theta must partition {1..k}")
    if not is_noncrossing(theta):
        raise ValueError("theta must be non-crossing")
    odd_blocks = [[2 * x - 1 for x in block] for block in theta]

    def separated(a: int, b: int) -> bool:
        for block in odd_blocks:
            inside = any(a < x < b for x in block)
            outside = any(x < a or x > b for x in block)
            if inside and outside:
                return True
        return False

    blocks: list[list[int]] = []
    for i in range(1, k + 1):
        pos = 2 * i
        for block in blocks:
            if not separated(2 * block[0], pos):
                block.append(i)
                break
        else:
            blocks.append([i])
    return SetPartition(blocks)


def interleaved_union(theta: SetPartition, pi: SetPartition) -> SetPartition:
    """``theta`` on odd points and ``pi`` on even points, as one partition of ``2k``."""
    return SetPartition([[2 * x - 1 for x in b] for b in theta] + [[2 * x for x in b] for b in pi])


def is_admissible(pi: SetPartition) -> bool:
    """No block contains two cyclically consecutive points ``x, x+1`` (with ``k`` followed by ``1``).

    For ``k = 1`` the single point follows itself, so nothing is admissible.
    """
    k = len(pi.ground)
    owner = pi.block_of()
    return all(owner[x] != owner[x % k + 1] for x in range(1, k + 1))


def admissible_bijection_check(k: int) -> bool:
    """Kreweras complement restricted to admissible NC partitions is a bijection onto NC with blocks >= 2."""
    nc = enumerate_noncrossing(k)
    admissible = [p for p in nc if is_admissible(p)]
    big_blocks = {p for p in nc if all(len(b) >= 2 for b in p)}
    images = [kreweras_complement(p) for p in admissible]
    return len(set(images)) == len(images) and set(images) == big_blocks


def nc_count(mu: Sequence[int]) -> int:
    """Number of non-crossing partitions of ``|mu|`` whose block sizes are the parts of ``mu``.

    ``(|mu| ff h-1) / prod_i m_i!`` where ``h`` is the number of parts and
    ``m_i`` the number of parts equal to ``i``.
    """
    mu = Partition(mu)
    if not mu:
        return 1
    numerator = falling_factorial(mu.size(), mu.length() - 1)
    denominator = prod(factorial(m) for m in mu.multiplicities().values())
    return numerator // denominator


# ---------------------------------------------------------------------------
# Disjointness counts and the falling/rising factorial identities
# ---------------------------------------------------------------------------

def block_partition(lam: Sequence[int]) -> SetPartition:
    """Consecutive-interval set partition with block sizes ``lam`` (in order)."""
    blocks, start = [], 1
    for part in lam:
        blocks.append(range(start, start + part))
        start += part
    return SetPartition(blocks)


def disj_count(pi: SetPartition, m: int) -> int:
    """Number of set partitions ``eta`` with ``m`` blocks meeting ``pi`` only trivially."""
    owner = pi.block_of()
    count = 0
    for eta in set_partitions_of(pi.ground):
        if len(eta) != m:
            continue
        if all(len({owner[x] for x in block}) == len(block) for block in eta):
            count += 1
    return count


@lru_cache(maxsize=None)
def _disj_profile(lam: tuple[int, ...]) -> tuple[int, ...]:
    pi = block_partition(lam)
    owner = pi.block_of()
    s = sum(lam)
    counts = [0] * (s + 1)
    for eta in set_partitions_of(range(1, s + 1)):
        if all(len({owner[x] for x in block}) == len(block) for block in eta):
            counts[len(eta)] += 1
    return tuple(counts)


# Polynomials are coefficient lists, lowest degree first.

def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a: list, b: list) -> list:
    size = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(size)]


def _poly_trim(a: list) -> list:
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def falling_poly(k: int, sign: int = -1) -> list[int]:
    """Coefficients of ``x(x-1)...(x-k+1)`` (``sign=-1``) or ``x(x+1)...(x+k-1)`` (``sign=+1``)."""
    out = [1]
    for i in range(k):
        out = _poly_mul(out, [sign * i, 1])
    return out


def rosas_identity_check(lam: Sequence[int]) -> bool:
    """Check both factorial-basis expansions of products as exact polynomial identities.

    ``prod_i (x ff lam_i) = sum_m Disj(pi_lam, m) (x ff m)`` and
    ``prod_i (x rf lam_i) = sum_m (-1)^{s-m} Disj(pi_lam, m) (x rf m)``.
    """
    lam = tuple(Partition(lam))
    s = sum(lam)
    counts = _disj_profile(lam)
    lhs_f, lhs_r = [1], [1]
    for part in lam:
        lhs_f = _poly_mul(lhs_f, falling_poly(part, -1))
        lhs_r = _poly_mul(lhs_r, falling_poly(part, +1))
    rhs_f, rhs_r = [0], [0]
    for m in range(1, s + 1):
        if counts[m]:
            rhs_f = _poly_add(rhs_f, [counts[m] * c for c in falling_poly(m, -1)])
            rhs_r = _poly_add(rhs_r, [(-1) ** (s - m) * counts[m] * c for c in falling_poly(m, +1)])
    if not lam:
        return True
    return _poly_trim(lhs_f) == _poly_trim(rhs_f) and _poly_trim(lhs_r) == _poly_trim(rhs_r)


def disj_alternating_sum(lam: Sequence[int]) -> int:
    """``sum_m (-1)^{m-1} (m-1)! Disj(pi_lam, m)``; vanishes whenever ``lam`` has at least two parts."""
    counts = _disj_profile(tuple(Partition(lam)))
    return sum((-1) ** (m - 1) * factorial(m - 1) * c for m, c in enumerate(counts) if m >= 1)


def generalized_ff_product_expansion(n_vec: Sequence[int], k_vecs: Sequence[Sequence[int]]) -> tuple[int, int]:
    """Both sides of the product decomposition of generalized falling factorials.

    The left side is ``prod_j (n_vec ff k_vecs[j])``; the right side sums
    ``(n_vec ff kappa(eta))`` over set partitions ``eta`` of the disjoint
    union of the index sets that meet each index set trivially.
    """
    s = len(n_vec)
    lhs = prod(generalized_ff(n_vec, kv) for kv in k_vecs)
    # label the elements of each B_j with the level at which they become constrained
    elements: list[tuple[int, int]] = []  # (j, level)
    for j, kv in enumerate(k_vecs):
        for level, count in enumerate(kv):
            elements.extend([(j, level)] * count)
    owner = {idx + 1: elements[idx][0] for idx in range(len(elements))}
    level_of = {idx + 1: elements[idx][1] for idx in range(len(elements))}
    rhs = 0
    for eta in set_partitions_of(range(1, len(elements) + 1)):
        if any(len({owner[x] for x in block}) != len(block) for block in eta):
            continue
        kappa = [0] * s
        for block in eta:
            kappa[min(level_of[x] for x in block)] += 1
        rhs += generalized_ff(n_vec, kappa)
    return lhs, rhs


def bell_number(r: int) -> int:
    row = [1]
    for _ in range(r):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def stirling2(s: int, m: int) -> int:
    if s == m:
        return 1
    if m == 0 or m > s:
        return 0
    return m * stirling2(s - 1, m) + stirling2(s - 1, m - 1)
