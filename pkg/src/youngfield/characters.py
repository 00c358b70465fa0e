"""Characters of the symmetric group, the normalized character functional of a
distribution on partitions, and concrete distributions.

For a probability distribution ``rho`` on partitions of ``n`` the functional
``M_rho(sigma) = sum_lam rho(lam) chi_lam(sigma) / dim(lam)`` is a central,
normalized, positive-definite function on ``S_n``; conversely any such class
function determines ``rho`` by Fourier inversion.  Classes are addressed by
their cycle type with fixed points dropped and padded back as needed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, isqrt
from typing import Callable, Mapping, Sequence

from .group_algebra import Perm, class_size
from .lattice import permutation_cumulant
from .partitions import Partition, dim_syt, enumerate_partitions, hook_lengths

DEFAULT_DISTRIBUTION_CAP = 12


# ---------------------------------------------------------------------------
# Characters
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _mn(beta: frozenset, rho: tuple[int, ...]) -> int:
    """Murnaghan--Nakayama on beta-sets: remove border strips of lengths ``rho``."""
    if not rho:
        return 1
    r, rest = rho[0], rho[1:]
    total = 0
    for b in beta:
        target = b - r
        if target < 0 or target in beta:
            continue
        height = sum(1 for x in beta if target < x < b)
        total += (-1) ** height * _mn((beta - {b}) | {target}, rest)
    return total


def character(lam: Sequence[int], mu: Sequence[int]) -> int:
    """``chi_lam`` evaluated on the class of cycle type ``mu`` (``|mu| = |lam|``)."""
    lam, mu = Partition(lam), Partition(mu)
    if lam.size() != mu.size():
        raise ValueError(f"size mismatch: |lam| = {lam.size()}, |mu| = {mu.size()}")
    length = len(lam)
    beta = frozenset(lam[i] + (length - 1 - i) for i in range(length))
    return _mn(beta, tuple(mu))


def pad_class(mu: Sequence[int], n: int) -> Partition:
    """Cycle type ``mu`` (fixed points optional) padded with 1's to size ``n``."""
    core = [p for p in mu if p > 1]
    return Partition(sorted(core, reverse=True) + [1] * (n - sum(core)))


@dataclass
class CharacterTable:
    n: int
    values: dict[tuple[Partition, Partition], int] = field(default_factory=dict)

    @classmethod
    def build(cls, n: int) -> "CharacterTable":
        parts = enumerate_partitions(n)
        return cls(n, {(lam, mu): character(lam, mu) for lam in parts for mu in parts})

    def __getitem__(self, key: tuple[Sequence[int], Sequence[int]]) -> int:
        lam, mu = key
        return self.values[(Partition(lam), Partition(mu))]

    def column_orthogonality(self) -> bool:
        parts = enumerate_partitions(self.n)
        fact = factorial(self.n)
        for mu in parts:
            size = class_size(mu, self.n)
            for nu in parts:
                total = sum(self.values[(lam, mu)] * self.values[(lam, nu)] for lam in parts)
                if total * size != (fact if mu == nu else 0):
                    return False
        return True


# ---------------------------------------------------------------------------
# Distributions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Distribution:
    """A probability distribution on partitions of ``n``."""

    n: int
    probs: Mapping[Partition, object]
    name: str = "custom"

    def __post_init__(self):
        cleaned = {}
        for lam, p in self.probs.items():
            lam = Partition(lam)
            if lam.size() != self.n:
                raise ValueError(f"{lam!r} is not a partition of {self.n}")
            if p < 0:
                raise ValueError("probabilities must be non-negative")
            if p:
                cleaned[lam] = p
        object.__setattr__(self, "probs", cleaned)

    def total(self):
        return sum(self.probs.values())

    def is_exact(self) -> bool:
        return all(isinstance(p, (int, Fraction)) for p in self.probs.values())

    def __getitem__(self, lam: Sequence[int]):
        return self.probs.get(Partition(lam), 0)

    def to_json(self) -> dict:
        rows = []
        for lam, p in sorted(self.probs.items(), reverse=True):
            if isinstance(p, (int, Fraction)):
                p = Fraction(p)
                rows.append([list(lam), p.numerator, p.denominator])
            else:
                rows.append([list(lam), float(p)])
        return {"n": self.n, "name": self.name, "probs": rows}


def _guard(n: int, cap: int) -> None:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > cap:
        raise ValueError(f"n = {n} exceeds the distribution cap {cap}")


def plancherel(n: int, cap: int = DEFAULT_DISTRIBUTION_CAP) -> Distribution:
    """``rho(lam) = dim(lam)^2 / n!``."""
    _guard(n, cap)
    fact = factorial(n)
    return Distribution(n, {lam: Fraction(dim_syt(lam) ** 2, fact) for lam in enumerate_partitions(n)}, "plancherel")


def involution_count(n: int) -> int:
    """``I_n = I_{n-1} + (n-1) I_{n-2}`` with ``I_0 = I_1 = 1``."""
    a, b = 1, 1
    for m in range(2, n + 1):
        a, b = b, b + (m - 1) * a
    return b if n >= 1 else 1


def gelfand(n: int, cap: int = DEFAULT_DISTRIBUTION_CAP) -> Distribution:
    """``rho(lam) = dim(lam) / I_n``: the shape of RSK applied to a uniform involution."""
    _guard(n, cap)
    total = involution_count(n)
    return Distribution(n, {lam: Fraction(dim_syt(lam), total) for lam in enumerate_partitions(n)}, "gelfand")


def schur_weyl(n: int, D: int, cap: int = DEFAULT_DISTRIBUTION_CAP) -> Distribution:
    """``rho(lam) = dim(lam) s_lam(1^D) / D^n``, supported on at most ``D`` rows."""
    _guard(n, cap)
    if D < 1:
        raise ValueError("D must be at least 1")
    probs = {}
    for lam in enumerate_partitions(n):
        if lam.length() > D:
            continue
        num = Fraction(1)
        for (i, j), h in zip(lam.cells(), hook_lengths(lam)):
            num *= Fraction(D + j - i, h)
        probs[lam] = dim_syt(lam) * num / Fraction(D) ** n
    return Distribution(n, probs, f"schur-weyl(D={D})")


@dataclass(frozen=True)
class ThomaParams:
    """Finitely many row rates ``alpha`` and column rates ``beta``; ``gamma`` is what is left."""

    alpha: tuple = ()
    beta: tuple = ()

    def __post_init__(self):
        alpha = tuple(sorted((_num(a) for a in self.alpha), reverse=True))
        beta = tuple(sorted((_num(b) for b in self.beta), reverse=True))
        for x in alpha + beta:
            if x < 0 or x > 1:
                raise ValueError("Thoma parameters must lie in [0, 1]")
        if sum(alpha) + sum(beta) > 1:
            raise ValueError("sum of alpha and beta parameters exceeds 1")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @property
    def gamma(self):
        return 1 - sum(self.alpha) - sum(self.beta)

    def power_sum(self, k: int):
        """``p_k = sum alpha_i^k + (-1)^{k-1} sum beta_i^k``."""
        return sum(a**k for a in self.alpha) + (-1) ** (k - 1) * sum(b**k for b in self.beta)

    def to_json(self) -> dict:
        return {"alpha": [str(a) for a in self.alpha], "beta": [str(b) for b in self.beta]}


def _num(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    return x


def thoma_character(params: ThomaParams, mu: Sequence[int]):
    """Extreme character of ``S_infinity``: product of ``p_k`` over cycles of length ``k >= 2``."""
    value = Fraction(1)
    for part in mu:
        if part > 1:
            value = value * params.power_sum(part)
    return value


def from_class_function(n: int, M: Callable[[Partition], object], name: str = "custom") -> Distribution:
    """Fourier inversion ``rho(lam) = dim(lam) sum_mu (|C_mu| / n!) M(mu) chi_lam(mu)``."""
    fact = factorial(n)
    classes = enumerate_partitions(n)
    weights = {mu: Fraction(class_size(mu, n), fact) * M(mu) for mu in classes}
    probs = {}
    for lam in classes:
        probs[lam] = dim_syt(lam) * sum(w * character(lam, mu) for mu, w in weights.items())
    return Distribution(n, probs, name)


def thoma_induced(n: int, params: ThomaParams, cap: int = DEFAULT_DISTRIBUTION_CAP) -> Distribution:
    _guard(n, cap)
    return from_class_function(n, lambda mu: thoma_character(params, mu), "thoma")


def natural_representation(n: int) -> Distribution:
    """Distribution whose character is the fixed-point fraction of the permutation representation."""
    return from_class_function(n, lambda mu: Fraction(n - sum(p for p in mu if p > 1), n), "natural")


def m_rho(rho: Distribution, mu: Sequence[int]):
    """``M_rho`` on the class of cycle type ``mu``; zero when the cycles do not fit in ``S_n``."""
    core = [p for p in mu if p > 1]
    if sum(core) > rho.n:
        return Fraction(0)
    cls = pad_class(core, rho.n)
    total = 0
    for lam, p in rho.probs.items():
        total = total + p * Fraction(character(lam, cls), dim_syt(lam))
    return total


def class_function(rho: Distribution) -> Callable[[Perm], object]:
    """``M_rho`` as a function on :class:`Perm` objects (cached by cycle type)."""
    cache: dict[Partition, object] = {}

    def M(perm: Perm):
        key = perm.cycle_type()
        if key not in cache:
            cache[key] = m_rho(rho, key)
        return cache[key]

    return M


def disjoint_cycles(ks: Sequence[int], n: int) -> list[Perm]:
    """Cycles of lengths ``ks`` on consecutive disjoint blocks of ``{1..n}``."""
    if sum(ks) > n:
        raise ValueError(f"cycles of total length {sum(ks)} do not fit in S_{n}")
    out, start = [], 1
    for k in ks:
        if k < 1:
            raise ValueError("cycle lengths must be positive")
        out.append(Perm.from_cycles(n, [tuple(range(start, start + k))]))
        start += k
    return out


def young_log_derivative(rho: Distribution, ks: Sequence[int]):
    """``n^{sum_j (k_j - 1)/2} kappa_r(sigma[k_1], ..., sigma[k_r])`` with disjoint cycles.

    This is the mixed partial derivative of the logarithm of the Young
    generating function at the origin.  Repeated indices need no extra
    factorial: the value returned is the scaled cumulant itself.  The result
    is exact whenever the power of ``n`` is rational, and a float otherwise.
    """
    ks = list(ks)
    if not ks:
        raise ValueError("at least one derivative index is required")
    perms = disjoint_cycles(ks, rho.n)
    kappa = permutation_cumulant(class_function(rho), perms)
    twice = sum(k - 1 for k in ks)
    if twice % 2 == 0:
        return Fraction(rho.n) ** (twice // 2) * kappa
    root = isqrt(rho.n)
    if root * root == rho.n:
        return Fraction(root) ** twice * kappa
    return float(rho.n) ** (twice / 2) * float(kappa)
