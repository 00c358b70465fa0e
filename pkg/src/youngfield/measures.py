"""Transition and co-transition measures of Young diagrams, their moments,
and the formal-series bridges between the different moment families.

Three moment families appear:

* transition moments ``x_k = int t^k m_K[lam](dt)`` (atoms at addable corners),
* co-transition moments ``z_k = int t^k m_A[lam](dt)`` (atoms at removable corners),
* diagram moments ``q_k = int t^k dsigma[lam](t)``, where ``sigma`` has density
  ``(omega'(t) - sgn t) / 2`` against Lebesgue measure.

With ``u = 1/z`` and ``X(u) = sum_k x_k u^k`` they are tied by
``ln X(u) = -sum_m q_m u^{m+1}`` and ``sum_k z_k u^{k+2} = (1 - 1/X(u)) / |lam|``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .partitions import Partition, Profile, corners, dim_syt, removable_cells
from .series import TruncatedSeries

FLAVORS = ("transition", "cotransition", "diagram")
DEFAULT_EXPECTATION_CAP = 9


@dataclass(frozen=True)
class AtomicMeasure:
    """Finitely many atoms ``(location, weight)`` with increasing locations."""

    atoms: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        atoms = tuple((Fraction(x), Fraction(w)) for x, w in self.atoms)
        for (x, w) in atoms:
            if w <= 0:
                raise ValueError("atom weights must be strictly positive")
        if any(a[0] >= b[0] for a, b in zip(atoms, atoms[1:])):
            raise ValueError("atom locations must be strictly increasing")
        object.__setattr__(self, "atoms", atoms)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple]) -> "AtomicMeasure":
        merged: dict[Fraction, Fraction] = {}
        for x, w in pairs:
            merged[Fraction(x)] = merged.get(Fraction(x), Fraction(0)) + Fraction(w)
        return cls(tuple(sorted((x, w) for x, w in merged.items() if w)))

    @property
    def locations(self) -> list[Fraction]:
        return [x for x, _ in self.atoms]

    @property
    def weights(self) -> list[Fraction]:
        return [w for _, w in self.atoms]

    def total_mass(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def moment(self, k: int) -> Fraction:
        return sum((w * x**k for x, w in self.atoms), Fraction(0))

    def to_json(self) -> dict:
        return {
            "atoms": [[x.numerator, x.denominator, w.numerator, w.denominator] for x, w in self.atoms]
        }

    @classmethod
    def from_json(cls, data: dict) -> "AtomicMeasure":
        return cls(tuple((Fraction(a, b), Fraction(c, d)) for a, b, c, d in data["atoms"]))


@dataclass(frozen=True)
class MomentSequence:
    """Exact moments indexed ``k = 0..K`` plus the family they belong to."""

    values: tuple[Fraction, ...]
    flavor: str

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {self.flavor!r}")
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    def __getitem__(self, k: int) -> Fraction:
        return self.values[k]

    def __len__(self) -> int:
        return len(self.values)

    @property
    def order(self) -> int:
        return len(self.values) - 1


def transition_measure(lam: Sequence[int]) -> AtomicMeasure:
    """Kerov's transition measure, weights from the corner product formula.

    ``mu_i = prod_j (x_i - y_j) / prod_{j != i} (x_i - x_j)`` with ``x`` the
    minima and ``y`` the maxima of the profile.
    """
    data = corners(Partition(lam))
    atoms = []
    for i, x in enumerate(data.minima):
        num = Fraction(1)
        for y in data.maxima:
            num *= x - y
        den = Fraction(1)
        for j, other in enumerate(data.minima):
            if j != i:
                den *= x - other
        atoms.append((Fraction(x), num / den))
    return AtomicMeasure(tuple(atoms))


def transition_measure_by_dimensions(lam: Sequence[int]) -> AtomicMeasure:
    """Same measure via ``dim(lam + box) / ((n + 1) dim(lam))``; kept as an independent check."""
    lam = Partition(lam)
    base = (lam.size() + 1) * dim_syt(lam)
    data = corners(lam)
    pairs = []
    for x in data.minima:
        # the addable box with content x sits in row r with lam_r - r + 1 = x
        row = next(r for r in range(1, lam.length() + 2) if (lam[r - 1] if r <= lam.length() else 0) - r + 1 == x)
        pairs.append((x, Fraction(dim_syt(lam.add_box(row)), base)))
    return AtomicMeasure.from_pairs(pairs)


def cotransition_measure(lam: Sequence[int]) -> AtomicMeasure:
    """Atoms at the removable corners with weights ``dim(lam - box) / dim(lam)``."""
    lam = Partition(lam)
    if not lam:
        raise ValueError("the co-transition measure of the empty diagram is undefined")
    base = dim_syt(lam)
    pairs = [(col - row, Fraction(dim_syt(lam.remove_box(row)), base)) for row, col in removable_cells(lam)]
    return AtomicMeasure.from_pairs(pairs)


def moments(m: AtomicMeasure, K: int, flavor: str = "transition") -> MomentSequence:
    if K < 0:
        raise ValueError("K must be non-negative")
    return MomentSequence(tuple(m.moment(k) for k in range(K + 1)), flavor)


def diagram_moments(lam: Sequence[int], K: int) -> MomentSequence:
    """``q_k = int t^k dsigma[lam](t)`` for ``k = 0..K``, integrated exactly.

    Between consecutive breakpoints of the profile the density
    ``(omega' - sgn) / 2`` is a constant in ``{-1, 0, 1}``.
    """
    if K < 0:
        raise ValueError("K must be non-negative")
    lam = Partition(lam)
    values = [Fraction(0)] * (K + 1)
    if not lam:
        return MomentSequence(tuple(values), "diagram")
    profile = Profile(lam)
    pts = profile.breakpoints()
    for a, b in zip(pts, pts[1:]):
        mid = Fraction(a + b, 2)
        density = Fraction(profile.slope(mid) - (1 if mid > 0 else -1), 2)
        if density == 0:
            continue
        for k in range(K + 1):
            values[k] += density * Fraction(b ** (k + 1) - a ** (k + 1), k + 1)
    return MomentSequence(tuple(values), "diagram")


def diagram_moments_from_corners(lam: Sequence[int], K: int) -> MomentSequence:
    """Closed form ``q_k = (p_{k+1}(maxima) - p_{k+1}(minima)) / (k+1)`` (test oracle)."""
    data = corners(Partition(lam))
    values = []
    for k in range(K + 1):
        p_max = sum(Fraction(y) ** (k + 1) for y in data.maxima)
        p_min = sum(Fraction(x) ** (k + 1) for x in data.minima)
        values.append((p_max - p_min) / (k + 1))
    return MomentSequence(tuple(values), "diagram")


def _as_values(x) -> list[Fraction]:
    return [Fraction(v) for v in getattr(x, "values", x)]


def markov_krein_bridge(x: MomentSequence | Sequence) -> MomentSequence:
    """Transition moments ``x_0..x_K`` to diagram moments ``q_0..q_{K-1}``.

    ``q_m = -[u^{m+1}] ln(sum_k x_k u^k)``.
    """
    values = _as_values(x)
    if not values or values[0] != 1:
        raise ValueError("x_0 must equal 1")
    K = len(values) - 1
    log = TruncatedSeries(values, prec=K + 1).log()
    return MomentSequence(tuple(-log.coefficient((m + 1,)) for m in range(K)), "diagram")


def inverse_markov_krein_bridge(q: MomentSequence | Sequence) -> MomentSequence:
    """Diagram moments ``q_0..q_{K-1}`` back to transition moments ``x_0..x_K``."""
    values = _as_values(q)
    K = len(values)
    exponent = TruncatedSeries({m + 1: -v for m, v in enumerate(values)}, prec=K + 1)
    series = exponent.exp()
    return MomentSequence(tuple(series.coefficient((k,)) for k in range(K + 1)), "transition")


def cotransition_bridge(x: MomentSequence | Sequence, area) -> MomentSequence:
    """Transition moments ``x_0..x_K`` to co-transition moments ``z_0..z_{K-2}``.

    Expands ``sum_k z_k u^{k+2} = (1 - 1/X(u)) / A``; the centering ``x_1 = 0``
    of any diagram's transition measure is required for the expansion to
    start at ``u^2``.
    """
    area = Fraction(area)
    if area <= 0:
        raise ValueError("area must be positive")
    values = _as_values(x)
    if not values or values[0] != 1:
        raise ValueError("x_0 must equal 1")
    if len(values) > 1 and values[1] != 0:
        raise ValueError("x_1 must vanish")
    K = len(values) - 1
    X = TruncatedSeries(values, prec=K + 1)
    series = (1 - X.reciprocal()).scale(1 / area)
    return MomentSequence(tuple(series.coefficient((k + 2,)) for k in range(K - 1)), "cotransition")


def exact_expectation(rho, ks: Sequence[int], cap: int = DEFAULT_EXPECTATION_CAP) -> Fraction:
    """``E_rho[prod_i int x^{k_i} m_K[lam](dx)]`` by summing over every partition in the support.

    ``rho`` is any object exposing ``n`` and ``probs`` (a map from
    partitions to probabilities).
    """
    if rho.n > cap:
        raise ValueError(f"exact expectation is capped at n = {cap}, got n = {rho.n}")
    total = 0
    for lam, p in rho.probs.items():
        if not p:
            continue
        measure = transition_measure(lam)
        term = p
        for k in ks:
            term = term * measure.moment(k)
        total = total + term
    return total
