"""Height-function fluctuations of growth processes and their Gaussian-field predictions.

For a growth path the rescaled field moments are

    M_{alpha,k} = sqrt(pi) * int u^k [H(sqrt(n) u, floor(alpha n)) - E H] du,

which, after integrating by parts against the piecewise-linear profile,
equals ``-sqrt(pi) n^{-(k+1)/2} (q_{k+1} - E q_{k+1}) / (k+1)`` with
``q_j`` the diagram moments of the shape at time ``floor(alpha n)``.  The
expectation is replaced by the ensemble mean.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .partitions import Partition, corners
from .samplers import GrowthPath, rsk_shapes_at
from .series import BivariateSeries, TruncatedSeries, predicted_pcov

SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class FieldMoment:
    alpha: Fraction
    k: int
    value: float


@dataclass
class CovarianceEntry:
    alpha: Fraction
    k: int
    alpha2: Fraction
    k2: int
    empirical: float
    stderr: float
    predicted: float

    def to_json(self) -> dict:
        return {
            "a": str(self.alpha), "k": self.k, "a2": str(self.alpha2), "k2": self.k2,
            "emp": self.empirical, "se": self.stderr, "pred": self.predicted,
        }


@dataclass
class CovarianceReport:
    model: str
    n: int
    paths: int
    entries: list[CovarianceEntry] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"model": self.model, "n": self.n, "paths": self.paths, "entries": [e.to_json() for e in self.entries]}

    def lookup(self, alpha, k, alpha2, k2) -> CovarianceEntry:
        key = (Fraction(alpha), k, Fraction(alpha2), k2)
        for e in self.entries:
            if (e.alpha, e.k, e.alpha2, e.k2) == key or (e.alpha2, e.k2, e.alpha, e.k) == key:
                return e
        raise KeyError(key)


def profile_power_moment(lam: Sequence[int], j: int) -> Fraction:
    """``q_j = int t^j dsigma[lam]`` from the corner contents (integer arithmetic)."""
    data = corners(lam)
    num = sum(y ** (j + 1) for y in data.maxima) - sum(x ** (j + 1) for x in data.minima)
    return Fraction(num, j + 1)


def raw_field_moment(lam: Sequence[int], n: int, k: int) -> float:
    """Uncentered ``-sqrt(pi) n^{-(k+1)/2} q_{k+1} / (k+1)``; equals ``sqrt(pi) int u^k H(sqrt(n) u) du``."""
    q = profile_power_moment(lam, k + 1)
    return -SQRT_PI * float(q / (k + 1)) / n ** ((k + 1) / 2)


def level_time(alpha, n: int) -> int:
    return math.floor(Fraction(alpha) * n)


def _field_matrix(shapes_per_path: Sequence[dict[int, Partition]], n: int, labels) -> np.ndarray:
    data = np.empty((len(shapes_per_path), len(labels)))
    for i, shapes in enumerate(shapes_per_path):
        for j, (alpha, k) in enumerate(labels):
            data[i, j] = raw_field_moment(shapes[level_time(alpha, n)], n, k)
    return data


def empirical_field_moments(paths: Sequence[GrowthPath], n: int, alphas, ks) -> list[list[FieldMoment]]:
    """Per-path field moments centered by the ensemble mean (one inner list per path)."""
    if not paths:
        raise ValueError("at least one path is required")
    if any(p.steps < n for p in paths):
        raise ValueError(f"every path must have at least {n} steps")
    labels = [(Fraction(a), k) for a in alphas for k in ks]
    shapes = [{level_time(a, n): p.shapes[level_time(a, n)] for a, _ in labels} for p in paths]
    data = _field_matrix(shapes, n, labels)
    data -= data.mean(axis=0)
    return [[FieldMoment(a, k, float(v)) for (a, k), v in zip(labels, row)] for row in data]


def sample_field_matrix(n: int, paths: int, seed: int, alphas, ks, first_index: int = 0) -> tuple[list, np.ndarray]:
    """Uncentered field moments of ``paths`` RSK growth paths, as a ``paths x labels`` array."""
    labels = [(Fraction(a), k) for a in alphas for k in ks]
    times = sorted({level_time(a, n) for a, _ in labels})
    shapes = [rsk_shapes_at(times, seed, first_index + i) for i in range(paths)]
    return labels, _field_matrix(shapes, n, labels)


def covariance_with_stderr(data: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sample covariance and the standard error of each entry (from per-path centered products)."""
    count = data.shape[0]
    if count < 2:
        raise ValueError("at least two samples are needed for a covariance")
    centered = data - data.mean(axis=0)
    products = centered[:, :, None] * centered[:, None, :]
    cov = products.sum(axis=0) / (count - 1)
    stderr = products.std(axis=0, ddof=1) / math.sqrt(count)
    return cov, stderr


def predicted_covariance(model: str, k: int, k2: int, alpha, alpha2) -> float:
    """Limit covariance of ``M_{alpha,k}`` and ``M_{alpha',k'}``.

    Plancherel: ``pi * predicted_pcov``.  Gelfand: twice that -- its height
    function fluctuates like the Plancherel one rescaled by ``sqrt 2``.
    """
    base = math.pi * float(predicted_pcov(k, k2, alpha, alpha2))
    if model == "plancherel":
        return base
    if model == "gelfand":
        return 2 * base
    raise ValueError(f"no fluctuation prediction for model {model!r}")


def covariance_report(n: int, paths: int, seed: int, alphas, ks, model: str = "plancherel") -> CovarianceReport:
    if model != "plancherel":
        raise ValueError("Monte Carlo fluctuation reports are implemented for the Plancherel model")
    labels, data = sample_field_matrix(n, paths, seed, alphas, ks)
    cov, se = covariance_with_stderr(data)
    report = CovarianceReport(model, n, paths)
    for i, (a, k) in enumerate(labels):
        for j, (a2, k2) in enumerate(labels):
            if j < i:
                continue
            report.entries.append(CovarianceEntry(a, k, a2, k2, float(cov[i, j]), float(se[i, j]),
                                                  predicted_covariance(model, k, k2, a, a2)))
    return report


# ---------------------------------------------------------------------------
# Gaussian-field representation of the covariance
# ---------------------------------------------------------------------------

def conditioned_gff_kernel(z: np.ndarray, w: np.ndarray, level_min: float) -> np.ndarray:
    """``-(1/2 pi) ln|(z-w)/(z-conj w)| - (min level / pi) Im(1/z) Im(1/w)``.

    The second term removes the projection onto constants; with it the
    integral of the field against any constant vanishes.
    """
    log_part = -np.log(np.abs((z - w) / (z - np.conj(w)))) / (2 * math.pi)
    return log_part - level_min / math.pi * (1 / z).imag * (1 / w).imag


def cgff_contour_integral(k: int, k2: int, alpha, alpha2, quadrature_nodes: int = 512) -> float:
    """``int int x(z)^k x(w)^{k'} G(z,w) dx(z) dx(w)`` over the upper half circles ``|z|^2 = alpha``, ``|w|^2 = alpha'``.

    Here ``x(z) = alpha/z + z = 2 Re z`` is the real coordinate attached to a
    point of the level circle.  Tensor Gauss--Legendre in the angles with
    ``N`` and ``N + 1`` nodes, so the two node sets never coincide and the
    integrable log singularity on the diagonal is never sampled.
    """
    if quadrature_nodes < 64:
        raise ValueError("use at least 64 quadrature nodes")
    a, a2 = float(alpha), float(alpha2)
    if not (0 < a <= 1 and 0 < a2 <= 1):
        raise ValueError("levels must lie in (0, 1]")
    t1, w1 = np.polynomial.legendre.leggauss(quadrature_nodes)
    t2, w2 = np.polynomial.legendre.leggauss(quadrature_nodes + 1)
    th1, th2 = (t1 + 1) * math.pi / 2, (t2 + 1) * math.pi / 2
    w1, w2 = w1 * math.pi / 2, w2 * math.pi / 2
    z = math.sqrt(a) * np.exp(1j * th1)
    w = math.sqrt(a2) * np.exp(1j * th2)
    fz = (2 * z.real) ** k * 2 * math.sqrt(a) * np.sin(th1) * w1
    fw = (2 * w.real) ** k2 * 2 * math.sqrt(a2) * np.sin(th2) * w2
    kernel = conditioned_gff_kernel(z[:, None], w[None, :], min(a, a2))
    return float(fz @ kernel @ fw)


def cgff_contour_covariance(k: int, k2: int, alpha, alpha2, quadrature_nodes: int = 512) -> float:
    """The contour integral in units of ``pi``; comparable with :func:`predicted_pcov` directly."""
    return cgff_contour_integral(k, k2, alpha, alpha2, quadrature_nodes) / math.pi


def projection_cross_term(k: int, k2: int, alpha, alpha2) -> Fraction:
    """``[z^-1 w^-1] (alpha/z + z)^k (alpha'/w + w)^{k'} (M/(M - zw)^2 - 1/M)`` with ``M = max``."""
    alpha, alpha2 = Fraction(alpha), Fraction(alpha2)
    top = max(alpha, alpha2)
    order = k + k2 + 2
    u = BivariateSeries({(1, 1): 1 / top})
    kernel = ((1 - u) ** 2).reciprocal(order).scale(1 / top) - Fraction(1) / top
    A = BivariateSeries.from_z(TruncatedSeries({-1: alpha, 1: 1}) ** k)
    B = BivariateSeries.from_w(TruncatedSeries({-1: alpha2, 1: 1}) ** k2)
    return (A * B * kernel).coefficient((-1, -1))


def projection_diagonal_term(alpha, alpha2) -> tuple[Fraction, Fraction]:
    """Both sides of the constant-mode identity: the ``M/(M - zw)^2`` residue and the ``1/M`` residue."""
    alpha, alpha2 = Fraction(alpha), Fraction(alpha2)
    top = max(alpha, alpha2)
    u = BivariateSeries({(1, 1): 1 / top})
    A = BivariateSeries.from_z(TruncatedSeries({-1: alpha, 1: 1}))
    B = BivariateSeries.from_w(TruncatedSeries({-1: alpha2, 1: 1}))
    lhs = (A * B * ((1 - u) ** 2).reciprocal(4).scale(1 / top)).coefficient((-1, -1))
    rhs = (A * B).scale(1 / top).coefficient((-1, -1))
    return lhs, rhs


PROJECTION_LEVELS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))


def conditioning_projection_check(kmax: int, levels: Sequence = PROJECTION_LEVELS) -> bool:
    """Exact check that subtracting the constant mode is an orthogonal projection for the Plancherel kernel.

    The cross term vanishes for every ``1 <= k <= kmax`` against a linear
    test function, and the constant-mode residues agree and equal
    ``min(alpha, alpha')``.
    """
    for a in levels:
        for a2 in levels:
            for k in range(1, kmax + 1):
                if projection_cross_term(k, 1, a, a2) != 0:
                    return False
            lhs, rhs = projection_diagonal_term(a, a2)
            if lhs != rhs or lhs != min(Fraction(a), Fraction(a2)):
                return False
    return True


# ---------------------------------------------------------------------------
# Limit shapes by Stieltjes inversion
# ---------------------------------------------------------------------------

def plancherel_stieltjes(alpha: float) -> Callable[[np.ndarray], np.ndarray]:
    """Stieltjes transform of the semicircle of variance ``alpha`` (upper-half-plane branch)."""
    r = 2 * math.sqrt(alpha)

    def C(z: np.ndarray) -> np.ndarray:
        return (z - np.sqrt(z - r) * np.sqrt(z + r)) / (2 * alpha)

    return C


def square_stieltjes(alpha: float) -> Callable[[np.ndarray], np.ndarray]:
    """Level line of the square shape: ``((2a-1) z + z sqrt(1 + (4a^2-4a)/z^2)) / (2a (z^2 - 1))``."""
    edge = math.sqrt(4 * alpha - 4 * alpha * alpha)

    def C(z: np.ndarray) -> np.ndarray:
        root = np.sqrt(z - edge) * np.sqrt(z + edge)
        return ((2 * alpha - 1) * z + root) / (2 * alpha * (z * z - 1))

    return C


def polynomial_stieltjes(c: Sequence, alpha: float) -> Callable[[np.ndarray], np.ndarray]:
    """Invert ``1/w + sum_i c_i alpha^i w^i = z`` by Newton iteration continued from ``z + 10i``."""
    coeffs = [float(ci) * alpha ** (i + 1) for i, ci in enumerate(c)]

    def K(w):
        return 1 / w + sum(ci * w ** (i + 1) for i, ci in enumerate(coeffs))

    def dK(w):
        return -1 / (w * w) + sum((i + 1) * ci * w**i for i, ci in enumerate(coeffs))

    def C(z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        start = z.real + 10.0j
        w = 1 / start
        for s in np.linspace(0, 1, 41)[1:]:
            target = start + (z - start) * s
            for _ in range(30):
                w = w - (K(w) - target) / dK(w)
        return w

    return C


def _stieltjes_for(model, alpha: float) -> Callable[[np.ndarray], np.ndarray]:
    if model == "plancherel":
        return plancherel_stieltjes(alpha)
    if model == "square":
        return square_stieltjes(alpha)
    if isinstance(model, TruncatedSeries):
        if model.prec is not None:
            raise ValueError("limit shapes need an exact (polynomial) F")
        top = max(e[0] for e in model.coeffs)
        return polynomial_stieltjes([model.coefficient((i,)) for i in range(top + 1)], alpha)
    if isinstance(model, (list, tuple)):
        return polynomial_stieltjes(model, alpha)
    raise ValueError(f"unknown limit-shape model {model!r}")


def profile_density(C: Callable[[np.ndarray], np.ndarray], x, eps: float = 1e-6) -> np.ndarray:
    """``(1/pi) Arg(z C(z))`` at ``z = x + i eps``, Richardson-extrapolated in ``eps``."""
    x = np.asarray(x, dtype=float)

    def at(e):
        z = x + 1j * e
        return np.angle(z * C(z)) / math.pi

    return 2 * at(eps / 2) - at(eps)


def limit_shape(model, alpha, x_grid: Sequence[float], support: float | None = None, resolution: int = 40000) -> np.ndarray:
    """Level-line profile ``omega(x) = |x| + 2 sigma(x)`` on ``x_grid``.

    ``sigma`` is the integral of the density ``(1/pi) Arg(z C(z))``; ``C`` is
    the Stieltjes transform of the level line's transition measure.
    ``model`` is ``"plancherel"``, ``"square"``, or an exact series ``F``
    (equivalently the list ``c_1, c_2, ...``).
    """
    alpha = float(alpha)
    C = _stieltjes_for(model, alpha)
    if support is None:
        support = 2.5 * max(1.0, math.sqrt(alpha)) + 1.0
    xs = np.linspace(-support, support, resolution + 1)
    # density of sigma is (omega' - sgn)/2; it vanishes outside the support
    density = profile_density(C, xs)
    sigma = np.concatenate([[0.0], np.cumsum((density[1:] + density[:-1]) / 2 * np.diff(xs))])
    grid = np.asarray(x_grid, dtype=float)
    inside = np.interp(grid, xs, sigma, left=0.0, right=float(sigma[-1]))
    return np.abs(grid) + 2 * inside


# ---------------------------------------------------------------------------
# Fluctuation field export
# ---------------------------------------------------------------------------

def height_array(path: GrowthPath) -> np.ndarray:
    """``H[t, x + n]`` for ``t = 0..n`` and contents ``x = -n..n`` (``n`` the path length)."""
    n = path.steps
    increments = np.zeros((n + 1, 2 * n + 1), dtype=np.int64)
    for t, (row, col) in enumerate(path.added_cells(), start=1):
        increments[t, col - row + n] += 1
    return np.cumsum(increments, axis=0)


def fluctuation_field(paths: Sequence[GrowthPath]) -> np.ndarray:
    """Height field of the first path minus the ensemble mean height field."""
    if not paths:
        raise ValueError("at least one path is required")
    n = paths[0].steps
    if any(p.steps != n for p in paths):
        raise ValueError("all paths must have the same length")
    total = np.zeros((n + 1, 2 * n + 1))
    for p in paths:
        total += height_array(p)
    return height_array(paths[0]) - total / len(paths)
