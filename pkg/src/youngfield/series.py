"""Exact truncated Laurent series in one or two variables, and the limit formulas built on them.

A series stores finitely many exact rational coefficients together with a
precision ``prec``: every monomial whose *total degree* is at least ``prec``
is unknown.  ``prec=None`` marks an exact (finite) expression.  Arithmetic
propagates precision conservatively -- for a product the unknown part starts
at ``min(prec_A + low_B, prec_B + low_A)`` -- so asking for a coefficient the
inputs cannot determine raises :class:`TruncationError` instead of returning
a silently wrong number.

The second half of the module evaluates the moment and covariance formulas
of the random-partition limit theory (law of large numbers, central limit
theorem, multilevel and diagram-coordinate versions) by coefficient
extraction, and converts between moments and free cumulants.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Mapping, Sequence

Rational = Fraction
Exponent = tuple


class TruncationError(ArithmeticError):
    """A requested coefficient lies beyond the known part of a truncated series."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _min_prec(*values):
    known = [v for v in values if v is not None]
    return min(known) if known else None


class GradedSeries:
    """Sparse Laurent series in ``nvars`` variables graded by total degree."""

    __slots__ = ("nvars", "coeffs", "prec")

    def __init__(self, nvars: int, coeffs: Mapping[tuple, object] | None = None, prec: int | None = None):
        self.nvars = nvars
        self.prec = prec
        self.coeffs: dict[tuple, Fraction] = {}
        for exp, value in (coeffs or {}).items():
            exp = tuple(exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} does not have {nvars} entries")
            value = _frac(value)
            if value and (prec is None or sum(exp) < prec):
                self.coeffs[exp] = value

    # -- construction helpers -------------------------------------------------
    def _new(self, coeffs: dict, prec: int | None):
        out = object.__new__(type(self))
        out.nvars = self.nvars
        out.prec = prec
        out.coeffs = {e: v for e, v in coeffs.items() if v and (prec is None or sum(e) < prec)}
        return out

    def zero(self, prec: int | None = None):
        return self._new({}, prec)

    def one(self):
        return self._new({(0,) * self.nvars: Fraction(1)}, None)

    # -- inspection -------------------------------------------------------------
    def low(self) -> int | None:
        """Lowest total degree with a nonzero known coefficient (``None`` for zero)."""
        if not self.coeffs:
            return None
        return min(sum(e) for e in self.coeffs)

    def _low_bound(self) -> float | int:
        low = self.low()
        if low is None:
            return self.prec if self.prec is not None else float("inf")
        return low

    def coefficient(self, exp: tuple) -> Fraction:
        exp = tuple(exp)
        if self.prec is not None and sum(exp) >= self.prec:
            raise TruncationError(
                f"coefficient of total degree {sum(exp)} requested but series is only known below degree {self.prec}"
            )
        return self.coeffs.get(exp, Fraction(0))

    def truncate(self, prec: int):
        """Forget every term of total degree ``>= prec``."""
        return self._new(self.coeffs, _min_prec(self.prec, prec))

    def is_exact(self) -> bool:
        return self.prec is None

    # -- arithmetic ---------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, GradedSeries):
            if other.nvars != self.nvars:
                raise ValueError("series have different numbers of variables")
            return other
        return self._new({(0,) * self.nvars: _frac(other)}, None)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.coeffs)
        for e, v in other.coeffs.items():
            out[e] = out.get(e, 0) + v
        return self._new(out, _min_prec(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -v for e, v in self.coeffs.items()}, self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, factor) -> "GradedSeries":
        factor = _frac(factor)
        return self._new({e: v * factor for e, v in self.coeffs.items()}, self.prec)

    def __mul__(self, other):
        if not isinstance(other, GradedSeries):
            return self.scale(other)
        other = self._coerce(other)
        candidates = []
        if self.prec is not None:
            candidates.append(self.prec + other._low_bound())
        if other.prec is not None:
            candidates.append(other.prec + self._low_bound())
        prec = None
        if candidates:
            bound = min(candidates)
            prec = None if bound == float("inf") else int(bound)
        out: dict[tuple, Fraction] = {}
        for e1, v1 in self.coeffs.items():
            s1 = sum(e1)
            for e2, v2 in other.coeffs.items():
                if prec is not None and s1 + sum(e2) >= prec:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + v1 * v2
        return self._new(out, prec)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            return self.reciprocal() ** (-k)
        result = self.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return self.nvars == other.nvars and self.prec == other.prec and self.coeffs == other.coeffs

    def __hash__(self):  # pragma: no cover - series are mutable-looking; hash by content
        return hash((self.nvars, self.prec, frozenset(self.coeffs.items())))

    def shift(self, exp: tuple) -> "GradedSeries":
        """Multiply by the monomial with exponent ``exp``."""
        d = sum(exp)
        return self._new(
            {tuple(a + b for a, b in zip(e, exp)): v for e, v in self.coeffs.items()},
            None if self.prec is None else self.prec + d,
        )

    def derivative(self, var: int) -> "GradedSeries":
        out = {}
        for e, v in self.coeffs.items():
            if e[var]:
                ne = list(e)
                ne[var] -= 1
                out[tuple(ne)] = v * e[var]
        return self._new(out, None if self.prec is None else self.prec - 1)

    # -- transcendental operations on power series ------------------------------
    def _split_constant(self) -> tuple[Fraction, "GradedSeries"]:
        if any(sum(e) < 0 or min(e) < 0 for e in self.coeffs):
            raise ValueError("operation requires a power series (no negative exponents)")
        const = self.coeffs.get((0,) * self.nvars, Fraction(0))
        rest = self._new({e: v for e, v in self.coeffs.items() if sum(e) > 0}, self.prec)
        return const, rest

    def _require_prec(self, order: int | None) -> int:
        prec = _min_prec(self.prec, order)
        if prec is None:
            raise ValueError("an explicit order is needed to expand an exact series into an infinite one")
        return prec

    def log(self, order: int | None = None) -> "GradedSeries":
        """``ln`` of a power series with constant term 1."""
        const, rest = self._split_constant()
        if const != 1:
            raise ValueError("log requires constant term 1")
        prec = self._require_prec(order)
        rest = rest.truncate(prec)
        total = self.zero(prec)
        power = self.one().truncate(prec)
        m = 1
        while m < prec:
            power = power * rest
            if not power.coeffs:
                break
            total = total + power.scale(Fraction((-1) ** (m + 1), m))
            m += 1
        return total

    def exp(self, order: int | None = None) -> "GradedSeries":
        """``exp`` of a power series with zero constant term."""
        const, rest = self._split_constant()
        if const != 0:
            raise ValueError("exp requires zero constant term")
        prec = self._require_prec(order)
        rest = rest.truncate(prec)
        total = self.one().truncate(prec)
        power = self.one().truncate(prec)
        m = 1
        while m < prec:
            power = power * rest.scale(Fraction(1, m))
            if not power.coeffs:
                break
            total = total + power
            m += 1
        return total

    def reciprocal(self, order: int | None = None) -> "GradedSeries":
        """``1/s`` for a power series with nonzero constant term."""
        const, rest = self._split_constant()
        if const == 0:
            raise ZeroDivisionError("reciprocal requires a nonzero constant term")
        if not rest.coeffs and rest.prec is None:
            return self._new({(0,) * self.nvars: 1 / const}, None)
        prec = self._require_prec(order)
        t = rest.scale(-1 / const).truncate(prec)
        total = self.one().truncate(prec)
        power = self.one().truncate(prec)
        for _ in range(prec):
            power = power * t
            if not power.coeffs:
                break
            total = total + power
        return total.scale(1 / const)

    def sqrt_one_plus(self, order: int | None = None) -> "GradedSeries":
        """``(1 + s)^{1/2}`` by the binomial series, for ``s`` without constant term."""
        const, rest = self._split_constant()
        if const != 0:
            raise ValueError("argument must have zero constant term")
        prec = self._require_prec(order)
        rest = rest.truncate(prec)
        total = self.one().truncate(prec)
        power = self.one().truncate(prec)
        coef = Fraction(1)
        m = 0
        while m < prec:
            coef = coef * (Fraction(1, 2) - m) / (m + 1)
            m += 1
            power = power * rest
            if not power.coeffs:
                break
            total = total + power.scale(coef)
        return total

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "prec": self.prec,
            "coeffs": [[list(e), f"{v.numerator}/{v.denominator}"] for e, v in sorted(self.coeffs.items())],
        }


class TruncatedSeries(GradedSeries):
    """Univariate truncated Laurent series; exponents are plain integers."""

    __slots__ = ()

    def __init__(self, coeffs: Mapping[int, object] | Sequence | None = None, prec: int | None = None, start: int = 0):
        if coeffs is None:
            coeffs = {}
        if not isinstance(coeffs, Mapping):
            coeffs = {start + i: c for i, c in enumerate(coeffs)}
        super().__init__(1, {(e,): v for e, v in coeffs.items()}, prec)

    @classmethod
    def monomial(cls, exp: int, coeff=1) -> "TruncatedSeries":
        return cls({exp: coeff})

    def __getitem__(self, exp: int) -> Fraction:
        return self.coefficient((exp,))

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """``self(inner(t))`` for a power series ``self`` and ``inner`` with zero constant term."""
        const, _ = inner._split_constant()
        if const != 0:
            raise ValueError("inner series must have zero constant term")
        if any(e[0] < 0 for e in self.coeffs):
            raise ValueError("outer series must be a power series")
        top = max((e[0] for e in self.coeffs), default=0)
        result = inner.zero(None)
        for exp in range(top, -1, -1):  # Horner
            result = result * inner + self.coeffs.get((exp,), Fraction(0))
        if self.prec is not None:
            # unknown terms start at inner^prec, whose degree is at least prec
            bound = self.prec * (inner.low() or 1)
            result = result.truncate(bound)
        return result

    def reversion(self) -> "TruncatedSeries":
        """Compositional inverse of ``t + O(t^2)``: returns ``H`` with ``self(H(t)) = t``."""
        if self.coefficient((0,)) != 0 or self.coefficient((1,)) != 1:
            raise ValueError("reversion requires the form t + O(t^2)")
        prec = self._require_prec(None)
        g = self - TruncatedSeries({1: 1})
        h = TruncatedSeries({1: 1}, prec=prec)
        for _ in range(prec):
            nxt = (TruncatedSeries({1: 1}) - g.compose(h)).truncate(prec)
            if nxt == h:
                break
            h = nxt
        return h


class BivariateSeries(GradedSeries):
    """Truncated Laurent series in ``(z, w)``, graded by total degree."""

    __slots__ = ()

    def __init__(self, coeffs: Mapping[tuple[int, int], object] | None = None, prec: int | None = None):
        super().__init__(2, coeffs or {}, prec)

    @classmethod
    def from_z(cls, s: TruncatedSeries) -> "BivariateSeries":
        return cls({(e[0], 0): v for e, v in s.coeffs.items()}, s.prec)

    @classmethod
    def from_w(cls, s: TruncatedSeries) -> "BivariateSeries":
        return cls({(0, e[0]): v for e, v in s.coeffs.items()}, s.prec)

    def __getitem__(self, exp: tuple[int, int]) -> Fraction:
        return self.coefficient(exp)

    def dz(self) -> "BivariateSeries":
        return self.derivative(0)

    def dw(self) -> "BivariateSeries":
        return self.derivative(1)


# ---------------------------------------------------------------------------
# Limit data and model-specific F, Q
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LimitData:
    """Free-cumulant data ``c_1, c_2, ...`` and second-order data ``d_{i,j}``.

    ``c[0]`` is ``c_1`` and must equal 1.  When ``exact`` is true the listed
    coefficients are the complete (finite) expansion -- e.g. ``c = (1,)`` for
    the Plancherel measure; otherwise coefficients beyond the list are
    unknown and extractions needing them raise :class:`TruncationError`.
    ``d`` maps 1-based ``(i, j)`` to ``d_{i,j}`` and is always treated as
    exact (missing entries are zero).
    """

    c: tuple[Fraction, ...]
    d: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)
    exact: bool = False

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(_frac(x) for x in self.c))
        object.__setattr__(self, "d", {tuple(k): _frac(v) for k, v in dict(self.d).items() if v})
        if not self.c or self.c[0] != 1:
            raise ValueError("c_1 must equal 1")
        for (i, j), v in self.d.items():
            if i == 1 or j == 1:
                raise ValueError("d_{i,j} must vanish when i = 1 or j = 1")
            if self.d.get((j, i), 0) != v:
                raise ValueError("d must be symmetric")

    def zF(self) -> TruncatedSeries:
        """``z F(z) = sum_i c_i z^i``."""
        return TruncatedSeries({i + 1: c for i, c in enumerate(self.c)}, prec=None if self.exact else len(self.c) + 1)

    def Q(self) -> BivariateSeries:
        return BivariateSeries(dict(self.d))

    def to_json(self) -> dict:
        return {
            "c": [f"{x.numerator}/{x.denominator}" for x in self.c],
            "d": [[i, j, f"{v.numerator}/{v.denominator}"] for (i, j), v in sorted(self.d.items())],
            "exact": self.exact,
        }


PLANCHEREL = LimitData(c=(1,), exact=True)


def plancherel_limit() -> LimitData:
    return PLANCHEREL


def schur_weyl_limit(c_param, order: int) -> LimitData:
    """Schur--Weyl with ``n / D^2 -> c^2``: free cumulants ``c_i = c^{i-1}``."""
    c_param = _frac(c_param)
    return LimitData(c=tuple(c_param ** (i - 1) for i in range(1, order + 1)))


def thoma_F(alpha_atoms: Iterable[tuple], beta_atoms: Iterable[tuple], order: int) -> TruncatedSeries:
    """Series ``F`` of a Thoma-type limit given atomic measures ``A`` and ``B``.

    ``alpha_atoms``/``beta_atoms`` are ``(location, weight)`` pairs; the
    coefficients are ``c_1 = 1`` and
    ``c_k = int x^{k+1} dA + (-1)^{k+1} int x^{k+1} dB`` for ``k >= 2``.
    Returns ``F(z) = sum_{k=1}^{order} c_k z^{k-1}`` truncated after ``order`` terms.
    """
    alpha_atoms = [(_frac(x), _frac(w)) for x, w in alpha_atoms]
    beta_atoms = [(_frac(x), _frac(w)) for x, w in beta_atoms]
    coeffs = {0: Fraction(1)}
    for k in range(2, order + 1):
        a = sum((w * x ** (k + 1) for x, w in alpha_atoms), Fraction(0))
        b = sum((w * x ** (k + 1) for x, w in beta_atoms), Fraction(0))
        coeffs[k - 1] = a + (-1) ** (k + 1) * b
    exact = all(v == 0 for k, v in coeffs.items() if k > 0) and not alpha_atoms and not beta_atoms
    return TruncatedSeries(coeffs, prec=None if exact else order)


def limit_from_F(F: TruncatedSeries) -> LimitData:
    top = max((e[0] for e in F.coeffs), default=0)
    length = top + 1 if F.prec is None else F.prec
    return LimitData(c=tuple(F.coefficient((i,)) for i in range(length)), exact=F.prec is None)


def thoma_limit(alpha_atoms, beta_atoms, order: int) -> LimitData:
    return limit_from_F(thoma_F(alpha_atoms, beta_atoms, order))


# ---------------------------------------------------------------------------
# Free cumulants
# ---------------------------------------------------------------------------

def free_cumulants_from_moments(moments: Sequence, K: int | None = None) -> list[Fraction]:
    """Coefficients ``c_1..c_K`` of ``zF(z) = C^{-1}(z) - 1/z``.

    ``moments`` are ``m_0 = 1, m_1, m_2, ...`` (a plain sequence or an object
    with a ``values`` attribute).  With ``G(u) = sum_k m_k u^{k+1}`` we have
    ``C(z) = G(1/z)``; reverting ``G`` to ``H`` gives ``C^{-1} = 1/H``.
    ``m_1`` must vanish because ``c_0`` (the coefficient of ``z^0``) is not
    representable.  ``K`` defaults to ``len(moments) - 2``.
    """
    values = [_frac(v) for v in getattr(moments, "values", moments)]
    if not values or values[0] != 1:
        raise ValueError("m_0 must equal 1")
    if len(values) > 1 and values[1] != 0:
        raise ValueError("m_1 must vanish (centered measure)")
    available = len(values) - 2
    if K is None:
        K = available
    if K > available:
        raise TruncationError(f"free cumulant c_{K} needs moments up to m_{K + 1}")
    G = TruncatedSeries({k + 1: m for k, m in enumerate(values)}, prec=len(values) + 1)
    H = G.reversion()
    # 1/H(t) = t^{-1} / (H(t)/t)
    ratio = TruncatedSeries({e[0] - 1: v for e, v in H.coeffs.items()}, prec=H.prec - 1)
    inv = ratio.reciprocal()
    return [inv.coefficient((i + 1,)) for i in range(1, K + 1)]


def moments_from_free_cumulants(c: Sequence, K: int) -> list[Fraction]:
    """Inverse of :func:`free_cumulants_from_moments`: moments ``m_0..m_K``.

    Builds ``K(t) = 1/t + sum_i c_i t^i``; its reversion in ``u = 1/z``
    recovers ``G(u) = sum_k m_k u^{k+1}``.
    """
    c = [_frac(x) for x in c]
    if len(c) < K - 1:
        raise TruncationError(f"moment m_{K} needs free cumulants up to c_{K - 1}")
    # H(t) = 1/K(t) = t / (1 + sum_i c_i t^{i+1})
    denom = TruncatedSeries({0: 1, **{i + 2: ci for i, ci in enumerate(c)}}, prec=K + 2)
    H = denom.reciprocal().shift((1,))
    G = H.reversion()
    return [G.coefficient((k + 1,)) for k in range(K + 1)]


def nc_moments_from_free_cumulants(kappa: Sequence, K: int) -> list[Fraction]:
    """Moments from free cumulants ``kappa_1, kappa_2, ...`` by the non-crossing moment-cumulant formula."""
    from .lattice import enumerate_noncrossing  # local import: lattice is heavier

    kappa = [_frac(x) for x in kappa]
    out = [Fraction(1)]
    for k in range(1, K + 1):
        total = Fraction(0)
        for pi in enumerate_noncrossing(k):
            term = Fraction(1)
            for block in pi:
                if len(block) > len(kappa):
                    raise TruncationError("not enough free cumulants")
                term *= kappa[len(block) - 1]
            total += term
        out.append(total)
    return out


# ---------------------------------------------------------------------------
# Coefficient-extraction formulas
# ---------------------------------------------------------------------------

def _check_alpha(alpha) -> Fraction:
    alpha = _frac(alpha)
    if not 0 < alpha <= 1:
        raise ValueError(f"level alpha must lie in (0, 1], got {alpha}")
    return alpha


def _level_base(data: LimitData, alpha: Fraction) -> TruncatedSeries:
    """``alpha / z + z F(z)``."""
    return TruncatedSeries({-1: alpha}) + data.zF()


def _extract_minus_one(s: GradedSeries) -> Fraction:
    return s.coefficient((-1,) * s.nvars)


def lln_moments(data: LimitData, kmax: int) -> list[Fraction]:
    """``a_k = [z^-1] (z^-1 + z F)^{k+1} / (k+1)`` for ``k = 0..kmax``."""
    return multilevel_moments(data, 1, kmax)


def multilevel_moments(data: LimitData, alpha, kmax: int) -> list[Fraction]:
    """``a_k^alpha = [z^-1] alpha^{-1} (alpha/z + z F)^{k+1} / (k+1)``."""
    alpha = _check_alpha(alpha)
    base = _level_base(data, alpha)
    out = []
    power = base
    for k in range(kmax + 1):
        out.append(_extract_minus_one(power) / (alpha * (k + 1)))
        power = power * base
    return out


def _cross_kernel(data: LimitData, top: Fraction, order: int) -> tuple[BivariateSeries, BivariateSeries]:
    """``(zw F(z) F(w) / top, ln(1 - P / top))`` with ``P = sum_{p,q>=1} c_{p+q-1} z^p w^q``.

    ``P`` equals ``zw (zF(z) - wF(w)) / (z - w)`` with the division carried
    out exactly.  Both outputs are truncated below total degree ``order``.
    """
    zF = data.zF()
    FF = (BivariateSeries.from_z(zF) * BivariateSeries.from_w(zF)).scale(1 / top)
    coeffs = {}
    for m, cm in enumerate(data.c, start=1):
        for p in range(1, m + 1):
            coeffs[(p, m + 1 - p)] = cm
    P = BivariateSeries(coeffs, prec=None if data.exact else len(data.c) + 2)
    log_term = (1 - P.scale(1 / top)).log(order)
    return FF.truncate(order), log_term


def _pair_factor(data: LimitData, alpha, beta, k: int, k2: int) -> BivariateSeries:
    return BivariateSeries.from_z(_level_base(data, alpha) ** k) * BivariateSeries.from_w(_level_base(data, beta) ** k2)


def multilevel_covariance(data: LimitData, alpha, alpha2, kmax: int, kmax2: int | None = None) -> list[list[Fraction]]:
    """``b^{alpha,alpha'}_{k,k'}`` for ``0 <= k, k' <= kmax``.

    ``[z^-1 w^-1] (alpha alpha')^{-1} (alpha/z + zF)^k (alpha'/w + wF)^{k'}
    (Q - zw d_z d_w (zw F F / M + ln(1 - P/M)))`` with ``M = max(alpha, alpha')``.
    """
    alpha, alpha2 = _check_alpha(alpha), _check_alpha(alpha2)
    kmax2 = kmax if kmax2 is None else kmax2
    top = max(alpha, alpha2)
    order = kmax + kmax2 + 1
    FF, log_term = _cross_kernel(data, top, order)
    inner = (FF + log_term).dz().dw().shift((1, 1))
    kernel = data.Q() - inner
    out = [[Fraction(0)] * (kmax2 + 1) for _ in range(kmax + 1)]
    for k in range(kmax + 1):
        for k2 in range(kmax2 + 1):
            value = _extract_minus_one(_pair_factor(data, alpha, alpha2, k, k2) * kernel)
            out[k][k2] = value / (alpha * alpha2)
    return out


def clt_covariance(data: LimitData, kmax: int) -> list[list[Fraction]]:
    """``b_{k,k'}``: the one-level covariance, i.e. the multilevel one at ``alpha = alpha' = 1``."""
    return multilevel_covariance(data, 1, 1, kmax)


def diagram_statistics(data: LimitData, alpha, alpha2, kmax: int) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Limit mean and covariance of the profile moments ``int t^k dsigma``.

    Mean: ``-[z^-1] (alpha/z + zF)^{k+1} / ((k+1) z)``.  Covariance:
    ``[z^-1 w^-1] (alpha/z + zF)^k (alpha'/w + wF)^{k'} (Q/(zw) - d_z d_w (zw F F / M + ln(1 - P/M)))``.
    The returned means are for level ``alpha``.
    """
    alpha, alpha2 = _check_alpha(alpha), _check_alpha(alpha2)
    base = _level_base(data, alpha)
    means = []
    power = base
    for k in range(kmax + 1):
        means.append(-power.coefficient((0,)) / (k + 1))
        power = power * base
    top = max(alpha, alpha2)
    order = 2 * kmax + 1
    FF, log_term = _cross_kernel(data, top, order)
    kernel = data.Q().shift((-1, -1)) - (FF + log_term).dz().dw()
    cov = [[Fraction(0)] * (kmax + 1) for _ in range(kmax + 1)]
    for k in range(kmax + 1):
        for k2 in range(kmax + 1):
            cov[k][k2] = _extract_minus_one(_pair_factor(data, alpha, alpha2, k, k2) * kernel)
    return means, cov


def kerov_transition_covariance(k: int, k2: int) -> int:
    """``sum_{i>=2} i C(k,(k-i-1)/2) C(k',(k'-i-1)/2)`` (half-integers give zero)."""
    total = 0
    for i in range(2, max(k, k2) + 2):
        if (k - i - 1) % 2 == 0 and (k2 - i - 1) % 2 == 0 and k - i - 1 >= 0 and k2 - i - 1 >= 0:
            total += i * comb(k, (k - i - 1) // 2) * comb(k2, (k2 - i - 1) // 2)
    return total


def kerov_diagram_covariance(k: int, k2: int) -> int:
    """``sum_{i>=2} i C(k,(k-i)/2) C(k',(k'-i)/2)`` (half-integers give zero)."""
    total = 0
    for i in range(2, max(k, k2) + 1):
        if (k - i) % 2 == 0 and (k2 - i) % 2 == 0 and k >= i and k2 >= i:
            total += i * comb(k, (k - i) // 2) * comb(k2, (k2 - i) // 2)
    return total


def catalan(m: int) -> int:
    return comb(2 * m, m) // (m + 1)


def semicircle_moment(k: int) -> int:
    return catalan(k // 2) if k % 2 == 0 else 0


def square_level_moments(alpha, kmax: int) -> list[Fraction]:
    """Moments of the measure whose Stieltjes transform is
    ``C_alpha(z) = ((2 alpha - 1) z + z sqrt(1 + (4 alpha^2 - 4 alpha)/z^2)) / (2 alpha (z^2 - 1))``.

    Expanded in ``v = 1/z`` with the square root as an exact binomial series.
    """
    alpha = _check_alpha(alpha)
    order = kmax + 3
    v2 = TruncatedSeries({2: 4 * alpha * alpha - 4 * alpha})
    root = v2.sqrt_one_plus(order)
    numerator = (root + (2 * alpha - 1)).shift((1,)).scale(1 / (2 * alpha))
    geometric = TruncatedSeries({0: 1, 2: -1}).reciprocal(order)
    C = (numerator * geometric).truncate(order)
    return [C.coefficient((k + 1,)) for k in range(kmax + 1)]


def bernoulli_limit(order: int) -> LimitData:
    """Free cumulants of ``(delta_{-1} + delta_{+1}) / 2`` -- the transition measure of the unit square."""
    moments = [Fraction(1 if k % 2 == 0 else 0) for k in range(order + 2)]
    return LimitData(c=tuple(free_cumulants_from_moments(moments, order)))


def predicted_pcov(k: int, k2: int, alpha, alpha2) -> Fraction:
    """Plancherel profile-moment covariance as a rational multiple of pi.

    ``[z^-1 w^-1] (alpha/z + z)^{k+1}/(k+1) (alpha'/w + w)^{k'+1}/(k'+1)
    (-d_z d_w (zw/M + ln(1 - zw/M)))``; the true covariance is ``pi`` times
    the returned value.
    """
    alpha, alpha2 = _check_alpha(alpha), _check_alpha(alpha2)
    top = max(alpha, alpha2)
    order = k + k2 + 3
    zw = BivariateSeries({(1, 1): 1 / top})
    kernel = -((zw + (1 - zw).log(order)).dz().dw())
    A = TruncatedSeries({-1: alpha, 1: 1}) ** (k + 1)
    B = TruncatedSeries({-1: alpha2, 1: 1}) ** (k2 + 1)
    product = BivariateSeries.from_z(A) * BivariateSeries.from_w(B) * kernel
    return _extract_minus_one(product) / ((k + 1) * (k2 + 1))
