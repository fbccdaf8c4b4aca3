"""Truncated univariate power series with exact rational coefficients.

These feed the Riemann-Roch pushforward computation: the inverse Todd series
t/(e^t - 1), scaled exponentials e^{wt}, and the jet-bundle character sums
e^{wt} * sum_i e^{it}.  Coefficients beyond the truncation order are discarded
identically; operations never silently extend the order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeError, NonUnitSeriesError, VariableMismatchError
from .linalg import as_fraction


@dataclass(frozen=True)
class TruncatedSeries:
    variable: str
    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.order < 0:
            raise DegreeError("truncation order must be >= 0")
        if len(self.coeffs) != self.order + 1:
            raise DegreeError(f"need {self.order + 1} coefficients, got {len(self.coeffs)}")

    @classmethod
    def from_coeffs(cls, coeffs, variable: str = "t") -> "TruncatedSeries":
        cs = tuple(as_fraction(c) for c in coeffs)
        return cls(variable, len(cs) - 1, cs)

    @classmethod
    def one(cls, order: int, variable: str = "t") -> "TruncatedSeries":
        return cls(variable, order, (Fraction(1),) + (Fraction(0),) * order)

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k <= self.order else Fraction(0)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise DegreeError("cannot extend a truncated series")
        return TruncatedSeries(self.variable, order, self.coeffs[: order + 1])

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        _check_var(self, other)
        order = min(self.order, other.order)
        return TruncatedSeries(
            self.variable, order, tuple(self.coeffs[k] + other.coeffs[k] for k in range(order + 1))
        )

    def scale(self, c) -> "TruncatedSeries":
        c = as_fraction(c)
        return TruncatedSeries(self.variable, self.order, tuple(c * x for x in self.coeffs))

    def __str__(self):
        parts = [f"{c}*{self.variable}^{k}" for k, c in enumerate(self.coeffs) if c != 0]
        return " + ".join(parts) if parts else "0"


def _check_var(a: TruncatedSeries, b: TruncatedSeries):
    if a.variable != b.variable:
        raise VariableMismatchError(f"cannot combine series in {a.variable!r} and {b.variable!r}")


def exp_scaled(w, order: int, variable: str = "t") -> TruncatedSeries:
    """e^{w t} = sum_k (w t)^k / k!  truncated at `order`."""
    w = as_fraction(w)
    return TruncatedSeries(
        variable, order, tuple(w**k / math.factorial(k) for k in range(order + 1))
    )


def todd_inverse(order: int, variable: str = "t") -> TruncatedSeries:
    """t/(e^t - 1), the inverse Todd series: 1 - t/2 + t^2/12 + 0 t^3 - t^4/720 ...

    Computed by inverting (e^t - 1)/t = sum_k t^k/(k+1)!, so no Bernoulli
    table is needed and any order is supported.
    """
    denom = TruncatedSeries(
        variable, order, tuple(Fraction(1, math.factorial(k + 1)) for k in range(order + 1))
    )
    return series_inverse(denom)


def jet_sum(n: int, w, order: int, variable: str = "t") -> TruncatedSeries:
    """e^{wt} * sum_{i=0}^{n} e^{it}: Chern character of a weight-w jet sum."""
    if n < 0:
        raise DegreeError("jet order must be >= 0")
    total = TruncatedSeries(variable, order, (Fraction(0),) * (order + 1))
    for i in range(n + 1):
        total = total + exp_scaled(i, order, variable)
    return series_mul(exp_scaled(w, order, variable), total)


_NAMED = {"exp_scaled", "todd_inverse", "jet_sum"}


def series_named(kind: str, order: int, *, w=None, n: int | None = None) -> TruncatedSeries:
    """Dispatch on a named series kind: exp_scaled(w), todd_inverse, jet_sum(n, w)."""
    if order < 0:
        raise DegreeError("order must be >= 0")
    if kind == "exp_scaled":
        if w is None:
            raise ValueError("exp_scaled needs the weight w")
        return exp_scaled(w, order)
    if kind == "todd_inverse":
        return todd_inverse(order)
    if kind == "jet_sum":
        if n is None or w is None:
            raise ValueError("jet_sum needs n and w")
        return jet_sum(n, w, order)
    raise ValueError(f"unknown series kind {kind!r}; expected one of {sorted(_NAMED)}")


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at min(a.order, b.order)."""
    _check_var(a, b)
    order = min(a.order, b.order)
    coeffs = [Fraction(0)] * (order + 1)
    for i in range(order + 1):
        if a.coeffs[i] == 0:
            continue
        for j in range(order + 1 - i):
            coeffs[i + j] += a.coeffs[i] * b.coeffs[j]
    return TruncatedSeries(a.variable, order, tuple(coeffs))


def series_inverse(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse: series_mul(a, result) = 1 up to the truncation order."""
    if a.coeffs[0] == 0:
        raise NonUnitSeriesError("cannot invert a series with zero constant term")
    inv0 = 1 / a.coeffs[0]
    coeffs = [inv0] + [Fraction(0)] * a.order
    for m in range(1, a.order + 1):
        acc = Fraction(0)
        for k in range(1, m + 1):
            acc += a.coeff(k) * coeffs[m - k]
        coeffs[m] = -inv0 * acc
    return TruncatedSeries(a.variable, a.order, tuple(coeffs))
