"""Fuss-Catalan numbers and truncated integer power series.

The dimension counts of all three models are governed by the Fuss-Catalan
numbers d(m, n) = C((m+1)n, n) / (mn+1), whose generating series f satisfies
the algebraic fixed-point equation f = x (1+f)^(m+1).  This module computes
those series exactly (integer coefficients, truncated at a fixed order) and
verifies the substitution identities relating the series for different m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .reporting import CheckReport


def fuss_catalan(m: int, n: int) -> int:
    """d(m, n) = C((m+1)n, n) / (mn + 1), always an integer."""
    if m < 1 or n < 1:
        raise ValueError("fuss_catalan requires m, n >= 1")
    q, r = divmod(math.comb((m + 1) * n, n), m * n + 1)
    assert r == 0
    return q


@dataclass(frozen=True)
class TruncatedSeries:
    """Integer power series truncated at x^order.

    ``coeffs`` stores c_0 .. c_order; arithmetic silently discards terms
    beyond the truncation order and is exact below it.
    """

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise ValueError("coefficient count must be order + 1")

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls(order, (0,) * (order + 1))

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls(order, (1,) + (0,) * order)

    @classmethod
    def x(cls, order: int) -> "TruncatedSeries":
        if order < 1:
            raise ValueError("order must be >= 1")
        return cls(order, (0, 1) + (0,) * (order - 1))

    @classmethod
    def from_coeffs(cls, order: int, coeffs) -> "TruncatedSeries":
        data = list(coeffs)[: order + 1]
        data += [0] * (order + 1 - len(data))
        return cls(order, tuple(data))

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = min(self.order, other.order)
        return TruncatedSeries(
            order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = min(self.order, other.order)
        return TruncatedSeries(
            order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = min(self.order, other.order)
        out = [0] * (order + 1)
        for i, a in enumerate(self.coeffs[: order + 1]):
            if not a:
                continue
            for j in range(order + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return TruncatedSeries(order, tuple(out))

    def pow(self, exponent: int) -> "TruncatedSeries":
        if exponent < 0:
            raise ValueError("negative power")
        result = TruncatedSeries.one(self.order)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift_mul_x(self) -> "TruncatedSeries":
        return TruncatedSeries(self.order, (0,) + self.coeffs[:-1])

    def inverse_unit(self) -> "TruncatedSeries":
        """Multiplicative inverse; constant term must be 1 or -1."""
        c0 = self.coeffs[0]
        if c0 not in (1, -1):
            raise ValueError("inverse requires unit constant term")
        inv = [c0] + [0] * self.order
        for n in range(1, self.order + 1):
            acc = sum(self.coeffs[k] * inv[n - k] for k in range(1, n + 1))
            inv[n] = -c0 * acc
        return TruncatedSeries(self.order, tuple(inv))

    def valuation_ge(self, v: int) -> bool:
        return all(c == 0 for c in self.coeffs[: min(v, self.order + 1)])


def series_compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """f(g(x)) truncated at the common order; g must have zero constant term."""
    if g.coeffs[0] != 0:
        raise ValueError("composition requires g(0) = 0")
    order = min(f.order, g.order)
    result = TruncatedSeries.zero(order)
    g_trunc = TruncatedSeries.from_coeffs(order, g.coeffs)
    power = TruncatedSeries.one(order)
    for k, c in enumerate(f.coeffs[: order + 1]):
        if c:
            result = result + power * TruncatedSeries.from_coeffs(order, (c,))
        if k < order:
            power = power * g_trunc
    return result


def series_solve_free(m: int, order: int) -> TruncatedSeries:
    """Unique series f with f(0)=0 and f = x (1+f)^(m+1), to x^order.

    Fixed-point iteration gains one correct coefficient per round, so
    ``order`` rounds suffice.  The coefficient of x^n is fuss_catalan(m, n).
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    one = TruncatedSeries.one(order)
    f = TruncatedSeries.zero(order)
    for _ in range(order):
        f = ((one + f).pow(m + 1)).shift_mul_x()
    return f


def geometric_inverse(m: int, order: int) -> TruncatedSeries:
    """The compositional inverse g(x) = x / (1+x)^(m+1) of the free series."""
    one_plus_x = TruncatedSeries.from_coeffs(order, (1, 1))
    return (one_plus_x.pow(m + 1)).inverse_unit().shift_mul_x()


def check_lemform(m: int, k: int, order: int) -> CheckReport:
    """Verify d_k(x * (1 + d_m(x))^(m-k)) = d_m(x) up to x^order."""
    report = CheckReport(name=f"series substitution m={m} k={k} order={order}")
    if not 0 <= k <= m:
        raise ValueError("need 0 <= k <= m")
    d_m = series_solve_free(m, order)
    d_k = d_m if k == m else series_solve_free(k, order)
    one = TruncatedSeries.one(order)
    inner = ((one + d_m).pow(m - k)).shift_mul_x()
    lhs = series_compose(d_k, inner)
    report.checks += order
    if lhs != d_m:
        report.fail(f"substitution identity fails: {lhs.coeffs} != {d_m.coeffs}")
    return report


def check_series_identities(max_m: int, order: int = 10) -> CheckReport:
    """All series-level identities: fixed point, substitution, inverses."""
    report = CheckReport(name=f"series identities m<={max_m} order={order}")
    one = TruncatedSeries.one(order)
    x = TruncatedSeries.x(order)
    for m in range(1, max_m + 1):
        f = series_solve_free(m, order)
        report.checks += order
        if f != ((one + f).pow(m + 1)).shift_mul_x():
            report.fail(f"fixed point fails for m={m}")
        for n in range(1, order + 1):
            report.checks += 1
            if f.coeffs[n] != fuss_catalan(m, n):
                report.fail(f"coefficient {n} of f_{m} is not fuss_catalan({m},{n})")
        g = geometric_inverse(m, order)
        report.checks += order
        if series_compose(f, g) != x:
            report.fail(f"d_{m}(g_{m}(x)) != x")
        report.checks += order
        if TruncatedSeries.from_coeffs(order, (1, 1)) * g != geometric_inverse(m - 1, order):
            report.fail(f"(1+x) g_{m} != g_{m-1}")
        for k in range(0, m + 1):
            report.merge(check_lemform(m, k, order))
    return report
