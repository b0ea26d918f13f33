"""Exact truncated exponential generating functions.

A ``TruncatedSeries`` of order ``N`` stores ``a_0..a_N`` as ``Fraction``;
``count(n) = n! a_n`` is the number of labeled objects of size ``n``.
Products, powers, ``exp``, ``log`` and reciprocals are exact up to ``N``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Number = int | Fraction


def _frac(x: Number) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(_frac(c) for c in self.coeffs))

    @classmethod
    def zero(cls, order: int) -> TruncatedSeries:
        return cls((Fraction(0),) * (order + 1))

    @classmethod
    def constant(cls, value: Number, order: int) -> TruncatedSeries:
        return cls((_frac(value),) + (Fraction(0),) * order)

    @classmethod
    def from_counts(cls, counts: Sequence[int]) -> TruncatedSeries:
        """EGF whose ``n``-th count is ``counts[n]``."""
        return cls(tuple(Fraction(c, math.factorial(n)) for n, c in enumerate(counts)))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def count(self, n: int) -> Fraction:
        return self.coeffs[n] * math.factorial(n)

    def counts(self) -> list[Fraction]:
        return [self.count(n) for n in range(self.order + 1)]

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1])

    def _match(self, other: TruncatedSeries) -> tuple[TruncatedSeries, TruncatedSeries]:
        n = min(self.order, other.order)
        return self.truncate(n), other.truncate(n)

    def _coerce(self, other) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries.constant(other, self.order)

    def __add__(self, other) -> TruncatedSeries:
        a, b = self._match(self._coerce(other))
        return TruncatedSeries(tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> TruncatedSeries:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> TruncatedSeries:
        return self._coerce(other) - self

    def __mul__(self, other) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            s = _frac(other)
            return TruncatedSeries(tuple(c * s for c in self.coeffs))
        a, b = self._match(other)
        n = a.order
        out = [Fraction(0)] * (n + 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j in range(n + 1 - i):
                    out[i + j] += x * b.coeffs[j]
        return TruncatedSeries(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            return self * other.reciprocal()
        return self * (1 / _frac(other))

    def __pow__(self, k: int) -> TruncatedSeries:
        if k < 0:
            return self.reciprocal() ** (-k)
        out = TruncatedSeries.constant(1, self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        a, b = self._match(other)
        return a.coeffs == b.coeffs

    __hash__ = None  # type: ignore[assignment]

    def reciprocal(self) -> TruncatedSeries:
        a0 = self.coeffs[0]
        if a0 == 0:
            raise ZeroDivisionError("constant term is zero")
        out = [1 / a0]
        for n in range(1, self.order + 1):
            s = sum(self.coeffs[k] * out[n - k] for k in range(1, n + 1))
            out.append(-s / a0)
        return TruncatedSeries(tuple(out))

    def derivative(self) -> TruncatedSeries:
        """Formal derivative; the result has order one less."""
        return TruncatedSeries(tuple(n * self.coeffs[n] for n in range(1, self.order + 1)))

    def integral(self) -> TruncatedSeries:
        """Antiderivative with zero constant term; order grows by one."""
        return TruncatedSeries(
            (Fraction(0),) + tuple(c / (n + 1) for n, c in enumerate(self.coeffs))
        )

    def divide_by_z(self) -> TruncatedSeries:
        if self.coeffs[0] != 0:
            raise ValueError("divide_by_z needs a zero constant term")
        return TruncatedSeries(self.coeffs[1:])

    def times_z(self) -> TruncatedSeries:
        """Multiply by ``z``; the top coefficient is kept, so order grows by one."""
        return TruncatedSeries((Fraction(0),) + self.coeffs)

    def exp(self) -> TruncatedSeries:
        if self.coeffs[0] != 0:
            raise ValueError("exp needs a zero constant term")
        out = [Fraction(1)]
        for n in range(1, self.order + 1):
            s = sum(k * self.coeffs[k] * out[n - k] for k in range(1, n + 1))
            out.append(s / n)
        return TruncatedSeries(tuple(out))

    def log(self) -> TruncatedSeries:
        """Integral of the logarithmic derivative; needs constant term 1."""
        if self.coeffs[0] != 1:
            raise ValueError("log needs constant term 1")
        if self.order == 0:
            return TruncatedSeries.zero(0)
        body = self.truncate(self.order - 1)
        return (self.derivative() / body).integral()

    def is_integral_egf(self) -> bool:
        return all(c.denominator == 1 and c >= 0 for c in self.counts())


# Bivariate ------------------------------------------------------------------


def _poly_add(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    return [x + y for x, y in zip(p, q)]


def _poly_mul(p: Sequence[Fraction], q: Sequence[Fraction], cap: int) -> list[Fraction]:
    out = [Fraction(0)] * (cap + 1)
    for i, x in enumerate(p):
        if x:
            for j in range(cap + 1 - i):
                out[i + j] += x * q[j]
    return out


@dataclass(frozen=True)
class BivariateSeries:
    """``sum a[n][k] z^n t^k`` for ``n <= N`` and ``k <= K`` (EGF in ``z``, ordinary in ``t``)."""

    grid: tuple[tuple[Fraction, ...], ...]

    @property
    def order(self) -> int:
        return len(self.grid) - 1

    @property
    def t_cap(self) -> int:
        return len(self.grid[0]) - 1

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[Number]]) -> BivariateSeries:
        return cls(tuple(tuple(_frac(x) for x in row) for row in rows))

    @classmethod
    def t_power_times(cls, s: TruncatedSeries, j: int, t_cap: int) -> BivariateSeries:
        rows = []
        for c in s.coeffs:
            row = [Fraction(0)] * (t_cap + 1)
            if j <= t_cap:
                row[j] = c
            rows.append(row)
        return cls.from_rows(rows)

    def coefficient(self, n: int, k: int) -> Fraction:
        return self.grid[n][k]

    def count(self, n: int, k: int) -> Fraction:
        return self.grid[n][k] * math.factorial(n)

    def t_coefficient(self, k: int) -> TruncatedSeries:
        return TruncatedSeries(tuple(row[k] for row in self.grid))

    def at_t_equals_one(self) -> TruncatedSeries:
        """Exact only when no ``t``-degree beyond the cap is dropped."""
        return TruncatedSeries(tuple(sum(row, Fraction(0)) for row in self.grid))

    def __add__(self, other: BivariateSeries) -> BivariateSeries:
        return BivariateSeries.from_rows(_poly_add(a, b) for a, b in zip(self.grid, other.grid))

    def __neg__(self) -> BivariateSeries:
        return BivariateSeries.from_rows([-x for x in row] for row in self.grid)

    def __sub__(self, other: BivariateSeries) -> BivariateSeries:
        return self + (-other)

    def __mul__(self, other: BivariateSeries) -> BivariateSeries:
        n, cap = self.order, self.t_cap
        zero = [Fraction(0)] * (cap + 1)
        out = [list(zero) for _ in range(n + 1)]
        for i in range(n + 1):
            if not any(self.grid[i]):
                continue
            for j in range(n + 1 - i):
                out[i + j] = _poly_add(out[i + j], _poly_mul(self.grid[i], other.grid[j], cap))
        return BivariateSeries.from_rows(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return self.grid == other.grid

    __hash__ = None  # type: ignore[assignment]

    def _const(self) -> list[Fraction]:
        return list(self.grid[0])

    def exp(self) -> BivariateSeries:
        if any(self._const()):
            raise ValueError("exp needs a zero constant row")
        cap = self.t_cap
        one = [Fraction(1)] + [Fraction(0)] * cap
        out = [one]
        for n in range(1, self.order + 1):
            acc = [Fraction(0)] * (cap + 1)
            for k in range(1, n + 1):
                acc = _poly_add(acc, [k * x for x in _poly_mul(self.grid[k], out[n - k], cap)])
            out.append([x / n for x in acc])
        return BivariateSeries.from_rows(out)

    def reciprocal(self) -> BivariateSeries:
        """Needs constant row equal to 1 (the polynomial), which covers ``1 - tT``."""
        const = self._const()
        if const[0] != 1 or any(const[1:]):
            raise ValueError("reciprocal implemented for constant row 1")
        cap = self.t_cap
        out = [[Fraction(1)] + [Fraction(0)] * cap]
        for n in range(1, self.order + 1):
            acc = [Fraction(0)] * (cap + 1)
            for k in range(1, n + 1):
                acc = _poly_add(acc, _poly_mul(self.grid[k], out[n - k], cap))
            out.append([-x for x in acc])
        return BivariateSeries.from_rows(out)

    def log(self) -> BivariateSeries:
        """Solve ``self * L' = self'`` row by row; constant row must be 1."""
        const = self._const()
        if const[0] != 1 or any(const[1:]):
            raise ValueError("log needs constant row 1")
        cap, n_max = self.t_cap, self.order
        # d_n = (n+1) a_{n+1} (derivative rows); L' = b with sum_{k} a_k b_{n-k} = d_n
        b: list[list[Fraction]] = []
        for n in range(n_max):
            d = [(n + 1) * x for x in self.grid[n + 1]]
            for k in range(1, n + 1):
                d = _poly_add(d, [-x for x in _poly_mul(self.grid[k], b[n - k], cap)])
            b.append(d)
        rows = [[Fraction(0)] * (cap + 1)] + [[x / (n + 1) for x in b[n]] for n in range(n_max)]
        return BivariateSeries.from_rows(rows)


# Named generating functions -------------------------------------------------


def cayley_T(order: int) -> TruncatedSeries:
    """Rooted labeled trees: ``a_n = n^(n-1)/n!``."""
    return TruncatedSeries(
        (Fraction(0),) + tuple(Fraction(n ** (n - 1), math.factorial(n)) for n in range(1, order + 1))
    )


def R_ge_k(order: int, k: int) -> TruncatedSeries:
    """Trees with at least ``k`` records."""
    return cayley_T(order) ** k / k


def R_k_series(order: int, k: int) -> TruncatedSeries:
    """Trees with exactly ``k`` records, as a difference of Cayley powers."""
    t = cayley_T(order)
    return t**k / k - t ** (k + 1) / (k + 1)


def R_k_integral(order: int, k: int) -> TruncatedSeries:
    """The same series as ``R_k_series``, via the antiderivative of ``T^k / z``."""
    return (cayley_T(order) ** k).divide_by_z().integral()


def R_k_prime(order: int, k: int) -> TruncatedSeries:
    """``T^k / z``: trees with ``k`` records one of which is the virtual node."""
    return (cayley_T(order + 1) ** k).divide_by_z()


def endofunction_series(order: int) -> TruncatedSeries:
    """``E = z T'``, counting ``n^n`` maps of an ``n``-set (``E(0) = 0``)."""
    return cayley_T(order).derivative().times_z()


def height_series_W(order: int) -> TruncatedSeries:
    """Trees with a catalyst (total height): ``(z T')^2``."""
    e = endofunction_series(order)
    return e * e


def total_distance_series(order: int) -> TruncatedSeries:
    """Sum of pairwise distances over unrooted trees: ``(z T')^2 / 2``."""
    return height_series_W(order) / 2


def _one_minus_tT(order: int, t_cap: int) -> BivariateSeries:
    one = BivariateSeries.t_power_times(TruncatedSeries.constant(1, order), 0, t_cap)
    return one - BivariateSeries.t_power_times(cayley_T(order), 1, t_cap)


def forest_series(order: int, t_cap: int) -> BivariateSeries:
    """Marked forests by summed marked-record depth: ``1 / (1 - t T)``."""
    return _one_minus_tT(order, t_cap).reciprocal()


def connected_endo_series(order: int, t_cap: int) -> BivariateSeries:
    """Connected endofunctions by girth: ``log(1 / (1 - t T))``."""
    return forest_series(order, t_cap).log()


def forest_record_series(order: int, t_cap: int) -> BivariateSeries:
    """Rooted forests by total record count: ``exp(sum_j t^j R_j)``."""
    acc = BivariateSeries.t_power_times(TruncatedSeries.zero(order), 0, t_cap)
    for j in range(1, min(order, t_cap) + 1):
        acc = acc + BivariateSeries.t_power_times(R_k_series(order, j), j, t_cap)
    return acc.exp()


NAMED_SERIES = {
    "T": cayley_T,
    "W": height_series_W,
    "E": endofunction_series,
    "distance": total_distance_series,
}
