"""Exact truncated Laurent series in q over the rationals.

A :class:`QSeries` is known exactly for every exponent below its
``truncation``; everything at or above that is unknown.  The module also
builds the Tate curve's Weierstrass coefficients and the classical
invariants derived from them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

__all__ = [
    "QSeries",
    "SeriesError",
    "series_add",
    "series_mul",
    "series_invert",
    "tate_a4",
    "tate_a6",
    "discriminant",
    "eta_product_24",
    "j_invariant",
    "c4",
]


class SeriesError(ArithmeticError):
    pass


@dataclass(frozen=True)
class QSeries:
    """Laurent series ``sum c_n q^n`` known exactly for ``n < truncation``.

    ``coefficients`` is a tuple of ``(exponent, Fraction)`` pairs with
    ascending exponents and no zero entries.  ``lowest_exponent`` is the
    valuation, or ``truncation`` when the series is zero to that order.
    """

    lowest_exponent: int
    coefficients: tuple[tuple[int, Fraction], ...]
    truncation: int

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, object], truncation: int) -> QSeries:
        clean = {}
        for n, c in coeffs.items():
            c = Fraction(c)
            if c != 0 and n < truncation:
                clean[int(n)] = c
        items = tuple(sorted(clean.items()))
        lowest = items[0][0] if items else truncation
        return cls(lowest, items, truncation)

    @classmethod
    def monomial(cls, exponent: int, truncation: int, coeff: object = 1) -> QSeries:
        return cls.from_dict({exponent: coeff}, truncation)

    @classmethod
    def one(cls, truncation: int) -> QSeries:
        return cls.monomial(0, truncation)

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.coefficients)

    def __getitem__(self, n: int) -> Fraction:
        if n >= self.truncation:
            raise SeriesError(f"coefficient of q^{n} unknown (truncation {self.truncation})")
        return self.as_dict().get(n, Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def truncate(self, order: int) -> QSeries:
        return QSeries.from_dict(self.as_dict(), min(order, self.truncation))

    def __add__(self, other: QSeries) -> QSeries:
        return series_add(self, other)

    def __neg__(self) -> QSeries:
        return QSeries.from_dict({n: -c for n, c in self.coefficients}, self.truncation)

    def __sub__(self, other: QSeries) -> QSeries:
        return series_add(self, -other)

    def __mul__(self, other: QSeries | int | Fraction) -> QSeries:
        if isinstance(other, QSeries):
            return series_mul(self, other)
        k = Fraction(other)
        return QSeries.from_dict({n: k * c for n, c in self.coefficients}, self.truncation)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> QSeries:
        if k < 0:
            return series_invert(self) ** (-k)
        if k == 0:
            return QSeries.one(self.truncation - self.lowest_exponent)
        result = self
        for _ in range(k - 1):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.coefficients == other.coefficients and self.truncation == other.truncation

    def __hash__(self) -> int:
        return hash((self.coefficients, self.truncation))

    def __str__(self) -> str:
        return format_series(self)

    def to_json(self) -> dict:
        return {
            "lowest": self.lowest_exponent,
            "truncation": self.truncation,
            "coeffs": [[n, str(c)] for n, c in self.coefficients],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> QSeries:
        series = cls.from_dict({int(n): Fraction(c) for n, c in data["coeffs"]}, int(data["truncation"]))
        if series.lowest_exponent != data["lowest"]:
            raise ValueError("inconsistent 'lowest' field")
        return series


def format_series(s: QSeries) -> str:
    """ASCII rendering, e.g. ``q^-1 + 744 + 196884*q``."""
    if s.is_zero:
        return "0"
    parts = []
    for i, (n, c) in enumerate(s.coefficients):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if n == 0:
            body = str(mag)
        else:
            power = "q" if n == 1 else f"q^{n}"
            if mag == 1:
                body = power
            elif mag.denominator == 1:
                body = f"{mag}*{power}"
            else:
                body = f"({mag})*{power}"
        if i == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def series_add(a: QSeries, b: QSeries) -> QSeries:
    trunc = min(a.truncation, b.truncation)
    out: dict[int, Fraction] = {}
    for n, c in a.coefficients + b.coefficients:
        if n < trunc:
            out[n] = out.get(n, Fraction(0)) + c
    return QSeries.from_dict(out, trunc)


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    # a = q^va * (known mod q^(Ta - va)); product known below min(Ta + vb, Tb + va)
    trunc = min(a.truncation + b.lowest_exponent, b.truncation + a.lowest_exponent)
    out: dict[int, Fraction] = {}
    for n, c in a.coefficients:
        if n + b.lowest_exponent >= trunc:
            break
        for m, d in b.coefficients:
            k = n + m
            if k >= trunc:
                break
            out[k] = out.get(k, Fraction(0)) + c * d
    return QSeries.from_dict(out, trunc)


def series_invert(a: QSeries) -> QSeries:
    if a.is_zero:
        raise SeriesError("cannot invert a series that is zero to its truncation")
    v = a.lowest_exponent
    length = a.truncation - v  # relative precision
    u = [a.as_dict().get(v + i, Fraction(0)) for i in range(length)]
    inv = [Fraction(0)] * length
    inv[0] = 1 / u[0]
    for i in range(1, length):
        acc = sum((u[j] * inv[i - j] for j in range(1, i + 1)), Fraction(0))
        inv[i] = -acc * inv[0]
    return QSeries.from_dict({i - v: c for i, c in enumerate(inv)}, length - v)


def _lambert(weights: Iterable[tuple[int, Fraction]], order: int) -> dict[int, Fraction]:
    """Expand ``sum_n w(n) q^n / (1 - q^n)`` below ``q^order``."""
    out: dict[int, Fraction] = {}
    for n, w in weights:
        for m in range(n, order, n):
            out[m] = out.get(m, Fraction(0)) + w
    return out


def tate_a4(order: int) -> QSeries:
    """``a4 = -5 sum n^3 q^n / (1 - q^n)`` modulo ``q^order``."""
    if order < 1:
        raise ValueError("order must be >= 1")
    return QSeries.from_dict(_lambert(((n, Fraction(-5 * n**3)) for n in range(1, order)), order), order)


def tate_a6(order: int) -> QSeries:
    """``a6 = -(1/12) sum (7n^5 + 5n^3) q^n / (1 - q^n)`` modulo ``q^order``.

    Raises :class:`SeriesError` if a coefficient is not an integer.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    weights = ((n, Fraction(-(7 * n**5 + 5 * n**3), 12)) for n in range(1, order))
    coeffs = _lambert(weights, order)
    for n, c in coeffs.items():
        if c.denominator != 1:
            raise SeriesError(f"a6 coefficient at q^{n} is not integral: {c}")
    return QSeries.from_dict(coeffs, order)


def _b_invariants(order: int) -> tuple[QSeries, QSeries, QSeries, QSeries]:
    # y^2 + xy = x^3 + a4 x + a6, so a1 = 1 and a2 = a3 = 0
    a4, a6 = tate_a4(order), tate_a6(order)
    one = QSeries.one(order)
    b2 = one
    b4 = 2 * a4
    b6 = 4 * a6
    b8 = a6 - a4 * a4
    return b2, b4, b6, b8


def discriminant(order: int) -> QSeries:
    """Weierstrass discriminant of the Tate curve modulo ``q^order``."""
    if order < 2:
        raise ValueError("order must be >= 2")
    b2, b4, b6, b8 = _b_invariants(order)
    return -(b2 * b2 * b8) - 8 * (b4 * b4 * b4) - 27 * (b6 * b6) + 9 * (b2 * b4 * b6)


def c4(order: int) -> QSeries:
    b2, b4, _, _ = _b_invariants(order)
    return b2 * b2 - 24 * b4


def eta_product_24(order: int) -> QSeries:
    """``q * prod_{n>=1} (1 - q^n)^24`` modulo ``q^order``."""
    if order < 2:
        raise ValueError("order must be >= 2")
    # work with the power series part, known modulo q^(order-1)
    width = order - 1
    poly = [0] * width
    poly[0] = 1
    for n in range(1, width):
        for _ in range(24):
            for m in range(width - 1, n - 1, -1):
                poly[m] -= poly[m - n]
    return QSeries.from_dict({i + 1: c for i, c in enumerate(poly)}, order)


def j_invariant(order: int) -> QSeries:
    """``j = c4^3 / Delta`` modulo ``q^order`` (leading term ``q^-1``)."""
    if order < 2:
        raise ValueError("order must be >= 2")
    work = order + 2  # inverting Delta costs two orders of precision
    c = c4(work)
    j = c * c * c * series_invert(discriminant(work))
    return j.truncate(order)
