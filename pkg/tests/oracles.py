"""Independent reference computations used to freeze expected values.

Nothing here imports the package; each function recomputes a quantity by a
different route than the library uses.
"""

from __future__ import annotations

from fractions import Fraction


def divisor_power_sum(n: int, k: int) -> int:
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


def poly_mul(a: list[int], b: list[int], width: int) -> list[int]:
    out = [0] * width
    for i, x in enumerate(a[:width]):
        if x:
            for j, y in enumerate(b[: width - i]):
                out[i + j] += x * y
    return out


def euler_product(width: int) -> list[int]:
    """``prod (1 - q^n)`` via the pentagonal number theorem, mod ``q^width``."""
    out = [0] * width
    k = 0
    while True:
        done = True
        for kk in ((k,) if k == 0 else (k, -k)):
            g = kk * (3 * kk - 1) // 2
            if g < width:
                out[g] += -1 if kk % 2 else 1
                done = False
        if done and k > 0:
            return out
        k += 1


def delta_by_pentagonal(order: int) -> dict[int, int]:
    """``q prod (1 - q^n)^24`` as ``{exponent: coeff}`` below ``q^order``."""
    width = order - 1
    e = euler_product(width)
    acc = [1] + [0] * (width - 1)
    for _ in range(24):
        acc = poly_mul(acc, e, width)
    return {i + 1: c for i, c in enumerate(acc) if c}


def j_by_eisenstein(order: int) -> dict[int, Fraction]:
    """``E4^3 / Delta`` with ``E4 = 1 + 240 sum sigma_3(n) q^n``, by long division."""
    width = order + 1  # j has valuation -1
    e4 = [1] + [240 * divisor_power_sum(n, 3) for n in range(1, width)]
    num = poly_mul(poly_mul(e4, e4, width), e4, width)
    delta = delta_by_pentagonal(width + 1)
    den = [delta.get(i + 1, 0) for i in range(width)]  # Delta / q
    quo = [Fraction(0)] * width
    rem = [Fraction(x) for x in num]
    for i in range(width):
        quo[i] = rem[i] / den[0]
        for j in range(i, width):
            rem[j] -= quo[i] * den[j - i]
    return {i - 1: c for i, c in enumerate(quo) if c}


def sigma(n: int) -> int:
    return divisor_power_sum(n, 1)
