"""Independent truncated-series oracles used to freeze expected values.

Everything here works on plain coefficient lists over Fraction and never
touches the library's ring or series machinery, so agreement between these
expansions and the library is a genuine cross-check.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial


def ser_trim(a: list[Fraction], order: int) -> list[Fraction]:
    out = list(a[: order + 1])
    while len(out) < order + 1:
        out.append(Fraction(0))
    return out


def ser_add(a, b, order):
    a, b = ser_trim(a, order), ser_trim(b, order)
    return [x + y for x, y in zip(a, b)]


def ser_scale(c, a, order):
    return [Fraction(c) * x for x in ser_trim(a, order)]


def ser_mul(a, b, order):
    a, b = ser_trim(a, order), ser_trim(b, order)
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j in range(order + 1 - i):
            if b[j]:
                out[i + j] += x * b[j]
    return out


def ser_inv(a, order):
    """Inverse of a series with a[0] != 0."""
    a = ser_trim(a, order)
    if not a[0]:
        raise ZeroDivisionError("series has no constant term")
    out = [Fraction(0)] * (order + 1)
    out[0] = 1 / a[0]
    for m in range(1, order + 1):
        s = Fraction(0)
        for k in range(1, m + 1):
            s += a[k] * out[m - k]
        out[m] = -s / a[0]
    return out


def ser_exp_x(order):
    """exp(x) as a coefficient list."""
    return [Fraction(1, factorial(n)) for n in range(order + 1)]


def ser_pow(a, n, order):
    out = ser_trim([Fraction(1)], order)
    for _ in range(n):
        out = ser_mul(out, a, order)
    return out


def expm1_over_x(order):
    """(exp(x) - 1) / x."""
    return [Fraction(1, factorial(n + 1)) for n in range(order + 1)]


def bernoulli_oracle(n: int) -> Fraction:
    """B_n(0) read off the generating function x / (exp(x) - 1)."""
    g = ser_inv(expm1_over_x(n), n)
    return g[n] * factorial(n)


def stirling_oracle(l: int, k: int) -> Fraction:
    """l! times the x^l coefficient of (exp(x) - 1)^k / k!."""
    em1 = ser_exp_x(l)
    em1[0] = Fraction(0)
    p = ser_pow(em1, k, l)
    return p[l] * factorial(l) / factorial(k)


def reciprocal_expm1(order: int) -> dict[int, Fraction]:
    """1 / (exp(x) - 1) as a Laurent map exponent -> coefficient."""
    g = ser_inv(expm1_over_x(order + 1), order + 1)
    return {n - 1: c for n, c in enumerate(g) if c}


def line_todd(order: int) -> list[Fraction]:
    """x / (1 - exp(-x)) as a power series in x."""
    # (1 - exp(-x)) / x
    body = [
        Fraction((-1) ** n, factorial(n + 1)) for n in range(order + 1)
    ]
    return ser_inv(body, order)


def line_hirzebruch(t: Fraction, order: int) -> list[Fraction]:
    """x * (exp(x) - t) / (exp(x) - 1) as a power series in x."""
    num = ser_exp_x(order)
    num[0] -= Fraction(t)
    return ser_mul(num, ser_inv(expm1_over_x(order), order), order)


def line_euler_twist(order: int) -> dict[int, Fraction]:
    """q / (1 - exp(-q)) as a Laurent map (all exponents >= 0)."""
    return {n: c for n, c in enumerate(line_todd(order)) if c}
