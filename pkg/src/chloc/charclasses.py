"""Characteristic classes of virtual bundles via Chern characters.

A :class:`KClass` is a K-theory class on a truncated Chow ring: an integer
(possibly negative) rank together with the Chern characters Ch_1..Ch_D.  On
top of it the module provides

* the Todd class  Td(X) = exp(-sum_{l>=1} B_l(0)/l * Ch_l(X)),
* the Hirzebruch class  c_t(X) = Ch(lambda_{-t} X^v) * Td(X), defined for
  any t != 1 through the exponential formula with coefficients s_l(t),
* the equivariant Euler class  e_q(X) = q^rk * exp(-sum (l-1)!/(-q)^l Ch_l),
  a finite Laurent polynomial, with an integer weight k substituting
  q -> k*q throughout,
* the Todd twist ratio  Td(X (x) O(q)) / Td(X)  for a formal line bundle
  O(q) of first Chern class q, and
* a checker for the comparison identity
  e_q(X) = c_{exp(-q)}(X) * Td(X (x) O(q)) / Td(X).

Bernoulli values follow the B_1(0) = -1/2 convention (Bernoulli polynomial
at 0), which is the one compatible with Td(L) = c_1 / (1 - exp(-c_1)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Sequence

from .rings import ChowElement, Ring
from .series import (
    QSeries,
    ScalarSeries,
    compute_at_precision,
    q_exponential,
    scalar_invert,
    scalar_mul,
    scalar_pow,
)


@lru_cache(maxsize=None)
def bernoulli(l: int) -> Fraction:
    """B_l(0), the l-th Bernoulli polynomial at 0 (so B_1 = -1/2)."""
    if l < 0:
        raise ValueError("Bernoulli index must be non-negative")
    if l == 0:
        return Fraction(1)
    s = sum(Fraction(comb(l + 1, j)) * bernoulli(j) for j in range(l))
    return -s / (l + 1)


@lru_cache(maxsize=None)
def stirling2(l: int, k: int) -> int:
    """Stirling number of the second kind: l! times the z^l coefficient of
    (exp(z) - 1)^k / k!.  Vanishes for k > l."""
    if l < 0 or k < 0:
        raise ValueError("indices must be non-negative")
    if l == k == 0:
        return 1
    if l == 0 or k == 0 or k > l:
        return 0
    return k * stirling2(l - 1, k) + stirling2(l - 1, k - 1)


def _formal_u_powers(t: QSeries, k_max: int) -> tuple[dict[int, ScalarSeries], int]:
    """Powers u, u^2, .., u^{k_max} of u = t/(1-t) for a scalar series t,
    plus the order the deepest power is reliable to."""
    if t.q_max is None:
        raise ValueError("formal t must carry a finite truncation order")
    data = t.scalar_data()
    order = t.q_max
    one_minus: ScalarSeries = {0: Fraction(1)}
    for e, c in data.items():
        one_minus[e] = one_minus.get(e, Fraction(0)) - c
    one_minus = {e: c for e, c in one_minus.items() if c}
    if not one_minus or min(one_minus) != 1:
        raise ValueError("formal t must equal 1 + O(q) with an invertible q-term")
    u = scalar_mul(data, scalar_invert(one_minus, order), order)
    powers = {1: u}
    for k in range(2, k_max + 1):
        powers[k] = scalar_mul(powers[k - 1], u, order)
    return powers, order - 1 - k_max


def _assemble_s(l: int, powers: dict[int, ScalarSeries]) -> ScalarSeries:
    acc: ScalarSeries = {}
    b = bernoulli(l) / l
    if b:
        acc[0] = b
    sign = (-1) ** l
    for k in range(1, l + 1):
        g = stirling2(l, k)
        if not g:
            continue
        f = sign * factorial(k - 1) * g
        for e, c in powers[k].items():
            s = acc.get(e, Fraction(0)) + f * c
            if s:
                acc[e] = s
            elif e in acc:
                del acc[e]
    return acc


def hirzebruch_coefficient(l: int, t):
    """The coefficient s_l(t) of -Ch_l in the exponential form of the
    Hirzebruch class:

        s_l(t) = B_l(0)/l + (-1)^l sum_{k=1}^{l} (k-1)! (t/(1-t))^k S(l,k).

    ``t`` is either an exact rational (t != 1) or a series in q such as
    exp(-q), in which case the result is a Laurent series in q.
    """
    if l < 1:
        raise ValueError("index must be positive")
    if isinstance(t, QSeries):
        powers, valid = _formal_u_powers(t, l)
        return QSeries.from_scalars(t.ring, _assemble_s(l, powers), valid)
    t = Fraction(t)
    if t == 1:
        raise ValueError("the Hirzebruch class is undefined at t = 1")
    u = t / (1 - t)
    acc = bernoulli(l) / l
    sign = (-1) ** l
    upow = u
    for k in range(1, l + 1):
        g = stirling2(l, k)
        if g:
            acc = acc + upow * (sign * factorial(k - 1) * g)
        if k < l:
            upow = upow * u
    return acc


class KClass:
    """A virtual bundle: integer rank plus Chern characters Ch_1..Ch_D.

    Each Ch_l is homogeneous of degree l (or zero).  Addition is
    componentwise, since the Chern character is additive.
    """

    __slots__ = ("ring", "rank", "ch")

    def __init__(self, ring: Ring, rank: int, ch: Sequence[ChowElement] = ()):
        D = ring.truncation
        padded = list(ch)
        if len(padded) > D:
            for extra in padded[D:]:
                if not extra.is_zero:
                    raise ValueError("Chern character beyond the truncation order")
            padded = padded[:D]
        while len(padded) < D:
            padded.append(ring.zero())
        for l, c in enumerate(padded, start=1):
            if c.ring != ring:
                raise ValueError("ring mismatch")
            if not c.is_homogeneous(l):
                raise ValueError(f"Ch_{l} must be homogeneous of degree {l}")
        self.ring = ring
        self.rank = int(rank)
        self.ch = tuple(padded)

    @classmethod
    def zero(cls, ring: Ring) -> "KClass":
        return cls(ring, 0)

    @classmethod
    def trivial(cls, ring: Ring, rank: int) -> "KClass":
        return cls(ring, rank)

    def chern_character(self, l: int) -> ChowElement:
        """Ch_l for l >= 1 (zero above the truncation order)."""
        if l < 1:
            raise ValueError("use .rank for Ch_0")
        if l > len(self.ch):
            return self.ring.zero()
        return self.ch[l - 1]

    def __add__(self, other: "KClass") -> "KClass":
        if not isinstance(other, KClass):
            return NotImplemented
        if self.ring != other.ring:
            raise ValueError("ring mismatch")
        return KClass(
            self.ring,
            self.rank + other.rank,
            [a + b for a, b in zip(self.ch, other.ch)],
        )

    def __neg__(self) -> "KClass":
        return KClass(self.ring, -self.rank, [-c for c in self.ch])

    def __sub__(self, other: "KClass") -> "KClass":
        return self + (-other)

    def dual(self) -> "KClass":
        """The dual class: Ch_l changes sign for odd l."""
        return KClass(
            self.ring,
            self.rank,
            [c if l % 2 == 0 else -c for l, c in enumerate(self.ch, start=1)],
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, KClass):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.rank == other.rank
            and self.ch == other.ch
        )

    __hash__ = None

    def __repr__(self) -> str:
        chs = ", ".join(f"Ch_{l}={c}" for l, c in enumerate(self.ch, 1) if not c.is_zero)
        return f"<KClass rank={self.rank}" + (f" {chs}>" if chs else ">")


def line_bundle(alpha: ChowElement) -> KClass:
    """The line bundle with first Chern class alpha: Ch_l = alpha^l / l!."""
    if not (alpha.is_zero or alpha.is_homogeneous(1)):
        raise ValueError("first Chern class must be homogeneous of degree 1")
    ring = alpha.ring
    ch = []
    power = ring.one()
    for l in range(1, ring.truncation + 1):
        power = power * alpha
        ch.append(power * Fraction(1, factorial(l)))
    return KClass(ring, 1, ch)


def sum_of_roots(ring: Ring, alphas: Iterable[ChowElement]) -> KClass:
    """The bundle with the given Chern roots: a sum of line bundles."""
    out = KClass.zero(ring)
    for a in alphas:
        out = out + line_bundle(a)
    return out


def todd(x: KClass) -> ChowElement:
    """Todd class, exp(-sum_{l>=1} B_l(0)/l * Ch_l(x)); Td(L) = 1 + c/2 + c^2/12 + ..."""
    arg = x.ring.zero()
    for l in range(1, x.ring.truncation + 1):
        c = x.chern_character(l)
        if not c.is_zero:
            arg = arg - c * (bernoulli(l) / l)
    return arg.exp()


def hirzebruch_class(t, x: KClass, q_max: int | None = None):
    """The multiplicative class Ch(lambda_{-t} x^v) * Td(x).

    For exact rational t != 1 the result is a Chow class
    (1-t)^rank * exp(-sum_l s_l(t) Ch_l); for a series t = exp(-k*q) it is
    a Laurent series in q (``q_max`` caps the output order below t's own,
    which saves work when the caller needs fewer coefficients than the
    working order of t supports).  On a line bundle with root a it equals
    (exp(a) - t) / (exp(a) - 1) * a.
    """
    ring = x.ring
    if isinstance(t, QSeries):
        if t.ring != ring:
            raise ValueError("ring mismatch")
        if t.q_max is None:
            raise ValueError("formal t must carry a finite truncation order")
        order = t.q_max
        out_order = order if q_max is None else min(int(q_max), order)
        D = ring.truncation
        powers, valid = _formal_u_powers(t, D)
        arg_coeffs: dict[int, ChowElement] = {}
        for l in range(1, D + 1):
            c = x.chern_character(l)
            if c.is_zero:
                continue
            for e, v in _assemble_s(l, powers).items():
                add = c * (-v)
                prev = arg_coeffs.get(e)
                s = add if prev is None else prev + add
                if s.is_zero:
                    arg_coeffs.pop(e, None)
                else:
                    arg_coeffs[e] = s
        part = QSeries(ring, arg_coeffs, valid).exp(out_order)
        one_minus: ScalarSeries = {0: Fraction(1)}
        for e, c in t.scalar_data().items():
            one_minus[e] = one_minus.get(e, Fraction(0)) - c
        one_minus = {e: c for e, c in one_minus.items() if c}
        if x.rank >= 0:
            rank_data = scalar_pow(one_minus, x.rank, out_order)
            rank_valid = out_order
        else:
            rank_data = scalar_pow(scalar_invert(one_minus, order), -x.rank, out_order)
            rank_valid = min(order - 1 + x.rank, out_order)
        return QSeries.from_scalars(ring, rank_data, rank_valid) * part
    t = Fraction(t)
    if t == 1:
        raise ValueError("the Hirzebruch class is undefined at t = 1")
    arg = ring.zero()
    for l in range(1, ring.truncation + 1):
        c = x.chern_character(l)
        if not c.is_zero:
            arg = arg - c * hirzebruch_coefficient(l, t)
    return arg.exp() * (1 - t) ** x.rank


def equivariant_euler(x: KClass, weight: int) -> QSeries:
    """Equivariant Euler class with q scaled by the integer weight:

        e_{k q}(x) = (k q)^rank * exp(-sum_l (l-1)!/(-k q)^l Ch_l(x)).

    An exact Laurent polynomial; on a bundle with roots a_i it equals
    prod_i (k q + a_i), and it is multiplicative in x.
    """
    weight = int(weight)
    if weight == 0:
        raise ValueError("equivariant weight must be nonzero")
    ring = x.ring
    coeffs = {}
    for l in range(1, ring.truncation + 1):
        c = x.chern_character(l)
        if not c.is_zero:
            coeffs[-l] = c * Fraction(-factorial(l - 1), (-weight) ** l)
    body = QSeries(ring, coeffs).exp()
    return (body * Fraction(weight) ** x.rank).shifted(x.rank)


def todd_twist_ratio(x: KClass, weight: int, q_max: int | None = None) -> QSeries:
    """Td(x (x) O(k q)) / Td(x) for a formal line bundle of first Chern
    class k*q, computed through the twisted Chern characters

        Ch_l(x (x) O(w)) = sum_{j<=l} Ch_j(x) w^{l-j} / (l-j)!.

    Equals exp(-sum_{j>=0, l>j} B_l(0)/l * (k q)^{l-j}/(l-j)! * Ch_j(x));
    for a trivial line it is k q / (1 - exp(-k q)) = 1 + kq/2 + (kq)^2/12 - ...
    """
    ring = x.ring
    target = ring.q_max if q_max is None else int(q_max)
    weight = int(weight)
    if weight == 0 or target < 1:
        return QSeries.one(ring).truncated(max(target, 0))
    coeffs: dict[int, ChowElement] = {}
    for n in range(1, target + 1):
        wn = Fraction(weight) ** n / factorial(n)
        acc = ring.const(-bernoulli(n) / n * wn * x.rank)
        for j in range(1, ring.truncation + 1):
            c = x.chern_character(j)
            if not c.is_zero:
                acc = acc - c * (bernoulli(n + j) / (n + j) * wn)
        if not acc.is_zero:
            coeffs[n] = acc
    return QSeries(ring, coeffs, target).exp(target)


@dataclass(frozen=True)
class IdentityCheck:
    """Outcome of the Euler / Hirzebruch-Todd comparison."""

    equal: bool
    lhs: QSeries
    rhs: QSeries
    difference: QSeries


def euler_identity_check(
    x: KClass, weight: int, q_max: int | None = None
) -> IdentityCheck:
    """Check  e_{kq}(x) = c_{exp(-kq)}(x) * Td(x (x) O(kq))/Td(x)  up to the
    requested order; the difference series witnesses a failure."""
    weight = int(weight)
    if weight == 0:
        raise ValueError("equivariant weight must be nonzero")
    ring = x.ring
    target = ring.q_max if q_max is None else int(q_max)
    lhs = equivariant_euler(x, weight)

    inner = target + ring.truncation + abs(x.rank) + 2

    def compute(order: int) -> QSeries:
        t = q_exponential(ring, -weight, order)
        return hirzebruch_class(t, x, q_max=inner) * todd_twist_ratio(x, weight, inner)

    margin = 2 * ring.truncation + abs(x.rank) + 6
    rhs = compute_at_precision(compute, target, margin)
    diff = (lhs - rhs).truncated(target)
    return IdentityCheck(equal=diff.is_zero, lhs=lhs, rhs=rhs, difference=diff)
