"""Truncated graded polynomial rings over the rationals.

A :class:`Ring` is presented by named generators with positive integer
degrees together with a truncation order ``D``: every monomial of total
(weighted) degree above ``D`` is identically zero.  Elements are sparse maps
from exponent vectors to :class:`~fractions.Fraction` coefficients, so all
arithmetic is exact and the zero test is trivial.

Values are immutable after construction and all operations are pure, so
rings and elements may be shared freely between threads.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import factorial
from typing import Iterator, Mapping, Sequence

Monomial = tuple[int, ...]
Scalar = int | Fraction

_NAME_OK = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


class Ring:
    """A truncated graded commutative polynomial ring over Q.

    ``q_max`` is the default truncation order used for Laurent series built
    over this ring (see :mod:`chloc.series`); it defaults to ``2*D + 2``,
    which is deep enough for every identity check the library performs at
    Chow truncation ``D``.
    """

    __slots__ = ("names", "degrees", "truncation", "q_max", "_index", "_deg_cache")

    def __init__(
        self,
        generators: Sequence[tuple[str, int]],
        truncation: int,
        q_max: int | None = None,
    ):
        names = tuple(str(n) for n, _ in generators)
        degrees = tuple(int(d) for _, d in generators)
        for n in names:
            if not _NAME_OK.match(n):
                raise ValueError(f"invalid generator name {n!r}")
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator name")
        for n, d in zip(names, degrees):
            if d <= 0:
                raise ValueError(f"generator {n!r} must have positive degree, got {d}")
        if truncation < 0:
            raise ValueError("truncation order must be non-negative")
        self.names = names
        self.degrees = degrees
        self.truncation = int(truncation)
        self.q_max = 2 * self.truncation + 2 if q_max is None else int(q_max)
        self._index = {n: i for i, n in enumerate(names)}
        self._deg_cache: dict[Monomial, int] = {}

    # -- presentation ------------------------------------------------------

    @property
    def ngens(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ring):
            return NotImplemented
        return (
            self.names == other.names
            and self.degrees == other.degrees
            and self.truncation == other.truncation
        )

    def __hash__(self) -> int:
        return hash((self.names, self.degrees, self.truncation))

    def __repr__(self) -> str:
        gens = ", ".join(f"{n}:{d}" for n, d in zip(self.names, self.degrees))
        return f"Ring({gens}; D={self.truncation})"

    # -- element constructors ----------------------------------------------

    def zero(self) -> "ChowElement":
        return ChowElement._raw(self, {})

    def one(self) -> "ChowElement":
        return ChowElement._raw(self, {(0,) * self.ngens: Fraction(1)})

    def const(self, c: Scalar) -> "ChowElement":
        c = Fraction(c)
        if c == 0:
            return self.zero()
        return ChowElement._raw(self, {(0,) * self.ngens: c})

    def generator(self, name: str) -> "ChowElement":
        if name not in self._index:
            raise KeyError(f"unknown generator {name!r}")
        i = self._index[name]
        mono = tuple(1 if j == i else 0 for j in range(self.ngens))
        if self.degrees[i] > self.truncation:
            return self.zero()
        return ChowElement._raw(self, {mono: Fraction(1)})

    def gens(self) -> tuple["ChowElement", ...]:
        return tuple(self.generator(n) for n in self.names)

    def element(self, terms: Mapping[Monomial, Scalar]) -> "ChowElement":
        """Build an element from a monomial-to-coefficient mapping."""
        out: dict[Monomial, Fraction] = {}
        for mono, c in terms.items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != self.ngens or any(e < 0 for e in mono):
                raise ValueError(f"bad exponent vector {mono!r}")
            if self.monomial_degree(mono) > self.truncation:
                continue
            c = Fraction(c)
            if c:
                out[mono] = out.get(mono, Fraction(0)) + c
        return ChowElement._raw(self, {m: c for m, c in out.items() if c})

    # -- monomial helpers ----------------------------------------------------

    def monomial_degree(self, mono: Monomial) -> int:
        d = self._deg_cache.get(mono)
        if d is None:
            d = sum(e * g for e, g in zip(mono, self.degrees))
            self._deg_cache[mono] = d
        return d

    def monomials(self, degree: int) -> list[Monomial]:
        """All exponent vectors of exact weighted degree ``degree``."""
        if degree < 0 or degree > self.truncation:
            return []
        out: list[Monomial] = []

        def rec(i: int, remaining: int, prefix: tuple[int, ...]):
            if i == self.ngens:
                if remaining == 0:
                    out.append(prefix)
                return
            d = self.degrees[i]
            for e in range(remaining // d + 1):
                rec(i + 1, remaining - e * d, prefix + (e,))

        rec(0, degree, ())
        return sorted(out)


class ChowElement:
    """An element of a :class:`Ring`: a sparse exact polynomial class.

    Stored monomials never exceed the truncation degree and zero
    coefficients are pruned eagerly, so two elements are equal exactly when
    their term maps are equal.
    """

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, Scalar]):
        elem = ring.element(terms)
        self.ring = ring
        self._terms = elem._terms

    @classmethod
    def _raw(cls, ring: Ring, terms: dict[Monomial, Fraction]) -> "ChowElement":
        # Internal fast path: terms must already be truncated and pruned.
        self = object.__new__(cls)
        self.ring = ring
        self._terms = terms
        return self

    # -- inspection ----------------------------------------------------------

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.ring.ngens, Fraction(0))

    def homogeneous_part(self, degree: int) -> "ChowElement":
        r = self.ring
        return ChowElement._raw(
            r, {m: c for m, c in self._terms.items() if r.monomial_degree(m) == degree}
        )

    def is_homogeneous(self, degree: int) -> bool:
        r = self.ring
        return all(r.monomial_degree(m) == degree for m in self._terms)

    def max_degree(self) -> int:
        """Largest degree of a stored monomial, or -1 for the zero element."""
        r = self.ring
        return max((r.monomial_degree(m) for m in self._terms), default=-1)

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other: "ChowElement"):
        if self.ring != other.ring:
            raise ValueError("ring mismatch")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, ChowElement):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            elif m in out:
                del out[m]
        return ChowElement._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return ChowElement._raw(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, ChowElement):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return self.ring.zero()
            return ChowElement._raw(self.ring, {m: c * v for m, v in self._terms.items()})
        if not isinstance(other, ChowElement):
            return NotImplemented
        self._check(other)
        r = self.ring
        trunc = r.truncation
        rhs = [(m, c, r.monomial_degree(m)) for m, c in other._terms.items()]
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            d1 = r.monomial_degree(m1)
            for m2, c2, d2 in rhs:
                if d1 + d2 > trunc:
                    continue
                mono = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(mono, Fraction(0)) + c1 * c2
                if s:
                    out[mono] = s
                elif mono in out:
                    del out[mono]
        return ChowElement._raw(r, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a Chow class")
        out = self.ring.one()
        base = self
        for _ in range(n):
            out = out * base
            if out.is_zero:
                break
        return out

    def exp(self) -> "ChowElement":
        """exp(x) = sum x^m / m!, a finite sum since x is nilpotent.

        Requires a vanishing constant term.
        """
        if self.constant_term:
            raise ValueError("exp requires a class with zero constant term")
        out = self.ring.one()
        power = self.ring.one()
        for m in range(1, self.ring.truncation + 1):
            power = power * self
            if power.is_zero:
                break
            out = out + power * Fraction(1, factorial(m))
        return out

    def inverse(self) -> "ChowElement":
        """Multiplicative inverse; requires a nonzero constant term.

        Writes self = c*(1 + n) with n nilpotent and sums the finite
        Neumann series (1 + n)^{-1} = sum (-n)^m.
        """
        c = self.constant_term
        if not c:
            raise ValueError("not invertible: zero constant term")
        n = (self * (1 / c)) - self.ring.one()
        out = self.ring.one()
        power = self.ring.one()
        for _ in range(self.ring.truncation + 1):
            power = power * (-n)
            if power.is_zero:
                break
            out = out + power
        return out * (1 / c)

    # -- comparison / display -----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, ChowElement):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    __hash__ = None  # mutable-looking container; identity-free equality only

    def _sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        r = self.ring
        return sorted(self._terms.items(), key=lambda t: (r.monomial_degree(t[0]), t[0]))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for mono, c in self._sorted_terms():
            factors = [
                f"{n}^{e}" if e > 1 else n
                for n, e in zip(self.ring.names, mono)
                if e
            ]
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(c))] + factors)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"<{self} in {self.ring!r}>"
