"""Localization products for Hodge-capped virtual classes.

Given a collection of K-theory classes with nonzero integer equivariant
weights, :func:`hodge_product` forms the exact Laurent polynomial

    e_{-k_{N+1} q}(E) * prod_j e_{k_j q}(-R_j),

splits off the coefficients of negative q-powers (the tautological
relations: classes that must vanish on the geometric side) and reports the
q -> 0 limit when there are none.

:func:`localization_product` is the general fixed-locus form

    e_{-k_E q}(E) * e(V) / e(N) * Td_q(T) / Td_q(V),

where each of V, T, N is a list of weighted classes, the Euler factors are
exact, and the equivariant Todd of a weighted class is the ordinary Todd
class times the formal-twist ratio.  On the chain specialization
T = V = (+)B_j, N = (+)A_j it reproduces ``hodge_product`` applied to
R_j = A_j - B_j.

:func:`tautological_crosscheck` compares the Euler-class side against the
Hirzebruch-class side at t = exp(-q): the two sides converge together, have
the same limit, and their negative coefficients span each other degree by
degree on single-generator rings (an exact linear-algebra test).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .chains import ChainData, weight_sequence
from .charclasses import KClass, equivariant_euler, hirzebruch_class, todd, todd_twist_ratio
from .rings import ChowElement, Ring
from .series import QSeries, compute_at_precision, q_exponential

WeightedClass = tuple[KClass, int]


@dataclass(frozen=True)
class LocInput:
    """Input data for the chain-shaped localization product.

    ``pushed`` lists the classes R_j (the derived pushforwards) with their
    weights; the product uses -R_j.  ``hodge_weight`` is the last
    equivariant weight k_{N+1}, so the Hodge factor carries weight
    -hodge_weight.  When ``chain`` is attached the weights must follow its
    weight sequence.
    """

    ring: Ring
    hodge: KClass
    hodge_weight: int
    pushed: tuple[WeightedClass, ...]
    chain: ChainData | None = None

    def __post_init__(self):
        object.__setattr__(self, "pushed", tuple((r, int(k)) for r, k in self.pushed))
        if self.hodge.ring != self.ring:
            raise ValueError("ring mismatch for the Hodge class")
        if self.hodge_weight == 0:
            raise ValueError("weights must be nonzero")
        for r, k in self.pushed:
            if r.ring != self.ring:
                raise ValueError("ring mismatch in the pushed classes")
            if k == 0:
                raise ValueError("weights must be nonzero")
        if self.chain is not None:
            kw = weight_sequence(self.chain)
            n = self.chain.n_variables
            if len(self.pushed) != n:
                raise ValueError("chain expects one pushed class per variable")
            if tuple(k for _, k in self.pushed) != kw[:n]:
                raise ValueError("weights do not follow the chain weight sequence")
            if self.hodge_weight != kw[n]:
                raise ValueError("Hodge weight does not match the chain")

    @classmethod
    def for_chain(
        cls, ring: Ring, hodge: KClass, pushed: list[KClass], chain: ChainData
    ) -> "LocInput":
        kw = weight_sequence(chain)
        return cls(
            ring=ring,
            hodge=hodge,
            hodge_weight=kw[chain.n_variables],
            pushed=tuple(zip(pushed, kw)),
            chain=chain,
        )


@dataclass(frozen=True)
class LocResult:
    """A localization product with its extracted relations and limit."""

    series: QSeries
    relations: tuple[tuple[int, ChowElement], ...]
    convergent: bool
    limit: ChowElement | None

    @classmethod
    def from_series(cls, series: QSeries) -> "LocResult":
        if series.q_max is not None and series.q_max < 0:
            raise ArithmeticError("series is not reliable at order 0")
        relations = tuple(series.negative_part())
        convergent = not relations
        return cls(
            series=series,
            relations=relations,
            convergent=convergent,
            limit=series.coefficient(0) if convergent else None,
        )


def hodge_product(inp: LocInput) -> LocResult:
    """The exact Laurent product e_{-k_E q}(E) * prod_j e_{k_j q}(-R_j)."""
    series = equivariant_euler(inp.hodge, -inp.hodge_weight)
    for r, k in inp.pushed:
        series = series * equivariant_euler(-r, k)
    return LocResult.from_series(series)


def localization_product(
    hodge: KClass,
    hodge_weight: int,
    v: list[WeightedClass],
    t: list[WeightedClass],
    n: list[WeightedClass],
    q_max: int | None = None,
) -> LocResult:
    """General fixed-locus product with explicit bundle data.

    ``v`` and ``t`` enter through equivariant Euler and Todd factors, ``n``
    (the normal data) through an inverted Euler factor; its product of
    Euler classes must have an invertible leading structure.
    """
    ring = hodge.ring
    if hodge_weight == 0:
        raise ValueError("weights must be nonzero")
    target = ring.q_max if q_max is None else int(q_max)

    euler_part = equivariant_euler(hodge, -hodge_weight)
    for x, k in v:
        euler_part = euler_part * equivariant_euler(x, k)
    normal = QSeries.one(ring)
    for x, k in n:
        normal = normal * equivariant_euler(x, k)
    euler_part = euler_part * normal.invert(target + 1)

    ranks = abs(hodge.rank) + sum(abs(x.rank) for x, _ in v + t + n)

    def compute(order: int) -> QSeries:
        out = euler_part
        for x, k in t:
            out = out * QSeries.constant(todd(x)) * todd_twist_ratio(x, k, order)
        tv = QSeries.one(ring)
        for x, k in v:
            tv = tv * QSeries.constant(todd(x)) * todd_twist_ratio(x, k, order)
        return out * tv.invert(order)

    series = compute_at_precision(compute, target, 2 * ring.truncation + ranks + 8)
    return LocResult.from_series(series)


def chain_specialization(
    hodge: KClass,
    hodge_weight: int,
    a_classes: list[WeightedClass],
    b_classes: list[WeightedClass],
    q_max: int | None = None,
) -> LocResult:
    """The chain-shaped case of :func:`localization_product`:
    T = V = the B-resolvents, N = the A-resolvents."""
    return localization_product(
        hodge, hodge_weight, v=b_classes, t=b_classes, n=a_classes, q_max=q_max
    )


@dataclass(frozen=True)
class TautrelReport:
    """Comparison of the Euler side against the Hirzebruch side."""

    side_euler: QSeries
    side_hirzebruch: QSeries
    euler_convergent: bool
    hirzebruch_convergent: bool
    limit_euler: ChowElement | None
    limit_hirzebruch: ChowElement | None
    span_euler_in_hirzebruch: bool
    span_hirzebruch_in_euler: bool
    span_failures: tuple[tuple[str, int, int], ...] = field(default=())

    @property
    def convergence_consistent(self) -> bool:
        return self.euler_convergent == self.hirzebruch_convergent

    @property
    def limits_equal(self) -> bool | None:
        if self.limit_euler is None or self.limit_hirzebruch is None:
            return None
        return self.limit_euler == self.limit_hirzebruch

    @property
    def passed(self) -> bool:
        if not self.convergence_consistent:
            return False
        if self.limits_equal is False:
            return False
        return self.span_euler_in_hirzebruch and self.span_hirzebruch_in_euler


def tautological_crosscheck(inp: LocInput, q_max: int | None = None) -> TautrelReport:
    """Compare the two multiplicative sides of the localization product.

    The factors are those of :func:`hodge_product`: the Hodge class with
    weight -k_{N+1} and the negated pushed classes with their weights.
    """
    factors: list[WeightedClass] = [(inp.hodge, -inp.hodge_weight)]
    factors += [(-r, k) for r, k in inp.pushed]
    return crosscheck_factors(inp.ring, factors, q_max)


def crosscheck_factors(
    ring: Ring, factors: list[WeightedClass], q_max: int | None = None
) -> TautrelReport:
    """Compare prod e_{k q}(X) against prod c_{exp(-k q)}(X) for weighted
    classes X.

    The report records whether the sides converge together, whether the
    limits agree, and whether each side's negative coefficients lie in the
    rational span of the other's within each fixed Chow degree.
    """
    target = ring.q_max if q_max is None else int(q_max)

    side_a = QSeries.one(ring)
    for x, k in factors:
        side_a = side_a * equivariant_euler(x, k)

    D = ring.truncation
    ranks = sum(abs(x.rank) for x, _ in factors)

    total_ord = sum(D + abs(x.rank) for x, _ in factors)
    inner = target + total_ord + 2

    def compute(order: int) -> QSeries:
        out = QSeries.one(ring)
        for x, k in factors:
            out = out * hirzebruch_class(q_exponential(ring, -k, order), x, q_max=inner)
        return out

    margin = 2 * D + 2 + total_ord + 8
    side_b = compute_at_precision(compute, target, margin)

    neg_a = side_a.negative_part()
    neg_b = side_b.negative_part()
    conv_a, conv_b = not neg_a, not neg_b
    lim_a = side_a.coefficient(0) if conv_a else None
    lim_b = side_b.coefficient(0) if conv_b else None

    failures: list[tuple[str, int, int]] = []
    ok_ab = _spans_contained("euler", neg_a, neg_b, D, failures)
    ok_ba = _spans_contained("hirzebruch", neg_b, neg_a, D, failures)

    return TautrelReport(
        side_euler=side_a,
        side_hirzebruch=side_b,
        euler_convergent=conv_a,
        hirzebruch_convergent=conv_b,
        limit_euler=lim_a,
        limit_hirzebruch=lim_b,
        span_euler_in_hirzebruch=ok_ab,
        span_hirzebruch_in_euler=ok_ba,
        span_failures=tuple(failures),
    )


# -- exact linear algebra over the monomial basis ------------------------------


def _spans_contained(tag, neg_src, neg_dst, max_degree, failures) -> bool:
    ok = True
    for d in range(0, max_degree + 1):
        basis = []
        for _, c in neg_dst:
            piece = c.homogeneous_part(d)
            if not piece.is_zero:
                basis.append(dict(piece.items()))
        rows = _row_reduce(basis)
        for e, c in neg_src:
            piece = c.homogeneous_part(d)
            if piece.is_zero:
                continue
            if not _in_span(dict(piece.items()), rows):
                failures.append((tag, e, d))
                ok = False
    return ok


def _row_reduce(vectors: list[dict]) -> list[tuple[object, dict]]:
    """Greedy row echelon form; rows are sparse monomial -> Fraction maps."""
    rows: list[tuple[object, dict]] = []
    for vec in vectors:
        v = _reduce_against(dict(vec), rows)
        if v:
            pivot = sorted(v)[0]
            c = v[pivot]
            v = {m: x / c for m, x in v.items()}
            rows.append((pivot, v))
    return rows


def _reduce_against(v: dict, rows: list[tuple[object, dict]]) -> dict:
    for pivot, row in rows:
        c = v.get(pivot)
        if c:
            for m, x in row.items():
                s = v.get(m, Fraction(0)) - c * x
                if s:
                    v[m] = s
                elif m in v:
                    del v[m]
    return v


def _in_span(v: dict, rows: list[tuple[object, dict]]) -> bool:
    return not _reduce_against(v, rows)
