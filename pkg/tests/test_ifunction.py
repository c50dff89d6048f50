from fractions import Fraction as F
from itertools import product
from math import floor

import pytest

from chloc import (
    BivarPoly,
    RatFunc,
    b_range,
    big_i_factor,
    chain_solve,
    i_coefficient,
    is_calabi_yau,
    nonequivariant_limit,
    picard_fuchs_check,
    sector,
    weight_sequence,
)


def brute_b_range(chain, j, k):
    """Scan candidates frac, frac+1, ... instead of constructing the range."""
    top = chain.charges[j - 1] * k
    frac = top - floor(top)
    delta = -1 if (chain.n_variables - j) % 2 == 1 else 0
    out = []
    m = 0
    while frac + m < top:
        b = frac + m
        if b > delta and b >= 0:
            out.append(b)
        m += 1
    return tuple(out)


def apply_pf_operator(chain, series: dict[int, RatFunc]) -> dict[int, RatFunc]:
    """Literal application of the annihilating operator to a t-polynomial.

    Each first-order factor (A z t d/dt + B z + C q) sends t^k v to
    t^k ((A k + B) z + C q) v; the t^d prefactor shifts exponents.  This is
    an independent code path from the recurrence used by the library.
    """
    kw = weight_sequence(chain)
    first = dict(series)
    for j in range(1, chain.n_variables + 1):
        qj = chain.charges[j - 1]
        for c in range(chain.weights[j - 1]):
            first = {
                k: v * RatFunc.from_poly(BivarPoly.linear(qj * k + c, kw[j - 1]))
                for k, v in first.items()
            }
    first = {k + chain.degree: v for k, v in first.items()}
    second = dict(series)
    for c in range(1, chain.degree + 1):
        second = {
            k: v * RatFunc.from_poly(BivarPoly.linear(k - c, 0))
            for k, v in second.items()
        }
    out: dict[int, RatFunc] = {}
    for k, v in first.items():
        out[k] = out.get(k, RatFunc.zero()) + v
    for k, v in second.items():
        out[k] = out.get(k, RatFunc.zero()) - v
    return out


def test_b_range_matches_brute_force():
    for a in [(2, 2, 3), (3, 2, 2), (1, 4), (1, 2), (1, 6)]:
        chain = chain_solve(a)
        if not is_calabi_yau(chain):
            continue
        for j in range(1, chain.n_variables + 1):
            for k in range(1, 40):
                assert b_range(chain, j, k) == brute_b_range(chain, j, k)


def test_b_range_delta_convention():
    # b = 0 is admissible exactly when N - j is odd
    chain = chain_solve([2, 2, 3])
    assert b_range(chain, 2, 3) == (F(0),)  # N - j = 1, odd
    assert b_range(chain, 1, 3) == ()
    assert b_range(chain, 3, 3) == ()


def test_spot_values_223():
    chain = chain_solve([2, 2, 3])
    z, q = BivarPoly.z(), BivarPoly.q()
    i1 = i_coefficient(chain, 1)
    assert i1.value == RatFunc.from_poly(-1 * z)
    assert i1.sector == sector(chain, 1)
    assert not i1.is_broad
    i2 = i_coefficient(chain, 2)
    assert i2.value == RatFunc.from_scalar(-1)
    assert i2.sector == sector(chain, 2)
    i3 = i_coefficient(chain, 3)
    assert i3.value == RatFunc(q, z)
    assert i3.sector == sector(chain, 3)
    assert i3.is_broad


def test_rejects_non_cy_and_bad_k():
    with pytest.raises(ValueError):
        i_coefficient(chain_solve([3, 2]), 1)
    with pytest.raises(ValueError):
        i_coefficient(chain_solve([2, 2, 3]), 0)


def test_nonequivariant_limit():
    chain = chain_solve([2, 2, 3])
    assert nonequivariant_limit(i_coefficient(chain, 1)) == RatFunc.from_poly(
        -1 * BivarPoly.z()
    )
    assert nonequivariant_limit(i_coefficient(chain, 3)).is_zero
    for k in range(1, 31):
        ic = i_coefficient(chain, k)
        lim = nonequivariant_limit(ic)
        has_zero_b = any(F(0) in bs for bs in ic.b_sets)
        assert lim.is_zero == has_zero_b
        # order of vanishing at q = 0 counts the zero entries
        if not ic.value.is_zero:
            zero_count = sum(1 for bs in ic.b_sets for b in bs if b == 0)
            assert ic.value.q_valuation() == zero_count


def test_homogeneity_of_coefficients():
    chain = chain_solve([2, 2, 3])
    lam1, lam2 = F(2), F(-3, 2)
    for k in range(1, 12):
        v = i_coefficient(chain, k).value
        base = v.evaluate(5, 7)
        for lam in (lam1, lam2):
            scaled = v.evaluate(5 * lam, 7 * lam)
            deg = 1 + sum(len(bs) for bs in i_coefficient(chain, k).b_sets) - (k - 1)
            assert scaled == lam ** deg * base


def test_sector_labels():
    chain = chain_solve([3, 2, 2])
    for k in range(1, 20):
        ic = i_coefficient(chain, k)
        assert ic.sector == sector(chain, k)
        broad_expected = any((c * k) % 1 == 0 for c in chain.charges)
        assert ic.is_broad == broad_expected


def test_pf_operator_application_oracle():
    # literal operator application annihilates the series, independently of
    # the recurrence implemented in picard_fuchs_check
    for a in [(2, 2, 3), (3, 2, 2)]:
        chain = chain_solve(a)
        bound = 12
        series = {k: i_coefficient(chain, k).value for k in range(1, bound + 1)}
        image = apply_pf_operator(chain, series)
        for m in range(1, bound + 1):
            assert image.get(m, RatFunc.zero()).is_zero, (a, m)


def test_pf_check_passes():
    for a in [(2, 2, 3), (3, 2, 2)]:
        report = picard_fuchs_check(chain_solve(a), 33)
        assert report.all_ok
        assert len(report.items) == 33
        assert [i.m for i in report.items] == list(range(1, 34))


def test_pf_check_all_small_cy_chains():
    found = []
    for n in range(1, 4):
        for a in product(range(1, 7), repeat=n):
            if a[-1] == 1:
                continue
            chain = chain_solve(a)
            if is_calabi_yau(chain):
                found.append(a)
                assert picard_fuchs_check(chain, 30).all_ok, a
    # the Calabi-Yau chains in this window
    assert (2, 2, 3) in found and (3, 2, 2) in found
    assert all(a in found for a in [(1, k) for k in range(2, 7)])


def test_pf_rejects_non_cy():
    with pytest.raises(ValueError):
        picard_fuchs_check(chain_solve([3, 2]), 5)


def test_pf_operator_factor_counts():
    # the first product carries one factor per (variable, 0 <= c < weight),
    # the second one per 1 <= c <= degree; on a Calabi-Yau chain they agree
    for a in [(2, 2, 3), (3, 2, 2), (1, 4)]:
        chain = chain_solve(a)
        first = sum(chain.weights)
        second = chain.degree
        assert first == second


def test_big_i_factor_cases():
    z, q = BivarPoly.z(), BivarPoly.q()
    w = F(1, 2)
    assert big_i_factor(0, w, -2) == RatFunc.one()
    assert big_i_factor(1, w, -2) == RatFunc.from_poly(w * z - 2 * q)
    assert big_i_factor(-1, w, -2) == RatFunc(
        BivarPoly.constant(1), (w - 1) * z - 2 * q
    )
    assert big_i_factor(2, F(0), 1) == RatFunc.from_poly(q * (z + q))
    assert big_i_factor(-2, F(3), 1) == 1 / RatFunc.from_poly(
        (2 * z + q) * (z + q)
    )
