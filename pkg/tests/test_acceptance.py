"""Acceptance suite: one criterion per test, each printing a pass/fail line.

Everything is exact rational arithmetic, so every tolerance is zero
difference; the only numeric knobs are the seeded case counts and the
series truncation orders fixed below.
"""

import subprocess
import sys
import time
from fractions import Fraction as F
from itertools import product
from math import gcd, prod
from pathlib import Path
from random import Random

import pytest

from chloc import (
    BivarPoly,
    KClass,
    LocInput,
    RatFunc,
    Ring,
    b_range,
    bernoulli,
    chain_solve,
    crosscheck_factors,
    equivariant_euler,
    euler_identity_check,
    chain_specialization,
    grading_element,
    hirzebruch_class,
    hodge_product,
    i_coefficient,
    line_bundle,
    nonequivariant_limit,
    picard_fuchs_check,
    q_exponential,
    sector,
    stirling2,
    symmetry_group,
)
from chloc.sampling import sample_kclass, sample_weight

from oracles import bernoulli_oracle, stirling_oracle
from test_chains import brute_force_group
from test_ifunction import brute_b_range

GOLDEN = Path(__file__).parent / "golden"


def _report(number: int, name: str, ok: bool, elapsed: float):
    print(f"ACCEPTANCE {number:02d} {name}: {'PASS' if ok else 'FAIL'} ({elapsed:.1f}s)")


def _random_ring(rng: Random, d_max=6) -> Ring:
    degs = [1] + [rng.randint(1, 3) for _ in range(rng.randint(0, 2))]
    names = ["a", "b", "c"][: len(degs)]
    return Ring(list(zip(names, degs)), rng.randint(1, d_max))


def test_criterion_1_euler_hirzebruch_identity():
    """e_q(X) equals the Hirzebruch class at exp(-kq) times the Todd twist,
    per coefficient up to order 14, on 200 seeded random classes."""
    t0 = time.time()
    rng = Random(20230808)
    ok = True
    for _ in range(200):
        ring = _random_ring(rng)
        x = sample_kclass(rng, ring)
        k = sample_weight(rng)  # nonzero in {-3..3}
        check = euler_identity_check(x, k, q_max=14)
        if not check.equal:
            ok = False
            break
    elapsed = time.time() - t0
    _report(1, "comparison identity (200 classes, order 14)", ok, elapsed)
    assert ok
    assert elapsed < 30


def test_criterion_2_multiplicativity():
    """Both multiplicative laws hold exactly on 200 random pairs."""
    t0 = time.time()
    rng = Random(777)
    ok = True
    for i in range(100):
        ring = _random_ring(rng)
        x, y = sample_kclass(rng, ring), sample_kclass(rng, ring)
        k = sample_weight(rng)
        if equivariant_euler(x + y, k) != equivariant_euler(x, k) * equivariant_euler(y, k):
            ok = False
    for i in range(100):
        ring = _random_ring(rng)
        x, y = sample_kclass(rng, ring), sample_kclass(rng, ring)
        t = F(rng.randint(-6, 6), rng.randint(1, 4))
        if t == 1:
            t = F(1, 2)
        if hirzebruch_class(t, x + y) != hirzebruch_class(t, x) * hirzebruch_class(t, y):
            ok = False
    # the formal-parameter side of the same law, spot-checked to order 14
    for i in range(5):
        ring = _random_ring(rng, d_max=3)
        x, y = sample_kclass(rng, ring), sample_kclass(rng, ring)
        k = sample_weight(rng)
        t = q_exponential(ring, -k, 30)
        lhs = hirzebruch_class(t, x + y, q_max=14)
        rhs = hirzebruch_class(t, x, q_max=14) * hirzebruch_class(t, y, q_max=14)
        if lhs.truncated(14) != rhs.truncated(14):
            ok = False
    elapsed = time.time() - t0
    _report(2, "multiplicativity (200 pairs + formal spots)", ok, elapsed)
    assert ok
    assert elapsed < 10


@pytest.mark.parametrize("exponents", [(2, 2, 3), (3, 2, 2)])
def test_criterion_3_picard_fuchs(exponents):
    """The annihilation identity holds for every t-power up to 33."""
    t0 = time.time()
    chain = chain_solve(exponents)
    report = picard_fuchs_check(chain, 33)
    elapsed = time.time() - t0
    _report(3, f"Picard-Fuchs m<=33 for {exponents}", report.all_ok, elapsed)
    assert report.all_ok
    assert len(report.items) == 33
    assert elapsed < 10


def test_criterion_4_i_spot_values():
    """Hand-evaluated leading I-coefficients for the (2,2,3) chain."""
    t0 = time.time()
    chain = chain_solve([2, 2, 3])
    z, q = BivarPoly.z(), BivarPoly.q()
    i1, i2, i3 = (i_coefficient(chain, k) for k in (1, 2, 3))
    ok = (
        i1.value == RatFunc.from_poly(-1 * z)
        and i1.sector == sector(chain, 1)
        and i2.value == RatFunc.from_scalar(-1)
        and i2.sector == sector(chain, 2)
        and i3.value == RatFunc(q, z)
        and i3.sector == sector(chain, 3)
    )
    elapsed = time.time() - t0
    _report(4, "I-coefficient spot values", ok, elapsed)
    assert ok


def test_criterion_5_nonequivariant_limits():
    """Limits at q -> 0 exist for k <= 30 and vanish exactly when an
    admissible progression contains b = 0; progressions match brute force."""
    t0 = time.time()
    chain = chain_solve([2, 2, 3])
    ok = True
    for k in range(1, 31):
        ic = i_coefficient(chain, k)
        for j in range(1, 4):
            if b_range(chain, j, k) != brute_b_range(chain, j, k):
                ok = False
        if ic.value.den.q_valuation() != 0:
            ok = False  # the limit must always exist
        lim = nonequivariant_limit(ic)
        expect_zero = any(F(0) in bs for bs in ic.b_sets)
        if lim.is_zero != expect_zero:
            ok = False
    elapsed = time.time() - t0
    _report(5, "non-equivariant limits k<=30", ok, elapsed)
    assert ok


def test_criterion_6_chain_combinatorics():
    """Exact weights for all small chains; symmetry group order against
    brute force; the grading element has order dividing the degree."""
    t0 = time.time()
    ok = True
    for n in range(1, 5):
        for a in product(range(1, 7), repeat=n):
            if a[-1] == 1:
                continue
            c = chain_solve(a)
            for j in range(n - 1):
                if a[j] * c.weights[j] + c.weights[j + 1] != c.degree:
                    ok = False
            if a[-1] * c.weights[-1] != c.degree:
                ok = False
            if gcd(*c.weights, c.degree) != 1:
                ok = False
            j_elem = grading_element(c)
            if (j_elem ** c.degree).theta != tuple(F(0) for _ in a):
                ok = False
    for n in range(1, 4):
        for a in product(range(1, 6), repeat=n):
            if a[-1] == 1:
                continue
            c = chain_solve(a)
            group = symmetry_group(c)
            if len(group) != prod(a):
                ok = False
            if [s.theta for s in group] != brute_force_group(a):
                ok = False
    elapsed = time.time() - t0
    _report(6, "chain combinatorics vs brute force", ok, elapsed)
    assert ok
    assert elapsed < 10


def test_criterion_7_tautological_crosscheck():
    """Convergence equivalence and equal limits on 100 random inputs;
    mutual span containment on 20 rigged divergent single-generator rigs."""
    t0 = time.time()
    rng = Random(515151)
    ok = True
    convergent_seen = divergent_seen = 0
    for _ in range(100):
        degs = [1] + [rng.randint(1, 2) for _ in range(rng.randint(0, 2))]
        names = ["a", "b", "c"][: len(degs)]
        ring = Ring(list(zip(names, degs)), rng.randint(1, 4))
        n = rng.randint(0, 3)
        inp = LocInput(
            ring=ring,
            hodge=sample_kclass(rng, ring, rank_min=0, rank_max=2),
            hodge_weight=sample_weight(rng),
            pushed=tuple(
                (sample_kclass(rng, ring), sample_weight(rng)) for _ in range(n)
            ),
        )
        rep = crosscheck_factors(
            ring,
            [(inp.hodge, -inp.hodge_weight)] + [(-r, k) for r, k in inp.pushed],
        )
        if rep.euler_convergent != rep.hirzebruch_convergent:
            ok = False
        if rep.euler_convergent:
            convergent_seen += 1
            if rep.limit_euler != rep.limit_hirzebruch:
                ok = False
        else:
            divergent_seen += 1
    # rigged divergent family: honest line-bundle data over one generator
    rig_count = 0
    for i in range(20):
        D = 1 + (i % 4)
        ring = Ring([("x", 1)], D)
        x = ring.generator("x")
        scale = 1 + (i % 3)
        w1 = (-1) ** i * (1 + i % 2)
        factors = [(-line_bundle(x * scale), w1)]
        if i % 2:
            factors.append((KClass.trivial(ring, i % 3), 1))
        rep = crosscheck_factors(ring, factors)
        if rep.euler_convergent:
            continue
        rig_count += 1
        if not (rep.span_euler_in_hirzebruch and rep.span_hirzebruch_in_euler):
            ok = False
    elapsed = time.time() - t0
    _report(
        7,
        f"crosscheck ({convergent_seen} conv / {divergent_seen} div / {rig_count} rigs)",
        ok and rig_count >= 20,
        elapsed,
    )
    assert ok
    assert rig_count >= 20
    assert elapsed < 60


def test_criterion_8_proof_chain():
    """The general fixed-locus product specializes to the chain product, and
    dualizing flips the sign of both the weight and an odd-rank prefactor."""
    t0 = time.time()
    rng = Random(888)
    ok = True
    for _ in range(50):
        ring = _random_ring(rng, d_max=4)
        n = rng.randint(1, 3)
        a_cl = [sample_kclass(rng, ring) for _ in range(n)]
        b_cl = [sample_kclass(rng, ring) for _ in range(n)]
        ws = [sample_weight(rng) for _ in range(n)]
        e_w = sample_weight(rng)
        hodge = sample_kclass(rng, ring, rank_min=0, rank_max=3)
        hp = hodge_product(
            LocInput(
                ring=ring,
                hodge=hodge,
                hodge_weight=e_w,
                pushed=tuple((a - b, k) for a, b, k in zip(a_cl, b_cl, ws)),
            )
        )
        gp = chain_specialization(
            hodge, e_w, a_classes=list(zip(a_cl, ws)), b_classes=list(zip(b_cl, ws))
        )
        if hp.series != gp.series:
            ok = False
    for _ in range(50):
        ring = _random_ring(rng)
        x = sample_kclass(rng, ring)
        k = sample_weight(rng)
        lhs = equivariant_euler(x.dual(), k)
        rhs = equivariant_euler(x, -k) * F((-1) ** (x.rank % 2))
        if lhs != rhs:
            ok = False
    elapsed = time.time() - t0
    _report(8, "proof-chain identities (50 + 50)", ok, elapsed)
    assert ok


def test_criterion_9_gamma_and_bernoulli():
    """Stirling coefficients from the generating function; Bernoulli values
    from the independent series oracle."""
    t0 = time.time()
    ok = True
    for l in range(0, 13):
        for k in range(0, 13):
            if stirling2(l, k) != stirling_oracle(l, k):
                ok = False
    ok = ok and bernoulli(1) == F(-1, 2) == bernoulli_oracle(1)
    ok = ok and bernoulli(2) == F(1, 6) == bernoulli_oracle(2)
    ok = ok and bernoulli(4) == F(-1, 30) == bernoulli_oracle(4)
    elapsed = time.time() - t0
    _report(9, "generating-function coefficients", ok, elapsed)
    assert ok


def test_criterion_10_cli_contract():
    """Golden bytes for the three subcommands, identical across two runs,
    with the documented exit codes."""
    t0 = time.time()

    def run(*args):
        return subprocess.run(
            [sys.executable, "-m", "chloc", *args],
            capture_output=True,
            cwd=GOLDEN,
            env={"PATH": "/usr/bin:/bin"},
        )

    cases = [
        (("chain", "analyze", "2", "2", "3"), "chain_analyze_223.txt", 0),
        (("ifunction", "2", "2", "3", "--k-max", "3"), "ifunction_223_k3.txt", 0),
        (("classes", "identity", "--job", "job_identity.json"), "classes_identity.txt", 0),
        (
            ("classes", "hodge", "--job", "job_hodge_divergent.json"),
            "classes_hodge_divergent.txt",
            2,
        ),
    ]
    ok = True
    for args, golden, code in cases:
        first = run(*args)
        second = run(*args)
        expected = (GOLDEN / golden).read_bytes()
        if first.stdout != expected or second.stdout != expected:
            ok = False
        if first.returncode != code or second.returncode != code:
            ok = False
    if run("chain", "analyze", "3", "1").returncode != 1:
        ok = False
    elapsed = time.time() - t0
    _report(10, "CLI determinism and exit codes", ok, elapsed)
    assert ok
