"""
Localization products and tautological relations
================================================

The Hodge-capped virtual class of a chain-type moduli problem is the
q -> 0 limit of a finite Laurent product of equivariant Euler classes,

    e_{-k_{N+1} q}(E) * prod_j e_{k_j q}(-R_j).

When the product has poles at q = 0, their coefficients are classes that
must vanish on the geometric side: tautological relations.  The same
product can be written with Hirzebruch classes at t = exp(-q); both sides
converge together and share the limit.
"""

from chloc import (
    KClass,
    LocInput,
    Ring,
    chain_solve,
    chain_specialization,
    hodge_product,
    line_bundle,
    tautological_crosscheck,
)

ring = Ring([("x", 1)], truncation=2)
x = ring.generator("x")
L = line_bundle(x)

# %%
# A convergent instance: the limit is the Hodge-capped class.

inp = LocInput(ring=ring, hodge=KClass.zero(ring), hodge_weight=-3, pushed=((-L, 1),))
res = hodge_product(inp)
print("series:", res.series)
print("limit:", res.limit)

# %%
# A divergent rig: the negative coefficients are the extracted relations.

rig = LocInput(ring=ring, hodge=KClass.zero(ring), hodge_weight=1, pushed=((L, 1),))
res = hodge_product(rig)
print("convergent:", res.convergent)
for e, c in res.relations:
    print(f"  relation at q^{e}: {c}")

# %%
# Weights can be attached automatically from a chain.

chain = chain_solve([2, 2, 3])
auto = LocInput.for_chain(ring, KClass.trivial(ring, 1), [KClass.zero(ring)] * 3, chain)
print("chain weights:", [k for _, k in auto.pushed], "hodge weight:", auto.hodge_weight)
print("series:", hodge_product(auto).series)

# %%
# The general fixed-locus product with explicit Euler and Todd data reduces
# to the chain-shaped product on the standard specialization.

a_cl = [L + KClass.trivial(ring, 1)]
b_cl = [line_bundle(-x)]
general = chain_specialization(
    KClass.trivial(ring, 1), -2, a_classes=[(a_cl[0], 1)], b_classes=[(b_cl[0], 1)]
)
direct = hodge_product(
    LocInput(
        ring=ring,
        hodge=KClass.trivial(ring, 1),
        hodge_weight=-2,
        pushed=((a_cl[0] - b_cl[0], 1),),
    )
)
print("specialization agrees:", general.series == direct.series)

# %%
# Crosscheck of the two multiplicative sides on the divergent rig.

report = tautological_crosscheck(rig)
print("both sides divergent:", not report.euler_convergent and not report.hirzebruch_convergent)
print("relation spans agree:", report.span_euler_in_hirzebruch and report.span_hirzebruch_in_euler)
