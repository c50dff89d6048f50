"""
Chain polynomials, weights, and diagonal symmetries
===================================================

A chain polynomial x1^a1 x2 + x2^a2 x3 + ... + xN^aN determines primitive
weights, a degree, and charges; it is of Calabi-Yau type when the degree
equals the weight sum.  Its diagonal symmetry group is finite of order
a1 * a2 * ... * aN, with a distinguished grading element whose exponents
are the charges.
"""

from chloc import (
    chain_solve,
    grading_element,
    is_calabi_yau,
    sector,
    selection_rule,
    symmetry_group,
    weight_sequence,
)

chain = chain_solve([2, 2, 3])
print("W =", chain.polynomial_str())
print("weights:", chain.weights, " degree:", chain.degree)
print("charges:", tuple(str(c) for c in chain.charges))
print("Calabi-Yau:", is_calabi_yau(chain))

# %%
# The symmetry group: 2 * 2 * 3 = 12 elements, closed under composition.

group = symmetry_group(chain)
print("order:", len(group))
print("first elements:", [str(g) for g in group[:4]])

j = grading_element(chain)
print("grading element:", j)
print("degree-th power is the identity:", (j ** chain.degree))

# %%
# Powers of the grading element label the sectors; an element is broad when
# one of its exponents vanishes.

for k in range(1, 5):
    s = sector(chain, k)
    print(f"sector {k}: {s}  {'broad' if s.is_broad else 'narrow'}")

# %%
# The selection rule for decorated moduli problems: the insertions must
# multiply to the (2g - 2 + n)-th power of the grading element.

print("(j, j, j) at genus 0:", selection_rule(chain, 0, 3, [j, j, j]))
good = [j, j, j ** (chain.degree - 1)]
print("(j, j, j^{d-1}) at genus 0:", selection_rule(chain, 0, 3, good))

# %%
# Each variable also carries an equivariant weight, alternating in sign.

print("equivariant weights:", weight_sequence(chain))
print("for x^5:", weight_sequence(chain_solve([5])))
