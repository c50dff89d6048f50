"""
Exact truncated Chow rings and Laurent series
=============================================

Every computation in chloc happens in a truncated graded polynomial ring
over the rationals: pick named generators with degrees and a truncation
order D, and every monomial of degree above D is identically zero.  All
coefficients are exact fractions, so identities are decided by literal
equality.
"""

from fractions import Fraction

from chloc import QSeries, Ring, parse_class_expr

# A ring with a degree-1 class and a degree-2 class, truncated at degree 3.
ring = Ring([("h", 1), ("c", 2)], truncation=3)
h, c = ring.gens()

print("ring:", ring)
print("h^2 * c =", h * h * c, "   (degree 4 is beyond the truncation)")
print("(h + c)^2 =", (h + c) ** 2)

# %%
# Nilpotent classes have exact exponentials: the series stops by itself.

x = h + c
print("exp(h + c) =", x.exp())
print("exp splits products:", (x + h).exp() == x.exp() * h.exp())

# %%
# Class expressions use an exact grammar: rationals, generators, + - * ^.

parsed = parse_class_expr("3/2*h^2 + c - h", ring)
print("parsed:", parsed)
print("round-trip:", parse_class_expr(str(parsed), ring) == parsed)

# %%
# Laurent series in the equivariant parameter q carry ring coefficients.
# Inversion is exact whenever the leading structure is invertible; with a
# nilpotent tail the inverse is even a finite Laurent polynomial.

s = QSeries(ring, {1: ring.one(), 0: h})  # q + h
inv = s.invert()
print("(q + h)^{-1} =", inv)
print("two-sided inverse:", s * inv == QSeries.one(ring))

# %%
# Series flag their behaviour at q -> 0: negative powers are the obstruction.

t = QSeries(ring, {-1: h, 0: ring.one(), 2: c})
print("negative part of", t, "->", [(e, str(v)) for e, v in t.negative_part()])
print("convergent:", t.is_convergent)
print("limit of 3 + 5q:", QSeries.from_scalars(ring, {0: 3, 1: 5}).limit())
print("exact rational in the ring:", ring.const(Fraction(22, 7)))
