"""
Characteristic classes and the comparison identity
==================================================

K-theory classes are stored as a rank plus Chern characters.  On top of
them the library computes the Todd class, the equivariant Euler class

    e_q(X) = q^rank * exp(-sum_l (l-1)!/(-q)^l Ch_l(X)),

the Hirzebruch class c_t(X) = Ch(lambda_{-t} X^v) Td(X), and the Todd
twist by a formal line bundle of first Chern class q.  The three are tied
together by the identity

    e_q(X) = c_{exp(-q)}(X) * Td(X (x) O(q)) / Td(X),

which this demo checks on the nose.
"""

from fractions import Fraction

from chloc import (
    KClass,
    Ring,
    equivariant_euler,
    euler_identity_check,
    hirzebruch_class,
    line_bundle,
    sum_of_roots,
    todd,
    todd_twist_ratio,
)

ring = Ring([("x", 1)], truncation=3)
x = ring.generator("x")
L = line_bundle(x)

print("Todd(L) =", todd(L))
print("e_q(L) =", equivariant_euler(L, 1))
print("e_q(-L) =", equivariant_euler(-L, 1))
print("product is exactly 1:", equivariant_euler(L, 1) * equivariant_euler(-L, 1))

# %%
# The Euler class factors through Chern roots, with the weight scaling q.

v = sum_of_roots(ring, [x, 2 * x])
print("e_{2q}(x) * e_{2q}(2x) =", equivariant_euler(v, 2))

# %%
# The Hirzebruch class at a rational parameter; on a line bundle it is the
# series x (e^x - t) / (e^x - 1).

t = Fraction(1, 3)
print("c_t(L) at t=1/3:", hirzebruch_class(t, L))
print(
    "multiplicative:",
    hirzebruch_class(t, L + v) == hirzebruch_class(t, L) * hirzebruch_class(t, v),
)

# %%
# The Todd twist of the trivial line is q / (1 - exp(-q)).

print("twist of O:", todd_twist_ratio(KClass.trivial(ring, 1), 1, q_max=6))

# %%
# The comparison identity, checked per coefficient for a virtual class of
# negative rank at weight -2.

cls = -L + KClass.trivial(ring, 1)
check = euler_identity_check(cls, -2, q_max=10)
print("identity holds:", check.equal)
print("lhs =", check.lhs)
