"""
Finite monoids, congruences and quotients
=========================================

A monoid here is a multiplication table plus the index of its identity.
"""

from rfca.monoid_core import (
    CATALOG,
    SemigroupMorphism,
    all_congruences,
    enumerate_morphisms,
    generating_set,
    intersect_congruences,
    kernel_relation,
    make_congruence,
    make_monoid,
    NotAssociative,
    opposite,
    quotient,
)

z6 = CATALOG["z6"]
print(z6, "generated by", generating_set(z6))

# tables are validated on construction
try:
    make_monoid([[0, 1, 2], [1, 2, 1], [2, 1, 1]], 0)
except NotAssociative as exc:
    print("rejected:", exc)

# reduction mod 2 is a monoid morphism; its kernel is a congruence
mod2 = SemigroupMorphism(z6, CATALOG["z2"], [i % 2 for i in range(6)], monoidal=True)
k2 = kernel_relation(mod2)
print("kernel of mod 2:", k2.classes())

# meets of finite-index congruences stay finite index
k3 = make_congruence(z6, [i % 3 for i in range(6)])
meet = intersect_congruences(k2, k3)
print(f"index {k2.index} ∩ index {k3.index} -> index {meet.index}")

q = quotient(z6, k2)
print("Z/6 mod 2 has table", q.quotient.table)

# every congruence of a small monoid, by filtering set partitions
for name in ("z2", "semilattice2", "leftzero3"):
    print(name, "has", len(all_congruences(CATALOG[name])), "congruences")

# morphisms Z/6 -> Z/2, in lexicographic order of images
for phi in enumerate_morphisms(z6, CATALOG["z2"], monoidal=True):
    print("  ", phi.images)

lz = CATALOG["leftzero3"]
print("left zero a*b =", lz.mul(1, 2), "; in the opposite, a*b =", opposite(lz).mul(1, 2))
