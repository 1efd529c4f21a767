"""
Shift spaces and invariant sets
===============================

``shift(m, x)(m') = x(m' m)``.  Configurations of a finite monoid are tuples
of symbols; configurations of A^Z are represented by periodic words.
"""

from rfca.monoid_core import CATALOG, make_congruence
from rfca.shift_space import (
    Configuration,
    PeriodicWord,
    integer_orbit_congruence,
    inv,
    inv_integer,
    orbit,
    orbit_congruence,
    periodic_cylinder_witness,
    shift,
)

z6 = CATALOG["z6"]
x = Configuration(z6, (1, 0, 0, 1, 0, 0))
print("orbit of", x.values, "has", len(orbit(x)), "points")

# the orbit congruence: m1 ~ m2 when they move every orbit point alike
gamma = orbit_congruence(z6, orbit(x))
print("orbit congruence classes:", gamma.classes())

# Inv(γ): configurations constant on each class; |A|^index of them
X = inv(z6, gamma, 2)
print(f"|Inv(γ)| = {len(X)}")
assert all(shift(m, y) in set(X) for m in range(6) for y in X)

# the integer backend
y = PeriodicWord((0, 1, 0, 1))
print(y, "== PeriodicWord(01):", y == PeriodicWord((0, 1)))
print("minimal period:", integer_orbit_congruence(y))
print("period-2 words:", inv_integer(2, 2))

# any finite pattern sits inside some periodic configuration
w = periodic_cylinder_witness([(-2, 1), (0, 0), (3, 1)], 2)
print("periodic point through the cylinder:", w, [w(k) for k in (-2, 0, 3)])
