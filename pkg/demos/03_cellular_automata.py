"""
Cellular automata
=================

Over a finite monoid a cellular automaton is any shift-commuting self-map of
A^M; over Z it is given by a local rule.
"""

import numpy as np

from rfca.cellular import (
    apply_rule,
    compose,
    enumerate_ca,
    from_wolfram,
    rule_from_function,
    rules_equal,
    tau_m,
)
from rfca.monoid_core import CATALOG
from rfca.shift_space import PeriodicWord

for name in ("trivial", "z2", "semilattice2", "z3", "leftzero3"):
    print(f"|CA({name}, 2)| = {len(enumerate_ca(CATALOG[name], 2))}")

# m -> τ_m reverses products
M = CATALOG["leftzero3"]
t1, t2 = tau_m(M, 2, 1), tau_m(M, 2, 2)
print("τ_{ab} == τ_b ∘ τ_a:", tau_m(M, 2, M.mul(1, 2)) == compose(t2, t1))

# rule 90 twice is the XOR of cells two apart
r90 = from_wolfram(90)
print("90∘90 is x(k-2) xor x(k+2):",
      rules_equal(compose(r90, r90), rule_from_function(2, 2, lambda w: w[0] ^ w[4])))

# a few steps of rule 110 on a ring of 24 cells
y = PeriodicWord([0] * 23 + [1])
rows = [y.word]
for _ in range(12):
    y = apply_rule(from_wolfram(110), y)
    rows.append(y.word)
for row in np.array(rows):
    print("".join(".#"[v] for v in row))
