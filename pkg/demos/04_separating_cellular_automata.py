"""
Separating cellular automata in a finite quotient
=================================================

Given two distinct automata, find a periodic configuration where they differ,
take its orbit congruence γ and restrict both automata to the finite set
Inv(γ).  The restrictions are distinct self-maps of a finite set.
"""

from rfca.cellular import enumerate_ca, from_wolfram
from rfca.monoid_core import CATALOG
from rfca.witness_engine import dumps_certificate, separate_ca_finite, separate_ca_integer, verify_certificate

cert = separate_ca_integer(from_wolfram(110), from_wolfram(90))
print("witness", cert.witness, "period", cert.congruence)
print("X =", list(cert.invariant_set))
print("rule 110 on X:", cert.image1.mapping)
print("rule  90 on X:", cert.image2.mapping)
print("verified:", bool(verify_certificate(cert)))
print(dumps_certificate(cert))

# finite monoid backend
M = CATALOG["leftzero3"]
cas = enumerate_ca(M, 2)
cert = separate_ca_finite(M, 2, cas[10], cas[200])
print("finite witness", cert.witness.values, "|X| =", len(cert.invariant_set),
      "verified:", bool(verify_certificate(cert)))

# the longest witness period among all elementary pairs
worst = max(separate_ca_integer(from_wolfram(a), from_wolfram(b)).congruence
            for a in range(256) for b in range(a + 1, 256))
print("largest witness period over all elementary pairs:", worst)
