"""
Hopficity and separating endomorphisms
======================================

For a surjective endomorphism ψ, precomposition ``u -> u ∘ ψ`` is injective on
the finite set Mor(S, T), hence a permutation; pulling a separating ρ back
through it shows ψ keeps distinct elements apart.  For two endomorphisms,
the intersection of all kernels of maps into T is preserved by every
endomorphism, and the induced maps on the quotient still differ.
"""

from rfca.monoid_core import CATALOG, SemigroupMorphism, constant_morphism, enumerate_morphisms, identity_morphism
from rfca.witness_engine import malcev_hopf_check, separate_endomorphisms, verify_certificate

z6 = CATALOG["z6"]
times5 = SemigroupMorphism(z6, z6, [(5 * i) % 6 for i in range(6)], monoidal=True)
print(malcev_hopf_check(z6, times5, 1, 2).summary())
print()

# a non-surjective endomorphism: nothing to conclude
s = CATALOG["semilattice2"]
print(malcev_hopf_check(s, constant_morphism(s, s), 0, 1).summary())
print()

# test against a smaller target: Z/3 sees the difference between 1 and 5
cert = separate_endomorphisms(z6, identity_morphism(z6), times5, T=CATALOG["z3"])
print("quotient size", cert.quotient.quotient.size,
      "induced maps", cert.induced1.images, cert.induced2.images,
      "verified:", bool(verify_certificate(cert)))

print("|End(Z/6)| =", len(enumerate_morphisms(z6, z6)))
