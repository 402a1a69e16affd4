"""Symmetric equivariant cohomology in degree 2, computed two ways.

The exhaustive route enumerates normalized symmetric tables and filters
by the cocycle identities; the linear route feeds the same identities to
the Smith-normal-form backend.  Both return canonical (lexicographically
least) class representatives, so agreement is literal.
"""

import xmodcat as xc
from xmodcat.groups import GammaModule, action_from_automorphism, trivial_action

Z2, Z4 = xc.cyclic(2), xc.cyclic(4)
TRIV = xc.trivial_group()

Qm = GammaModule(Z2, trivial_action(TRIV, Z2))
res_brute = xc.h2(Qm, Qm, method="brute")
res_snf = xc.h2(Qm, Qm, method="snf")
print("H2(Z2, Z2):", res_snf.invariants, "order", res_snf.class_count)
print("paths agree:", res_brute.invariants == res_snf.invariants)
for i, rep in enumerate(res_snf.representatives):
    print(f"  class {i}: qq = {rep.qq}")

# With a grading group: Z/4 with negation, coefficients Z/2.
Qn = GammaModule(Z4, action_from_automorphism(Z2, Z4, [0, 3, 2, 1]))
Bm = GammaModule(Z2, trivial_action(Z2, Z2))
res = xc.h2(Qn, Bm, method="both")
print("H2 of negated Z4 with Z2 coefficients:", res.invariants)

# Degree 3 is never materialized as a quotient: a table is a cocycle
# exactly when the skeletal category built on it is coherent.
h0 = xc.zero_cochain3(Qm, Qm)
print("zero 3-cochain is a cocycle:", xc.is_3cocycle(h0)[0])
twist = xc.Cochain3(Qm, Qm, h0.assoc, [[0, 0], [0, 1]], h0.tensor, h0.comp)
print("braid-twisted table is a cocycle:", xc.is_3cocycle(twist)[0])

# ... but its class is an obstruction: no functor of type (id, 0) reaches
# the twisted skeletal model, while the untwisted one admits exactly |H2|.
k = xc.obstruction([0, 1], [0, 1], h0, twist)
print("twisted class vanishes:",
      xc.class_vanishes(k, (Qm, Qm, h0), (Qm, Qm, twist), [0, 1], [0, 1]))
D = xc.dis(Qm)
G0 = xc.build_reduced(Qm, Qm, h0)
print("homotopy classes into the untwisted model:",
      len(xc.homotopy_classes(D, G0, phi=[0, 1])))
