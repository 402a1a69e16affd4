"""Braided equivariant crossed modules: construction and validation.

The running example is conjugation on a normal subgroup with abelian
quotient; the braiding table is the commutator map.
"""

import xmodcat as xc

S3 = xc.symmetric3()
A3 = xc.subgroup_generated(S3, [1])
M = xc.conjugation_module(S3, A3)
print("S3/A3 module:", M)
report = M.validate()
print("all axioms pass?", report.ok)
for entry in report.entries:
    print(f"  {entry.key}: {'ok' if entry.ok else entry.first_witness}")

# Homotopy groups: the cokernel and kernel of the boundary, as modules.
print("pi0 invariants:", list(M.pi0().abelian.invariants))
print("pi1 invariants:", list(M.pi1().abelian.invariants))
print("symmetric?", M.is_symmetric(), "| abelian?", M.is_abelian_module())

# An equivariant example: the order-2 group acting on Z/4 by negation.
Z2, Z4 = xc.cyclic(2), xc.cyclic(4)
from xmodcat.groups import action_from_automorphism
act = action_from_automorphism(Z2, Z4, [0, 3, 2, 1])
Mg = xc.conjugation_module(Z4, [0, 2], Z2, act)
print("Z4 negation module valid?", Mg.is_valid)

# Breaking one braiding entry is caught with a witness.
eta = [list(r) for r in M.eta]
eta[1][2] = (eta[1][2] + 1) % M.B.order
broken = xc.BraidedGammaCrossedModule(M.B, M.D, M.d, M.theta, eta)
print("mutated module first failure:", broken.validate().first_failure())
