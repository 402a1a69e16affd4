"""Finite groups as multiplication tables: validation, subgroups,
quotients, and the abelian linear algebra behind everything else."""

import xmodcat as xc

# Groups are square index tables with the identity pinned at index 0.
Z6 = xc.cyclic(6)
S3 = xc.symmetric3()
Q8 = xc.quaternion8()

print("orders:", Z6.order, S3.order, Q8.order)
print("S3 abelian?", S3.is_abelian)

# Subgroup machinery: closure, commutators, centers.
print("subgroup of Z6 generated by 2:", xc.subgroup_generated(Z6, [2]))
A3 = xc.commutator_subgroup(S3)
print("derived subgroup of S3:", A3)
print("center of Q8:", xc.center(Q8))

# Quotients index cosets by their least member, so results are canonical.
Q, proj = xc.quotient(xc.cyclic(4), [0, 2])
print("Z4 / {0,2} has order", Q.order, "with projection", list(proj.map))

# Invariant factors are computed constructively and verified by rebuilding
# the coordinate bijection.
print("invariants of Z2 x Z4:",
      xc.abelian_invariants(xc.direct_product(xc.cyclic(2), xc.cyclic(4))))

# The Smith-normal-form backend answers kernel/image questions about maps
# of presented abelian groups; here, multiplication by 2 on Z/4.
kernel, image = xc.hom_kernel_image([4], [4], [[2]])
print("mult-by-2 on Z4: kernel", kernel.invariants, "image", image.invariants)
