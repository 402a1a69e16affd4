"""Extensions of modules over a grading group, classified two ways.

The functor side partitions monoidal functors out of the discrete model
by homotopy; the extension side builds crossed products from every
symmetric 2-cocycle and partitions them by isomorphism search.  The
correspondence between the two is checked, not assumed, and the
obstruction decides when the answer is empty.
"""

import xmodcat as xc
from xmodcat import samples
from xmodcat.groups import GammaModule, action_from_automorphism, trivial_action

Z2, Z4 = xc.cyclic(2), xc.cyclic(4)
TRIV = xc.trivial_group()

# Extensions of Z/2 by Z/2: the Klein group and Z/4.
M = samples.abelian_module(Z2, TRIV, [0, 0])
Qm = GammaModule(Z2, trivial_action(TRIV, Z2))
res = xc.classify(M, Qm, [0, 0])
print("obstructed:", res.obstructed, "| classes:", res.class_count,
      "| H2 invariants:", res.h2_invariants)
for e in res.representatives:
    print("  extension with middle group invariants",
          xc.abelian_invariants(e.E.group))

# The full correspondence report on the same scenario.
rep = xc.schreier_bijection_check(M, Qm, [0, 0])
print("functor classes:", rep.functor_class_count,
      "| extension classes:", rep.extension_class_count,
      "| bijection checks pass:", rep.ok)

# A structural map forcing the nonsplit answer: the boundary embeds Z/2
# into Z/4 and the induced map to the cokernel is the identity.
M2 = samples.abelian_module(Z2, Z4, [0, 2])
res2 = xc.classify(M2, Qm, [0, 1])
print("nonzero structural class:", res2.class_count, "class(es);",
      "middle group:", xc.abelian_invariants(res2.representatives[0].E.group))

# An obstructed instance: negation upstairs against the trivial action
# downstairs twists the skeletal model, and no extension exists.
neg = action_from_automorphism(Z2, Z4, [0, 3, 2, 1])
M3 = samples.abelian_module(Z4, Z4, [0, 2, 0, 2], Z2, neg,
                            trivial_action(Z2, Z4))
Q2 = GammaModule(Z2, trivial_action(Z2, Z2))
res3 = xc.classify(M3, Q2, [0, 1])
print("equivariant instance obstructed:", res3.obstructed)
check = xc.schreier_bijection_check(M3, Q2, [0, 1])
print("independent enumeration finds", check.extension_class_count,
      "extensions")
