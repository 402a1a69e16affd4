import itertools

import pytest

from xmodcat import groups as g
from xmodcat.errors import (
    MatrixShapeMismatch,
    NoInverse,
    NotAssociative,
    NotNormal,
    ShapeMismatch,
)


def closure_table(order_hint, gens, mul):
    """Oracle: generate a multiplication table by closure from generators."""
    elems = [()]  # words, canonicalized by the external mul on frozen images
    # represent elements as their action images: here mul works on opaque
    # values, so we close over a seed set instead
    seen = list(gens)
    frontier = list(gens)
    while frontier:
        x = frontier.pop()
        for y in list(seen):
            for z in (mul(x, y), mul(y, x)):
                if z not in seen:
                    seen.append(z)
                    frontier.append(z)
    seen = sorted(seen)
    pos = {v: i for i, v in enumerate(seen)}
    return [[pos[mul(a, b)] for b in seen] for a in seen], seen


def test_group_from_table_z2():
    G = g.group_from_table([[0, 1], [1, 0]])
    assert G.order == 2 and G.is_abelian


def test_group_from_table_no_inverse():
    with pytest.raises(NoInverse) as err:
        g.group_from_table([[0, 1], [1, 1]])
    assert err.value.witness == (1,)


def test_group_from_table_not_square():
    with pytest.raises(ShapeMismatch):
        g.group_from_table([[0, 1], [1]])


def test_s3_table_by_closure_oracle():
    # oracle: close two permutations of {0,1,2} under composition
    def mul(p, q):
        return tuple(p[q[i]] for i in range(3))

    table, elems = closure_table(6, [(1, 0, 2), (0, 2, 1), (0, 1, 2)], mul)
    assert len(elems) == 6
    normalized = g.normalize_identity(table)
    G = g.group_from_table(normalized)
    assert G.order == 6 and not G.is_abelian
    assert g.is_isomorphic(G, g.symmetric3())


def test_not_associative_detected():
    tbl = [[0, 1, 2], [1, 2, 0], [2, 1, 0]]
    with pytest.raises((NotAssociative, NoInverse)):
        g.group_from_table(tbl)


def test_cancellation_rows_and_columns():
    for G in (g.symmetric3(), g.quaternion8(), g.dihedral(4), g.cyclic(6)):
        n = G.order
        for a in range(n):
            assert sorted(G.table[a]) == list(range(n))
            assert sorted(G.table[b][a] for b in range(n)) == list(range(n))


def test_subgroup_generated():
    S3 = g.symmetric3()
    assert g.subgroup_generated(S3, []) == (0,)
    assert g.subgroup_generated(g.cyclic(6), [2]) == (0, 2, 4)
    transposition = next(x for x in range(6) if S3.element_order(x) == 2)
    assert len(g.subgroup_generated(S3, [transposition])) == 2


def test_commutator_subgroup():
    assert g.commutator_subgroup(g.cyclic(8)) == (0,)
    Q8 = g.quaternion8()
    assert g.commutator_subgroup(Q8) == (0, 2)
    S3 = g.symmetric3()
    A3 = g.subgroup_generated(S3, [1])
    assert g.commutator_subgroup(S3) == A3
    assert len(A3) == 3


def test_center():
    assert g.center(g.cyclic(5)) == tuple(range(5))
    assert g.center(g.quaternion8()) == (0, 2)
    assert g.center(g.symmetric3()) == (0,)


def test_quotient_by_whole_group():
    S3 = g.symmetric3()
    Q, p = g.quotient(S3, range(6))
    assert Q.order == 1 and set(p.map) == {0}


def test_quotient_z4():
    Q, p = g.quotient(g.cyclic(4), [0, 2])
    assert Q.order == 2
    assert p.map == (0, 1, 0, 1)


def test_quotient_not_normal():
    S3 = g.symmetric3()
    transposition = next(x for x in range(6) if S3.element_order(x) == 2)
    H = g.subgroup_generated(S3, [transposition])
    with pytest.raises(NotNormal) as err:
        g.quotient(S3, H)
    assert err.value.witness is not None


def test_quotient_projection_properties():
    for G, N in ((g.cyclic(8), (0, 4)), (g.quaternion8(), (0, 2)),
                 (g.dihedral(4), (0, 2))):
        Q, p = g.quotient(G, N)
        assert p.is_hom() and p.is_surjective()
        assert p.kernel_elements() == tuple(sorted(N))


def test_check_hom_and_action():
    Z4, Z2 = g.cyclic(4), g.cyclic(2)
    assert g.check_hom(g.GroupHom(Z4, Z2, [0, 1, 0, 1]))
    assert not g.check_hom(g.GroupHom(Z4, Z2, [0, 1, 1, 0]))
    assert g.check_action(g.trivial_action(Z2, Z4))
    negation = g.action_from_automorphism(Z2, Z4, [0, 3, 2, 1])
    assert g.check_action(negation)
    bad = g.GammaAction(Z2, Z4, [[0, 1, 2, 3], [0, 0, 2, 2]])
    assert not g.check_action(bad)


def test_abelian_invariants():
    assert g.abelian_invariants(g.trivial_group()) == []
    assert g.abelian_invariants(g.klein_four()) == [2, 2]
    assert g.abelian_invariants(g.cyclic(6)) == [6]
    assert g.abelian_invariants(g.direct_product(g.cyclic(2), g.cyclic(4))) == [2, 4]


def test_abelian_invariants_product_and_divisibility():
    cases = [g.cyclic(n) for n in (1, 2, 3, 4, 5, 6, 8, 9, 12)]
    cases += [g.klein_four(), g.direct_product(g.cyclic(2), g.cyclic(6)),
              g.direct_product(g.cyclic(4), g.cyclic(4))]
    for G in cases:
        invs = g.abelian_invariants(G)
        prod = 1
        for d in invs:
            prod *= d
        assert prod == G.order
        for a, b in zip(invs, invs[1:]):
            assert b % a == 0


def test_decomposition_coords_roundtrip():
    G = g.direct_product(g.cyclic(2), g.cyclic(4))
    dec = g.decompose_abelian(G)
    for x in range(G.order):
        assert dec.from_coords(dec.coords[x]) == x


def test_hom_kernel_image_examples():
    ker, img = g.hom_kernel_image([2], [2], [[1]])
    assert ker.invariants == [] and img.invariants == [2]
    ker, img = g.hom_kernel_image([4], [4], [[2]])
    assert ker.invariants == [2] and img.invariants == [2]
    ker, img = g.hom_kernel_image([4, 2], [6], [[0, 0]])
    assert sorted(ker.invariants) == [2, 4] and img.invariants == []
    with pytest.raises(MatrixShapeMismatch):
        g.hom_kernel_image([2], [2], [[1, 0]])
    with pytest.raises(MatrixShapeMismatch):
        g.hom_kernel_image([4], [8], [[1]])  # 4 * 1 != 0 mod 8


def brute_hom_kernel_image(dom_invs, cod_invs, matrix):
    """Oracle: enumerate elements of the domain, map them, read off orders."""
    dom = list(itertools.product(*(range(d) for d in dom_invs)))
    def apply(x):
        return tuple(sum(matrix[i][j] * x[j] for j in range(len(dom_invs))) % m
                     for i, m in enumerate(cod_invs))
    kernel = [x for x in dom if all(v == 0 for v in apply(x))]
    image = sorted({apply(x) for x in dom})
    return len(kernel), len(image)


def test_hom_kernel_image_against_enumeration():
    cases = [
        ([2], [4], [[2]]),
        ([4], [2], [[1]]),
        ([2, 2], [2, 2], [[1, 1], [0, 1]]),
        ([4, 2], [4, 2], [[2, 0], [1, 1]]),
        ([8], [4], [[1]]),
        ([2, 4], [8], [[4, 2]]),
        ([16], [16], [[4]]),
        ([2, 8], [2, 8], [[1, 0], [4, 2]]),
    ]
    for dom, cod, mat in cases:
        kn, im = brute_hom_kernel_image(dom, cod, mat)
        ker, img = g.hom_kernel_image(dom, cod, mat)
        assert ker.order == kn, (dom, cod, mat)
        assert img.order == im, (dom, cod, mat)


def abelian_types_up_to(n):
    """Invariant-factor lists (d1 | d2 | ...) of abelian groups of order <= n."""
    out = []

    def build(prefix, minimum, budget):
        for d in range(max(2, minimum), budget + 1):
            if prefix and d % prefix[-1] != 0:
                continue
            out.append(prefix + [d])
            build(prefix + [d], d, budget // d)

    build([], 2, n)
    return out


def test_hom_kernel_image_sweep_up_to_16():
    """Oracle sweep: for every pair of abelian groups of order <= 16 and a
    deterministic sample of well-defined matrices, the linear-algebra
    route matches brute-force enumeration."""
    import random

    types = abelian_types_up_to(16)
    rng = random.Random(2024)
    for dom in types:
        for cod in types:
            if not dom or not cod:
                continue
            rows, cols = len(cod), len(dom)
            # valid entry m_ij must satisfy dom_j * m_ij == 0 mod cod_i
            steps = [[cod[i] // _gcd(cod[i], dom[j]) for j in range(cols)]
                     for i in range(rows)]
            mats = []
            mats.append([[0] * cols for _ in range(rows)])
            mats.append([[steps[i][j] % cod[i] for j in range(cols)]
                         for i in range(rows)])
            for _ in range(2):
                mats.append([[steps[i][j] * rng.randrange(
                    cod[i] // steps[i][j]) for j in range(cols)]
                    for i in range(rows)])
            for mat in mats:
                kn, im = brute_hom_kernel_image(dom, cod, mat)
                ker, img = g.hom_kernel_image(dom, cod, mat)
                assert ker.order == kn, (dom, cod, mat)
                assert img.order == im, (dom, cod, mat)
                prod = 1
                for d in ker.invariants:
                    prod *= d
                assert prod == kn


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def test_enumerate_homs_counts():
    # Hom(Z/4, Z/2) has 2 elements; Hom(Z/2, Z/4) has 2; Hom(K4, Z/2) has 4
    assert len(list(g.enumerate_homs(g.cyclic(4), g.cyclic(2)))) == 2
    assert len(list(g.enumerate_homs(g.cyclic(2), g.cyclic(4)))) == 2
    assert len(list(g.enumerate_homs(g.klein_four(), g.cyclic(2)))) == 4
    # Aut(Z/4) = 2, Aut(K4) = S3
    assert len(g.enumerate_automorphisms(g.cyclic(4))) == 2
    assert len(g.enumerate_automorphisms(g.klein_four())) == 6


def test_is_isomorphic():
    assert g.is_isomorphic(g.dihedral(3), g.symmetric3())
    assert not g.is_isomorphic(g.dihedral(4), g.quaternion8())
    assert not g.is_isomorphic(g.cyclic(4), g.klein_four())
