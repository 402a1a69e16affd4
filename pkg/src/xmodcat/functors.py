"""Graded symmetric monoidal functors between finite graded categorical
groups: coherence checking, regularity, factor sets, the translation
between crossed-module morphisms and functors, homotopies, and exhaustive
enumeration of functor homotopy classes.

Enumeration is restricted to normalized candidates (unit object and unit
comparison sent to the identity); every survivor is re-verified through
the generic coherence checker, and partitioning into homotopy classes is
done by explicit homotopy search.
"""

from __future__ import annotations

import itertools

import numpy as np

from .catgroups import (
    CatAxiomCheck,
    CatAxiomReport,
    GradedCatGroup,
    _gather,
    build_catgroup,
    ker,
)
from .cohomology import SymmetricCochain2
from .crossed import BraidedGammaCrossedModule, CrossedMorphism
from .errors import (
    BadChoice,
    FNotConstantOnCosets,
    NotCoherent,
    NotRegular,
    NotRegularFactorSet,
    NotStrict,
    SearchSpaceTooLarge,
    ShapeMismatch,
    WrongType,
)
from .groups import FiniteGroup, GammaAction, GroupHom

DEFAULT_GUARD = 2 ** 32


class GradedFunctor:
    """A functor record: object map, morphism map, comparison isomorphisms
    ftilde, and the unit comparison fstar."""

    __slots__ = ("source", "target", "obj", "mor", "ftilde", "fstar")

    def __init__(self, source, target, obj, mor, ftilde, fstar):
        self.source = source
        self.target = target
        self.obj = np.asarray(obj, dtype=np.int64)
        self.mor = np.asarray(mor, dtype=np.int64)
        self.ftilde = np.asarray(ftilde, dtype=np.int64)
        self.fstar = int(fstar)
        if len(self.obj) != source.n_obj or len(self.mor) != source.n_mor:
            raise ShapeMismatch("functor tables do not match the source")
        if self.ftilde.shape != (source.n_obj, source.n_obj):
            raise ShapeMismatch("comparison table has wrong shape")

    def __eq__(self, other):
        if not isinstance(other, GradedFunctor):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and np.array_equal(self.obj, other.obj)
                and np.array_equal(self.mor, other.mor)
                and np.array_equal(self.ftilde, other.ftilde)
                and self.fstar == other.fstar)

    def __repr__(self):
        return f"GradedFunctor(obj={self.obj.tolist()}, fstar={self.fstar})"

    def key(self):
        return (tuple(self.obj.tolist()), tuple(self.mor.tolist()),
                tuple(map(tuple, self.ftilde.tolist())), self.fstar)


def identity_functor(G: GradedCatGroup):
    return GradedFunctor(G, G, np.arange(G.n_obj), np.arange(G.n_mor),
                         G.idm[G.tob], int(G.idm[G.unit]))


def _ent(entries, key, ok_mask, tuples=None):
    ok_mask = np.asarray(ok_mask)
    if ok_mask.all():
        entries.append(CatAxiomCheck(key, True))
        return
    bad = np.argwhere(~np.asarray(ok_mask))
    wit = []
    for row in bad[:16]:
        if tuples is None:
            wit.append(tuple(int(v) for v in row))
        else:
            wit.append(tuple(int(t[tuple(row)]) for t in tuples))
    entries.append(CatAxiomCheck(key, False, len(bad), wit))


def check_graded_functor(F: GradedFunctor):
    """Functoriality, grade preservation, naturality of the comparison,
    and the three monoidal coherence families."""
    S, T = F.source, F.target
    entries = []
    obj, mor, ft = F.obj, F.mor, F.ftilde
    ms = np.arange(S.n_mor)

    _ent(entries, "object-map-range", (obj >= 0) & (obj < T.n_obj), [np.arange(S.n_obj)])
    ok = (mor >= 0) & (mor < T.n_mor)
    _ent(entries, "morphism-map-range", ok, [ms])
    ok = (T.src[mor] == obj[S.src]) & (T.tgt[mor] == obj[S.tgt]) & \
        (T.grd[mor] == S.grd)
    _ent(entries, "morphism-map-typing", ok, [ms])
    _ent(entries, "functor-identities", mor[S.idm] == T.idm[obj],
         [np.arange(S.n_obj)])

    gsel, fsel = np.nonzero(S.comp >= 0)
    lhs = mor[S.comp[gsel, fsel]]
    rhs = _gather(T.comp, mor[gsel], mor[fsel])
    _ent(entries, "functor-composition", (lhs == rhs) & (rhs >= 0), [gsel, fsel])

    x2 = np.arange(S.n_obj)[:, None]
    y2 = np.arange(S.n_obj)[None, :]
    ok = (T.src[ft] == T.tob[obj[x2], obj[y2]]) & \
        (T.tgt[ft] == obj[S.tob]) & (T.grd[ft] == 0)
    _ent(entries, "comparison-typing", ok, None)

    isel, jsel = np.nonzero(S.grd[:, None] == S.grd[None, :])
    lhs = _gather(T.comp, ft[S.tgt[isel], S.tgt[jsel]],
                  _gather(T.tmor, mor[isel], mor[jsel]))
    rhs = _gather(T.comp, mor[S.tmor[isel, jsel]], ft[S.src[isel], S.src[jsel]])
    _ent(entries, "comparison-natural", (lhs == rhs) & (lhs >= 0), [isel, jsel])

    x3 = np.arange(S.n_obj)[:, None, None]
    y3 = np.arange(S.n_obj)[None, :, None]
    z3 = np.arange(S.n_obj)[None, None, :]
    lhs = _gather(T.comp,
                  _gather(T.comp, ft[x3, S.tob[y3, z3]],
                          _gather(T.tmor, T.idm[obj[x3]], ft[y3, z3])),
                  T.aset[obj[x3], obj[y3], obj[z3]])
    rhs = _gather(T.comp,
                  _gather(T.comp, mor[S.aset[x3, y3, z3]], ft[S.tob[x3, y3], z3]),
                  _gather(T.tmor, ft[x3, y3], T.idm[obj[z3]]))
    _ent(entries, "assoc-compat", (lhs == rhs) & (lhs >= 0), None)

    xs = np.arange(S.n_obj)
    lhs = _gather(T.comp,
                  _gather(T.comp, mor[S.rset], ft[xs, S.unit]),
                  _gather(T.tmor, T.idm[obj], np.full(S.n_obj, F.fstar)))
    _ent(entries, "right-unit-compat", (lhs == T.rset[obj]) & (lhs >= 0), [xs])
    lhs = _gather(T.comp,
                  _gather(T.comp, mor[S.lset], ft[S.unit, xs]),
                  _gather(T.tmor, np.full(S.n_obj, F.fstar), T.idm[obj]))
    _ent(entries, "left-unit-compat", (lhs == T.lset[obj]) & (lhs >= 0), [xs])

    lhs = _gather(T.comp, ft[y2, x2], T.cset[obj[x2], obj[y2]])
    rhs = _gather(T.comp, mor[S.cset], ft[x2, y2])
    _ent(entries, "braiding-compat", (lhs == rhs) & (lhs >= 0), None)

    ok = (T.src[F.fstar] == T.unit) & (T.tgt[F.fstar] == obj[S.unit]) & \
        (T.grd[F.fstar] == 0)
    _ent(entries, "unit-comparison-typing", np.asarray([ok]), None)
    ss = np.arange(S.gamma.order)
    lhs = _gather(T.comp, mor[S.uI], np.full(len(ss), F.fstar))
    rhs = _gather(T.comp, np.full(len(ss), F.fstar), T.uI[ss])
    _ent(entries, "unit-comparison-natural", (lhs == rhs) & (lhs >= 0), [ss])

    return CatAxiomReport(entries)


def canonical_choices(G: GradedCatGroup):
    """Least grade-s morphism out of each object, with the identity at
    grade 1; these witness grading stability."""
    ng, no = G.gamma.order, G.n_obj
    ups = np.full((ng, no), -1, dtype=np.int64)
    for m in range(G.n_mor):
        s, x = int(G.grd[m]), int(G.src[m])
        if ups[s, x] < 0:
            ups[s, x] = m
    ups[0] = G.idm
    if (ups < 0).any():
        s, x = [int(v) for v in np.argwhere(ups < 0)[0]]
        raise BadChoice(f"no grade-{s} morphism out of object {x}")
    return ups


class FactorSet:
    """Per-grade monoidal self-functors of the grade-1 subcategory plus the
    comparison isomorphisms between their composites."""

    __slots__ = ("base", "kernel", "obj_maps", "mor_maps", "ftildes",
                 "fstars", "theta")

    def __init__(self, base, kernel, obj_maps, mor_maps, ftildes, fstars, theta):
        self.base = base
        self.kernel = kernel
        self.obj_maps = obj_maps
        self.mor_maps = mor_maps
        self.ftildes = ftildes
        self.fstars = fstars
        self.theta = theta

    def functor(self, s):
        return GradedFunctor(self.kernel, self.kernel, self.obj_maps[s],
                             self.mor_maps[s], self.ftildes[s],
                             int(self.fstars[s]))

    def theta_is_identity(self):
        K = self.kernel
        for s in range(self.base.gamma.order):
            for t in range(self.base.gamma.order):
                for x in range(K.n_obj):
                    if self.theta[s][t][x] != K.idm[self.obj_maps[
                            self.base.gamma.mul(s, t)][x]]:
                        return False
        return True


def extract_factor_set(G: GradedCatGroup, choices=None):
    """Factor set induced by stability choices (canonical by default).

    choices[s][x] must be a grade-s morphism out of x, the identity at
    grade 1; BadChoice otherwise.
    """
    if choices is None:
        choices = canonical_choices(G)
    ups = np.asarray(choices, dtype=np.int64)
    ng = G.gamma.order
    if ups.shape != (ng, G.n_obj):
        raise ShapeMismatch("choices must be |gamma| x objects")
    for s in range(ng):
        for x in range(G.n_obj):
            m = int(ups[s, x])
            if int(G.grd[m]) != s or int(G.src[m]) != x:
                raise BadChoice(f"choice at grade {s}, object {x} has wrong type")
            if s == 0 and m != int(G.idm[x]):
                raise BadChoice("grade-1 choices must be identities")
    K = ker(G)
    keep = K.meta["keep"]
    remap = np.full(G.n_mor, -1, dtype=np.int64)
    remap[keep] = np.arange(len(keep))
    inv = G.inv

    def to_ker(m):
        r = int(remap[m]) if m >= 0 else -1
        if r < 0:
            raise BadChoice("composite failed to land in the grade-1 part")
        return r

    gam = G.gamma
    obj_maps, mor_maps, ftildes, fstars = [], [], [], []
    for s in range(ng):
        omap = G.tgt[ups[s]]
        obj_maps.append(np.asarray(omap, dtype=np.int64))
        mm = np.zeros(K.n_mor, dtype=np.int64)
        for i, m in enumerate(keep):
            res = _c3(G, ups[s, int(G.tgt[m])], m, inv[ups[s, int(G.src[m])]])
            mm[i] = to_ker(res)
        mor_maps.append(mm)
        ftl = np.zeros((G.n_obj, G.n_obj), dtype=np.int64)
        for x in range(G.n_obj):
            for y in range(G.n_obj):
                prod = G.tmor[ups[s, x], ups[s, y]]
                res = G.comp[ups[s, int(G.tob[x, y])], inv[prod]] \
                    if prod >= 0 else -1
                ftl[x, y] = to_ker(res)
        ftildes.append(ftl)
        fstars.append(to_ker(G.comp[ups[s, G.unit], inv[G.uI[s]]]))
    theta = [[[0] * G.n_obj for _ in range(ng)] for _ in range(ng)]
    for s in range(ng):
        for t in range(ng):
            st = gam.mul(s, t)
            for x in range(G.n_obj):
                ftx = int(obj_maps[t][x])
                res = _c3(G, ups[st, x], inv[ups[t, x]], inv[ups[s, ftx]])
                theta[s][t][x] = to_ker(res)
    return FactorSet(G, K, obj_maps, mor_maps, ftildes, fstars, theta)


def _c3(G, a, b, c):
    """a o b o c with -1 propagation."""
    if a < 0 or b < 0 or c < 0:
        return -1
    bc = G.comp[b, c]
    if bc < 0:
        return -1
    return G.comp[a, bc]


def validate_factor_set(fs: FactorSet):
    """Identity at grade 1, per-grade coherent monoidal functors, monoidal
    naturality of theta, and the composition square."""
    entries = []
    G, K = fs.base, fs.kernel
    gam = G.gamma
    ng = gam.order
    ok = np.array_equal(fs.obj_maps[0], np.arange(K.n_obj)) and \
        np.array_equal(fs.mor_maps[0], np.arange(K.n_mor))
    entries.append(CatAxiomCheck("grade-one-identity", ok, 0 if ok else 1))
    for s in range(ng):
        rep = check_graded_functor(fs.functor(s))
        entries.append(CatAxiomCheck(f"grade-{s}-functor", rep.ok,
                                     0 if rep.ok else 1,
                                     () if rep.ok else (rep.first_failure(),)))
    bad_unit = [(s, t)
                for s in range(ng) for t in range(ng)
                if fs.theta[0][s][0] != K.idm[fs.obj_maps[s][0]] or
                fs.theta[s][0][0] != K.idm[fs.obj_maps[s][0]]]
    ok_unit = all(
        np.array_equal(np.asarray(fs.theta[0][s]), K.idm[fs.obj_maps[s]]) and
        np.array_equal(np.asarray(fs.theta[s][0]), K.idm[fs.obj_maps[s]])
        for s in range(ng))
    entries.append(CatAxiomCheck("theta-unit", ok_unit, 0 if ok_unit else 1,
                                 tuple(bad_unit[:4])))
    # theta^{s,t} natural and monoidal: F^s F^t -> F^{st}
    bad = []
    for s in range(ng):
        for t in range(ng):
            st = gam.mul(s, t)
            th = fs.theta[s][t]
            for m in range(K.n_mor):
                x, y = int(K.src[m]), int(K.tgt[m])
                lhs = K.comp[th[y], fs.mor_maps[s][fs.mor_maps[t][m]]]
                rhs = K.comp[fs.mor_maps[st][m], th[x]]
                if lhs != rhs or lhs < 0:
                    bad.append(("natural", s, t, m))
            for x in range(K.n_obj):
                for y in range(K.n_obj):
                    comp_ft = K.comp[fs.mor_maps[s][fs.ftildes[t][x, y]],
                                     fs.ftildes[s][int(fs.obj_maps[t][x]),
                                                   int(fs.obj_maps[t][y])]]
                    thth = K.tmor[th[x], th[y]]
                    lhs = K.comp[fs.ftildes[st][x, y], thth] if thth >= 0 else -1
                    rhs = K.comp[th[int(K.tob[x, y])], comp_ft] if comp_ft >= 0 else -1
                    if lhs != rhs or lhs < 0:
                        bad.append(("monoidal", s, t, x, y))
            lhs = K.comp[th[K.unit],
                         K.comp[fs.mor_maps[s][fs.fstars[t]], fs.fstars[s]]]
            if lhs != fs.fstars[st] or lhs < 0:
                bad.append(("unit", s, t))
    entries.append(CatAxiomCheck("theta-monoidal-natural", not bad, len(bad),
                                 tuple(bad[:8])))
    bad = []
    for s in range(ng):
        for t in range(ng):
            for u in range(ng):
                st = gam.mul(s, t)
                tu = gam.mul(t, u)
                for x in range(K.n_obj):
                    fux = int(fs.obj_maps[u][x])
                    lhs = K.comp[fs.theta[st][u][x], fs.theta[s][t][fux]]
                    rhs = K.comp[fs.theta[s][tu][x],
                                 fs.mor_maps[s][fs.theta[t][u][x]]]
                    if lhs != rhs or lhs < 0:
                        bad.append((s, t, u, x))
    entries.append(CatAxiomCheck("theta-cocycle", not bad, len(bad),
                                 tuple(bad[:8])))
    return CatAxiomReport(entries)


def is_regular_factor_set(fs: FactorSet):
    if not fs.theta_is_identity():
        return False
    return all(is_regular(fs.functor(s)) for s in range(fs.base.gamma.order))


# -- regularity ----------------------------------------------------------------

def is_regular(F: GradedFunctor, report=False):
    """Strict on object and grade-1 morphism tensors, symmetric comparison,
    and equivariant for the canonical gamma-actions on both ends."""
    S, T = F.source, F.target
    entries = []
    obj = F.obj
    ok = np.array_equal(T.tob[obj[:, None], obj[None, :]], obj[S.tob])
    entries.append(CatAxiomCheck("strict-on-objects", ok, 0 if ok else 1))
    g1 = np.nonzero(S.grd == 0)[0]
    lhs = _gather(T.tmor, F.mor[g1[:, None]], F.mor[g1[None, :]])
    rhs = F.mor[_gather(S.tmor, g1[:, None], g1[None, :])]
    ok = bool(((lhs == rhs) & (lhs >= 0)).all())
    entries.append(CatAxiomCheck("strict-on-morphisms", ok, 0 if ok else 1))
    # comparison morphisms are labelled by payload; symmetry is equality of
    # the labels, the endpoints differ whenever the object tensor does
    if T.pay is not None:
        ok = np.array_equal(T.pay[F.ftilde], T.pay[F.ftilde.T])
    else:
        ok = np.array_equal(F.ftilde, F.ftilde.T)
    entries.append(CatAxiomCheck("symmetric-comparison", ok, 0 if ok else 1))
    if S.gamma.order > 1:
        ups_s = canonical_choices(S)
        ups_t = canonical_choices(T)
        act_s = S.tgt[ups_s]
        act_t = T.tgt[ups_t]
        ok = np.array_equal(act_t[:, obj], obj[act_s])
        entries.append(CatAxiomCheck("equivariant-on-objects", ok, 0 if ok else 1))
        inv_s, inv_t = S.inv, T.inv
        bad = 0
        for s in range(1, S.gamma.order):
            for m in g1:
                sm = _c3(S, ups_s[s, int(S.tgt[m])], m, inv_s[ups_s[s, int(S.src[m])]])
                fm = int(F.mor[m])
                tm = _c3(T, ups_t[s, int(T.tgt[fm])], fm,
                         inv_t[ups_t[s, int(T.src[fm])]])
                if sm < 0 or tm < 0 or int(F.mor[sm]) != tm:
                    bad += 1
        entries.append(CatAxiomCheck("equivariant-on-morphisms", bad == 0, bad))
    rep = CatAxiomReport(entries)
    return rep if report else rep.ok


# -- crossed-module morphisms <-> functors -------------------------------------

def morphism_to_functor(m: CrossedMorphism, source_cat=None, target_cat=None):
    """The functor with object map f0, grade-1 payload map f1, and
    comparison taken from the degree-2 component on cokernel classes."""
    M, Mp = m.source, m.target
    G = source_cat if source_cat is not None else build_catgroup(M)
    T = target_cat if target_cat is not None else build_catgroup(Mp)
    proj = M.pi0_projection()
    embp = Mp.pi1_embedding()
    Bp = Mp.B
    f0 = m.f0.map
    f1 = m.f1.map
    phi_qq = m.phi.qq
    phi_qg = m.phi.qg
    obj = np.asarray(f0, dtype=np.int64)
    mor = np.zeros(G.n_mor, dtype=np.int64)
    for i in range(G.n_mor):
        s = int(G.grd[i])
        b = int(G.pay[i])
        y = int(G.tgt[i])
        x = int(G.src[i])
        payload = Bp.mul(embp[phi_qg[proj(x)][s]], f1[b])
        mor[i] = T.record(s, payload, f0[y])
    ft = np.zeros((G.n_obj, G.n_obj), dtype=np.int64)
    for x in range(G.n_obj):
        for y in range(G.n_obj):
            ft[x, y] = T.record(0, embp[phi_qq[proj(x)][proj(y)]],
                                f0[M.D.mul(x, y)])
    return GradedFunctor(G, T, obj, mor, ft, int(T.idm[T.unit]))


def functor_to_morphism(F: GradedFunctor):
    """Extract (f1, f0, phi) from a regular coherent functor between built
    categories; raises when the functor fails coherence, regularity, or the
    descent condition on cosets."""
    S, T = F.source, F.target
    if S.meta.get("kind") != "module" or T.meta.get("kind") != "module":
        raise WrongType("translation requires categories built from modules")
    rep = check_graded_functor(F)
    if not rep.ok:
        raise NotCoherent(f"functor fails coherence: {rep.first_failure()}")
    if not is_regular(F):
        raise NotRegular("functor is not regular")
    M: BraidedGammaCrossedModule = S.meta["module"]
    Mp: BraidedGammaCrossedModule = T.meta["module"]
    f0 = GroupHom(M.D, Mp.D, [int(v) for v in F.obj])
    f1_vals = []
    for b in range(M.B.order):
        idx = S.record(0, b, S.unit)
        f1_vals.append(T.payload(int(F.mor[idx])))
        for y in range(M.D.order):
            other = T.payload(int(F.mor[S.record(0, b, y)]))
            if other != f1_vals[-1]:
                raise NotRegular(
                    f"grade-1 payload of {b} depends on its target object")
    f1 = GroupHom(M.B, Mp.B, f1_vals)
    proj = M.pi0_projection()
    P = M.pi0()
    Kp = Mp.pi1()
    embp = Mp.pi1_embedding()
    posp = {e: i for i, e in enumerate(embp)}
    q = P.group.order
    ng = M.gamma.order
    qq = [[None] * q for _ in range(q)]
    for x in range(M.D.order):
        for y in range(M.D.order):
            val = T.payload(int(F.ftilde[x, y]))
            if val not in posp:
                raise FNotConstantOnCosets(
                    f"comparison payload at ({x}, {y}) is not in the kernel")
            r, s = proj(x), proj(y)
            if qq[r][s] is None:
                qq[r][s] = posp[val]
            elif qq[r][s] != posp[val]:
                raise FNotConstantOnCosets(
                    f"comparison at ({x}, {y}) differs within its coset")
    qg = [[None] * ng for _ in range(q)]
    for x in range(M.D.order):
        for s in range(ng):
            idx = S.record(s, 0, M.act_d(s, x))
            val = T.payload(int(F.mor[idx]))
            if val not in posp:
                raise FNotConstantOnCosets(
                    f"grade part at ({x}, {s}) is not in the kernel")
            r = proj(x)
            if qg[r][s] is None:
                qg[r][s] = posp[val]
            elif qg[r][s] != posp[val]:
                raise FNotConstantOnCosets(
                    f"grade part at ({x}, {s}) differs within its coset")
    phi = SymmetricCochain2(P, Kp, qq, qg)
    return CrossedMorphism(M, Mp, f1, f0, phi)


def catgroup_to_crossed(G: GradedCatGroup):
    """Rebuild the crossed module from a strict graded categorical group.

    Requires strict constraints, a group structure on objects with the
    unit at index 0, and a regular canonical factor set.
    """
    if G.unit != 0:
        raise NotStrict("unit object must be index 0")
    objs = np.arange(G.n_obj)
    expect = G.idm[G.tob[G.tob[objs[:, None, None], objs[None, :, None]],
                         objs[None, None, :]]]
    if not np.array_equal(G.aset, expect):
        raise NotStrict("associativity constraint is not the identity")
    if not np.array_equal(G.lset, G.idm) or not np.array_equal(G.rset, G.idm):
        raise NotStrict("unit constraints are not identities")
    try:
        D = FiniteGroup([list(r) for r in G.tob.tolist()])
    except Exception as exc:
        raise NotStrict(f"object tensor is not a group law: {exc}") from exc
    fs = extract_factor_set(G)
    if not is_regular_factor_set(fs):
        raise NotRegularFactorSet("canonical factor set is not regular")
    # grade-1 arrows into the unit object form B, identity first
    bmors = [int(G.idm[G.unit])] + [m for m in sorted(
        int(v) for v in np.nonzero((G.grd == 0) & (G.tgt == G.unit))[0])
        if m != int(G.idm[G.unit])]
    pos = {m: i for i, m in enumerate(bmors)}
    nb = len(bmors)
    btbl = [[0] * nb for _ in range(nb)]
    for i, mi in enumerate(bmors):
        for j, mj in enumerate(bmors):
            t = int(G.tmor[mi, mj])
            if t not in pos:
                raise NotStrict("grade-1 arrows into the unit are not closed")
            btbl[i][j] = pos[t]
    B = FiniteGroup(btbl)
    d = tuple(int(G.src[m]) for m in bmors)
    obj_inv = []
    for x in range(G.n_obj):
        cands = [y for y in range(G.n_obj) if int(G.tob[x, y]) == G.unit]
        if not cands:
            raise NotStrict(f"object {x} has no strict inverse")
        obj_inv.append(cands[0])
    theta = []
    for y in range(G.n_obj):
        row = []
        for i, mi in enumerate(bmors):
            t = int(_gather(G.tmor, _gather(G.tmor, np.asarray(G.idm[y]),
                                            np.asarray(mi)),
                            np.asarray(G.idm[obj_inv[y]])))
            if t not in pos:
                raise NotStrict("conjugation leaves the kernel arrows")
            row.append(pos[t])
        theta.append(row)
    eta = []
    for x in range(G.n_obj):
        row = []
        for y in range(G.n_obj):
            t = int(_gather(G.tmor, _gather(G.tmor, G.cset[x, y],
                                            np.asarray(G.idm[obj_inv[x]])),
                            np.asarray(G.idm[obj_inv[y]])))
            if t not in pos:
                raise NotStrict("braiding composite leaves the kernel arrows")
            row.append(pos[t])
        eta.append(row)
    gam = G.gamma
    keep = fs.kernel.meta["keep"]
    act_d_rows = [ [int(fs.obj_maps[s][x]) for x in range(G.n_obj)]
                   for s in range(gam.order) ]
    act_b_rows = []
    for s in range(gam.order):
        row = []
        for mi in bmors:
            ki = int(np.nonzero(keep == mi)[0][0])
            fm = int(keep[int(fs.mor_maps[s][ki])])
            if fm not in pos:
                raise NotRegularFactorSet("factor set moves kernel arrows away")
            row.append(pos[fm])
        act_b_rows.append(row)
    module = BraidedGammaCrossedModule(
        B, D, d, theta, eta, gam,
        GammaAction(gam, B, act_b_rows), GammaAction(gam, D, act_d_rows))
    report = module.validate()
    if not report.ok:
        raise NotStrict(f"rebuilt module fails validation: {report}")
    return module


# -- homotopies ----------------------------------------------------------------

def is_homotopy(theta, F: GradedFunctor, F2: GradedFunctor):
    """Whether the per-object grade-1 family theta is a monoidal natural
    isomorphism from F to F2."""
    if F.source != F2.source or F.target != F2.target:
        return False, ("ends", None)
    S, T = F.source, F.target
    th = np.asarray(theta, dtype=np.int64)
    if len(th) != S.n_obj:
        raise ShapeMismatch("homotopy table must assign one morphism per object")
    ok = (T.src[th] == F.obj) & (T.tgt[th] == F2.obj) & (T.grd[th] == 0)
    if not ok.all():
        return False, ("typing", int(np.nonzero(~ok)[0][0]))
    lhs = _gather(T.comp, th[S.tgt], F.mor)
    rhs = _gather(T.comp, F2.mor, th[S.src])
    ok = (lhs == rhs) & (lhs >= 0)
    if not ok.all():
        return False, ("naturality", int(np.nonzero(~ok)[0][0]))
    x2 = np.arange(S.n_obj)[:, None]
    y2 = np.arange(S.n_obj)[None, :]
    lhs = _gather(T.comp, F2.ftilde, _gather(T.tmor, th[x2], th[y2]))
    rhs = _gather(T.comp, th[S.tob], F.ftilde)
    ok = (lhs == rhs) & (lhs >= 0)
    if not ok.all():
        bad = np.argwhere(~ok)[0]
        return False, ("comparison", (int(bad[0]), int(bad[1])))
    lhs = int(_gather(T.comp, th[S.unit], np.asarray(F.fstar)))
    if lhs != F2.fstar or lhs < 0:
        return False, ("unit", None)
    return True, None


def find_homotopy(F: GradedFunctor, F2: GradedFunctor, guard=DEFAULT_GUARD):
    """Exhaustive search for a homotopy F -> F2; None when there is none.

    Functors with different object maps can still be homotopic as long as
    the objects are connected by grade-1 isomorphisms.
    """
    T = F.target
    cands = []
    total = 1
    for x in range(F.source.n_obj):
        opts = [int(m) for m in np.nonzero(
            (T.grd == 0) & (T.src == int(F.obj[x])) & (T.tgt == int(F2.obj[x])))[0]]
        if not opts:
            return None
        cands.append(opts)
        total *= len(opts)
        if total > guard:
            raise SearchSpaceTooLarge(total, guard)
    for combo in itertools.product(*cands):
        ok, _ = is_homotopy(list(combo), F, F2)
        if ok:
            return list(combo)
    return None


def partition_by_homotopy(functors, guard=DEFAULT_GUARD):
    """Group functor records into homotopy classes (list of lists)."""
    classes = []
    for F in functors:
        for cls in classes:
            if find_homotopy(F, cls[0], guard=guard) is not None:
                cls.append(F)
                break
        else:
            classes.append([F])
    return classes


# -- exhaustive functor enumeration --------------------------------------------

def _allowed(T: GradedCatGroup, src, tgt, grade=0):
    return [int(m) for m in np.nonzero(
        (T.grd == grade) & (T.src == src) & (T.tgt == tgt))[0]]


def _grade1_at(T: GradedCatGroup, pay_mor, obj):
    """The grade-1 endomorphism `pay_mor (x) id_obj`."""
    return int(T.tmor[pay_mor, T.idm[obj]])


def enumerate_functors(G: GradedCatGroup, T: GradedCatGroup, phi, f_map=None,
                       guard=DEFAULT_GUARD):
    """All normalized coherent graded symmetric monoidal functors G -> T
    whose object map lies over phi (a map to grade-1 classes of T) and
    whose grade-1 unit-endomorphism map is f_map.

    G must be a skeletal (reduced-model) category with unit 0.  Candidates
    are enumerated over comparison and grade tables, filtered through the
    generic coherence checker.
    """
    if G.meta.get("kind") != "reduced":
        raise WrongType("enumeration requires a reduced-model source")
    labels, _ = T.pi0_partition()
    labels = list(labels)
    phi = [int(v) for v in phi]
    if len(phi) != G.n_obj:
        raise ShapeMismatch("type map must cover the source objects")
    pi1_src = G.pi1_morphisms()
    if f_map is None:
        if len(pi1_src) != 1:
            raise WrongType("a payload map is required when the source has "
                            "nontrivial unit endomorphisms")
        f_map = [int(T.idm[T.unit])]
    f_map = [int(v) for v in f_map]
    if len(f_map) != len(pi1_src):
        raise ShapeMismatch("payload map must cover the source unit arrows")
    # the sorted unit endomorphisms of a reduced model are indexed exactly
    # by their payloads; the morphism-map assembly below relies on it
    for i, mm in enumerate(pi1_src):
        if int(G.pay[mm]) != i:
            raise ShapeMismatch("source unit arrows are not payload-indexed")
    if phi[G.unit] != labels[T.unit]:
        return []
    gam = G.gamma
    ng = gam.order
    nm = G.n_obj
    obj_fibers = []
    for u in range(nm):
        if u == G.unit:
            obj_fibers.append([T.unit])
        else:
            obj_fibers.append([o for o in range(T.n_obj) if labels[o] == phi[u]])
    total_obj = 1
    for f in obj_fibers:
        total_obj *= len(f)
        if total_obj > guard:
            raise SearchSpaceTooLarge(total_obj, guard)

    Mt = G.tob
    out = []
    actM = np.asarray(G.meta["M"].act.act, dtype=np.int64)

    for obj_combo in itertools.product(*obj_fibers):
        obj = np.asarray(obj_combo, dtype=np.int64)
        pair_keys = [(u, v) for u in range(1, nm) for v in range(u, nm)]
        grade_keys = [(u, s) for u in range(1, nm) for s in range(1, ng)]
        allowed_pairs = []
        feasible = True
        for (u, v) in pair_keys:
            opts = _allowed(T, int(T.tob[obj[u], obj[v]]), int(obj[Mt[u, v]]))
            if not opts:
                feasible = False
                break
            allowed_pairs.append(opts)
        if not feasible:
            continue
        allowed_grades = []
        for (u, s) in grade_keys:
            su = int(actM[s, u])
            opts = _allowed(T, int(obj[u]), int(obj[su]), grade=s)
            if not opts:
                feasible = False
                break
            allowed_grades.append(opts)
        if not feasible:
            continue
        total = total_obj
        for opts in allowed_pairs + allowed_grades:
            total *= len(opts)
            if total > guard:
                raise SearchSpaceTooLarge(total, guard)
        for combo in itertools.product(*(allowed_pairs + allowed_grades)):
            t2 = {}
            for (u, v), m in zip(pair_keys, combo[:len(pair_keys)]):
                t2[(u, v)] = m
            ts = {}
            for (u, s), m in zip(grade_keys, combo[len(pair_keys):]):
                ts[(u, s)] = m
            F = _assemble_functor(G, T, obj, t2, ts, f_map, actM)
            if F is None:
                continue
            if check_graded_functor(F).ok:
                out.append(F)
    return out


def _assemble_functor(G, T, obj, t2, ts, f_map, actM):
    """Fill the full comparison and morphism tables from free entries."""
    nm = G.n_obj
    ng = G.gamma.order
    ft = np.zeros((nm, nm), dtype=np.int64)
    inv = T.inv
    for u in range(nm):
        ft[G.unit, u] = T.idm[obj[u]]
        ft[u, G.unit] = T.idm[obj[u]]
    ft[G.unit, G.unit] = T.idm[obj[G.unit]]
    for (u, v), m in t2.items():
        ft[u, v] = m
    # remaining entries (u > v) from the braiding compatibility
    for u in range(1, nm):
        for v in range(1, u):
            base = int(ft[v, u])
            csrc = int(G.cset[v, u])
            fcs = _mor_image_grade1(G, T, obj, f_map, csrc)
            if fcs < 0:
                return None
            c_t = int(T.cset[obj[v], obj[u]])
            rhs = T.comp[fcs, base]
            if rhs < 0:
                return None
            val = T.comp[int(rhs), int(inv[c_t])]
            if val < 0:
                return None
            ft[u, v] = val
    mor = np.zeros(G.n_mor, dtype=np.int64)
    for m in range(G.n_mor):
        s = int(G.grd[m])
        a = int(G.pay[m])
        u = int(G.src[m])
        su = int(actM[s, u]) if s else u
        pay_part = _pay_at(G, T, obj, f_map, a, su)
        if pay_part < 0:
            return None
        if s == 0:
            mor[m] = pay_part
            continue
        grade_part = ts[(u, s)] if u != G.unit else int(T.uI[s])
        res = T.comp[pay_part, grade_part]
        if res < 0:
            return None
        mor[m] = res
    return GradedFunctor(G, T, obj, mor, ft, int(T.idm[T.unit]))


def _pay_at(G, T, obj, f_map, a, w):
    """Image of the grade-1 morphism with payload a at object w."""
    base = f_map[a]
    return _grade1_at(T, base, int(obj[w]))


def _mor_image_grade1(G, T, obj, f_map, m):
    a = int(G.pay[m])
    w = int(G.tgt[m])
    return _pay_at(G, T, obj, f_map, a, w)


def homotopy_classes(G: GradedCatGroup, T: GradedCatGroup, phi, f_map=None,
                     guard=DEFAULT_GUARD):
    """Coherent functors of the given type, partitioned by homotopy.

    Returns a list of classes, each a list of functor records whose first
    member is the enumeration-order representative.
    """
    functors = enumerate_functors(G, T, phi, f_map=f_map, guard=guard)
    return partition_by_homotopy(functors, guard=guard)


def enumerate_crossed_morphisms(M, Mp, guard=DEFAULT_GUARD):
    """Every morphism (f1, f0, phi) between two crossed modules.

    Pairs of homomorphisms are filtered through the full morphism axioms;
    the degree-2 components run over all symmetric cocycles.
    """
    from . import cohomology
    from .crossed import validate_morphism
    from .groups import enumerate_homs

    out = []
    P = M.pi0()
    Kp = Mp.pi1()
    cocycles = cohomology.all_cocycles(P, Kp, guard=guard)
    f0s = list(enumerate_homs(M.D, Mp.D))
    f1s = list(enumerate_homs(M.B, Mp.B))
    for f0 in f0s:
        for f1 in f1s:
            probe = CrossedMorphism(M, Mp, f1, f0)
            rep = validate_morphism(probe)
            if not rep.ok:
                continue
            for phi in cocycles:
                out.append(CrossedMorphism(M, Mp, f1, f0, phi))
    return out


def enumerate_regular_functors(G: GradedCatGroup, T: GradedCatGroup,
                               guard=DEFAULT_GUARD):
    """Every regular coherent graded symmetric monoidal functor between two
    built categories, with identity unit comparison.

    Candidates are generated from hom pairs on the underlying groups plus
    kernel-valued comparison tables constant on boundary cosets (the
    descent condition satisfied by every regular functor); each record is
    assembled by composing generator images in the target and kept only if
    the generic coherence checker and the regularity predicate accept it.
    """
    from .groups import enumerate_homs

    if G.meta.get("kind") != "module" or T.meta.get("kind") != "module":
        raise WrongType("regular-functor enumeration requires built categories")
    M: BraidedGammaCrossedModule = G.meta["module"]
    Mp: BraidedGammaCrossedModule = T.meta["module"]
    proj = M.pi0_projection()
    q = M.pi0().group.order
    kerp = [b for b in Mp.B.elements() if Mp.d[b] == 0]
    ng = M.gamma.order
    keys_qq = [(r, s) for r in range(1, q) for s in range(1, q)]
    keys_qg = [(r, s) for r in range(1, q) for s in range(1, ng)]
    total = len(list(enumerate_homs(M.D, Mp.D))) * \
        len(list(enumerate_homs(M.B, Mp.B))) * \
        len(kerp) ** (len(keys_qq) + len(keys_qg))
    if total > guard:
        raise SearchSpaceTooLarge(total, guard)
    out = []
    proj_np = np.asarray([proj(x) for x in M.D.elements()], dtype=np.int64)
    actD = np.asarray(M.act_d.act, dtype=np.int64)
    n_pay_t = T.meta["n_pay"]
    Dt = M.D.np_table
    for f0 in enumerate_homs(M.D, Mp.D):
        f0np = np.asarray(f0.map, dtype=np.int64)
        for f1 in enumerate_homs(M.B, Mp.B):
            if any(f0(M.d[b]) != Mp.d[f1(b)] for b in M.B.elements()):
                continue
            f1np = np.asarray(f1.map, dtype=np.int64)
            pay_part = (f1np[G.pay]) * T.n_obj + f0np[G.tgt]
            for combo in itertools.product(kerp,
                                           repeat=len(keys_qq) + len(keys_qg)):
                fqq = np.zeros((q, q), dtype=np.int64)
                fqg = np.zeros((q, ng), dtype=np.int64)
                for (r, s), v in zip(keys_qq, combo[:len(keys_qq)]):
                    fqq[r, s] = v
                for (r, s), v in zip(keys_qg, combo[len(keys_qq):]):
                    fqg[r, s] = v
                grade_part = (G.grd * n_pay_t +
                              fqg[proj_np[G.src], G.grd]) * T.n_obj + \
                    f0np[actD[G.grd, G.src]]
                mor = T.comp[pay_part, grade_part]
                if (mor < 0).any():
                    continue
                ft = fqq[proj_np[:, None], proj_np[None, :]] * T.n_obj + \
                    f0np[Dt]
                F = GradedFunctor(G, T, f0np, mor, ft, int(T.idm[T.unit]))
                if check_graded_functor(F).ok and is_regular(F):
                    out.append(F)
    return out
