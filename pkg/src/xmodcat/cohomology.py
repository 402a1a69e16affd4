"""Symmetric equivariant cochains in degrees 1-3, cocycle and coboundary
tests, and the degree-2 cohomology of a pair of gamma-modules.

A degree-2 cochain is a table f on Q^2 plus a mixed table on Q x Gamma,
with values in the coefficient module B; both are normalized to vanish
whenever an argument is a unit.  Degree-2 cohomology is computed along two
independent routes: exhaustive enumeration of symmetric tables, and an
integer-linear route that feeds the cocycle identities to the Smith normal
form backend.  The two are cross-checked in the test suite.

Convention note: in the mixed identity family ("action-addition") the same
grade acts on every degree-1 term, i.e.

    s.f(x, y) + f(xy, s) = f(x, s) + f(y, s) + f(s.x, s.y).

This is the reading forced by the comparison square that the identity comes
from, where a single grade moves both tensor factors at once; it is pinned
here explicitly because the mixed family is the one place a different
convention could hide.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import zlinalg
from .errors import (
    NotNormalized,
    SearchSpaceTooLarge,
    ShapeMismatch,
    WrongType,
)
from .groups import FiniteGroup, GammaModule, GroupHom, decompose_abelian

DEFAULT_GUARD = 2 ** 32


def _require_same_gamma(*modules):
    gam = modules[0].gamma
    for m in modules[1:]:
        if m.gamma != gam:
            raise ShapeMismatch("modules live over different gamma groups")
    return gam


class SymmetricCochain2:
    """Normalized 2-cochain: tables over Q^2 and Q x Gamma valued in B."""

    __slots__ = ("Q", "B", "qq", "qg")

    def __init__(self, Q: GammaModule, B: GammaModule, qq, qg):
        _require_same_gamma(Q, B)
        if not Q.group.is_abelian or not B.group.is_abelian:
            raise WrongType("cochain modules must be abelian")
        self.Q = Q
        self.B = B
        self.qq = tuple(tuple(int(v) for v in row) for row in qq)
        self.qg = tuple(tuple(int(v) for v in row) for row in qg)
        q, g = Q.group.order, Q.gamma.order
        if len(self.qq) != q or any(len(r) != q for r in self.qq):
            raise ShapeMismatch("qq table has wrong shape")
        if len(self.qg) != q or any(len(r) != g for r in self.qg):
            raise ShapeMismatch("qg table has wrong shape")
        for u in range(q):
            if self.qq[0][u] or self.qq[u][0]:
                raise NotNormalized("qq table nonzero on a unit argument")
            if self.qg[u][0]:
                raise NotNormalized("qg table nonzero at the identity grade")
        for s in range(g):
            if self.qg[0][s]:
                raise NotNormalized("qg table nonzero at the unit of Q")

    def __eq__(self, other):
        return (isinstance(other, SymmetricCochain2)
                and self.Q == other.Q and self.B == other.B
                and self.qq == other.qq and self.qg == other.qg)

    def __hash__(self):
        return hash((self.qq, self.qg))

    def flat(self):
        return tuple(v for row in self.qq for v in row) + \
            tuple(v for row in self.qg for v in row)

    def add(self, other):
        add = self.B.group.mul
        qq = [[add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.qq, other.qq)]
        qg = [[add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.qg, other.qg)]
        return SymmetricCochain2(self.Q, self.B, qq, qg)

    def neg(self):
        inv = self.B.group.inv
        return SymmetricCochain2(
            self.Q, self.B,
            [[inv(v) for v in row] for row in self.qq],
            [[inv(v) for v in row] for row in self.qg])

    def sub(self, other):
        return self.add(other.neg())

    def is_zero(self):
        return not any(any(row) for row in self.qq) and \
            not any(any(row) for row in self.qg)

    def to_json(self):
        return {"domain": "Q2+QGamma",
                "values": {"qq": [list(r) for r in self.qq],
                           "qgamma": [list(r) for r in self.qg]}}


def zero_cochain2(Q, B):
    q, g = Q.group.order, Q.gamma.order
    return SymmetricCochain2(Q, B, [[0] * q for _ in range(q)],
                             [[0] * g for _ in range(q)])


def is_2cocycle(f: SymmetricCochain2):
    """Check the four symmetric cocycle identity families.

    Returns (True, None) or (False, (family, witness)); the witness is the
    lexicographically first failing tuple in a fixed scan order.
    """
    Q, B = f.Q.group, f.B.group
    gam = f.Q.gamma
    actQ, actB = f.Q.act, f.B.act
    qq, qg = f.qq, f.qg
    for x in range(Q.order):
        for s in range(gam.order):
            for t in range(gam.order):
                lhs = B.mul(actB(t, qg[x][s]), qg[actQ(s, x)][t])
                if lhs != qg[x][gam.mul(t, s)]:
                    return False, ("action-composition", (x, s, t))
    for x in range(Q.order):
        for y in range(Q.order):
            for s in range(gam.order):
                lhs = B.mul(actB(s, qq[x][y]), qg[Q.mul(x, y)][s])
                rhs = B.mul(B.mul(qg[x][s], qg[y][s]),
                            qq[actQ(s, x)][actQ(s, y)])
                if lhs != rhs:
                    return False, ("action-addition", (x, y, s))
    for x in range(Q.order):
        for y in range(Q.order):
            for z in range(Q.order):
                lhs = B.mul(qq[y][z], qq[x][Q.mul(y, z)])
                rhs = B.mul(qq[x][y], qq[Q.mul(x, y)][z])
                if lhs != rhs:
                    return False, ("addition", (x, y, z))
    for x in range(Q.order):
        for y in range(Q.order):
            if qq[x][y] != qq[y][x]:
                return False, ("symmetry", (x, y))
    return True, None


def coboundary2(Q: GammaModule, B: GammaModule, g_table):
    """The 2-coboundary of a normalized 1-cochain g: Q -> B."""
    g_table = tuple(int(v) for v in g_table)
    if len(g_table) != Q.group.order:
        raise ShapeMismatch("1-cochain has wrong length")
    if g_table[0] != 0:
        raise NotNormalized("1-cochain must vanish at the unit")
    Qg, Bg = Q.group, B.group
    qq = [[Bg.mul(Bg.mul(g_table[u], g_table[v]), Bg.inv(g_table[Qg.mul(u, v)]))
           for v in range(Qg.order)] for u in range(Qg.order)]
    qg = [[Bg.mul(B.act(s, g_table[u]), Bg.inv(g_table[Q.act(s, u)]))
           for s in range(Q.gamma.order)] for u in range(Qg.order)]
    return SymmetricCochain2(Q, B, qq, qg)


def all_coboundaries(Q, B, guard=DEFAULT_GUARD):
    """Every 2-coboundary, one per normalized 1-cochain g."""
    q, b = Q.group.order, B.group.order
    total = b ** (q - 1)
    if total > guard:
        raise SearchSpaceTooLarge(total, guard)
    out = []
    for tail in itertools.product(range(b), repeat=q - 1):
        out.append(coboundary2(Q, B, (0,) + tail))
    return out


# -- degree-2 cohomology ------------------------------------------------------

@dataclass
class H2Result:
    invariants: list
    representatives: list       # canonical SymmetricCochain2, sorted
    class_count: int
    group: FiniteGroup          # addition on canonical class representatives
    method: str

    @property
    def order(self):
        return self.class_count


def _sym_keys(q, g):
    keys = [("qq", u, v) for u in range(1, q) for v in range(u, q)]
    keys += [("qg", u, s) for u in range(1, q) for s in range(1, g)]
    return keys


def _full_keys(q, g):
    keys = [("qq", u, v) for u in range(1, q) for v in range(1, q)]
    keys += [("qg", u, s) for u in range(1, q) for s in range(1, g)]
    return keys


def _tables_from_sym_values(Q, vals, keys):
    q, g = Q.group.order, Q.gamma.order
    qq = [[0] * q for _ in range(q)]
    qg = [[0] * g for _ in range(q)]
    for key, v in zip(keys, vals):
        if key[0] == "qq":
            _, u, w = key
            qq[u][w] = int(v)
            qq[w][u] = int(v)
        else:
            _, u, s = key
            qg[u][s] = int(v)
    return qq, qg


def enumerate_symmetric_cocycles(Q, B, guard=DEFAULT_GUARD, chunk=1 << 16):
    """All normalized symmetric 2-cocycles, by exhaustive table enumeration.

    Symmetry is built into the candidate space; the remaining identity
    families are applied as vectorized filters over flat chunks.
    """
    q, g, b = Q.group.order, Q.gamma.order, B.group.order
    keys = _sym_keys(q, g)
    total = b ** len(keys)
    if total > guard:
        raise SearchSpaceTooLarge(total, guard)
    if not keys:
        return [zero_cochain2(Q, B)]
    Qt = Q.group.np_table
    Bt = B.group.np_table
    actQ = np.asarray(Q.act.act, dtype=np.int64)
    actB = np.asarray(B.act.act, dtype=np.int64)
    gam = Q.gamma.np_table
    pos = {}
    for i, key in enumerate(keys):
        pos[key] = i
        if key[0] == "qq":
            pos[("qq", key[2], key[1])] = i

    def entry(arrs, kind, u, v):
        # value array for f(u, v) over the chunk; normalized entries are 0
        if kind == "qq" and (u == 0 or v == 0):
            return 0
        if kind == "qg" and (u == 0 or v == 0):
            return 0
        return arrs[pos[(kind, u, v)]]

    instances = []
    for x in range(q):
        for y in range(q):
            for z in range(q):
                instances.append(("add", x, y, z))
    for x in range(q):
        for y in range(q):
            for s in range(g):
                instances.append(("mix", x, y, s))
    for x in range(q):
        for s in range(g):
            for t in range(g):
                instances.append(("act", x, s, t))

    survivors = []
    nk = len(keys)
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        arrs = []
        rem = np.arange(start, stop, dtype=np.int64)
        for _ in range(nk):
            rem, dig = np.divmod(rem, b)
            arrs.append(dig)
        alive = stop - start
        for inst in instances:
            if inst[0] == "add":
                _, x, y, z = inst
                lhs = Bt[entry(arrs, "qq", y, z),
                         entry(arrs, "qq", x, int(Qt[y, z]))]
                rhs = Bt[entry(arrs, "qq", x, y),
                         entry(arrs, "qq", int(Qt[x, y]), z)]
            elif inst[0] == "mix":
                _, x, y, s = inst
                lhs = Bt[actB[s, entry(arrs, "qq", x, y)],
                         entry(arrs, "qg", int(Qt[x, y]), s)]
                rhs = Bt[Bt[entry(arrs, "qg", x, s), entry(arrs, "qg", y, s)],
                         entry(arrs, "qq", int(actQ[s, x]), int(actQ[s, y]))]
            else:
                _, x, s, t = inst
                lhs = Bt[actB[t, entry(arrs, "qg", x, s)],
                         entry(arrs, "qg", int(actQ[s, x]), t)]
                rhs = entry(arrs, "qg", x, int(gam[t, s]))
            if not isinstance(lhs, np.ndarray) and \
               not isinstance(rhs, np.ndarray):
                continue  # both sides normalized constants
            ok = lhs == rhs
            if ok is True or (isinstance(ok, np.bool_) and ok):
                continue
            sel = np.nonzero(ok)[0]
            if len(sel) == alive:
                continue
            arrs = [a[sel] if isinstance(a, np.ndarray) else a for a in arrs]
            alive = len(sel)
            if alive == 0:
                break
        for idx in range(alive):
            vals = [int(a[idx]) if isinstance(a, np.ndarray) else 0
                    for a in arrs]
            qq, qg = _tables_from_sym_values(Q, vals, keys)
            survivors.append(SymmetricCochain2(Q, B, qq, qg))
    return survivors


def _flat_add(Bt, a, b):
    return tuple(Bt[x][y] for x, y in zip(a, b))


def _flat_coboundaries(Q, B, guard):
    return sorted({d.flat() for d in all_coboundaries(Q, B, guard=guard)})


def _canonical_flat(Bt, z, cobs_flat):
    return min(_flat_add(Bt, z, d) for d in cobs_flat)


def _cochain_from_flat(Q, B, flat):
    q, gn = Q.group.order, Q.gamma.order
    qq = [flat[i * q:(i + 1) * q] for i in range(q)]
    qg = [flat[q * q + i * gn: q * q + (i + 1) * gn] for i in range(q)]
    return SymmetricCochain2(Q, B, qq, qg)


def canonical_class_rep(f, coboundaries):
    """Lexicographically least table in the coboundary coset of f."""
    Bt = f.B.group.table
    cobs_flat = sorted({d.flat() for d in coboundaries})
    return _cochain_from_flat(f.Q, f.B, _canonical_flat(Bt, f.flat(), cobs_flat))


def _h2_brute(Q, B, guard):
    cocycles = enumerate_symmetric_cocycles(Q, B, guard=guard)
    cobs_flat = _flat_coboundaries(Q, B, guard)
    Bt = B.group.table
    reps = sorted({_canonical_flat(Bt, z.flat(), cobs_flat) for z in cocycles})
    return _class_group(Q, B, reps, cobs_flat, "brute")


def _class_group(Q, B, reps, cobs_flat, method):
    Bt = B.group.table
    index = {k: i for i, k in enumerate(reps)}
    n = len(reps)
    tbl = [[0] * n for _ in range(n)]
    for i, ki in enumerate(reps):
        for j, kj in enumerate(reps):
            tbl[i][j] = index[_canonical_flat(Bt, _flat_add(Bt, ki, kj),
                                              cobs_flat)]
    grp = FiniteGroup(tbl)
    return H2Result(
        invariants=[int(d) for d in decompose_abelian(grp).invariants],
        representatives=[_cochain_from_flat(Q, B, k) for k in reps],
        class_count=n,
        group=grp,
        method=method,
    )


def _h2_snf(Q, B, guard):
    q, g = Q.group.order, Q.gamma.order
    keys = _full_keys(q, g)
    dec = B.abelian
    r = len(dec.invariants)
    if not keys or r == 0:
        reps = [zero_cochain2(Q, B).flat()]
        return _class_group(Q, B, reps, reps, "snf")
    pos = {key: i for i, key in enumerate(keys)}
    moduli = [int(d) for d in dec.invariants] * len(keys)
    act_mat = [B.action_matrix(s) for s in range(g)]
    ident = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    neg = [[-v for v in row] for row in ident]

    def term(eq, kind, u, v, mat):
        # add mat * f(u, v) to the equation; unit arguments contribute zero
        if u == 0 or v == 0:
            return
        i = pos[(kind, u, v)]
        blk = eq.setdefault(i, [[0] * r for _ in range(r)])
        for a in range(r):
            for c in range(r):
                blk[a][c] += mat[a][c]

    Qg, gam = Q.group, Q.gamma
    equations = []
    for x in range(q):
        for s in range(g):
            for t in range(g):
                eq = {}
                term(eq, "qg", x, s, act_mat[t])
                term(eq, "qg", Q.act(s, x), t, ident)
                term(eq, "qg", x, gam.mul(t, s), neg)
                equations.append(eq)
    for x in range(q):
        for y in range(q):
            for s in range(g):
                eq = {}
                term(eq, "qq", x, y, act_mat[s])
                term(eq, "qg", Qg.mul(x, y), s, ident)
                term(eq, "qg", x, s, neg)
                term(eq, "qg", y, s, neg)
                term(eq, "qq", Q.act(s, x), Q.act(s, y), neg)
                equations.append(eq)
    for x in range(q):
        for y in range(q):
            for z in range(q):
                eq = {}
                term(eq, "qq", y, z, ident)
                term(eq, "qq", x, Qg.mul(y, z), ident)
                term(eq, "qq", x, y, neg)
                term(eq, "qq", Qg.mul(x, y), z, neg)
                equations.append(eq)
    for x in range(1, q):
        for y in range(1, q):
            eq = {}
            term(eq, "qq", x, y, ident)
            term(eq, "qq", y, x, neg)
            equations.append(eq)
    L, cod_moduli, seen = [], [], set()
    for eq in equations:
        if not eq:
            continue
        for a in range(r):
            row = [0] * (len(keys) * r)
            for i, mat in eq.items():
                for c in range(r):
                    row[i * r + c] = mat[a][c]
            t = tuple(row)
            if any(row) and t not in seen:
                seen.add(t)
                L.append(row)
                cod_moduli.append(int(dec.invariants[a]))
    ker_gens = zlinalg.congruence_kernel_gens(L, cod_moduli) if L else \
        [[1 if i == j else 0 for i in range(len(keys) * r)]
         for j in range(len(keys) * r)]
    # coboundary image generators
    delta_cols = []
    for u0 in range(1, q):
        for i in range(r):
            g_table = [0] * q
            g_table[u0] = dec.generators[i]
            d = coboundary2(Q, B, g_table)
            col = []
            for key in keys:
                if key[0] == "qq":
                    val = d.qq[key[1]][key[2]]
                else:
                    val = d.qg[key[1]][key[2]]
                col.extend(int(c) for c in dec.coords[val])
            delta_cols.append(col)
    pres = zlinalg.subquotient_presentation(ker_gens, delta_cols, moduli)
    cobs_flat = _flat_coboundaries(Q, B, guard)
    Bt = B.group.table
    gens = []
    for lift in pres.lifts:
        vals = []
        for i in range(len(keys)):
            vec = lift[i * r:(i + 1) * r]
            vals.append(dec.from_coords(vec))
        qq = [[0] * q for _ in range(q)]
        qg = [[0] * Q.gamma.order for _ in range(q)]
        for key, v in zip(keys, vals):
            if key[0] == "qq":
                qq[key[1]][key[2]] = v
            else:
                qg[key[1]][key[2]] = v
        gens.append(SymmetricCochain2(Q, B, qq, qg).flat())
    reps = set()
    for combo in itertools.product(*(range(d) for d in pres.invariants)):
        elt = zero_cochain2(Q, B).flat()
        for c, gen in zip(combo, gens):
            for _ in range(c):
                elt = _flat_add(Bt, elt, gen)
        reps.add(_canonical_flat(Bt, elt, cobs_flat))
    return _class_group(Q, B, sorted(reps), cobs_flat, "snf")


def all_cocycles(Q, B, guard=DEFAULT_GUARD, method="snf"):
    """Every normalized symmetric 2-cocycle, as class representatives
    shifted by every coboundary; sorted for determinism."""
    res = h2(Q, B, guard=guard, method=method)
    cobs = {d.flat(): d for d in all_coboundaries(Q, B, guard=guard)}
    out = {}
    for rep in res.representatives:
        for d in cobs.values():
            z = rep.add(d)
            out[z.flat()] = z
    return [out[k] for k in sorted(out)]


def h2(Q: GammaModule, B: GammaModule, guard=DEFAULT_GUARD, method="snf"):
    """Degree-2 symmetric cohomology of Q with coefficients in B.

    method is "snf" (integer-linear route), "brute" (exhaustive table
    enumeration, subject to the guard), or "both" (run both, insist they
    agree, return the snf result).
    """
    _require_same_gamma(Q, B)
    if method == "brute":
        return _h2_brute(Q, B, guard)
    if method == "snf":
        return _h2_snf(Q, B, guard)
    if method == "both":
        snf = _h2_snf(Q, B, guard)
        brute = _h2_brute(Q, B, guard)
        if snf.invariants != brute.invariants:
            raise AssertionError(
                f"h2 paths disagree: snf {snf.invariants} vs brute {brute.invariants}")
        if [f.flat() for f in snf.representatives] != \
           [f.flat() for f in brute.representatives]:
            raise AssertionError("h2 paths produce different class representatives")
        return snf
    raise ValueError(f"unknown method {method!r}")


# -- degree-3 cochains --------------------------------------------------------

class Cochain3:
    """Normalized 3-cochain: typed tables valued in N.

    assoc is indexed by M^3, braid by M^2, tensor by M^2 x Gamma, and comp
    by M x Gamma^2 (source object, outer grade, inner grade).
    """

    __slots__ = ("M", "N", "assoc", "braid", "tensor", "comp")

    def __init__(self, M: GammaModule, N: GammaModule, assoc, braid, tensor, comp):
        _require_same_gamma(M, N)
        if not M.group.is_abelian or not N.group.is_abelian:
            raise WrongType("cochain modules must be abelian")
        self.M = M
        self.N = N
        m, g = M.group.order, M.gamma.order
        self.assoc = tuple(tuple(tuple(int(v) for v in row) for row in plane)
                           for plane in assoc)
        self.braid = tuple(tuple(int(v) for v in row) for row in braid)
        self.tensor = tuple(tuple(tuple(int(v) for v in row) for row in plane)
                            for plane in tensor)
        self.comp = tuple(tuple(tuple(int(v) for v in row) for row in plane)
                          for plane in comp)
        if (len(self.assoc) != m or any(len(p) != m for p in self.assoc)
                or any(len(r) != m for p in self.assoc for r in p)):
            raise ShapeMismatch("assoc table has wrong shape")
        if len(self.braid) != m or any(len(r) != m for r in self.braid):
            raise ShapeMismatch("braid table has wrong shape")
        if (len(self.tensor) != m or any(len(p) != m for p in self.tensor)
                or any(len(r) != g for p in self.tensor for r in p)):
            raise ShapeMismatch("tensor table has wrong shape")
        if (len(self.comp) != m or any(len(p) != g for p in self.comp)
                or any(len(r) != g for p in self.comp for r in p)):
            raise ShapeMismatch("comp table has wrong shape")
        for r in range(m):
            for s in range(m):
                for t in range(m):
                    if (r == 0 or s == 0 or t == 0) and self.assoc[r][s][t]:
                        raise NotNormalized("assoc nonzero on a unit argument")
                if (r == 0 or s == 0) and self.braid[r][s]:
                    raise NotNormalized("braid nonzero on a unit argument")
            for s in range(m):
                for t in range(g):
                    if (r == 0 or s == 0 or t == 0) and self.tensor[r][s][t]:
                        raise NotNormalized("tensor nonzero on a unit argument")
            for t in range(g):
                for u in range(g):
                    if (r == 0 or t == 0 or u == 0) and self.comp[r][t][u]:
                        raise NotNormalized("comp nonzero on a unit argument")

    def __eq__(self, other):
        return (isinstance(other, Cochain3)
                and self.M == other.M and self.N == other.N
                and self.assoc == other.assoc and self.braid == other.braid
                and self.tensor == other.tensor and self.comp == other.comp)

    def __hash__(self):
        return hash((self.assoc, self.braid, self.tensor, self.comp))

    def is_zero(self):
        return (not any(v for p in self.assoc for r in p for v in r)
                and not any(v for r in self.braid for v in r)
                and not any(v for p in self.tensor for r in p for v in r)
                and not any(v for p in self.comp for r in p for v in r))

    def _map_values(self, N2, fn):
        return Cochain3(
            self.M, N2,
            [[[fn(v) for v in row] for row in plane] for plane in self.assoc],
            [[fn(v) for v in row] for row in self.braid],
            [[[fn(v) for v in row] for row in plane] for plane in self.tensor],
            [[[fn(v) for v in row] for row in plane] for plane in self.comp])

    def sub(self, other):
        if self.M != other.M or self.N != other.N:
            raise ShapeMismatch("cochain difference across different modules")
        add, inv = self.N.group.mul, self.N.group.inv

        def zip3(a, b):
            return [[[add(x, inv(y)) for x, y in zip(ra, rb)]
                     for ra, rb in zip(pa, pb)] for pa, pb in zip(a, b)]

        return Cochain3(
            self.M, self.N,
            zip3(self.assoc, other.assoc),
            [[add(x, inv(y)) for x, y in zip(ra, rb)]
             for ra, rb in zip(self.braid, other.braid)],
            zip3(self.tensor, other.tensor),
            zip3(self.comp, other.comp))

    def to_json(self):
        return {"assoc": [[list(r) for r in p] for p in self.assoc],
                "braid": [list(r) for r in self.braid],
                "tensor": [[list(r) for r in p] for p in self.tensor],
                "comp": [[list(r) for r in p] for p in self.comp]}


def zero_cochain3(M, N):
    m, g = M.group.order, M.gamma.order
    return Cochain3(
        M, N,
        [[[0] * m for _ in range(m)] for _ in range(m)],
        [[0] * m for _ in range(m)],
        [[[0] * g for _ in range(m)] for _ in range(m)],
        [[[0] * g for _ in range(g)] for _ in range(m)])


def random_cochain3(M, N, rng):
    """A random normalized 3-cochain (not necessarily a cocycle)."""
    m, g, n = M.group.order, M.gamma.order, N.group.order
    h = zero_cochain3(M, N)
    assoc = [[list(r) for r in p] for p in h.assoc]
    braid = [list(r) for r in h.braid]
    tensor = [[list(r) for r in p] for p in h.tensor]
    comp = [[list(r) for r in p] for p in h.comp]
    for r in range(1, m):
        for s in range(1, m):
            braid[r][s] = rng.randrange(n)
            for t in range(1, m):
                assoc[r][s][t] = rng.randrange(n)
            for t in range(1, g):
                tensor[r][s][t] = rng.randrange(n)
        for t in range(1, g):
            for u in range(1, g):
                comp[r][t][u] = rng.randrange(n)
    return Cochain3(M, N, assoc, braid, tensor, comp)


def pullback3(phi, Qmod: GammaModule, h: Cochain3):
    """Pull a 3-cochain back along an equivariant homomorphism into its M."""
    phi = tuple(int(v) for v in phi)
    if len(phi) != Qmod.group.order:
        raise ShapeMismatch("pullback map has wrong length")
    f = GroupHom(Qmod.group, h.M.group, phi)
    if not f.is_hom():
        raise WrongType("pullback map is not a homomorphism")
    for s in range(Qmod.gamma.order):
        for u in range(Qmod.group.order):
            if phi[Qmod.act(s, u)] != h.M.act(s, phi[u]):
                raise WrongType("pullback map is not equivariant")
    m = Qmod.group.order
    g = Qmod.gamma.order
    return Cochain3(
        Qmod, h.N,
        [[[h.assoc[phi[r]][phi[s]][phi[t]] for t in range(m)]
          for s in range(m)] for r in range(m)],
        [[h.braid[phi[r]][phi[s]] for s in range(m)] for r in range(m)],
        [[[h.tensor[phi[r]][phi[s]][t] for t in range(g)]
          for s in range(m)] for r in range(m)],
        [[[h.comp[phi[r]][t][u] for u in range(g)] for t in range(g)]
         for r in range(m)])


def pushforward3(fmap, Nmod: GammaModule, h: Cochain3):
    """Push a 3-cochain's values forward along an equivariant hom on N."""
    fmap = tuple(int(v) for v in fmap)
    f = GroupHom(h.N.group, Nmod.group, fmap)
    if not f.is_hom():
        raise WrongType("pushforward map is not a homomorphism")
    for s in range(h.N.gamma.order):
        for a in range(h.N.group.order):
            if fmap[h.N.act(s, a)] != Nmod.act(s, fmap[a]):
                raise WrongType("pushforward map is not equivariant")
    return h._map_values(Nmod, lambda v: fmap[v])


def obstruction(phi, f, h: Cochain3, hprime: Cochain3, Qmod=None, Nmod=None):
    """phi^* h' - f_* h, valued in the coefficient module of h'."""
    src = Qmod if Qmod is not None else h.M
    pulled = pullback3(phi, src, hprime)
    pushed = pushforward3(f, hprime.N, h)
    return pulled.sub(pushed)


def is_3cocycle(h: Cochain3):
    """Whether h satisfies the degree-3 cocycle conditions.

    Decided by building the skeletal graded categorical group on h and
    running the full coherence checker on it; that categorical
    characterization is the authoritative test here.
    """
    from . import catgroups

    G = catgroups.build_reduced(h.M, h.N, h)
    report = catgroups.check_axioms(G)
    if report.ok:
        return True, None
    return False, report.first_failure()


def class_vanishes(k: Cochain3, source, target, phi, f=None,
                   guard=DEFAULT_GUARD):
    """Whether the degree-3 class of k is trivial, decided operationally:
    a functor of the given type between the two skeletal models exists
    exactly when the obstruction class vanishes, so the existence search
    is the test.

    source is (M, N, h) with N and h possibly None (discrete model);
    target is (M', N', h'); phi and f give the type.  The supplied k is
    checked against the recomputed obstruction when both sides carry
    coefficients.
    """
    from . import catgroups, functors

    Qmod, Nsrc, h = source
    Mp, Np, hp = target
    if Nsrc is None:
        S = catgroups.dis(Qmod)
        f_tab = None
    else:
        S = catgroups.build_reduced(Qmod, Nsrc, h)
        f_tab = list(f)
    T = catgroups.build_reduced(Mp, Np, hp)
    if h is not None and f is not None:
        recomputed = obstruction(phi, f, h, hp, Qmod=Qmod)
        if recomputed != k:
            raise ShapeMismatch("supplied cochain differs from the obstruction "
                                "of the given type")
    ok3, _ = is_3cocycle(k)
    if not ok3:
        return False
    f_map = None
    if f_tab is not None:
        f_map = [T.record(0, v, T.unit) for v in f_tab]
    elif Np.group.order >= 1:
        f_map = None
    classes = functors.enumerate_functors(S, T, [int(v) for v in phi],
                                          f_map=f_map, guard=guard)
    return len(classes) > 0
