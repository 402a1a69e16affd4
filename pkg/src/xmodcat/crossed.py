"""Braided equivariant crossed modules and their morphisms.

A module here is a pair of finite groups B (written additively in error
messages) and D (multiplicatively), a boundary map d: B -> D, an action
theta of D on B, a braiding table eta: D x D -> B, and compatible actions
of a common finite group Gamma on B and D.  Validation is eager: every
axiom is scanned and all failures are collected, because the downstream
category builder silently relies on each one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cohomology import SymmetricCochain2, is_2cocycle, zero_cochain2
from .errors import (
    GroupError,
    NotComposable,
    NotGammaStable,
    NotNormal,
    QuotientNotAbelian,
    ShapeMismatch,
)
from .groups import (
    FiniteGroup,
    GammaAction,
    GammaModule,
    GroupHom,
    commutator_subgroup,
    identity_hom,
    is_normal,
    quotient,
    subgroup_as_group,
    trivial_action,
    trivial_group,
)


@dataclass(frozen=True)
class AxiomCheck:
    key: str
    ok: bool
    witnesses: tuple

    @property
    def first_witness(self):
        return self.witnesses[0] if self.witnesses else None

    @property
    def fail_count(self):
        return len(self.witnesses)


class AxiomReport:
    """Per-axiom verdicts with all failing witness tuples."""

    def __init__(self, entries):
        self.entries = list(entries)

    @property
    def ok(self):
        return all(e.ok for e in self.entries)

    def failed(self):
        return [e for e in self.entries if not e.ok]

    def first_failure(self):
        for e in self.entries:
            if not e.ok:
                return (e.key, e.first_witness)
        return None

    def __getitem__(self, key):
        for e in self.entries:
            if e.key == key:
                return e
        raise KeyError(key)

    def __repr__(self):
        bad = self.failed()
        if not bad:
            return f"AxiomReport(ok, {len(self.entries)} checks)"
        return "AxiomReport(failed: " + \
            ", ".join(f"{e.key}@{e.first_witness}" for e in bad) + ")"


class BraidedGammaCrossedModule:
    """The tuple (B, D, d, theta, eta) with compatible Gamma-actions."""

    __slots__ = ("B", "D", "d", "theta", "eta", "gamma", "act_b", "act_d",
                 "_report", "_pi0", "_pi1")

    def __init__(self, B, D, d, theta, eta, gamma=None, act_b=None, act_d=None):
        self.B = B
        self.D = D
        self.d = tuple(int(v) for v in d)
        self.theta = tuple(tuple(int(v) for v in row) for row in theta)
        self.eta = tuple(tuple(int(v) for v in row) for row in eta)
        self.gamma = gamma if gamma is not None else trivial_group()
        self.act_b = act_b if act_b is not None else trivial_action(self.gamma, B)
        self.act_d = act_d if act_d is not None else trivial_action(self.gamma, D)
        self._report = None
        self._pi0 = None
        self._pi1 = None
        if len(self.d) != B.order:
            raise ShapeMismatch("boundary table length != |B|")
        if any(not 0 <= v < D.order for v in self.d):
            raise ShapeMismatch("boundary value out of range")
        if len(self.theta) != D.order or any(len(r) != B.order for r in self.theta):
            raise ShapeMismatch("theta table must be |D| x |B|")
        if any(not 0 <= v < B.order for r in self.theta for v in r):
            raise ShapeMismatch("theta value out of range")
        if len(self.eta) != D.order or any(len(r) != D.order for r in self.eta):
            raise ShapeMismatch("eta table must be |D| x |D|")
        if any(not 0 <= v < B.order for r in self.eta for v in r):
            raise ShapeMismatch("eta value out of range")
        if self.act_b.gamma != self.gamma or self.act_d.gamma != self.gamma:
            raise ShapeMismatch("actions must share the module's gamma")
        if self.act_b.target != B or self.act_d.target != D:
            raise ShapeMismatch("action targets do not match B and D")

    # -- validation ---------------------------------------------------------

    def validate(self):
        """Full axiom scan; cached after the first call."""
        if self._report is None:
            self._report = self._validate()
        return self._report

    @property
    def is_valid(self):
        return self.validate().ok

    def _validate(self):
        B, D, d, th, eta = self.B, self.D, self.d, self.theta, self.eta
        gam, ab, ad = self.gamma, self.act_b, self.act_d
        entries = []

        def scan(key, gen):
            entries.append(AxiomCheck(key, *_collect(gen)))

        def _collect(gen):
            bad = tuple(gen)
            return (not bad, bad)

        scan("boundary-hom",
             ((b, c) for b in B.elements() for c in B.elements()
              if d[B.mul(b, c)] != D.mul(d[b], d[c])))
        scan("theta-identity",
             ((b,) for b in B.elements() if th[0][b] != b))
        scan("theta-rows-bijective",
             ((x,) for x in D.elements() if len(set(th[x])) != B.order))
        scan("theta-rows-additive",
             ((x, b, c) for x in D.elements() for b in B.elements()
              for c in B.elements()
              if th[x][B.mul(b, c)] != B.mul(th[x][b], th[x][c])))
        scan("theta-action",
             ((x, y, b) for x in D.elements() for y in D.elements()
              for b in B.elements()
              if th[D.mul(x, y)][b] != th[x][th[y][b]]))
        scan("gammaB-action", _action_failures(ab))
        scan("gammaD-action", _action_failures(ad))
        scan("boundary-equivariant",
             ((s, b) for s in gam.elements() for b in B.elements()
              if d[ab(s, b)] != ad(s, d[b])))
        # theta d = mu: the action along the boundary is conjugation in B
        scan("lifted-conjugation",
             ((b, c) for b in B.elements() for c in B.elements()
              if th[d[b]][c] != B.mul(B.mul(b, c), B.inv(b))))
        # d(theta_x b) = x d(b) x^-1
        scan("boundary-conjugation",
             ((x, b) for x in D.elements() for b in B.elements()
              if d[th[x][b]] != D.conj(x, d[b])))
        # eta(x, yz) = eta(x, y) + theta_y eta(x, z)
        scan("braid-additive-right",
             ((x, y, z) for x in D.elements() for y in D.elements()
              for z in D.elements()
              if eta[x][D.mul(y, z)] != B.mul(eta[x][y], th[y][eta[x][z]])))
        # eta(xy, z) = theta_x eta(y, z) + eta(x, z)
        scan("braid-additive-left",
             ((x, y, z) for x in D.elements() for y in D.elements()
              for z in D.elements()
              if eta[D.mul(x, y)][z] != B.mul(th[x][eta[y][z]], eta[x][z])))
        # d eta(x, y) = x y x^-1 y^-1
        scan("braid-boundary",
             ((x, y) for x in D.elements() for y in D.elements()
              if d[eta[x][y]] != D.mul(D.mul(x, y),
                                       D.mul(D.inv(x), D.inv(y)))))
        # eta(d b, x) + theta_x b = b
        scan("braid-action-right",
             ((b, x) for b in B.elements() for x in D.elements()
              if B.mul(eta[d[b]][x], th[x][b]) != b))
        # eta(x, d b) + b = theta_x b
        scan("braid-action-left",
             ((x, b) for x in D.elements() for b in B.elements()
              if B.mul(eta[x][d[b]], b) != th[x][b]))
        # s(theta_x b) = theta_{s x}(s b)
        scan("action-equivariant",
             ((s, x, b) for s in gam.elements() for x in D.elements()
              for b in B.elements()
              if ab(s, th[x][b]) != th[ad(s, x)][ab(s, b)]))
        # s eta(x, y) = eta(s x, s y)
        scan("braid-equivariant",
             ((s, x, y) for s in gam.elements() for x in D.elements()
              for y in D.elements()
              if ab(s, eta[x][y]) != eta[ad(s, x)][ad(s, y)]))
        return AxiomReport(entries)

    # -- homotopy groups ------------------------------------------------------

    def kernel_elements(self):
        return tuple(b for b in self.B.elements() if self.d[b] == 0)

    def image_elements(self):
        return tuple(sorted(set(self.d)))

    def pi1(self):
        """Ker d as a gamma-module, re-indexed with its own identity at 0.

        Also verifies the derived facts: Ker d is central in B and the
        induced action of Coker d on it is trivial.
        """
        if self._pi1 is None:
            ker = self.kernel_elements()
            sub, embed = subgroup_as_group(self.B, ker)
            for a in ker:
                for b in self.B.elements():
                    if self.B.mul(a, b) != self.B.mul(b, a):
                        raise GroupError(
                            f"kernel element {a} is not central (witness {b})")
                for x in self.D.elements():
                    if self.theta[x][a] != a:
                        raise GroupError(
                            f"induced action on the kernel is not trivial at ({x}, {a})")
            pos = {e: i for i, e in enumerate(embed)}
            rows = []
            for s in self.gamma.elements():
                row = []
                for i, e in enumerate(embed):
                    v = self.act_b(s, e)
                    if v not in pos:
                        raise NotGammaStable(f"kernel not stable under grade {s}")
                    row.append(pos[v])
                rows.append(row)
            mod = GammaModule(sub, GammaAction(self.gamma, sub, rows))
            self._pi1 = (mod, embed)
        return self._pi1[0]

    def pi1_embedding(self):
        self.pi1()
        return self._pi1[1]

    def pi0(self):
        """Coker d as a gamma-module; cosets indexed by least member."""
        if self._pi0 is None:
            img = subgroup_as_group(self.D, set(self.d))[1]
            Q, proj = quotient(self.D, img)
            if not Q.is_abelian:
                raise QuotientNotAbelian("cokernel of the boundary is not abelian")
            rows = []
            for s in self.gamma.elements():
                row = [0] * Q.order
                for x in self.D.elements():
                    row[proj(x)] = proj(self.act_d(s, x))
                rows.append(row)
            mod = GammaModule(Q, GammaAction(self.gamma, Q, rows))
            self._pi0 = (mod, proj)
        return self._pi0[0]

    def pi0_projection(self):
        self.pi0()
        return self._pi0[1]

    # -- predicates -----------------------------------------------------------

    def is_symmetric(self):
        B, D, eta = self.B, self.D, self.eta
        return all(B.mul(eta[x][y], eta[y][x]) == 0
                   for x in D.elements() for y in D.elements())

    def is_abelian_module(self):
        if not (self.B.is_abelian and self.D.is_abelian):
            return False
        if any(self.theta[x][b] != b
               for x in self.D.elements() for b in self.B.elements()):
            return False
        return not any(v for row in self.eta for v in row)

    def __eq__(self, other):
        return (isinstance(other, BraidedGammaCrossedModule)
                and self.B == other.B and self.D == other.D
                and self.d == other.d and self.theta == other.theta
                and self.eta == other.eta and self.gamma == other.gamma
                and self.act_b == other.act_b and self.act_d == other.act_d)

    def __hash__(self):
        return hash((self.B, self.D, self.d, self.theta, self.eta))

    def __repr__(self):
        return (f"BraidedGammaCrossedModule(|B|={self.B.order}, "
                f"|D|={self.D.order}, |gamma|={self.gamma.order})")

    def to_json(self):
        return {
            "B": self.B.to_json(),
            "D": self.D.to_json(),
            "d": list(self.d),
            "theta": [list(r) for r in self.theta],
            "eta": [list(r) for r in self.eta],
            "gamma": self.gamma.to_json(),
            "actB": [list(r) for r in self.act_b.act],
            "actD": [list(r) for r in self.act_d.act],
        }

    @staticmethod
    def from_json(obj):
        B = FiniteGroup(obj["B"]["table"])
        D = FiniteGroup(obj["D"]["table"])
        gamma = FiniteGroup(obj["gamma"]["table"])
        return BraidedGammaCrossedModule(
            B, D, obj["d"], obj["theta"], obj["eta"], gamma,
            GammaAction(gamma, B, obj["actB"]),
            GammaAction(gamma, D, obj["actD"]))


def _action_failures(action):
    G, T, act = action.gamma, action.target, action.act
    for x in T.elements():
        if act[0][x] != x:
            yield ("identity", x)
    for s in G.elements():
        if len(set(act[s])) != T.order:
            yield ("bijective", s)
        for x in T.elements():
            for y in T.elements():
                if act[s][T.mul(x, y)] != T.mul(act[s][x], act[s][y]):
                    yield ("multiplicative", s, x, y)
        for t in G.elements():
            st = G.mul(s, t)
            for x in T.elements():
                if act[st][x] != act[s][act[t][x]]:
                    yield ("composition", s, t, x)


def validate(module):
    return module.validate()


def conjugation_module(G, N, gamma=None, act=None):
    """The braided module (N, G, inclusion, conjugation, commutator).

    Requires N normal, the quotient G/N abelian, and N stable under the
    gamma-action on G.  The result validates by construction.
    """
    witness = is_normal(G, N)
    if witness is not None:
        raise NotNormal("subgroup is not normal", witness)
    Nset = set(N)
    derived = commutator_subgroup(G)
    if not set(derived) <= Nset:
        missing = min(set(derived) - Nset)
        raise QuotientNotAbelian(
            f"quotient is nonabelian: commutator {missing} lies outside the subgroup")
    gamma = gamma if gamma is not None else trivial_group()
    act = act if act is not None else trivial_action(gamma, G)
    for s in gamma.elements():
        for n in N:
            if act(s, n) not in Nset:
                raise NotGammaStable(f"grade {s} moves {n} out of the subgroup")
    B, embed = subgroup_as_group(G, N)
    pos = {e: i for i, e in enumerate(embed)}
    d = tuple(embed)
    theta = tuple(tuple(pos[G.conj(x, e)] for e in embed) for x in G.elements())
    eta = tuple(tuple(pos[G.mul(G.mul(x, y), G.mul(G.inv(x), G.inv(y)))]
                      for y in G.elements()) for x in G.elements())
    act_b = GammaAction(gamma, B,
                        [[pos[act(s, e)] for e in embed] for s in gamma.elements()])
    m = BraidedGammaCrossedModule(B, G, d, theta, eta, gamma, act_b, act)
    report = m.validate()
    if not report.ok:
        raise QuotientNotAbelian(f"construction failed validation: {report}")
    return m


def pi0(module):
    return module.pi0()


def pi1(module):
    return module.pi1()


def is_symmetric(module):
    return module.is_symmetric()


def is_abelian(module):
    return module.is_abelian_module()


# -- morphisms ----------------------------------------------------------------

class CrossedMorphism:
    """A morphism (f1, f0, phi) between braided gamma-crossed modules."""

    __slots__ = ("source", "target", "f1", "f0", "phi")

    def __init__(self, source, target, f1: GroupHom, f0: GroupHom,
                 phi: SymmetricCochain2 = None):
        self.source = source
        self.target = target
        self.f1 = f1
        self.f0 = f0
        if phi is None:
            phi = zero_cochain2(source.pi0(), target.pi1())
        self.phi = phi

    def __eq__(self, other):
        return (isinstance(other, CrossedMorphism)
                and self.source == other.source and self.target == other.target
                and self.f1 == other.f1 and self.f0 == other.f0
                and self.phi == other.phi)

    def __hash__(self):
        return hash((self.f1, self.f0, self.phi))

    def __repr__(self):
        return f"CrossedMorphism(f1={list(self.f1.map)}, f0={list(self.f0.map)})"


def identity_morphism(module):
    return CrossedMorphism(module, module,
                           identity_hom(module.B), identity_hom(module.D))


def validate_morphism(m: CrossedMorphism, M=None, Mp=None):
    """Axiom report for a morphism; M and Mp default to the stored ends."""
    M = M if M is not None else m.source
    Mp = Mp if Mp is not None else m.target
    entries = []

    def scan(key, gen):
        bad = tuple(gen)
        entries.append(AxiomCheck(key, not bad, bad))

    f1, f0 = m.f1, m.f0
    if f1.domain != M.B or f1.codomain != Mp.B:
        raise ShapeMismatch("f1 does not run between the B groups")
    if f0.domain != M.D or f0.codomain != Mp.D:
        raise ShapeMismatch("f0 does not run between the D groups")
    scan("f1-hom", ((b, c) for b in M.B.elements() for c in M.B.elements()
                    if f1(M.B.mul(b, c)) != Mp.B.mul(f1(b), f1(c))))
    scan("f0-hom", ((x, y) for x in M.D.elements() for y in M.D.elements()
                    if f0(M.D.mul(x, y)) != Mp.D.mul(f0(x), f0(y))))
    scan("f1-equivariant",
         ((s, b) for s in M.gamma.elements() for b in M.B.elements()
          if f1(M.act_b(s, b)) != Mp.act_b(s, f1(b))))
    scan("f0-equivariant",
         ((s, x) for s in M.gamma.elements() for x in M.D.elements()
          if f0(M.act_d(s, x)) != Mp.act_d(s, f0(x))))
    scan("boundary-compat",
         ((b,) for b in M.B.elements() if f0(M.d[b]) != Mp.d[f1(b)]))
    scan("action-compat",
         ((x, b) for x in M.D.elements() for b in M.B.elements()
          if f1(M.theta[x][b]) != Mp.theta[f0(x)][f1(b)]))
    scan("braid-compat",
         ((x, y) for x in M.D.elements() for y in M.D.elements()
          if f1(M.eta[x][y]) != Mp.eta[f0(x)][f0(y)]))
    phi_ok = m.phi.Q == M.pi0() and m.phi.B == Mp.pi1()
    entries.append(AxiomCheck("phi-modules", phi_ok, () if phi_ok else ((),)))
    if phi_ok:
        ok, witness = is_2cocycle(m.phi)
        entries.append(AxiomCheck("phi-cocycle", ok, () if ok else (witness,)))
    return AxiomReport(entries)


def compose_morphisms(m2: CrossedMorphism, m1: CrossedMorphism):
    """m2 after m1, with third component f1'_* phi + f0^* phi'."""
    if m1.target != m2.source:
        raise NotComposable("morphism ends do not match")
    M, Mm, Mpp = m1.source, m1.target, m2.target
    f1 = m2.f1.compose(m1.f1)
    f0 = m2.f0.compose(m1.f0)
    Q = M.pi0()
    N2 = Mpp.pi1()
    ker1 = Mm.pi1()
    emb1 = Mm.pi1_embedding()
    emb2 = Mpp.pi1_embedding()
    pos2 = {e: i for i, e in enumerate(emb2)}
    proj_m = Mm.pi0_projection()
    proj_s = M.pi0_projection()
    # induced map on cokernels: coset of x -> coset of f0(x)
    reps = [min(x for x in M.D.elements() if proj_s(x) == r)
            for r in range(Q.group.order)]
    fbar = [proj_m(m1.f0(reps[r])) for r in range(Q.group.order)]

    def push(v):
        # ker(d') index -> ker(d'') index through f1 of the middle stage
        img = m2.f1(emb1[v])
        return pos2[img]

    qq = [[N2.group.mul(push(m1.phi.qq[r][s]),
                        m2.phi.qq[fbar[r]][fbar[s]])
           for s in range(Q.group.order)] for r in range(Q.group.order)]
    qg = [[N2.group.mul(push(m1.phi.qg[r][s]),
                        m2.phi.qg[fbar[r]][s])
           for s in range(M.gamma.order)] for r in range(Q.group.order)]
    phi = SymmetricCochain2(Q, N2, qq, qg)
    return CrossedMorphism(M, Mpp, f1, f0, phi)
