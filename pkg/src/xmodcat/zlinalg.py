"""Exact integer linear algebra: Smith normal form, congruence solving,
and presentations of finitely generated abelian groups.

All matrices are lists of lists of Python ints (arbitrary precision, so
pivoting can never overflow).  A finite abelian group is presented by a
list of moduli [m1, ..., mr]; its elements are integer coordinate vectors
taken mod the moduli.
"""

from __future__ import annotations

from .errors import MatrixShapeMismatch


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _mat_vec(A, x):
    return [sum(row[j] * x[j] for j in range(len(x))) for row in A]


def _mat_mul(A, B):
    n = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(row[k] * B[k][j] for k in range(n)) for j in range(cols)]
            for row in A]


def smith_normal_form(A):
    """Diagonalize an integer matrix.

    Returns (D, S, T, Sinv, Tinv) with S @ A @ T == D, where D is diagonal
    with d1 | d2 | ... and S, T unimodular.  Sinv and Tinv are the exact
    inverses of S and T.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, row)) for row in A]
    for row in D:
        if len(row) != n:
            raise MatrixShapeMismatch("ragged matrix")
    S, Sinv = _identity(m), _identity(m)
    T, Tinv = _identity(n), _identity(n)

    def row_add(i, j, q):
        # row_i += q * row_j;  S := E S, Sinv := Sinv E^-1
        Di, Dj = D[i], D[j]
        for k in range(n):
            Di[k] += q * Dj[k]
        Si, Sj = S[i], S[j]
        for k in range(m):
            Si[k] += q * Sj[k]
        for r in range(m):
            Sinv[r][j] -= q * Sinv[r][i]

    def col_add(j, i, q):
        # col_j += q * col_i;  T := T E, Tinv := E^-1 Tinv
        for r in range(m):
            D[r][j] += q * D[r][i]
        for r in range(n):
            T[r][j] += q * T[r][i]
        Ti, Tj = Tinv[i], Tinv[j]
        for k in range(n):
            Ti[k] -= q * Tj[k]

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        S[i], S[j] = S[j], S[i]
        for r in range(m):
            Sinv[r][i], Sinv[r][j] = Sinv[r][j], Sinv[r][i]

    def col_swap(i, j):
        for r in range(m):
            D[r][i], D[r][j] = D[r][j], D[r][i]
        for r in range(n):
            T[r][i], T[r][j] = T[r][j], T[r][i]
        Tinv[i], Tinv[j] = Tinv[j], Tinv[i]

    def row_neg(i):
        D[i] = [-v for v in D[i]]
        S[i] = [-v for v in S[i]]
        for r in range(m):
            Sinv[r][i] = -Sinv[r][i]

    rank = min(m, n)
    for k in range(rank):
        while True:
            # smallest nonzero entry of the trailing submatrix -> pivot
            best = None
            for i in range(k, m):
                for j in range(k, n):
                    v = abs(D[i][j])
                    if v and (best is None or v < best[0]):
                        best = (v, i, j)
            if best is None:
                break
            _, pi, pj = best
            if pi != k:
                row_swap(k, pi)
            if pj != k:
                col_swap(k, pj)
            dirty = False
            for i in range(k + 1, m):
                if D[i][k]:
                    q = D[i][k] // D[k][k]
                    row_add(i, k, -q)
                    if D[i][k]:
                        dirty = True
            for j in range(k + 1, n):
                if D[k][j]:
                    q = D[k][j] // D[k][k]
                    col_add(j, k, -q)
                    if D[k][j]:
                        dirty = True
            if dirty:
                continue
            # pivot must divide every remaining entry
            fixed = True
            for i in range(k + 1, m):
                for j in range(k + 1, n):
                    if D[i][j] % D[k][k]:
                        row_add(k, i, 1)
                        fixed = False
                        break
                if not fixed:
                    break
            if fixed:
                break
        if D[k][k] == 0:
            break
        if D[k][k] < 0:
            row_neg(k)
    return D, S, T, Sinv, Tinv


def diagonal(D):
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def solve(A, b):
    """One integer solution x of A x = b, or None."""
    m = len(A)
    n = len(A[0]) if m else 0
    if len(b) != m:
        raise MatrixShapeMismatch("rhs length mismatch")
    D, S, T, _, _ = smith_normal_form(A)
    c = _mat_vec(S, b)
    y = [0] * n
    for i in range(m):
        d = D[i][i] if i < min(m, n) else 0
        if d:
            if c[i] % d:
                return None
            y[i] = c[i] // d
        elif c[i]:
            return None
    return _mat_vec(T, y)


def kernel_basis(A):
    """Columns spanning {x : A x = 0} over the integers."""
    m = len(A)
    n = len(A[0]) if m else 0
    if n == 0:
        return []
    D, _, T, _, _ = smith_normal_form(A)
    out = []
    for j in range(n):
        d = D[j][j] if j < min(m, n) else 0
        if d == 0:
            out.append([T[i][j] for i in range(n)])
    return out


def congruence_kernel_gens(F, cod_moduli):
    """Generators of {x in Z^n : F x == 0 (mod cod_moduli componentwise)}.

    Returned as a list of length-n integer columns; they generate the full
    solution lattice.
    """
    m = len(F)
    n = len(F[0]) if m else 0
    if len(cod_moduli) != m:
        raise MatrixShapeMismatch("moduli length mismatch")
    block = [list(F[i]) + [cod_moduli[i] if j == i else 0 for j in range(m)]
             for i in range(m)]
    if n == 0:
        return []
    if m == 0:
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    return [col[:n] for col in kernel_basis(block)]


def solve_mod(F, b, cod_moduli):
    """One solution of F x == b (mod cod_moduli), or None."""
    m = len(F)
    block = [list(F[i]) + [cod_moduli[i] if j == i else 0 for j in range(m)]
             for i in range(m)]
    n = len(F[0]) if m else 0
    sol = solve(block, list(b))
    if sol is None:
        return None
    return sol[:n]


class Presented:
    """A finite abelian group given by invariant factors plus, optionally,
    lifts of its generators into an ambient coordinate group."""

    def __init__(self, invariants, lifts=None):
        self.invariants = list(invariants)
        self.lifts = [list(v) for v in lifts] if lifts is not None else None

    @property
    def order(self):
        out = 1
        for d in self.invariants:
            out *= d
        return out

    def __repr__(self):
        return f"Presented({self.invariants})"


def _reduce_vec(v, moduli):
    return [x % mod if mod else x for x, mod in zip(v, moduli)]


def presentation_from_generators(gen_cols, ambient_moduli):
    """Present the subgroup of prod Z/m_i generated by the given columns.

    Returns a Presented whose lifts are integer combinations of gen_cols,
    reduced mod the ambient moduli.  Invariant factors satisfy d1 | d2 | ...
    with the trivial factors dropped.
    """
    n = len(ambient_moduli)
    s = len(gen_cols)
    if s == 0:
        return Presented([], [])
    K = [[gen_cols[j][i] for j in range(s)] for i in range(n)]
    rel_cols = congruence_kernel_gens(K, ambient_moduli)
    if not rel_cols:
        raise MatrixShapeMismatch("generators of infinite order in finite ambient")
    R = [[col[i] for col in rel_cols] for i in range(s)]
    D, _, _, Sinv, _ = smith_normal_form(R)
    invs, lifts = [], []
    for j in range(s):
        d = D[j][j] if j < min(len(D), len(D[0])) else 0
        if d == 0:
            raise MatrixShapeMismatch("generators of infinite order in finite ambient")
        if d == 1:
            continue
        col = [Sinv[i][j] for i in range(s)]
        lift = [sum(K[i][t] * col[t] for t in range(s)) for i in range(n)]
        invs.append(d)
        lifts.append(_reduce_vec(lift, ambient_moduli))
    return Presented(invs, lifts)


def subquotient_presentation(ker_gens, sub_gens, ambient_moduli):
    """Present <ker_gens> / <sub_gens> inside prod Z/m_i.

    Requires <sub_gens> to be contained in <ker_gens>; raises ValueError
    otherwise.  Lifts are returned in ambient coordinates.
    """
    n = len(ambient_moduli)
    s = len(ker_gens)
    if s == 0:
        if any(any(x % mod for x, mod in zip(col, ambient_moduli)) for col in sub_gens):
            raise ValueError("subgroup not contained in kernel")
        return Presented([], [])
    K = [[ker_gens[j][i] for j in range(s)] for i in range(n)]
    for col in sub_gens:
        if solve_mod(K, col, ambient_moduli) is None:
            raise ValueError("subgroup not contained in kernel")
    t = len(sub_gens)
    block = [K[i] + [sub_gens[j][i] for j in range(t)] for i in range(n)]
    rel_cols = [col[:s] for col in congruence_kernel_gens(block, ambient_moduli)]
    if not rel_cols:
        raise MatrixShapeMismatch("empty relation set for finite subquotient")
    R = [[col[i] for col in rel_cols] for i in range(s)]
    D, _, _, Sinv, _ = smith_normal_form(R)
    invs, lifts = [], []
    for j in range(s):
        d = D[j][j] if j < min(len(D), len(D[0])) else 0
        if d == 0:
            raise MatrixShapeMismatch("infinite subquotient of finite ambient")
        if d == 1:
            continue
        col = [Sinv[i][j] for i in range(s)]
        lift = [sum(K[i][u] * col[u] for u in range(s)) for i in range(n)]
        invs.append(d)
        lifts.append(_reduce_vec(lift, ambient_moduli))
    return Presented(invs, lifts)
