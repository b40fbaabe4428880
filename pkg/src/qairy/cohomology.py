"""Lie algebra cohomology H^0, H^1, H^2 of a finite quantum Airy structure with values in D_V.

The Lie algebra is spanned by the L_i with [L_i, L_j] = f^k_{ij} L_k and acts
on D_V (at most quadratic Weyl algebra elements) by m -> hbar^{-1}[L_i, m].
:func:`ce_dims` builds the Chevalley-Eilenberg complex

    (d w)(x_0..x_q) = sum_i (-1)^i x_i . w(..^i..) + sum_{i<j} (-1)^{i+j} w([x_i, x_j], ..^i..^j..)

on alternating cochains and takes exact ranks.  :func:`hs_oracle_dims` is an
independent route through a codimension-one ideal (Hochschild-Serre), for
Lie algebras of dimension 2 or 3: with q = g / i one-dimensional,

    H^n(g, M) = H^0(q, H^n(i, M)) + H^1(q, H^{n-1}(i, M)).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .airy_core import AiryStructure, structure_constants, validate_relations
from .kernel import nullspace, rank
from .weyl import WeylElement, bracket, from_airy

MAX_DIM = 4


class CohomologyError(ValueError):
    pass


def _matmul(X, Y, zero):
    if not X or not Y:
        return []
    cols = len(Y[0])
    out = []
    for row in X:
        r = [zero] * cols
        for k, a in enumerate(row):
            if a:
                for j, b in enumerate(Y[k]):
                    if b:
                        r[j] = r[j] + a * b
        out.append(r)
    return out


def _columns(cols):
    """Matrix (list of rows) from a list of column vectors."""
    return [list(r) for r in zip(*cols)]


def _cat(*mats):
    """Horizontal concatenation of matrices with the same number of rows."""
    return [sum((list(m[r]) for m in mats), []) for r in range(len(mats[0]))]


def _shift(X, c, one):
    """X - c Id."""
    return [[x - c * one if i == j else x for j, x in enumerate(row)] for i, row in enumerate(X)]


@dataclass
class CEComplex:
    dim: int
    module_dim: int
    field: object
    f: dict
    action: list                      # action[i] = matrix of m -> hbar^{-1}[L_i, m]
    cochain_dims: list = field(default_factory=list)
    differentials: list = field(default_factory=list)   # differentials[q] : C^q -> C^{q+1}
    ranks: list = field(default_factory=list)

    def dims(self) -> tuple:
        h = []
        for q in range(3):
            before = self.ranks[q - 1] if q >= 1 else 0
            h.append(self.cochain_dims[q] - self.ranks[q] - before)
        return tuple(h)

    def dd_zero(self) -> bool:
        z = self.field.zero
        for q in range(len(self.differentials) - 1):
            prod = _matmul(self.differentials[q + 1], self.differentials[q], z)
            if any(any(x for x in row) for row in prod):
                return False
        return True

    def euler_audit(self) -> bool:
        """sum (-1)^q dim C^q = sum (-1)^q (dim ker d^q - rank d^{q-1}) + (-1)^3 rank d^2 over q <= 3."""
        lhs = sum((-1) ** q * self.cochain_dims[q] for q in range(4))
        h = self.dims()
        h3 = self.cochain_dims[3] - self.ranks[2]          # dim C^3 modulo the image
        rhs = h[0] - h[1] + h[2] - h3
        return lhs == rhs


def module_action(s: AiryStructure) -> list:
    """Matrices of m -> hbar^{-1}[L_i, m] on D_V in WeylElement.to_vector coordinates."""
    n = s.dim
    z, one = s.field.zero, s.field.one
    N = WeylElement.module_dim(n)
    ops = [from_airy(s, i) for i in range(n)]
    basis = []
    for k in range(N):
        v = [z] * N
        v[k] = one
        basis.append(WeylElement.from_vector(n, v))
    mats = []
    for i in range(n):
        mats.append(_columns([bracket(ops[i], b).to_vector() for b in basis]))
    return mats


def _check(s: AiryStructure):
    if s.graded:
        raise CohomologyError("cohomology needs a finite index set")
    if s.dim > MAX_DIM:
        raise CohomologyError(f"dimension {s.dim} exceeds the bound {MAX_DIM}")
    rep = validate_relations(s)
    if not rep.ok:
        raise CohomologyError(f"structure is not valid: {rep}")


def ce_complex(s: AiryStructure) -> CEComplex:
    _check(s)
    n = s.dim
    z, one = s.field.zero, s.field.one
    f = structure_constants(s).f
    act = module_action(s)
    N = len(act[0])
    cx = CEComplex(n, N, s.field, f, act)
    subsets = [list(combinations(range(n), q)) for q in range(5)]
    pos = [{S: k for k, S in enumerate(subs)} for subs in subsets]
    for q in range(4):
        cx.cochain_dims.append(len(subsets[q]) * N)
    for q in range(3):
        rows_n, cols_n = len(subsets[q + 1]) * N, len(subsets[q]) * N
        d = [[z] * cols_n for _ in range(rows_n)]
        for T, tpos in pos[q + 1].items():
            r0 = tpos * N
            # action terms
            for i, xi in enumerate(T):
                S = T[:i] + T[i + 1:]
                c0 = pos[q][S] * N
                sign = one if i % 2 == 0 else -one
                Ai = act[xi]
                for a in range(N):
                    for b in range(N):
                        if Ai[a][b]:
                            d[r0 + a][c0 + b] = d[r0 + a][c0 + b] + sign * Ai[a][b]
            # bracket terms: w([x_i, x_j], rest) with [x_i, x_j] = f^k_{ij} x_k
            for i in range(len(T)):
                for j in range(i + 1, len(T)):
                    rest = T[:i] + T[i + 1:j] + T[j + 1:]
                    sign = 1 if (i + j) % 2 == 0 else -1
                    for k in range(n):
                        v = f.get((T[i], T[j], k))
                        if not v or k in rest:
                            continue
                        S = tuple(sorted((k,) + rest))
                        perm = sum(1 for x in rest if x < k)      # moves k from the front into place
                        c = sign * (-1 if perm % 2 else 1) * v
                        c0 = pos[q][S] * N
                        for a in range(N):
                            d[r0 + a][c0 + a] = d[r0 + a][c0 + a] + c
        cx.differentials.append(d)
        cx.ranks.append(rank(d, s.field))
    return cx


def ce_dims(s: AiryStructure) -> tuple:
    """(dim H^0, dim H^1, dim H^2) of the structure's Lie algebra with values in D_V."""
    return ce_complex(s).dims()


# ---------------------------------------------------------------------------
# codimension-one ideal route

def _nullity(M, ncols, fld):
    return ncols - (rank(M, fld) if M else 0)


def _basis_matrix(vectors, nrows, zero):
    """Columns -> matrix; an empty basis gives an nrows x 0 matrix."""
    if not vectors:
        return [[] for _ in range(nrows)]
    return _columns(vectors)


def _invariant_quotient_dim(T, W, N, fld, zero):
    """dim of the kernel of T acting on M / im W (T preserving im W).

    = dim {m : T m in im W} - rank W.
    """
    w = len(W[0]) if W and W[0] else 0
    rW = rank(W, fld) if w else 0
    if w:
        pre = _nullity(_cat(T, [[zero - x for x in row] for row in W]), N + w, fld) - _nullity(W, w, fld)
    else:
        pre = _nullity(T, N, fld)
    return pre - rW


def _coinvariant_dim(T, basis_cols, fld):
    """dim V / T V for V spanned by the given columns and T preserving V."""
    k = len(basis_cols)
    if not k:
        return 0
    TV = _columns([[sum((T[r][c] * v[c] for c in range(len(v)) if v[c]), T[r][0] * 0) for r in range(len(T))]
                   for v in basis_cols])
    return k - rank(TV, fld)


@dataclass
class OracleResult:
    dims: tuple
    a: object
    a_ij: tuple
    h1_alt: int | None = None


def commutation_data(s: AiryStructure, ideal, y):
    """(a, ((a11, a12), (a21, a22))) read from f for ideal (x1[, x2]) and extra generator y (labels)."""
    f = structure_constants(s).f
    pos = s.index.position
    xs = [pos(x) for x in ideal]
    yo = pos(y)
    z = s.field.zero

    def br(i, j):
        return {k: v for (a, b, k), v in f.items() if (a, b) == (i, j)}

    def expand(d, allowed, what):
        bad = [k for k in d if k not in allowed]
        if bad:
            raise CohomologyError(f"{what} leaves the span {allowed}: {d}")
        return [d.get(k, z) for k in allowed]

    if len(xs) == 1:
        (a,) = expand(br(yo, xs[0]), xs, "[y, x]")
        return a, ()
    x1, x2 = xs
    c = expand(br(x2, x1), [x1, x2], "[x2, x1]")
    if c[1]:
        raise CohomologyError("[x2, x1] must be a multiple of x1")
    row1 = expand(br(yo, x1), [x1, x2], "[y, x1]")
    row2 = expand(br(yo, x2), [x1, x2], "[y, x2]")
    return c[0], (tuple(row1), tuple(row2))


def hs_oracle_dims(s: AiryStructure, ideal, y, a=None, a_ij=None) -> OracleResult:
    """Cohomology dimensions through a codimension-one ideal.

    ideal: labels x (dim 2) or (x1, x2) (dim 3, [x2, x1] = a x1); y: the remaining label.
    a, a_ij: commutation constants [y, x] = a x, or [x2, x1] = a x1 and
    [y, x_i] = a_i1 x1 + a_i2 x2; read from f when omitted, checked against f when given.
    """
    _check(s)
    if isinstance(ideal, (str, int)):
        ideal = [ideal]
    ideal = list(ideal)
    if s.dim != len(ideal) + 1 or s.dim not in (2, 3):
        raise CohomologyError("need a 2- or 3-dimensional Lie algebra with an ideal of codimension one")
    fa, faij = commutation_data(s, ideal, y)
    if a is not None and s.field(a) != fa:
        raise CohomologyError(f"supplied a = {a} disagrees with the structure constants ({fa})")
    if a_ij is not None and tuple(tuple(s.field(x) for x in r) for r in a_ij) != faij:
        raise CohomologyError(f"supplied a_ij = {a_ij} disagrees with the structure constants ({faij})")
    act = module_action(s)
    fld, z, one = s.field, s.field.zero, s.field.one
    N = len(act[0])
    pos = s.index.position
    Y = act[pos(y)]
    neg = lambda M: [[z - x for x in row] for row in M]
    if len(ideal) == 1:
        X = act[pos(ideal[0])]
        h0 = _nullity(X + Y, N, fld)
        h1a = _invariant_quotient_dim(_shift(Y, fa, one), X, N, fld, z)
        kx = nullspace(X, N, z, one)
        h1b = _coinvariant_dim(Y, kx, fld)
        h2 = N - rank(_cat(X, _shift(Y, fa, one)), fld)
        return OracleResult((h0, h1a + h1b, h2), fa, ())
    X1, X2 = act[pos(ideal[0])], act[pos(ideal[1])]
    (a11, a12), (a21, a22) = faij
    Z = [[z] * N for _ in range(N)]
    h0 = _nullity(X1 + X2 + Y, N, fld)
    # d1(m) = (x1 m, x2 m);  d2(m1, m2) = x1 m2 - (x2 - a) m1
    D1 = X1 + X2
    D2 = _cat(neg(_shift(X2, fa, one)), X1)
    K = nullspace(D2, 2 * N, z, one)
    Kb = _basis_matrix(K, 2 * N, z)
    # y on M x M
    Yt = (_cat(_shift(Y, a11, one), [[z - a12 * x for x in row] for row in _id(N, z, one)])
          + _cat([[z - a21 * x for x in row] for row in _id(N, z, one)], _shift(Y, a22, one)))
    YK = _matmul(Yt, Kb, z) if K else [[] for _ in range(2 * N)]
    rN = rank(D1, fld)
    if K:
        pre = _nullity(_cat(YK, neg(D1)), len(K) + N, fld) - _nullity(D1, N, fld)
        kn_y = pre - rN
        k_mod = len(K) - rank(_cat(D1, YK), fld)
    else:
        kn_y = k_mod = 0
    kx = nullspace(X1 + X2, N, z, one)
    h1 = kn_y + _coinvariant_dim(Y, kx, fld)
    # H^2(i, M) = M / (x1 M + (x2 - a) M), on which y acts as y - a11 - a22
    W = _cat(X1, _shift(X2, fa, one))
    h2 = _invariant_quotient_dim(_shift(Y, a11 + a22, one), W, N, fld, z) + k_mod
    # K(3)/N(3) description of H^1
    D3 = (_cat(neg(_shift(X2, fa, one)), X1, Z)
          + _cat(neg(_shift(Y, a11, one)), _scal(a12, N, z, one), X1)
          + _cat(_scal(a21, N, z, one), neg(_shift(Y, a22, one)), X2))
    N3 = X1 + X2 + Y
    h1_alt = _nullity(D3, 3 * N, fld) - rank(N3, fld)
    return OracleResult((h0, h1, h2), fa, faij, h1_alt)


def _id(N, z, one):
    return [[one if i == j else z for j in range(N)] for i in range(N)]


def _scal(c, N, z, one):
    return [[c * one if i == j else z for j in range(N)] for i in range(N)]


__all__ = ["ce_dims", "ce_complex", "CEComplex", "hs_oracle_dims", "OracleResult", "commutation_data",
           "module_action", "CohomologyError"]
