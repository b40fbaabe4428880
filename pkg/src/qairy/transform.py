"""Actions on quantum Airy structures: gauge conjugation, rescalings, translation.

Gauge conjugation by exp(hbar/2 u_ab d_a d_b) shifts x_a -> x_a + hbar u_ab d_b
inside the operators, which gives

    B~^i_{j,k} = B^i_{j,k} + A^i_{j,a} u_{a,k}
    C~^i_{j,k} = C^i_{j,k} + u_{j,a} B^i_{a,k} + u_{k,a} B^i_{a,j} + u_{j,a} u_{k,b} A^i_{a,b}
    D~^i       = D^i + 1/2 u_{a,b} A^i_{a,b}

with A unchanged.

Translation x -> x + t works over truncated power series in t.  The genus-0
one- and two-point series G01(i) = d_i S_0(t), G02(i,j) = d_i d_j S_0(t) are
built degree by degree, then every tensor X is replaced by M^{-1} X^ where

    M_{i,b}    = delta_{i,b} - B^i_{a,b} t_a - C^i_{a,b} G01(a)
    A^^i_{j,k} = A^i_{j,k} + B^i_{j,a} G02(a,k) + B^i_{k,a} G02(a,j) + C^i_{a,b} G02(a,j) G02(b,k)
    B^^i_{j,k} = B^i_{j,k} + C^i_{k,a} G02(a,j)
    C^^        = C
    D^^i       = D^i + 1/2 C^i_{a,b} G02(a,b)

(the last term comes from reordering d_a d_b past the quadratic exponent).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from math import factorial

from .airy_core import AiryStructure, validate_relations
from .kernel import SeriesRing, multisets

HALF = Fraction(1, 2)


class GaugeError(ValueError):
    pass


def _u_dict(s: AiryStructure, u) -> dict:
    """Normalize u (dense matrix or {(label, label): value}) to {(ordinal, ordinal): value}."""
    out = {}
    if isinstance(u, dict):
        pos = s.index.position
        for (a, b), v in u.items():
            if not v:
                continue
            key = (pos(a), pos(b))
            for k in (key, key[::-1]):
                if k in out and out[k] != v:
                    raise GaugeError(f"u is not symmetric at {(a, b)}")
                out[k] = s.field(v)
    else:
        n = len(u)
        if n != s.dim or any(len(r) != n for r in u):
            raise GaugeError("u must be a square matrix over the index set")
        for a in range(n):
            for b in range(n):
                if u[a][b] != u[b][a]:
                    raise GaugeError(f"u is not symmetric at ({a}, {b})")
                if u[a][b]:
                    out[(a, b)] = s.field(u[a][b])
    return out


def apply_gauge(s: AiryStructure, u: dict, name: str | None = None) -> AiryStructure:
    """Gauge action with u given as a symmetric {(ordinal, ordinal): value} dict (both orders stored).

    Works on graded structures too; entries outside the stored range are dropped.
    """
    out = s.copy(name)
    if not u:
        return out
    u_row = defaultdict(list)
    for (a, b), v in u.items():
        u_row[a].append((b, v))
    A_rows = defaultdict(list)       # (i, j) -> [(a, A^i_{j,a})]
    A_pairs = defaultdict(list)      # i -> [(a, b, A^i_{a,b})]
    for (i, j, a), v in s.A.expanded():
        A_rows[(i, j)].append((a, v))
        A_pairs[i].append((j, a, v))
    for (i, j), row in A_rows.items():
        acc = defaultdict(lambda: 0)
        for a, v in row:
            for k, w in u_row.get(a, ()):
                acc[k] += v * w
        for k, v in acc.items():
            if v:
                out.B.add((i, j, k), v)
    # C: u_{j,a} B^i_{a,k} and its (j <-> k) mirror, then u u A
    for (i, a, k), v in s.B.items():
        for j, w in u_row.get(a, ()):
            out.C.add((i, j, k), v * w)
            if j == k:
                out.C.add((i, j, k), v * w)
    for i, entries in A_pairs.items():
        left = defaultdict(lambda: 0)     # (j, b) -> sum_a u_{j,a} A^i_{a,b}
        for a, b, v in entries:
            for j, w in u_row.get(a, ()):
                left[(j, b)] += w * v
        for (j, b), v in left.items():
            if not v:
                continue
            for k, w in u_row.get(b, ()):
                if j <= k:
                    out.C.add((i, j, k), v * w)
        dsum = 0
        for a, b, v in entries:
            w = u.get((a, b))
            if w:
                dsum += w * v
        if dsum:
            out.D.add((i,), HALF * dsum)
    out.touched()
    return out


def gauge_u(s: AiryStructure, u, validate: bool = True) -> AiryStructure:
    """Conjugate by exp(hbar/2 u_ab d_a d_b); u symmetric over the (finite) index set."""
    if s.graded:
        raise GaugeError("gauge_u needs a finite index set; loop builders apply the gauge themselves")
    ud = _u_dict(s, u)
    out = apply_gauge(s, ud, s.name + "+gauge" if ud else s.name)
    if validate and validate_relations(s).ok:
        rep = validate_relations(out)
        if not rep.ok:
            raise GaugeError(f"gauge broke the relations: {rep}")
    return out


def _rescaled(s: AiryStructure, fa, fb, fc, fd, name):
    out = AiryStructure(s.index, s.field, name, s.certificate, s.meta)
    for src, dst, f in ((s.A, out.A, fa), (s.B, out.B, fb), (s.C, out.C, fc), (s.D, out.D, fd)):
        for k, v in src.items():
            dst[k] = v * f
    return out


def scale(s: AiryStructure, lam) -> AiryStructure:
    """(A, B, C, D) -> (lam^3 A, lam B, lam^-1 C, lam D)."""
    if not lam:
        raise ValueError("scale factor must be invertible")
    lam = s.field(lam)
    return _rescaled(s, lam * lam * lam, lam, 1 / lam, lam, s.name)


def hbar_rescale(s: AiryStructure, z) -> AiryStructure:
    """(A, B, C, D) -> (A/z, B, z C, D)."""
    if not z:
        raise ValueError("hbar rescaling needs z != 0")
    z = s.field(z)
    return _rescaled(s, 1 / z, s.field.one, z, s.field.one, s.name)



# ---------------------------------------------------------------------------
# translation flow

class TranslatedStructure(AiryStructure):
    """Structure over K[[t]] (truncated); ``g01[i]``, ``g02[i][j]`` hold the genus-0 series."""

    def __init__(self, source: AiryStructure, ring: SeriesRing):
        super().__init__(source.index, ring, source.name + "+translated", None, source.meta)
        self.source = source
        self.ring = ring
        self.order = ring.order
        self.g01 = []
        self.g02 = []


def _dense(s: AiryStructure):
    n, z = s.dim, s.field.zero
    A = [[[z] * n for _ in range(n)] for _ in range(n)]
    B = [[[z] * n for _ in range(n)] for _ in range(n)]
    C = [[[z] * n for _ in range(n)] for _ in range(n)]
    for (i, j, k), v in s.A.expanded():
        A[i][j][k] = v
    for (i, j, k), v in s.B.items():
        B[i][j][k] = v
    for (i, j, k), v in s.C.expanded():
        C[i][j][k] = v
    return A, B, C, [s.d(i) for i in range(n)]


def _lin(coeffs, series):
    """sum_a coeffs[a] * series[a] skipping zero coefficients."""
    out = None
    for c, x in zip(coeffs, series):
        if c and x:
            out = x * c if out is None else out + x * c
    return out


def translate(s: AiryStructure, order: int) -> TranslatedStructure:
    """Translate x -> x + t, truncating all series at total degree ``order`` in t."""
    if s.graded:
        raise ValueError("translation needs a finite index set")
    if order < 0:
        raise ValueError("order must be >= 0")
    n = s.dim
    R = SeriesRing(n, order, s.field)
    zero = R.zero
    A, B, C, D = _dense(s)
    t = [R.var(a) for a in range(n)]
    rng = range(n)

    def acc(*terms):
        out = zero
        for x in terms:
            if x is not None:
                out = out + x
        return out

    # Bt[i][b] = B^i_{a,b} t_a
    Bt = [[acc(_lin([B[i][a][b] for a in rng], t)) for b in rng] for i in rng]
    # homogeneous pieces, indexed by degree
    g1 = [[zero] * n for _ in range(order + 1)]
    g2 = [[[zero] * n for _ in rng] for _ in range(order + 1)]
    Cg = [[[zero] * n for _ in rng] for _ in range(order + 1)]   # Cg[d][i][b] = C^i_{a,b} G01^[d](a)

    for d in range(1, order + 1):
        if d >= 2:
            for i in rng:
                v = acc(*(Bt[i][b] * g1[d - 1][b] for b in rng))
                if d == 2:
                    v = v + acc(*(t[a] * t[b] * (A[i][a][b] / 2) for a in rng for b in rng if A[i][a][b]))
                for d1 in range(2, d - 1):
                    d2 = d - d1
                    v = v + acc(*(g1[d1][a] * g1[d2][b] * (C[i][a][b] / 2)
                                  for a in rng for b in rng if C[i][a][b]))
                g1[d][i] = v
            for i in rng:
                for b in rng:
                    Cg[d][i][b] = acc(_lin([C[i][a][b] for a in rng], g1[d]))
        for i in rng:
            for j in rng:
                if d == 1:
                    g2[1][i][j] = acc(_lin(A[i][j], t))
                    continue
                v = acc(*(Bt[i][b] * g2[d - 1][b][j] for b in rng))
                v = v + acc(_lin(B[i][j], g1[d]))
                for d1 in range(2, d):
                    v = v + acc(*(Cg[d1][i][b] * g2[d - d1][b][j] for b in rng))
                g2[d][i][j] = v

    def tilde(hat):
        """Solve M X~ = X^ degree by degree; ``hat(d)`` returns the list over i of X^[d]."""
        out = [hat(0)]
        for d in range(1, order + 1):
            h = hat(d)
            row = []
            for i in rng:
                v = h[i] + acc(*(Bt[i][b] * out[d - 1][b] for b in rng))
                for d1 in range(2, d + 1):
                    v = v + acc(*(Cg[d1][i][b] * out[d - d1][b] for b in rng))
                row.append(v)
            out.append(row)
        return [acc(*(out[d][i] for d in range(order + 1))) for i in rng]

    T = TranslatedStructure(s, R)
    T.g01 = [acc(*(g1[d][i] for d in range(order + 1))) for i in rng]
    T.g02 = [[acc(*(g2[d][i][j] for d in range(order + 1))) for j in rng] for i in rng]

    def const(x):
        return R(x) if x else zero

    for j in rng:
        for k in range(j, n):
            def a_hat(d, j=j, k=k):
                if d == 0:
                    return [const(A[i][j][k]) for i in rng]
                row = []
                for i in rng:
                    v = acc(_lin(B[i][j], [g2[d][a][k] for a in rng]), _lin(B[i][k], [g2[d][a][j] for a in rng]))
                    for d1 in range(1, d):
                        v = v + acc(*(g2[d1][a][j] * g2[d - d1][b][k] * C[i][a][b]
                                      for a in rng for b in rng if C[i][a][b]))
                    row.append(v)
                return row

            def c_hat(d, j=j, k=k):
                return [const(C[i][j][k]) if d == 0 else zero for i in rng]

            for i, v in enumerate(tilde(a_hat)):
                if v and i <= j:
                    T.A[(i, j, k)] = v
            for i, v in enumerate(tilde(c_hat)):
                if v:
                    T.C[(i, j, k)] = v
    for j in rng:
        for k in rng:
            def b_hat(d, j=j, k=k):
                if d == 0:
                    return [const(B[i][j][k]) for i in rng]
                return [acc(_lin(C[i][k], [g2[d][a][j] for a in rng])) for i in rng]

            for i, v in enumerate(tilde(b_hat)):
                if v:
                    T.B[(i, j, k)] = v

    def d_hat(d):
        if d == 0:
            return [const(D[i]) for i in rng]
        return [acc(*(g2[d][a][b] * (C[i][a][b] / 2) for a in rng for b in rng if C[i][a][b])) for i in rng]

    for i, v in enumerate(tilde(d_hat)):
        if v:
            T.D[(i,)] = v
    T.touched()
    return T


@dataclass
class TranslationReport:
    order: int
    budget: int
    checked: int = 0
    discrepancies: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.discrepancies

    def __str__(self):
        if self.ok:
            return f"translation consistent: {self.checked} series identities to order {self.order}, budget {self.budget}"
        return "; ".join(self.discrepancies[:5]) + (f"; ... ({len(self.discrepancies) - 5} more)"
                                                      if len(self.discrepancies) > 5 else "")


def shifted_series(s: AiryStructure, ring: SeriesRing, g: int, idx: tuple):
    """sum_m 1/m! sum_J F_{g,n+m}(idx, J) t_J, truncated by the ring order."""
    from .recursion import fgn_ordinal
    n = s.dim
    out = ring.zero
    for m in range(ring.order + 1):
        if 2 * g - 2 + len(idx) + m <= 0:
            continue
        for J in multisets(n, m):
            v = fgn_ordinal(s, g, tuple(idx) + tuple(J))
            if not v:
                continue
            exps = [0] * n
            for j in J:
                exps[j] += 1
            w = 1
            for e in exps:
                w *= factorial(e)
            out = out + ring.monomial(exps, v / w if w > 1 else v)
    return out


def translation_consistency(s: AiryStructure, order: int = 3, budget: int = 3, T: TranslatedStructure | None = None
                            ) -> TranslationReport:
    """Compare the recursion over the translated structure with shifted Taylor series of F_{g,n}.

    Also checks G01(i) and G02(i,j) against the shifted F_{0,1} and F_{0,2} series.
    """
    from .recursion import fgn_ordinal, stable_pairs
    T = T if T is not None else translate(s, order)
    R = T.ring
    rep = TranslationReport(order, budget)
    n = s.dim
    lab = s.index.label

    def compare(what, got, want):
        rep.checked += 1
        if got != want:
            rep.discrepancies.append(f"{what}: translated {got} != shifted {want}")

    for i in range(n):
        compare(f"G01({lab(i)})", T.g01[i], shifted_series(s, R, 0, (i,)))
        for j in range(i, n):
            compare(f"G02({lab(i)},{lab(j)})", T.g02[i][j], shifted_series(s, R, 0, (i, j)))
    for g, k in sorted(stable_pairs(budget), key=lambda p: (2 * p[0] + p[1], p[0])):
        for idx in multisets(n, k):
            compare(f"F_{g},{k}{tuple(lab(x) for x in idx)}", fgn_ordinal(T, g, idx),
                    shifted_series(s, R, g, idx))
    return rep


__all__ = ["gauge_u", "apply_gauge", "scale", "hbar_rescale", "GaugeError", "translate", "TranslatedStructure",
           "translation_consistency", "TranslationReport", "shifted_series"]
