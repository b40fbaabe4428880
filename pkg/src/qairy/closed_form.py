"""Closed-form and combinatorial oracles for F_{g,n}.

* C = 0: genus 0 and 1 only, via matrix power series in sum_j x_j B_j.
* A = B = 0: a sum over rooted trivalent trees.
* Dimension one: the tabulated polynomials, a direct series solution of
  L Z = 0, and the theta = 1, D = 1/2 case assembled from the Bairy
  asymptotic coefficients beta_g.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .airy_core import AiryStructure
from .kernel import SeriesRing, TSeries

Q = Fraction


# ---------------------------------------------------------------------------
# C = 0

def _psi0(k: int) -> Fraction:
    # (-ln(1-z) - z - z^2/2) / (2 z^3) = sum_k z^k / (2(k+3))
    return Q(1, 2 * (k + 3))


def _psi1(k: int) -> Fraction:
    return Q(1, k + 1)


def cequal0_partition(s: AiryStructure, order: int) -> tuple[TSeries, TSeries]:
    """(S0, S1) as truncated series in x for a structure with C = 0.

    S0 = [psi0(M) A_ab]_c x_a x_b x_c and S1 = [psi1(M) D]_a x_a with
    M = sum_j x_j B_j, where (B_j)_{a,b} = B^a_{j,b}.
    """
    if s.graded:
        raise ValueError("cequal0_partition needs a finite index set")
    if any(True for _ in s.C.items()):
        raise ValueError("structure has C != 0")
    n = s.dim
    ring = SeriesRing(n, order, s.field)
    x = [ring.var(i) for i in range(n)]
    # M[a][b] = sum_j B^a_{j,b} x_j
    M = [[ring.zero for _ in range(n)] for _ in range(n)]
    for (a, j, b), v in s.B.items():
        M[a][b] = M[a][b] + x[j] * v

    def apply(vec):
        return [sum((M[a][b] * vec[b] for b in range(n) if vec[b] and M[a][b]), ring.zero) for a in range(n)]

    # W_e = sum_ab A^e_ab x_a x_b
    W = [ring.zero] * n
    for (e, a, b), v in s.A.expanded():
        W[e] = W[e] + x[a] * x[b] * v
    S0 = ring.zero
    vec, k = W, 0
    while k + 3 <= order and any(vec):
        S0 = S0 + sum((vec[c] * x[c] for c in range(n)), ring.zero) * _psi0(k)
        vec, k = apply(vec), k + 1
    S1 = ring.zero
    vec = [ring(s.d(a)) for a in range(n)]
    k = 0
    while k + 1 <= order and any(vec):
        S1 = S1 + sum((vec[a] * x[a] for a in range(n)), ring.zero) * _psi1(k)
        vec, k = apply(vec), k + 1
    return S0, S1


def taylor_coefficient(series: TSeries, indices) -> object:
    """F(i_1..i_n) from sum over tuples F x_{i_1}..x_{i_n}/n!, i.e. coefficient times prod m_k!."""
    exps = [0] * series.ring.nvars
    for i in indices:
        exps[i] += 1
    c = series.coefficient(exps)
    mult = 1
    for e in exps:
        mult *= factorial(e)
    return c * mult


def cequal0_fgn(s: AiryStructure, g: int, indices, order: int | None = None):
    """F_{g,n} read off from the C = 0 formula (zero for g >= 2)."""
    n = len(indices)
    if g >= 2:
        return s.field.zero
    S0, S1 = cequal0_partition(s, order or n)
    return taylor_coefficient(S0 if g == 0 else S1, indices)


# ---------------------------------------------------------------------------
# A = B = 0: rooted trivalent trees

LEAF = ()


@dataclass(frozen=True)
class TreeDiagram:
    """Rooted trivalent tree; ``shape`` is LEAF or a pair of child shapes."""

    shape: tuple

    @property
    def leaves(self) -> int:
        return _leaves(self.shape)

    @property
    def aut_order(self) -> int:
        return _aut(self.shape)

    def __str__(self):
        return _show(self.shape)


def _leaves(t):
    return 1 if t == LEAF else _leaves(t[0]) + _leaves(t[1])


def _aut(t):
    if t == LEAF:
        return 1
    a, b = t
    return _aut(a) * _aut(b) * (2 if a == b else 1)


def _show(t):
    return "*" if t == LEAF else f"({_show(t[0])},{_show(t[1])})"


def _order_key(t):
    return (_leaves(t), _show(t))


@lru_cache(maxsize=None)
def _shapes(g: int) -> tuple:
    if g == 1:
        return (LEAF,)
    out = []
    for g1 in range(1, g // 2 + 1):
        g2 = g - g1
        for t1 in _shapes(g1):
            for t2 in _shapes(g2):
                # canonical sibling order
                if g1 == g2 and _order_key(t1) > _order_key(t2):
                    continue
                out.append((t1, t2))
    return tuple(out)


def enumerate_trees(g: int) -> list[TreeDiagram]:
    if g < 1:
        raise ValueError("trees need at least one leaf")
    return [TreeDiagram(t) for t in _shapes(g)]


def tree_sum(g: int) -> Fraction:
    """sum over trees of 1/|Aut T|."""
    return sum((Q(1, t.aut_order) for t in enumerate_trees(g)), Q(0))


def tree_count(g: int) -> Fraction:
    """N_g = (2g)! / ((2g-1) 2^g g!^2)."""
    if g < 1:
        raise ValueError("g >= 1")
    return Q(factorial(2 * g), (2 * g - 1) * 2 ** g * factorial(g) ** 2)


def abequal0_fg(s: AiryStructure, g: int) -> list:
    """f_g(i) for a structure with A = B = 0, as a list over ordinals."""
    if s.graded:
        raise ValueError("abequal0_fg needs a finite index set")
    if any(True for _ in s.A.items()) or any(True for _ in s.B.items()):
        raise ValueError("structure must have A = B = 0")
    if g < 1:
        raise ValueError("g >= 1")
    n = s.dim
    zero = s.field.zero
    cexp = list(s.C.expanded())
    memo = {}

    def weight(t):
        # vector over the index of the edge above t
        if t in memo:
            return memo[t]
        if t == LEAF:
            v = [s.d(i) for i in range(n)]
        else:
            w1, w2 = weight(t[0]), weight(t[1])
            v = [zero] * n
            for (i, a, b), c in cexp:
                if w1[a] and w2[b]:
                    v[i] = v[i] + c * w1[a] * w2[b]
        memo[t] = v
        return v

    total = [zero] * n
    for t in enumerate_trees(g):
        w = weight(t.shape)
        inv = Q(1, t.aut_order)
        total = [total[i] + w[i] * inv for i in range(n)]
    return total


# ---------------------------------------------------------------------------
# dimension one

def bairy_beta(g_max: int) -> list[int]:
    """[beta_1, ..., beta_{g_max}] with beta_1 = 0, beta_2 = 5."""
    if g_max < 2:
        raise ValueError("g_max >= 2")
    beta = [0, 0, 5]   # 1-based
    for g in range(3, g_max + 1):
        beta.append(6 * (g - 1) * beta[g - 1] + sum(beta[h] * beta[g - h] for h in range(2, g - 1)))
    return beta[1:]


class Poly:
    """Tiny polynomial in (thA, thB, thC, D) with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {e: Q(c) for e, c in (terms or {}).items() if c}

    @classmethod
    def var(cls, k):
        e = [0, 0, 0, 0]
        e[k] = 1
        return cls({tuple(e): 1})

    def __add__(self, o):
        o = o if isinstance(o, Poly) else Poly({(0, 0, 0, 0): o})
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = t.get(e, 0) + c
        return Poly(t)

    __radd__ = __add__

    def __mul__(self, o):
        if not isinstance(o, Poly):
            return Poly({e: c * o for e, c in self.terms.items()})
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Poly(t)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Poly({(0, 0, 0, 0): 1})
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, o):
        return isinstance(o, Poly) and self.terms == o.terms

    def __call__(self, thA, thB, thC, D):
        tot = 0
        for (i, j, k, l), c in self.terms.items():
            tot = tot + c * thA ** i * thB ** j * thC ** k * D ** l
        return tot

    def __repr__(self):
        names = ("thA", "thB", "thC", "D")
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(n + (f"^{k}" if k > 1 else "") for n, k in zip(names, e) if k)
            parts.append(f"{self.terms[e]}*{mono}" if mono else str(self.terms[e]))
        return " + ".join(parts) or "0"


def whittaker_table() -> list[tuple[int, int, Poly]]:
    """The 14 tabulated dimension-one polynomials, exactly as printed.

    The printed F_{3,2} contains a bare "C" in its second term; it is read as thC.
    """
    a, b, c, d = (Poly.var(k) for k in range(4))
    return [
        (0, 3, a),
        (0, 4, 3 * a * b),
        (0, 5, 3 * a * (a * c + 4 * b ** 2)),
        (0, 6, 15 * a * b * (3 * a * c + 4 * b ** 2)),
        (0, 7, 45 * a * (a ** 2 * c ** 2 + 12 * a * b ** 2 * c + 8 * b ** 4)),
        (1, 1, d),
        (1, 2, Q(1, 2) * a * c + b * d),
        (1, 3, Q(5, 2) * a * b * c + a * c * d + 2 * b ** 2 * d),
        (1, 4, 3 * a ** 2 * c ** 2 + Q(27, 2) * a * b ** 2 * c + 12 * a * b * c * d + 6 * b ** 3 * d),
        (1, 5, Q(111, 2) * a ** 2 * b * c ** 2 + 9 * a ** 2 * c ** 2 * d + 84 * a * b ** 3 * c + 24 * b ** 2 * d),
        (2, 1, c * (Q(1, 4) * a * c + Q(1, 2) * b * d + Q(1, 2) * d ** 2)),
        (2, 2, Q(3, 2) * a * b * c + a * c * d + Q(3, 2) * b ** 2 * d + Q(3, 2) * b * d ** 2),
        (2, 3, 2 * a ** 2 * c ** 2 + Q(39, 4) * a * b ** 2 * c + Q(21, 2) * a * b * c * d
         + Q(3, 2) * a * c * d ** 2 + 6 * b ** 3 * d + 6 * b ** 2 * d ** 2),
        (3, 1, (b + d) * c ** 2 * (Q(3, 4) * a * c + Q(3, 4) * b * d + Q(1, 4) * d ** 2)),
        (3, 2, c ** 2 * (Q(9, 8) * a ** 2 * c ** 2 + Q(45, 8) * a * b ** 2 * c + 8 * a * b * c * d
                         + 2 * a * c * d ** 2 + Q(15, 4) * b ** 3 * d + Q(25, 4) * b ** 2 * d ** 2
                         + 10 * b * d ** 3)),
    ]


# univariate truncated series as coefficient lists

def _umul(p, q, N):
    out = [Q(0)] * (N + 1)
    for i, x in enumerate(p):
        if x:
            for j in range(min(len(q), N + 1 - i)):
                if q[j]:
                    out[i + j] += x * q[j]
    return out


def _uinv(p, N):
    # 1/p for p[0] != 0
    out = [Q(0)] * (N + 1)
    out[0] = 1 / Q(p[0])
    for k in range(1, N + 1):
        acc = sum((p[j] * out[k - j] for j in range(1, min(k, len(p) - 1) + 1)), Q(0))
        out[k] = -acc / p[0]
    return out


def _uderiv(p):
    return [p[k] * k for k in range(1, len(p))] or [Q(0)]


def _uinteg(p, N):
    out = [Q(0)] * (N + 1)
    for k, x in enumerate(p):
        if k + 1 <= N:
            out[k + 1] = x / (k + 1)
    return out


def dim1_series(thA, thB, thC, D, g_max: int, n_max: int) -> dict:
    """F_{g,n} of the one-dimensional structure by solving L Z = 0 order by order.

    With Z = exp(sum hbar^{g-1} S_g), the hbar^g part of Z^{-1} L Z reads
    (1 - thB x - thC S_0') S_g' = [g=0] thA x^2/2 + [g=1] D
                                  + thC/2 (S_{g-1}'' + sum_{0<h<g} S_h' S_{g-h}').
    """
    N = n_max + g_max + 1   # each genus step differentiates once
    thA, thB, thC, D = Q(thA), Q(thB), Q(thC), Q(D)
    dS = []   # S_g' as coefficient lists up to x^N
    for g in range(g_max + 1):
        rhs = [Q(0)] * (N + 1)
        if g == 0:
            rhs[2] = thA / 2
            denom = [Q(1), -thB]
        else:
            if g == 1:
                rhs[0] += D
            dd = _uderiv(dS[g - 1])
            for k in range(min(len(dd), N + 1)):
                rhs[k] += thC / 2 * dd[k]
            for h in range(1, g):
                pr = _umul(dS[h], dS[g - h], N)
                for k in range(N + 1):
                    rhs[k] += thC / 2 * pr[k]
            denom = [Q(1), -thB] + [Q(0)] * (N - 1)
            for k in range(N + 1):
                denom[k] -= thC * dS[0][k]
        if g == 0:
            # S_0' (1 - thB x) = thA x^2/2 + thC/2 S_0'^2 : iterate degree by degree
            s = [Q(0)] * (N + 1)
            for k in range(N + 1):
                sq = _umul(s, s, N)
                val = rhs[k] + thC / 2 * sq[k] + (thB * s[k - 1] if k >= 1 else 0)
                s[k] = val
            dS.append(s)
        else:
            dS.append(_umul(rhs, _uinv(denom, N), N))
    out = {}
    for g in range(g_max + 1):
        for n in range(1, n_max + 1):
            if 2 * g - 2 + n > 0:
                out[(g, n)] = dS[g][n - 1] * factorial(n - 1)
    return out


def _binom_series(alpha: Fraction, scale: Fraction, N: int) -> list:
    """(1 + scale x)^alpha as formal series to x^N."""
    out, c = [], Q(1)
    for k in range(N + 1):
        out.append(c * scale ** k)
        c = c * (alpha - k) / (k + 1)
    return out


def airy_case_series(g_max: int, n_max: int) -> dict:
    """F_{g,n} of thA = thB = thC = 1, D = 1/2 from the Bairy asymptotics.

    log Z = (x - x^2/2)/hbar + log Bi(z(x)) - log Bi(z(0)), z = (2 hbar)^{-2/3} (1 - 2x).
    The coefficient of z^{-3k/2} in log Bi is beta_{k+1}/(6k 8^k), so
    S_g = 2^{g-1} beta_g / (6(g-1) 8^{g-1}) (1-2x)^{-3(g-1)/2} for g >= 2.
    """
    if 2 * g_max - 2 + n_max > 24:
        raise ValueError("budget too large")
    N = n_max
    series = {}
    # S_0 = x - x^2/2 + (1-2x)^{3/2}/3
    s0 = [v / 3 for v in _binom_series(Q(3, 2), Q(-2), N)]
    s0[1] += 1
    if N >= 2:
        s0[2] -= Q(1, 2)
    series[0] = s0
    # S_1 = -1/4 ln(1-2x) = 1/4 sum (2x)^k / k
    series[1] = [Q(0)] + [Q(2 ** k, 4 * k) for k in range(1, N + 1)]
    beta = bairy_beta(max(g_max, 2))
    for g in range(2, g_max + 1):
        pref = Q(2 ** (g - 1) * beta[g - 1], 6 * (g - 1) * 8 ** (g - 1))
        series[g] = [pref * v for v in _binom_series(Q(-3 * (g - 1), 2), Q(-2), N)]
    out = {}
    for g in range(g_max + 1):
        for n in range(1, n_max + 1):
            if 2 * g - 2 + n > 0:
                out[(g, n)] = series[g][n] * factorial(n)
    return out


__all__ = ["cequal0_partition", "cequal0_fgn", "taylor_coefficient", "TreeDiagram", "enumerate_trees",
           "tree_sum", "tree_count", "abequal0_fg", "bairy_beta", "whittaker_table", "Poly",
           "dim1_series", "airy_case_series"]
