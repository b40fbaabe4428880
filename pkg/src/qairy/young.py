"""Colored Young diagram dynamics equivalent to the recursion.

A column type is (height, color) with height >= 1; index i of a graded
structure has height degree(i) + 1 and color color(i).  A finite (ungraded)
structure is read as d = dim colors of height 1.  The coefficient of a
diagram lambda in Omega_{g,n} is F_{g,n} at the multiset of indices of its
columns.

One step builds labeled diagrams (a marked column type) from smaller Omegas:

    delta_B : replace a column of type c by a marked column a and a column b,
              weight B^a_{b,c} N_b(lambda with the marked column removed)
    delta_C : replace an ordered pair of columns (b, c) by a marked column a,
              weight C^a_{b,c} / 2
    delta_C2: remove a column b from lambda and c from lambda', merge the rest,
              add a marked column a, weight C^a_{b,c} / 2 times the number of
              ways to interleave the remaining columns

Omega_{g,n} exists iff the labeled result has the same coefficient for every
marked type of each diagram.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .airy_core import AiryStructure

HALF = Fraction(1, 2)


class YoungError(ValueError):
    pass


class YoungSymmetryError(YoungError):
    """The labeled result is not in the image of S: the structure is not a quantum Airy structure."""

    def __init__(self, g, n, diagram, coefficients):
        self.g, self.n, self.diagram, self.coefficients = g, n, diagram, coefficients
        super().__init__(f"symmetry failure at (g, n) = ({g}, {n}): diagram {diagram} has label-dependent "
                         f"coefficients {coefficients}")


@dataclass(frozen=True)
class ColoredYoung:
    """Multiset of column types (height, color), kept sorted."""

    columns: tuple = ()

    @classmethod
    def of(cls, cols) -> ColoredYoung:
        cols = tuple(sorted(cols, key=lambda c: (-c[0], c[1])))
        for k, _ in cols:
            if k < 1:
                raise YoungError(f"column height {k} < 1")
        return cls(cols)

    @property
    def size(self) -> int:
        return sum(k for k, _ in self.columns)

    @property
    def length(self) -> int:
        return len(self.columns)

    def count(self, t) -> int:
        return self.columns.count(t)

    def types(self) -> list:
        return list(dict.fromkeys(self.columns))

    def multiplicities(self) -> Counter:
        return Counter(self.columns)

    def aut(self) -> int:
        out = 1
        for m in self.multiplicities().values():
            out *= factorial(m)
        return out

    def remove(self, t) -> ColoredYoung:
        cols = list(self.columns)
        cols.remove(t)
        return ColoredYoung(tuple(cols))

    def add(self, *ts) -> ColoredYoung:
        return ColoredYoung.of(self.columns + ts)

    def merge(self, other: ColoredYoung) -> ColoredYoung:
        return ColoredYoung.of(self.columns + other.columns)

    def __str__(self):
        return "[" + " ".join(f"{k}/{a}" for k, a in self.columns) + "]"


@dataclass(frozen=True)
class LabeledYoung:
    diagram: ColoredYoung
    marked: tuple

    def __post_init__(self):
        if self.diagram.count(self.marked) < 1:
            raise YoungError(f"marked type {self.marked} is not a column of {self.diagram}")


@dataclass
class YoungState:
    """Linear combination of diagrams (or labeled diagrams); zero coefficients are not stored."""

    terms: dict = field(default_factory=dict)
    g: int | None = None
    n: int | None = None
    columns: dict | None = None        # column type -> ordinal, for evaluate

    def add(self, key, value):
        if not value:
            return
        v = self.terms.get(key, 0) + value
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key, None)

    def __len__(self):
        return len(self.terms)

    def items(self):
        return self.terms.items()


# ---------------------------------------------------------------------------
# tensors in column-type form

class _Tensors:
    def __init__(self, s: AiryStructure, r: int | None = None):
        self.s = s
        idx = s.index
        cap = s.certificate.max_degree if (s.graded and s.certificate) else None
        if s.graded and cap is None:
            raise YoungError("graded structure needs a truncation certificate")
        if s.graded:
            self.type = {i: (idx.degree(i) + 1, idx.color(i)) for i in range(s.dim) if idx.degree(i) <= cap}
        else:
            self.type = {i: (1, i + 1) for i in range(s.dim)}
        self.ordinal = {t: i for i, t in self.type.items()}
        T = self.type
        self.A = {}
        for (i, j, k), v in s.A.items():
            if i in T and j in T and k in T:
                self.A[(T[i], T[j], T[k])] = v
        self.D = {T[i]: v for (i,), v in s.D.items() if i in T}
        self.B_by_c = defaultdict(list)        # c -> [(a, b, B^a_{b,c})]
        for (i, j, k), v in s.B.items():
            if i in T and j in T and k in T:
                self.B_by_c[T[k]].append((T[i], T[j], v))
        self.C_by_pair = defaultdict(list)     # (b, c) -> [(a, C^a_{b,c})], both orders
        for (i, j, k), v in s.C.items():
            if i in T and j in T and k in T:
                self.C_by_pair[(T[j], T[k])].append((T[i], v))
                if j != k:
                    self.C_by_pair[(T[k], T[j])].append((T[i], v))
        self.r = support_constant(s) if r is None else r
        self._check_rules()

    def _check_rules(self):
        r = self.r
        for c, rows in self.B_by_c.items():
            for a, b, _ in rows:
                if a[0] + b[0] > c[0] + r:
                    raise YoungError(f"B^{a}_{b},{c} violates k1 + k2 <= k3 + r with r = {r}")
        for (b, c), rows in self.C_by_pair.items():
            for a, _ in rows:
                if a[0] > b[0] + c[0] + r:
                    raise YoungError(f"C^{a}_{b},{c} violates k1 <= k2 + k3 + r with r = {r}")


def support_constant(s: AiryStructure) -> int:
    """Smallest r >= 1 with A supported on k1+k2+k3 <= r, D on k <= r, B on k1+k2 <= k3+r, C on k1 <= k2+k3+r.

    Heights are degree + 1 (graded) or 1 (ungraded); only stored entries are inspected.
    """
    if s.graded:
        h = lambda i: s.index.degree(i) + 1
    else:
        h = lambda i: 1
    r = 1
    for (i, j, k), v in s.A.items():
        if v:
            r = max(r, h(i) + h(j) + h(k))
    for (i,), v in s.D.items():
        if v:
            r = max(r, h(i))
    for (i, j, k), v in s.B.items():
        if v:
            r = max(r, h(i) + h(j) - h(k))
    for (i, j, k), v in s.C.items():
        if v:
            r = max(r, h(i) - h(j) - h(k))
    return r


def _young_r(s: AiryStructure):
    cert = s.certificate
    if cert is not None and cert.young_r is not None:
        return cert.young_r
    return None


# ---------------------------------------------------------------------------
# the three operations

def delta_B(state: YoungState, tensors: _Tensors) -> YoungState:
    out = YoungState()
    for lam, coef in state.items():
        for c in lam.types():
            rows = tensors.B_by_c.get(c)
            if not rows:
                continue
            rest = lam.remove(c)
            for a, b, v in rows:
                inner = rest.add(b)
                w = v * inner.count(b)
                out.add(LabeledYoung(inner.add(a), a), coef * w)
    return out


def delta_C(state: YoungState, tensors: _Tensors) -> YoungState:
    out = YoungState()
    for lam, coef in state.items():
        mult = lam.multiplicities()
        for b in mult:
            for c in mult:
                if b == c and mult[b] < 2:
                    continue
                rows = tensors.C_by_pair.get((b, c))
                if not rows:
                    continue
                rest = lam.remove(b).remove(c)
                for a, v in rows:
                    out.add(LabeledYoung(rest.add(a), a), coef * v * HALF)
    return out


def _interleavings(left: ColoredYoung, right: ColoredYoung) -> int:
    ml, mr = left.multiplicities(), right.multiplicities()
    out = 1
    for t, m in ml.items():
        out *= comb(m + mr.get(t, 0), m)
    return out


def delta_C2(state1: YoungState, state2: YoungState, tensors: _Tensors) -> YoungState:
    out = YoungState()
    for lam1, c1 in state1.items():
        for b in lam1.types():
            rest1 = lam1.remove(b)
            for lam2, c2 in state2.items():
                for c in lam2.types():
                    rows = tensors.C_by_pair.get((b, c))
                    if not rows:
                        continue
                    rest2 = lam2.remove(c)
                    fused = rest1.merge(rest2)
                    w = c1 * c2 * _interleavings(rest1, rest2)
                    for a, v in rows:
                        out.add(LabeledYoung(fused.add(a), a), w * v * HALF)
    return out


def symmetrize(labeled: YoungState, g=None, n=None) -> YoungState:
    """The unique state whose image under S is ``labeled``, or YoungSymmetryError."""
    by_diagram = defaultdict(dict)
    for key, v in labeled.items():
        by_diagram[key.diagram][key.marked] = v
    out = YoungState(g=g, n=n)
    for lam in sorted(by_diagram, key=lambda d: d.columns):
        coeffs = by_diagram[lam]
        vals = [coeffs.get(t, 0) for t in lam.types()]
        if any(v != vals[0] for v in vals):
            raise YoungSymmetryError(g, n, str(lam), {f"{k}/{a}": coeffs.get((k, a), 0) for k, a in lam.types()})
        out.add(lam, vals[0])
    return out


# ---------------------------------------------------------------------------
# Omega_{g,n}

def _cache(s: AiryStructure):
    c = getattr(s, "_young_cache", None)
    if c is None:
        r = _young_r(s)
        c = {"tensors": _Tensors(s, r), "omega": {}}
        s._young_cache = c
    return c


def omega(s: AiryStructure, g: int, n: int) -> YoungState:
    """Omega_{g,n}; raises YoungSymmetryError at the first (g', n') whose labeled result is not symmetric."""
    if g < 0 or n < 1 or 2 * g - 2 + n <= 0:
        raise ValueError(f"Omega_{{{g},{n}}} needs 2g-2+n > 0")
    c = _cache(s)
    T, memo = c["tensors"], c["omega"]
    key = (g, n)
    if key in memo:
        return memo[key]
    if (g, n) == (0, 3):
        out = YoungState(g=0, n=3)
        for (a, b, d), v in T.A.items():
            out.add(ColoredYoung.of((a, b, d)), v)
    elif (g, n) == (1, 1):
        out = YoungState(g=1, n=1)
        for t, v in T.D.items():
            out.add(ColoredYoung.of((t,)), v)
    else:
        labeled = YoungState()
        parts = []
        if n >= 2 and 2 * g - 3 + n > 0:
            parts.append(delta_B(omega(s, g, n - 1), T))
        if g >= 1:
            parts.append(delta_C(omega(s, g - 1, n + 1), T))
        for g1 in range(g + 1):
            for n1 in range(1, n + 1):
                g2, n2 = g - g1, n + 1 - n1
                if 2 * g1 - 2 + n1 <= 0 or 2 * g2 - 2 + n2 <= 0:
                    continue
                parts.append(delta_C2(omega(s, g1, n1), omega(s, g2, n2), T))
        for p in parts:
            for k, v in p.items():
                labeled.add(k, v)
        out = symmetrize(labeled, g, n)
    bound = (2 * g - 2 + n) * T.r
    for lam in out.terms:
        if lam.length != n or lam.size > bound:
            raise YoungError(f"diagram {lam} breaks the bounds length = {n}, size <= {bound}")
    out.columns = T.ordinal
    memo[key] = out
    return out


def evaluate(state: YoungState, s: AiryStructure | None = None) -> dict:
    """{canonical ordinal tuple: coefficient}; a diagram's coefficient is F_{g,n} at its columns."""
    cols = state.columns
    if cols is None:
        if s is None:
            raise YoungError("state carries no column map; pass the structure")
        cols = _Tensors(s).ordinal
    out = {}
    for lam, v in state.items():
        idx = []
        for t in lam.columns:
            if t[0] < 1:
                raise YoungError("height-0 column")
            if t not in cols:
                raise YoungError(f"column type {t} has no index")
            idx.append(cols[t])
        key = tuple(sorted(idx))
        out[key] = v
    return out


def clear_cache(s: AiryStructure):
    if hasattr(s, "_young_cache"):
        del s._young_cache


__all__ = ["ColoredYoung", "LabeledYoung", "YoungState", "YoungError", "YoungSymmetryError", "delta_B", "delta_C",
           "delta_C2", "symmetrize", "omega", "evaluate", "support_constant", "clear_cache"]
