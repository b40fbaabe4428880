"""At-most-quadratic Weyl algebra elements and their rescaled bracket.

An element is

    c hbar + hbar p.d + q.x + 1/2 x^T A2 x + hbar x^T B2 d + hbar^2/2 d^T C2 d

with x to the left of d.  Every component carries exactly the hbar power
above, so the bracket hbar^{-1}[u, v] can be computed on components with
hbar set to 1.  (The only place where this bookkeeping is loose is
hbar^{-1}[hbar d_i, x_j] = delta_ij, which lands in the constant slot.)

Writing alpha_u = dsymbol/dxi = p + B2^T x + C2 xi and
beta_u = dsymbol/dx = q + A2 x + B2 xi, the normal-ordered star product
gives [u, v] = alpha_u.beta_v - alpha_v.beta_u + 1/2 tr(C2_u A2_v - C2_v A2_u),
which expands into the component formulas in :func:`bracket`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .airy_core import AiryStructure, RelationReport, Violation, structure_constants

HALF = Fraction(1, 2)


def _zeros(n, z):
    return [z] * n


def _mat(n, z):
    return [[z] * n for _ in range(n)]


def _matmul(X, Y):
    n = len(X)
    out = _mat(n, 0)
    for i in range(n):
        Xi = X[i]
        for k in range(n):
            a = Xi[k]
            if a:
                Yk = Y[k]
                row = out[i]
                for j in range(n):
                    if Yk[j]:
                        row[j] = row[j] + a * Yk[j]
    return out


def _T(X):
    return [list(r) for r in zip(*X)]


def _matvec(X, v):
    return [sum((X[i][k] * v[k] for k in range(len(v)) if X[i][k] and v[k]), 0) for i in range(len(X))]


def _add(X, Y, s=1):
    return [[X[i][j] + s * Y[i][j] for j in range(len(X))] for i in range(len(X))]


def _vadd(u, v, s=1):
    return [a + s * b for a, b in zip(u, v)]


@dataclass
class WeylElement:
    c: object
    p: list
    q: list
    A2: list
    B2: list
    C2: list

    @property
    def dim(self) -> int:
        return len(self.p)

    @classmethod
    def zero(cls, n: int, z=Fraction(0)) -> WeylElement:
        return cls(z, _zeros(n, z), _zeros(n, z), _mat(n, z), _mat(n, z), _mat(n, z))

    @classmethod
    def d(cls, n: int, i: int) -> WeylElement:
        """hbar d_i"""
        e = cls.zero(n)
        e.p[i] = Fraction(1)
        return e

    @classmethod
    def x(cls, n: int, i: int) -> WeylElement:
        e = cls.zero(n)
        e.q[i] = Fraction(1)
        return e

    def __add__(self, o: WeylElement) -> WeylElement:
        return WeylElement(self.c + o.c, _vadd(self.p, o.p), _vadd(self.q, o.q),
                           _add(self.A2, o.A2), _add(self.B2, o.B2), _add(self.C2, o.C2))

    def scaled(self, s) -> WeylElement:
        return WeylElement(self.c * s, [a * s for a in self.p], [a * s for a in self.q],
                           [[a * s for a in r] for r in self.A2], [[a * s for a in r] for r in self.B2],
                           [[a * s for a in r] for r in self.C2])

    def __sub__(self, o: WeylElement) -> WeylElement:
        return self + o.scaled(-1)

    def is_zero(self) -> bool:
        return not (self.c or any(self.p) or any(self.q) or any(any(r) for r in self.A2)
                    or any(any(r) for r in self.B2) or any(any(r) for r in self.C2))

    def __eq__(self, o):
        return isinstance(o, WeylElement) and (self - o).is_zero()

    # coordinates on D_V: [c | q | p | A2 (i<=j) | B2 | C2 (i<=j)]
    def to_vector(self) -> list:
        n = self.dim
        v = [self.c] + list(self.q) + list(self.p)
        v += [self.A2[i][j] for i in range(n) for j in range(i, n)]
        v += [self.B2[i][j] for i in range(n) for j in range(n)]
        v += [self.C2[i][j] for i in range(n) for j in range(i, n)]
        return v

    @classmethod
    def from_vector(cls, n: int, v: list) -> WeylElement:
        e = cls.zero(n)
        e.c = v[0]
        e.q = list(v[1:1 + n])
        e.p = list(v[1 + n:1 + 2 * n])
        pos = 1 + 2 * n
        for i in range(n):
            for j in range(i, n):
                e.A2[i][j] = e.A2[j][i] = v[pos]
                pos += 1
        for i in range(n):
            for j in range(n):
                e.B2[i][j] = v[pos]
                pos += 1
        for i in range(n):
            for j in range(i, n):
                e.C2[i][j] = e.C2[j][i] = v[pos]
                pos += 1
        return e

    @staticmethod
    def module_dim(n: int) -> int:
        return 1 + 2 * n + n * (2 * n + 1)

    def describe(self) -> str:
        n = self.dim
        parts = []
        if self.c:
            parts.append(f"({self.c})hbar")
        for i in range(n):
            if self.p[i]:
                parts.append(f"({self.p[i]})hbar*d{i}")
            if self.q[i]:
                parts.append(f"({self.q[i]})x{i}")
        for i in range(n):
            for j in range(i, n):
                if self.A2[i][j]:
                    coef = self.A2[i][j] * (HALF if i == j else 1)
                    parts.append(f"({coef})x{i}x{j}")
        for i in range(n):
            for j in range(n):
                if self.B2[i][j]:
                    parts.append(f"({self.B2[i][j]})hbar*x{i}d{j}")
        for i in range(n):
            for j in range(i, n):
                if self.C2[i][j]:
                    coef = self.C2[i][j] * (HALF if i == j else 1)
                    parts.append(f"({coef})hbar^2*d{i}d{j}")
        return " + ".join(parts) or "0"


def bracket(u: WeylElement, v: WeylElement) -> WeylElement:
    """hbar^{-1}[u, v]."""
    if u.dim != v.dim:
        raise ValueError("index-set mismatch")
    n = u.dim
    tr = 0
    for a in range(n):
        for b in range(n):
            tr = tr + u.C2[a][b] * v.A2[a][b] - v.C2[a][b] * u.A2[a][b]
    c = sum((u.p[a] * v.q[a] - v.p[a] * u.q[a] for a in range(n)), 0) + HALF * tr
    q = _vadd(_vadd(_matvec(v.A2, u.p), _matvec(u.B2, v.q)),
              _vadd(_matvec(u.A2, v.p), _matvec(v.B2, u.q)), -1)
    p = _vadd(_vadd(_matvec(_T(v.B2), u.p), _matvec(u.C2, v.q)),
              _vadd(_matvec(_T(u.B2), v.p), _matvec(v.C2, u.q)), -1)
    BA = _add(_matmul(u.B2, v.A2), _matmul(v.B2, u.A2), -1)
    A2 = _add(BA, _T(BA))
    B2 = _add(_add(_matmul(u.B2, v.B2), _matmul(v.B2, u.B2), -1),
              _add(_matmul(v.A2, u.C2), _matmul(u.A2, v.C2), -1))
    CB = _add(_matmul(u.C2, v.B2), _matmul(v.C2, u.B2), -1)
    C2 = _add(CB, _T(CB))
    return WeylElement(c, p, q, A2, B2, C2)


def from_airy(s: AiryStructure, i: int) -> WeylElement:
    """The operator L_i as a Weyl element (i is an ordinal)."""
    if s.graded and s.certificate is None:
        raise ValueError("graded structure needs a truncation certificate")
    n = s.dim
    z = s.field.zero
    e = WeylElement(-s.d(i), _zeros(n, z), _zeros(n, z), _mat(n, z), _mat(n, z), _mat(n, z))
    e.p[i] = s.field.one
    for (a, j, k), v in s.A.expanded():
        if a == i:
            e.A2[j][k] = -v
    for (a, j, k), v in s.B.items():
        if a == i:
            e.B2[j][k] = -v
    for (a, j, k), v in s.C.expanded():
        if a == i:
            e.C2[j][k] = -v
    return e


@dataclass
class ClosureResult:
    ok: bool
    f: dict
    failure: tuple | None = None
    residual: WeylElement | None = None
    report: RelationReport | None = None


def lie_closure_check(s: AiryStructure) -> ClosureResult:
    """Bracket every pair L_i, L_j and compare with f^a_ij L_a, f read off from B."""
    if s.graded:
        raise ValueError("lie_closure_check needs a finite index set")
    n = s.dim
    ops = [from_airy(s, i) for i in range(n)]
    sc = structure_constants(s)
    report = RelationReport()
    first = None
    for i in range(n):
        for j in range(i + 1, n):
            lhs = bracket(ops[i], ops[j])
            rhs = WeylElement.zero(n, s.field.zero)
            for k, v in sc.bracket(i, j).items():
                rhs = rhs + ops[k].scaled(v)
            res = lhs - rhs
            if not res.is_zero():
                lab = s.index.label
                report.violations.append(Violation("bracket", (lab(i), lab(j)), res.describe()))
                if first is None:
                    first = ((i, j), res)
    if first is None:
        return ClosureResult(True, sc.f, report=report)
    return ClosureResult(False, sc.f, first[0], first[1], report)


__all__ = ["WeylElement", "bracket", "from_airy", "lie_closure_check", "ClosureResult"]
