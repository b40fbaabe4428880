"""The quantum Airy structure record and tensor-level validation.

An :class:`AiryStructure` stores the four tensors of the operators

    L_i = hbar d_i - 1/2 A^i_ab x_a x_b - hbar B^i_ab x_a d_b
          - hbar^2/2 C^i_ab d_a d_b - hbar D^i

as sparse tensors over index ordinals.  Slot conventions: ``A[i,j,k]``
fully symmetric, ``B[i,j,k]`` is B^i_{j,k} (j multiplies x, k the
derivative), ``C[i,j,k]`` is C^i_{j,k} symmetric in (j, k), ``D[i]``.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .kernel import (FULL, LOWER, NONE, QQ, IndexSet, NumberField, SparseTensor,
                     as_fraction, format_rational)

HALF = Fraction(1, 2)


@dataclass
class TruncationCertificate:
    """Degree cap for a graded (loop-space) structure and the rule behind it.

    ``max_degree`` bounds every index the recursion may sum over;
    ``validation_degree`` bounds the free indices of relation instances
    (the stored tensors reach far enough that those instances are complete).
    ``young_r`` is the support constant used by the Young dynamics.
    """

    rule: str
    max_degree: int
    validation_degree: int
    budget: tuple
    young_r: int | None = None
    support_bound: str = ""
    parity: int | None = None
    s0: int | None = None

    def entry_bound(self, g: int, n: int):
        """Bound on the sum of index degrees of a nonzero F_{g,n}, or None if unknown."""
        if self.parity is None or self.s0 is None:
            return None
        return index_sum_bound(self.parity, self.s0, g, n)

    def to_json(self):
        return {"rule": self.rule, "max_degree": self.max_degree,
                "validation_degree": self.validation_degree,
                "budget": list(self.budget), "young_r": self.young_r,
                "support_bound": self.support_bound, "parity": self.parity, "s0": self.s0}

    @classmethod
    def from_json(cls, d):
        return cls(d["rule"], d["max_degree"], d.get("validation_degree", d["max_degree"]),
                   tuple(d.get("budget", ())), d.get("young_r"), d.get("support_bound", ""),
                   d.get("parity"), d.get("s0"))


def index_sum_bound(parity: int, s0: int, g: int, n: int) -> int:
    """Largest sum of index degrees of a nonzero F_{g,n} for a loop structure.

    parity 2 (Z2 families): 3g-3+n when s0 = -1, else g-1+s0(2-n);
    parity 1: 2g-2+s0(2-n) when s0 >= 0, and -1 (F vanishes) when s0 = -1.
    """
    if parity == 2:
        return 3 * g - 3 + n if s0 == -1 else g - 1 + s0 * (2 - n)
    if s0 >= 0:
        return 2 * g - 2 + s0 * (2 - n)
    return -1


class AiryStructure:
    def __init__(self, index: IndexSet, field=QQ, name: str = "", certificate: TruncationCertificate | None = None,
                 meta: dict | None = None):
        self.index = index
        self.field = field
        self.name = name
        self.certificate = certificate
        self.meta = dict(meta or {})
        z = field.zero
        self.A = SparseTensor(3, FULL, index, z)
        self.B = SparseTensor(3, NONE, index, z)
        self.C = SparseTensor(3, LOWER, index, z)
        self.D = SparseTensor(1, NONE, index, z)
        self._rows = None

    # -- construction helpers -------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.index)

    @property
    def graded(self) -> bool:
        return self.index.graded

    @classmethod
    def from_dense(cls, A, B, C, D, field=QQ, name="", index: IndexSet | None = None, symmetrize=False):
        """Build from nested lists ``A[i][j][k]``, ``B[i][j][k]``, ``C[i][j][k]``, ``D[i]``.

        Inconsistent symmetric duplicates raise unless ``symmetrize`` is set,
        in which case A and C are averaged over their symmetric slots.
        """
        n = len(D)
        index = index or IndexSet.range(n)
        s = cls(index, field, name)
        conv = field
        for i in range(n):
            if D[i]:
                s.D[(i,)] = conv(D[i])
            for j in range(n):
                for k in range(n):
                    if B[i][j][k]:
                        s.B[(i, j, k)] = conv(B[i][j][k])
        from itertools import permutations
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    key = tuple(sorted((i, j, k)))
                    if (i, j, k) != key:
                        continue
                    vals = [conv(A[p][q][r]) for p, q, r in set(permutations(key))]
                    if symmetrize:
                        s.A[key] = sum(vals[1:], vals[0]) * Fraction(1, len(vals))
                    else:
                        if any(v != vals[0] for v in vals):
                            raise ValueError(f"A is not fully symmetric at {key}")
                        s.A[key] = vals[0]
        for i in range(n):
            for j in range(n):
                for k in range(j, n):
                    a, b = conv(C[i][j][k]), conv(C[i][k][j])
                    if a != b and not symmetrize:
                        raise ValueError(f"C^{i} is not symmetric at ({j},{k})")
                    s.C[(i, j, k)] = (a + b) * HALF if symmetrize else a
        return s

    def dense(self):
        n = self.dim
        z = self.field.zero
        A = [[[self.A[(i, j, k)] for k in range(n)] for j in range(n)] for i in range(n)]
        B = [[[self.B[(i, j, k)] for k in range(n)] for j in range(n)] for i in range(n)]
        C = [[[self.C[(i, j, k)] for k in range(n)] for j in range(n)] for i in range(n)]
        D = [self.D.data.get((i,), z) for i in range(n)]
        return A, B, C, D

    def copy(self, name: str | None = None) -> AiryStructure:
        s = AiryStructure(self.index, self.field, self.name if name is None else name, self.certificate, self.meta)
        s.A, s.B, s.C, s.D = self.A.copy(), self.B.copy(), self.C.copy(), self.D.copy()
        return s

    def same_tensors(self, other: AiryStructure) -> bool:
        return (self.A.data == other.A.data and self.B.data == other.B.data
                and self.C.data == other.C.data and self.D.data == other.D.data)

    def d(self, i):
        return self.D.data.get((i,), self.field.zero)

    def touched(self):
        self._rows = None

    # -- sparse access tables used by the recursion and validators -------------
    def rows(self, cap: int | None = None):
        """Adjacency tables restricted to ordinals whose degree is <= cap."""
        if self._rows is not None and self._rows[0] == cap:
            return self._rows[1]
        ok = (lambda i: True) if cap is None else (lambda i: self.index.degree(i) <= cap)
        b_rows = defaultdict(list)          # (i, j) -> [(a, B^i_{j,a})]
        for (i, j, a), v in self.B.items():
            if ok(i) and ok(j) and ok(a):
                b_rows[(i, j)].append((a, v))
        c_rows = defaultdict(list)          # i -> [(a, b, C^i_{a,b})] over ordered pairs
        for (i, a, b), v in self.C.items():
            if ok(i) and ok(a) and ok(b):
                c_rows[i].append((a, b, v))
                if a != b:
                    c_rows[i].append((b, a, v))
        tables = {"B": dict(b_rows), "C": dict(c_rows)}
        self._rows = (cap, tables)
        return tables

    # -- serialization ---------------------------------------------------------
    def to_json(self) -> dict:
        fmt = self.field.format
        lab = self.index.label
        if self.index.graded:
            colors = max(c for _, c in self.index.grading)
            indices = {"graded": {"colors": colors, "max_degree": max(k for k, _ in self.index.grading),
                                  "rule": self.certificate.rule if self.certificate else ""}}
        else:
            indices = list(self.index.labels)
        out = {
            "name": self.name,
            "field": self.field.to_json(),
            "indices": indices,
            "A": [[lab(i), lab(j), lab(k), fmt(v)] for (i, j, k), v in sorted(self.A.items())],
            "B": [[lab(i), lab(j), lab(k), fmt(v)] for (i, j, k), v in sorted(self.B.items())],
            "C": [[lab(i), lab(j), lab(k), fmt(v)] for (i, j, k), v in sorted(self.C.items())],
            "D": [[lab(i), fmt(v)] for (i,), v in sorted(self.D.items())],
        }
        if self.certificate:
            out["certificate"] = self.certificate.to_json()
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1)

    @classmethod
    def from_json(cls, d: dict) -> AiryStructure:
        fd = d.get("field", "rational")
        if fd == "rational":
            fld = QQ
        elif isinstance(fd, dict) and "number_field" in fd:
            fld = NumberField([as_fraction(c) for c in fd["number_field"]["modulus"]])
        else:
            raise ValueError(f"unsupported field {fd!r}")
        ind = d["indices"]
        if isinstance(ind, dict):
            g = ind["graded"]
            index = IndexSet.graded_range(int(g["max_degree"]), int(g.get("colors", 1)))
        else:
            index = IndexSet(ind)
        cert = TruncationCertificate.from_json(d["certificate"]) if d.get("certificate") else None
        s = cls(index, fld, d.get("name", ""), cert)
        pos = index.position

        def put(t, key, raw, what):
            v = fld.parse(raw)
            ck = t.canonical(key)
            old = t.data.get(ck)
            if old is not None and old != v:
                raise ValueError(f"inconsistent duplicate {what} entry at {key}")
            t.set(key, v)

        for i, j, k, v in d.get("A", []):
            put(s.A, (pos(i), pos(j), pos(k)), v, "A")
        for i, j, k, v in d.get("B", []):
            put(s.B, (pos(i), pos(j), pos(k)), v, "B")
        for i, j, k, v in d.get("C", []):
            put(s.C, (pos(i), pos(j), pos(k)), v, "C")
        for i, v in d.get("D", []):
            put(s.D, (pos(i),), v, "D")
        return s

    @classmethod
    def loads(cls, text: str) -> AiryStructure:
        return cls.from_json(json.loads(text))

    def __repr__(self):
        return (f"AiryStructure({self.name!r}, dim={self.dim}, nnz A/B/C/D="
                f"{len(self.A)}/{len(self.B)}/{len(self.C)}/{len(self.D)})")


# ---------------------------------------------------------------------------
# validation

@dataclass
class Violation:
    tag: str
    indices: tuple
    residual: object

    def __str__(self):
        return f"{self.tag}{self.indices}: residual {self.residual}"


@dataclass
class RelationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def first(self):
        return self.violations[0] if self.violations else None

    def tags(self):
        return sorted({v.tag for v in self.violations})

    def __str__(self):
        if self.ok:
            return "OK"
        head = "; ".join(str(v) for v in self.violations[:5])
        more = len(self.violations) - 5
        return head + (f"; ... ({more} more)" if more > 0 else "")


class TruncationError(ValueError):
    pass


def _expanded(t: SparseTensor):
    return list(t.expanded())


def _four_index_terms(s: AiryStructure):
    """The three relation tensors T(i,j,k,l) before antisymmetrization in (i,j)."""
    Bl = _expanded(s.B)
    Cl = _expanded(s.C)
    Al = _expanded(s.A)
    B_up = defaultdict(list)    # a -> [(k, l, B^a_{k,l})]
    B_mid = defaultdict(list)   # a -> [(j, l, B^j_{a,l})]
    for (i, j, k), v in Bl:
        B_up[i].append((j, k, v))
        B_mid[j].append((i, k, v))
    C_up = defaultdict(list)    # a -> [(k, l, C^a_{k,l})]
    for (i, j, k), v in Cl:
        C_up[i].append((j, k, v))
    A_by = defaultdict(list)    # a -> [(j, k, A^j_{a,k})]
    for (i, j, k), v in Al:
        A_by[j].append((i, k, v))
    C_by_mid = defaultdict(list)   # a -> [(i, l, C^i_{l,a})]
    for (i, l, a), v in Cl:
        C_by_mid[a].append((i, l, v))

    bbac = defaultdict(lambda: 0)
    bc = defaultdict(lambda: 0)
    ba = defaultdict(lambda: 0)
    # BB-AC: B^i_{j,a}B^a_{k,l} + B^i_{k,a}B^j_{a,l} + C^i_{l,a}A^j_{a,k}
    for (i, j, a), v in Bl:
        for k, l, w in B_up.get(a, ()):
            bbac[(i, j, k, l)] += v * w
    for (i, k, a), v in Bl:
        for j, l, w in B_mid.get(a, ()):
            bbac[(i, j, k, l)] += v * w
    for (i, l, a), v in Cl:
        for j, k, w in A_by.get(a, ()):
            bbac[(i, j, k, l)] += v * w
    # BC: B^i_{j,a}C^a_{k,l} + C^i_{k,a}B^j_{a,l} + C^i_{l,a}B^j_{a,k}
    for (i, j, a), v in Bl:
        for k, l, w in C_up.get(a, ()):
            bc[(i, j, k, l)] += v * w
    for (i, k, a), v in Cl:
        for j, l, w in B_mid.get(a, ()):
            bc[(i, j, k, l)] += v * w
            bc[(i, j, l, k)] += v * w
    # BA: B^i_{j,a}A^a_{k,l} + B^i_{k,a}A^j_{a,l} + B^i_{l,a}A^j_{a,k}
    A_up = defaultdict(list)
    for (i, j, k), v in Al:
        A_up[i].append((j, k, v))
    for (i, j, a), v in Bl:
        for k, l, w in A_up.get(a, ()):
            ba[(i, j, k, l)] += v * w
    for (i, k, a), v in Bl:
        for j, l, w in A_by.get(a, ()):
            ba[(i, j, k, l)] += v * w
            ba[(i, j, l, k)] += v * w
    return {"BB-AC": bbac, "BC": bc, "BA": ba}


def _d_terms(s: AiryStructure):
    t = defaultdict(lambda: 0)
    for (i, j, a), v in s.B.expanded():
        d = s.D.data.get((a,))
        if d is not None:
            t[(i, j)] += v * d
    A_pair = defaultdict(list)  # (a, b) -> [(j, A^j_{a,b})]
    for (j, a, b), v in s.A.expanded():
        A_pair[(a, b)].append((j, v))
    for (i, a, b), v in s.C.expanded():
        for j, w in A_pair.get((a, b), ()):
            t[(i, j)] += HALF * v * w
    return t


def validate_relations(s: AiryStructure, check_D: bool = True) -> RelationReport:
    """All violations of the BB-AC, BC, BA (and D) relations, i < j.

    For graded structures only instances whose free indices have degree
    at most the certificate's ``validation_degree`` are examined.
    """
    if s.graded and s.certificate is None:
        raise TruncationError("graded structure without a truncation certificate")
    cap = s.certificate.validation_degree if s.certificate else None
    deg = s.index.degree
    in_range = (lambda idx: True) if cap is None else (lambda idx: all(deg(x) <= cap for x in idx))
    report = RelationReport()
    if s.C.symmetry != LOWER or s.A.symmetry != FULL:
        report.violations.append(Violation("SymA", (), "tensor symmetry class changed"))
    terms = _four_index_terms(s)
    if check_D:
        terms["D"] = _d_terms(s)
    lab = s.index.label
    for tag, T in terms.items():
        seen = set()
        for key in T:
            i, j = key[0], key[1]
            if i == j:
                continue
            rest = key[2:]
            lo, hi = (i, j) if i < j else (j, i)
            ck = (lo, hi) + rest
            if ck in seen:
                continue
            seen.add(ck)
            if not in_range(ck):
                continue
            r = T.get(ck, 0) - T.get((hi, lo) + rest, 0)
            if r:
                report.violations.append(Violation(tag, tuple(lab(x) for x in ck), r))
    report.violations.sort(key=lambda v: (["SymA", "BB-AC", "BC", "BA", "D", "f-Jacobi"].index(v.tag),
                                          tuple(str(x) for x in v.indices)))
    return report


# ---------------------------------------------------------------------------
# Lie algebra data

@dataclass
class StructureConstants:
    """f^k_{ij} stored as {(i, j, k): value} for i != j (antisymmetric in i, j)."""

    f: dict
    report: RelationReport
    dim: int

    def get(self, i, j, k):
        return self.f.get((i, j, k), 0)

    def bracket(self, i, j) -> dict:
        """{k: f^k_{ij}} for the basis bracket [L_i, L_j] = hbar f^k_{ij} L_k."""
        return {k: v for (a, b, k), v in self.f.items() if (a, b) == (i, j)}

    @property
    def abelian(self) -> bool:
        return not self.f


def structure_constants(s: AiryStructure) -> StructureConstants:
    f = defaultdict(lambda: 0)
    for (i, j, k), v in s.B.items():
        if i != j:
            f[(i, j, k)] += v
            f[(j, i, k)] -= v
    f = {key: v for key, v in f.items() if v}
    report = RelationReport()
    # Jacobi: f^m_{ij} f^n_{mk} + cyclic(i,j,k) = 0
    by_pair = defaultdict(list)
    for (i, j, k), v in f.items():
        by_pair[(i, j)].append((k, v))
    involved = sorted({x for key in f for x in key[:2]})
    lab = s.index.label
    for a in range(len(involved)):
        for b in range(a + 1, len(involved)):
            for c in range(b + 1, len(involved)):
                i, j, k = involved[a], involved[b], involved[c]
                tot = defaultdict(lambda: 0)
                for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
                    for m, v in by_pair.get((x, y), ()):
                        for n, w in by_pair.get((m, z), ()):
                            tot[n] += v * w
                for n, v in tot.items():
                    if v:
                        report.violations.append(Violation("f-Jacobi", (lab(i), lab(j), lab(k), lab(n)), v))
    return StructureConstants(f, report, s.dim)


@dataclass
class DReference:
    d_ref: list
    constants: StructureConstants

    def admissible(self, D) -> bool:
        """(D - D_ref) must vanish on every commutator: sum_k (D^k - D_ref^k) f^k_{ij} = 0."""
        diff = [D[k] - self.d_ref[k] for k in range(len(self.d_ref))]
        tot = defaultdict(lambda: 0)
        for (i, j, k), v in self.constants.f.items():
            tot[(i, j)] += diff[k] * v
        return not any(tot.values())


def d_ref(s: AiryStructure) -> DReference:
    """Reference completion D_ref^i = 1/2 tr B^i together with the admissibility test."""
    if s.graded:
        raise TruncationError("trace undefined: tr B^i diverges on graded (loop-space) structures")
    out = [s.field.zero] * s.dim
    for (i, a, b), v in s.B.items():
        if a == b:
            out[i] = out[i] + HALF * v
    return DReference(out, structure_constants(s))


def d_admissible(s: AiryStructure, D=None) -> bool:
    D = D if D is not None else [s.d(i) for i in range(s.dim)]
    return d_ref(s).admissible(D)


def text_scalar(field, x) -> str:
    v = field.format(x)
    return v if isinstance(v, str) else json.dumps(v)


__all__ = ["AiryStructure", "TruncationCertificate", "index_sum_bound", "RelationReport", "Violation", "validate_relations",
           "structure_constants", "StructureConstants", "d_ref", "d_admissible", "DReference",
           "TruncationError", "format_rational"]
