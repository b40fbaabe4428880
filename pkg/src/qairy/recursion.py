"""Topological recursion for the coefficients F_{g,n} of a quantum Airy structure.

F_{0,3} = A and F_{1,1} = D; for 2g - 2 + n >= 2 with first index i,

    F_{g,n}(i, I) = sum_m B^i_{i_m, a} F_{g,n-1}(a, I - i_m)
                  + 1/2 C^i_{a,b} [ F_{g-1,n+1}(a, b, I)
                                    + sum_{h'+h''=g, J' u J''=I} F_{h',1+|J'|}(a, J') F_{h'',1+|J''|}(b, J'') ]

where the last sum runs over ordered splittings and unstable terms are zero.
Memo keys are (g, indices sorted canonically); the first index used by
:func:`fgn` is the canonical minimum.  :func:`check_symmetry` recomputes
every entry with each possible first index.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import comb

from .airy_core import AiryStructure, TruncationError
from .kernel import FULL, SparseTensor

HALF = Fraction(1, 2)
DEFAULT_BUDGET = 12


class BudgetError(ValueError):
    pass


def soft_budget() -> int:
    """Largest 2g-2+n accepted; override with the AIRY_BUDGET environment variable."""
    try:
        return int(os.environ.get("AIRY_BUDGET", DEFAULT_BUDGET))
    except ValueError:
        return DEFAULT_BUDGET


def chi(g: int, n: int) -> int:
    return 2 * g - 2 + n


@dataclass
class FgnTable:
    structure: AiryStructure
    values: dict = field(default_factory=dict)
    hits: int = 0
    misses: int = 0
    depth: int = 0

    def export(self) -> list:
        """JSON-ready list of {"g", "indices", "value"} in a stable order."""
        s = self.structure
        out = []
        for (g, idx), v in sorted(self.values.items(), key=lambda kv: (kv[0][0], len(kv[0][1]), kv[0][1])):
            out.append({"g": g, "indices": [s.index.label(i) for i in idx], "value": _scalar_json(s, v)})
        return out


def _scalar_json(s, v):
    f = s.field.format(v)
    return f


def table(s: AiryStructure) -> FgnTable:
    t = getattr(s, "_fgn_table", None)
    if t is None or t.structure is not s:
        t = FgnTable(s)
        s._fgn_table = t
    return t


def clear_cache(s: AiryStructure | None = None):
    """Drop memoized values for one structure (or do nothing if it has none)."""
    if s is not None and hasattr(s, "_fgn_table"):
        del s._fgn_table


class _Engine:
    def __init__(self, s: AiryStructure):
        self.s = s
        self.cap = s.certificate.max_degree if (s.graded and s.certificate) else None
        rows = s.rows(self.cap)
        self.brows = rows["B"]
        self.table = table(s)
        self.memo = self.table.values
        self.zero = s.field.zero
        # work with sort positions so that canonical keys are plain sorted tuples
        order = sorted(range(s.dim), key=s.index.sort_key)
        self.pos = {o: p for p, o in enumerate(order)}
        self.ordinal = order
        cert = s.certificate
        self.prune = bool(s.graded and cert and cert.parity is not None and s.meta.get("prune_support", True))
        self.degree = [s.index.degree(i) for i in range(s.dim)] if s.graded else None
        self.pruned = 0
        self.crows = {}
        for i, entries in rows["C"].items():
            by_a = {}
            for a, b, v in entries:
                by_a.setdefault(a, []).append((b, v))
            self.crows[i] = (entries, by_a)

    def canon(self, idx) -> tuple:
        return tuple(sorted(idx, key=self.pos.__getitem__))

    def get(self, g: int, idx: tuple):
        n = len(idx)
        if g < 0 or n == 0:
            return self.zero
        if g == 0 and n <= 2:
            return self.zero
        return self._get(g, self.canon(idx))

    def _get(self, g: int, key: tuple):
        """Memoized value for an already canonical index tuple."""
        if g < 0 or (g == 0 and len(key) <= 2) or not key:
            return self.zero
        k = (g, key)
        v = self.memo.get(k)
        if v is not None:
            self.table.hits += 1
            return v
        if self.prune and sum(self.degree[x] for x in key) > self.s.certificate.entry_bound(g, len(key)):
            self.pruned += 1
            return self.zero
        self.table.misses += 1
        self.table.depth += 1
        try:
            v = self.evaluate(g, key[0], key[1:])
        finally:
            self.table.depth -= 1
        self.memo[k] = v
        return v

    def _insert(self, a, J: tuple) -> tuple:
        """Canonical tuple of a together with the canonical tuple J."""
        pa = self.pos[a]
        pos = self.pos
        for m, x in enumerate(J):
            if pos[x] > pa:
                return J[:m] + (a,) + J[m:]
        return J + (a,)

    def evaluate(self, g: int, first: int, rest: tuple):
        """One application of the recursion with the given first index."""
        s = self.s
        n = 1 + len(rest)
        if g == 0 and n == 3:
            return s.A.get((first,) + rest)
        if g == 1 and n == 1:
            return s.d(first)
        rest = self.canon(rest)
        total = self.zero
        ins = self._insert
        # B terms
        for m in range(len(rest)):
            row = self.brows.get((first, rest[m]))
            if not row:
                continue
            others = rest[:m] + rest[m + 1:]
            for a, bval in row:
                f = self._get(g, ins(a, others))
                if f:
                    total = total + bval * f
        crow = self.crows.get(first)
        if not crow:
            return total
        entries, by_a = crow
        inner = self.zero
        # non-separating term
        if g >= 1:
            for a, b, cval in entries:
                f = self._get(g - 1, ins(a, ins(b, rest)))
                if f:
                    inner = inner + cval * f
        # ordered splittings, grouped by sub-multiset with binomial weights:
        # sum_a F1[a] sum_b C_ab F2[b]
        groups = []
        for x in rest:
            if groups and groups[-1][0] == x:
                groups[-1][1] += 1
            else:
                groups.append([x, 1])
        vectors = {}

        def vector(h, J):
            key = (h, J)
            vec = vectors.get(key)
            if vec is None:
                vec = {}
                for a in by_a:
                    f = self._get(h, ins(a, J))
                    if f:
                        vec[a] = f
                vectors[key] = vec
            return vec

        for counts in product(*(range(m + 1) for _, m in groups)):
            J1, J2, weight = (), (), 1
            for (x, m), c in zip(groups, counts):
                J1 += (x,) * c
                J2 += (x,) * (m - c)
                weight *= comb(m, c)
            for h1 in range(g + 1):
                h2 = g - h1
                if (h1 == 0 and len(J1) < 2) or (h2 == 0 and len(J2) < 2):
                    continue
                F1 = vector(h1, J1)
                if not F1:
                    continue
                F2 = vector(h2, J2)
                if not F2:
                    continue
                part = self.zero
                for a, fa in F1.items():
                    acc = self.zero
                    for b, cval in by_a[a]:
                        fb = F2.get(b)
                        if fb is not None:
                            acc = acc + cval * fb
                    if acc:
                        part = part + fa * acc
                if part:
                    inner = inner + part * weight
        return total + HALF * inner


def _engine(s: AiryStructure) -> _Engine:
    e = getattr(s, "_fgn_engine", None)
    if e is None or e.table is not table(s) or e.s is not s:
        e = _Engine(s)
        s._fgn_engine = e
    return e


def _check_request(s: AiryStructure, g: int, n: int):
    if g < 0 or n < 1 or chi(g, n) <= 0:
        raise ValueError(f"F_{{{g},{n}}} needs 2g-2+n > 0")
    if chi(g, n) > soft_budget():
        raise BudgetError(f"2g-2+n = {chi(g, n)} exceeds the budget {soft_budget()} (set AIRY_BUDGET)")
    if s.graded:
        cert = s.certificate
        if cert is None:
            raise TruncationError("graded structure without a truncation certificate")
        if cert.budget and chi(g, n) > cert.budget[0]:
            raise BudgetError(f"2g-2+n = {chi(g, n)} is beyond the certified budget {cert.budget[0]}")


def _ordinals(s: AiryStructure, indices) -> tuple:
    out = []
    for lab in indices:
        i = s.index.position(lab)
        if s.graded and s.certificate and s.index.degree(i) > s.certificate.max_degree:
            raise TruncationError(f"index {lab!r} is outside the certified support")
        out.append(i)
    return tuple(out)


def fgn(s: AiryStructure, g: int, indices) -> object:
    """F_{g,n}(indices) with indices given as labels."""
    idx = _ordinals(s, indices)
    _check_request(s, g, len(idx))
    return _engine(s).get(g, idx)


def fgn_ordinal(s: AiryStructure, g: int, idx: tuple):
    _check_request(s, g, len(idx))
    return _engine(s).get(g, tuple(idx))


def support(s: AiryStructure) -> list:
    """Ordinals the recursion sums over."""
    if s.graded and s.certificate:
        return [i for i in range(s.dim) if s.index.degree(i) <= s.certificate.max_degree]
    return list(range(s.dim))


def stable_pairs(budget: int):
    for c in range(1, budget + 1):
        for g in range(0, c // 2 + 2):
            n = c + 2 - 2 * g
            if n >= 1:
                yield g, n


def free_energy(s: AiryStructure, g: int, n: int) -> SparseTensor:
    """All F_{g,n} entries over the support, as a fully symmetric tensor."""
    _check_request(s, g, n)
    e = _engine(s)
    out = SparseTensor(n, FULL, s.index, s.field.zero)
    for idx in _entries(e, support(s), g, n):
        v = e.get(g, idx)
        if v:
            out[idx] = v
    return out


@dataclass
class SymmetryDiscrepancy:
    g: int
    indices: tuple
    first: object
    other: object
    value_first: object
    value_other: object

    def __str__(self):
        return (f"F_{{{self.g},{len(self.indices)}}}{self.indices}: first index {self.first!r} gives "
                f"{self.value_first}, first index {self.other!r} gives {self.value_other}")


@dataclass
class SymmetryReport:
    budget: int
    checked: int = 0
    discrepancies: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.discrepancies

    def __bool__(self):
        return self.ok

    @property
    def first(self):
        if not self.discrepancies:
            return None
        return min(self.discrepancies, key=lambda d: (chi(d.g, len(d.indices)), d.g))

    def __str__(self):
        if self.ok:
            return f"symmetric up to 2g-2+n = {self.budget} ({self.checked} entries)"
        return f"{len(self.discrepancies)} discrepancies; first: {self.first}"


def _entries(e: _Engine, sup: list, g: int, n: int):
    """Index multisets for F_{g,n}; with pruning, only those inside the certified support."""
    if not e.prune:
        yield from combinations_with_replacement(sup, n)
        return
    bound = e.s.certificate.entry_bound(g, n)
    deg = e.degree

    def rec(start, left, room, acc):
        if left == 0:
            yield tuple(acc)
            return
        for p in range(start, len(sup)):
            d = deg[sup[p]]
            if d * left > room:
                break
            acc.append(sup[p])
            yield from rec(p, left - 1, room - d, acc)
            acc.pop()

    if bound >= 0:
        yield from rec(0, n, bound, [])


def check_symmetry(s: AiryStructure, budget: int = 4, stop_at_first: bool = False) -> SymmetryReport:
    """Recompute each F_{g,n} with every distinct first index and compare."""
    if budget > soft_budget():
        raise BudgetError(f"budget {budget} exceeds the soft limit {soft_budget()}")
    if s.graded and s.certificate and s.certificate.budget and budget > s.certificate.budget[0]:
        raise BudgetError(f"budget {budget} is beyond the certified budget {s.certificate.budget[0]}")
    e = _engine(s)
    report = SymmetryReport(budget)
    sup = support(s)
    lab = s.index.label
    for g, n in sorted(stable_pairs(budget), key=lambda p: (chi(*p), p[0])):
        for idx in _entries(e, sup, g, n):
            base = e.get(g, idx)
            seen = {idx[0]}
            for pos in range(1, n):
                f = idx[pos]
                if f in seen:
                    continue
                seen.add(f)
                v = e.evaluate(g, f, idx[:pos] + idx[pos + 1:])
                report.checked += 1
                if v != base:
                    report.discrepancies.append(SymmetryDiscrepancy(
                        g, tuple(lab(i) for i in idx), lab(idx[0]), lab(f), base, v))
                    if stop_at_first:
                        return report
    return report


def export_table(s: AiryStructure) -> str:
    return json.dumps(table(s).export(), indent=1)


__all__ = ["fgn", "fgn_ordinal", "free_energy", "check_symmetry", "clear_cache", "table", "export_table",
           "FgnTable", "SymmetryReport", "SymmetryDiscrepancy", "BudgetError", "soft_budget", "support",
           "stable_pairs", "chi"]
