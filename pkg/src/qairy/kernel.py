"""Arithmetic substrate: coefficient fields, index sets, sparse tensors and
truncated multivariate power series.

Scalars are plain Python objects supporting ``+ - * /``.  Rationals are
:class:`fractions.Fraction`, number-field elements are :class:`NFElement`,
series are :class:`TSeries`.  Every algorithm in the package is written
against this duck-typed interface, so the same code runs over all of them.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import gcd, lcm
from typing import Iterable, Sequence


class FieldError(ValueError):
    pass


def is_zero(x) -> bool:
    return not x


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12)
    raise FieldError(f"cannot read {x!r} as a rational")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q, lowest degree first

def _strip(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_mul(p: Sequence, q: Sequence) -> list:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _strip(out)


def poly_sub(p: Sequence, q: Sequence) -> list:
    n = max(len(p), len(q))
    out = [(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)]
    return _strip([Fraction(c) for c in out])


def poly_divmod(p: Sequence, m: Sequence) -> tuple[list, list]:
    """Quotient and remainder of p by m, dividing by the leading coefficient of m."""
    m = _strip([Fraction(c) for c in m])
    if not m:
        raise ZeroDivisionError("zero modulus")
    r = _strip([Fraction(c) for c in p])
    dm, lead = len(m) - 1, m[-1]
    if len(r) - 1 < dm:
        return [], r
    q = [Fraction(0)] * (len(r) - dm)
    while len(r) - 1 >= dm and r:
        shift = len(r) - 1 - dm
        c = r[-1] / lead
        q[shift] = c
        for i, b in enumerate(m):
            r[i + shift] -= c * b
        r.pop()
        _strip(r)
    return _strip(q), r


def poly_gcdex(a: Sequence, b: Sequence) -> tuple[list, list, list]:
    """Return (g, s, t) with s*a + t*b = g, g = gcd(a, b) (not normalized)."""
    r0, r1 = _strip([Fraction(c) for c in a]), _strip([Fraction(c) for c in b])
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
        t0, t1 = t1, poly_sub(t0, poly_mul(q, t1))
    return r0, s0, t0


# ---------------------------------------------------------------------------
# fields

class RationalField:
    name = "rational"
    exact = True
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x):
        return as_fraction(x)

    def parse(self, text):
        return as_fraction(text)

    def format(self, x) -> str:
        return format_rational(x)

    def to_json(self):
        return "rational"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class FloatField:
    """Inexact field for exploration only.  Comparisons use relative 1e-9."""

    name = "float"
    exact = False
    zero = 0.0
    one = 1.0
    rtol = 1e-9

    def __call__(self, x):
        return float(Fraction(x) if isinstance(x, str) else x)

    def parse(self, text):
        return float(text)

    def format(self, x) -> str:
        return repr(float(x))

    def to_json(self):
        return "float"

    def close(self, a, b) -> bool:
        return abs(a - b) <= self.rtol * max(1.0, abs(a), abs(b))


class NumberField:
    """Q[x]/(modulus).  The modulus is stored exactly as given (not monicized)."""

    exact = True

    def __init__(self, modulus: Iterable, var: str = "z"):
        m = _strip([as_fraction(c) for c in modulus])
        if len(m) < 2:
            raise FieldError("number-field modulus must have degree >= 1")
        self.modulus = tuple(m)
        self.degree = len(m) - 1
        self.var = var
        self.name = "number_field"
        self.zero = NFElement(self, ())
        self.one = NFElement(self, (Fraction(1),))

    def __call__(self, x) -> NFElement:
        if isinstance(x, NFElement):
            if x.field != self:
                raise FieldError("element of a different number field")
            return x
        if isinstance(x, (list, tuple)):
            return self.reduce(x)
        return NFElement(self, (as_fraction(x),))

    def reduce(self, poly: Sequence) -> NFElement:
        _, r = poly_divmod([as_fraction(c) for c in poly], self.modulus)
        return NFElement(self, tuple(r))

    def gen(self) -> NFElement:
        return self.reduce([0, 1])

    def parse(self, data):
        if isinstance(data, (list, tuple)):
            return self.reduce(data)
        return self(as_fraction(data))

    def format(self, x) -> list:
        x = self(x)
        return [format_rational(c) for c in x.coeffs] or ["0"]

    def to_json(self):
        return {"number_field": {"modulus": [format_rational(c) for c in self.modulus]}}

    def __eq__(self, other):
        return isinstance(other, NumberField) and other.modulus == self.modulus

    def __hash__(self):
        return hash(self.modulus)

    def __repr__(self):
        return f"NumberField({[format_rational(c) for c in self.modulus]})"


def nf_reduce(poly: Sequence, modulus: Sequence) -> NFElement:
    """Residue of ``poly`` modulo ``modulus`` (coefficients lowest degree first)."""
    return NumberField(modulus).reduce(poly)


class NFElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: tuple):
        self.field = field
        self.coeffs = tuple(_strip(list(coeffs)))

    def _lift(self, other):
        if isinstance(other, NFElement):
            if other.field != self.field:
                raise FieldError("mixing elements of different number fields")
            return other.coeffs
        if isinstance(other, (int, Fraction)):
            return (Fraction(other),) if other else ()
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(o))
        a, b = self.coeffs, o
        return NFElement(self.field, tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                                           for i in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + NFElement(self.field, tuple(-c for c in o))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if len(o) <= 1:
            c = o[0] if o else 0
            return NFElement(self.field, tuple(c * x for x in self.coeffs))
        return self.field.reduce(poly_mul(self.coeffs, o))

    __rmul__ = __mul__

    def inverse(self) -> NFElement:
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero in a number field")
        g, s, _ = poly_gcdex(self.coeffs, self.field.modulus)
        if len(g) != 1:
            raise ZeroDivisionError("element shares a factor with the modulus")
        return self.field.reduce([c / g[0] for c in s])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError
            return NFElement(self.field, tuple(c / other for c in self.coeffs))
        if isinstance(other, NFElement):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = self.field.one, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        o = self._lift(other) if isinstance(other, (NFElement, int, Fraction)) else NotImplemented
        if o is NotImplemented:
            return NotImplemented
        return self.coeffs == tuple(o)

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else Fraction(0))
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        v = self.field.var
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(format_rational(c) + ("" if i == 0 else f"*{v}" + (f"^{i}" if i > 1 else "")))
        return " + ".join(terms)


# ---------------------------------------------------------------------------
# index sets

class IndexSet:
    """Ordered labels, optionally graded by (height, color)."""

    def __init__(self, labels: Sequence, grading: Sequence[tuple[int, int]] | None = None):
        labels = list(labels)
        if len(set(labels)) != len(labels):
            raise ValueError("index labels must be unique")
        if grading is not None:
            grading = [tuple(g) for g in grading]
            if len(grading) != len(labels):
                raise ValueError("grading must cover every label")
        self.labels = labels
        self.grading = grading
        self._pos = {lab: i for i, lab in enumerate(labels)}
        if grading is None:
            self._keys = [(0, 0, i) for i in range(len(labels))]
        else:
            self._keys = [(g[0], g[1], i) for i, g in enumerate(grading)]

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(range(len(self.labels)))

    def __eq__(self, other):
        return isinstance(other, IndexSet) and self.labels == other.labels and self.grading == other.grading

    def position(self, label) -> int:
        try:
            return self._pos[label]
        except KeyError:
            # labels read back from JSON/CLI arrive as strings
            for lab, i in self._pos.items():
                if str(lab) == str(label):
                    return i
            raise KeyError(f"unknown index label {label!r}") from None

    def label(self, i: int):
        return self.labels[i]

    @property
    def graded(self) -> bool:
        return self.grading is not None

    def degree(self, i: int) -> int:
        return self.grading[i][0] if self.grading else 0

    def color(self, i: int) -> int:
        return self.grading[i][1] if self.grading else 1

    def sort_key(self, i: int):
        return self._keys[i]

    def canonical(self, idx: Iterable[int]) -> tuple:
        """Canonical multiset key: sorted by (height, color, ordinal)."""
        return tuple(sorted(idx, key=self._keys.__getitem__))

    @classmethod
    def range(cls, n: int) -> IndexSet:
        return cls(list(range(n)))

    @classmethod
    def graded_range(cls, max_degree: int, colors: int = 1) -> IndexSet:
        labels, grading = [], []
        for k in range(max_degree + 1):
            for a in range(1, colors + 1):
                labels.append(k if colors == 1 else f"{k}:{a}")
                grading.append((k, a))
        return cls(labels, grading)


# ---------------------------------------------------------------------------
# sparse tensors

FULL, LOWER, NONE = "full", "lower", "none"


class SparseTensor:
    """Sparse tensor over ordinals, canonicalized under a slot symmetry.

    ``full``: all slots symmetric.  ``lower``: slot 0 free, slots 1..2 symmetric.
    ``none``: no symmetry.  Absent keys read as zero; zeros are never stored.
    """

    def __init__(self, arity: int, symmetry: str = NONE, index: IndexSet | None = None, zero=Fraction(0)):
        if symmetry not in (FULL, LOWER, NONE):
            raise ValueError(symmetry)
        if symmetry == LOWER and arity != 3:
            raise ValueError("lower-pair symmetry needs arity 3")
        self.arity = arity
        self.symmetry = symmetry
        self.index = index
        self.zero = zero
        self.data: dict[tuple, object] = {}

    def _sortkey(self):
        return self.index.sort_key if self.index is not None else (lambda i: i)

    def canonical(self, idx) -> tuple:
        idx = tuple(idx)
        if len(idx) != self.arity:
            raise ValueError(f"expected {self.arity} indices, got {len(idx)}")
        if self.index is not None:
            n = len(self.index)
            for i in idx:
                if not (isinstance(i, int) and 0 <= i < n):
                    raise KeyError(f"index {i!r} outside the index set")
        if self.symmetry == FULL:
            return tuple(sorted(idx, key=self._sortkey()))
        if self.symmetry == LOWER:
            return (idx[0],) + tuple(sorted(idx[1:], key=self._sortkey()))
        return idx

    def get(self, idx):
        return self.data.get(self.canonical(idx), self.zero)

    __getitem__ = get

    def set(self, idx, value):
        key = self.canonical(idx)
        if value:
            self.data[key] = value
        else:
            self.data.pop(key, None)

    __setitem__ = set

    def add(self, idx, value):
        if value:
            self.set(idx, self.get(idx) + value)

    def items(self):
        return self.data.items()

    def expanded(self):
        """Yield every (index tuple, value), including all symmetric images."""
        from itertools import permutations
        for key, v in self.data.items():
            if self.symmetry == FULL:
                for p in set(permutations(key)):
                    yield p, v
            elif self.symmetry == LOWER:
                yield key, v
                if key[1] != key[2]:
                    yield (key[0], key[2], key[1]), v
            else:
                yield key, v

    def copy(self) -> SparseTensor:
        t = SparseTensor(self.arity, self.symmetry, self.index, self.zero)
        t.data = dict(self.data)
        return t

    def map(self, fn) -> SparseTensor:
        t = SparseTensor(self.arity, self.symmetry, self.index, self.zero)
        for k, v in self.data.items():
            w = fn(v)
            if w:
                t.data[k] = w
        return t

    def __eq__(self, other):
        return isinstance(other, SparseTensor) and self.arity == other.arity and self.data == other.data

    def __len__(self):
        return len(self.data)

    def __repr__(self):
        return f"SparseTensor(arity={self.arity}, {self.symmetry}, nnz={len(self.data)})"


def tensor_get(t: SparseTensor, indices):
    return t.get(indices)


def tensor_set(t: SparseTensor, indices, value) -> SparseTensor:
    t.set(indices, value)
    return t


# ---------------------------------------------------------------------------
# truncated multivariate power series

class SeriesRing:
    """K[[t_1..t_m]] truncated at total degree ``order``."""

    def __init__(self, nvars: int, order: int, base=QQ):
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        self.nvars = nvars
        self.order = order
        self.base = base
        self.zero = TSeries(self, {})
        self.one = TSeries(self, {(0,) * nvars: base.one})

    def __eq__(self, other):
        return isinstance(other, SeriesRing) and (self.nvars, self.order) == (other.nvars, other.order)

    def __hash__(self):
        return hash((self.nvars, self.order))

    def __call__(self, x) -> TSeries:
        if isinstance(x, TSeries):
            if x.ring != self:
                raise ValueError("series from a different ring")
            return x
        return TSeries(self, {(0,) * self.nvars: x} if x else {})

    def var(self, i: int) -> TSeries:
        e = [0] * self.nvars
        e[i] = 1
        if self.order < 1:
            return self.zero
        return TSeries(self, {tuple(e): self.base.one})

    def monomial(self, exps: Sequence[int], coeff=None) -> TSeries:
        if sum(exps) > self.order:
            return self.zero
        c = self.base.one if coeff is None else coeff
        return TSeries(self, {tuple(exps): c} if c else {})


class TSeries:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: SeriesRing, terms: dict):
        self.ring = ring
        self.terms = terms

    def _coerce(self, other):
        if isinstance(other, TSeries):
            if other.ring != self.ring:
                raise ValueError("truncation order or variable mismatch")
            return other
        if isinstance(other, (int, Fraction, NFElement, float)):
            return self.ring(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return TSeries(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return TSeries(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, NFElement, float)):
            if not other:
                return self.ring.zero
            return TSeries(self.ring, {e: c * other for e, c in self.terms.items() if c * other})
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        N = self.ring.order
        out: dict = {}
        b_items = [(e, sum(e), c) for e, c in o.terms.items()]
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, d2, c2 in b_items:
                if d1 + d2 > N:
                    continue
                e = tuple(x + y for x, y in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return TSeries(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, NFElement, float)):
            return self * (1 / Fraction(other) if isinstance(other, int) else 1 / other)
        o = self._coerce(other)
        return self * o.inverse()

    def inverse(self) -> TSeries:
        c0 = self.constant()
        if not c0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        rest = (self - self.ring(c0)) * (1 / c0 if not isinstance(c0, int) else Fraction(1, c0))
        # 1/(c0(1+r)) = (1/c0) sum (-r)^k
        coeffs = [(-1) ** k for k in range(self.ring.order + 1)]
        return compose(coeffs, rest) * (1 / c0 if not isinstance(c0, int) else Fraction(1, c0))

    def __pow__(self, n: int):
        out = self.ring.one
        for _ in range(n):
            out = out * self
        return out

    def constant(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.base.zero)

    def homogeneous(self, n: int) -> TSeries:
        return TSeries(self.ring, {e: c for e, c in self.terms.items() if sum(e) == n})

    def coefficient(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), self.ring.base.zero)

    def min_degree(self) -> int | None:
        return min((sum(e) for e in self.terms), default=None)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, NFElement)):
            other = self.ring(other)
        if not isinstance(other, TSeries):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e)):
            mono = "*".join(f"t{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            parts.append(f"({self.terms[e]})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def compose(coeffs: Sequence, inner: TSeries) -> TSeries:
    """sum_k coeffs[k] * inner**k for an inner series with zero constant term."""
    if inner.constant():
        raise ValueError("composition needs an inner series with zero constant term")
    ring = inner.ring
    out, power = ring.zero, ring.one
    for k, c in enumerate(coeffs):
        if k > ring.order:
            break
        if c:
            out = out + power * c
        power = power * inner
        if not power:
            break
    return out


def series_ops(a: TSeries, b: TSeries, op: str = "mul") -> TSeries:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(op)


# ---------------------------------------------------------------------------
# exact linear algebra

def rank(rows: list[list], field=QQ) -> int:
    """Exact rank.

    Rational matrices are cleared to integers and eliminated as sparse
    primitive rows; number-field matrices go through their rational regular
    representation; other exact fields use Bareiss elimination.
    """
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return 0
    nf = next((x.field for r in mat for x in r if isinstance(x, NFElement)), None)
    if nf is not None:
        # K-rank = (Q-rank of the regular representation) / [K : Q]
        return rank(_regular_rows(mat, nf)) // nf.degree
    if all(isinstance(x, (int, Fraction)) for r in mat for x in r):
        return _int_rank(mat)
    nrows, ncols = len(mat), len(mat[0])
    prev = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        p = mat[r][c]
        for i in range(r + 1, nrows):
            a = mat[i][c]
            row_i, row_r = mat[i], mat[r]
            mat[i] = [(p * row_i[j] - a * row_r[j]) / prev for j in range(ncols)]
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def _int_rank(mat: list[list]) -> int:
    """Rank of a rational matrix: rows cleared to integers, kept sparse and primitive."""
    rows = []
    for r in mat:
        den = lcm(*[Fraction(x).denominator for x in r])
        row = {j: int(Fraction(x) * den) for j, x in enumerate(r) if x}
        if row:
            rows.append(row)
    pivots = {}                     # column -> primitive row with that leading column
    for row in rows:
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                g = gcd(*row.values())
                pivots[c] = {j: v // g for j, v in row.items()} if g > 1 else row
                break
            p, a = prow[c], row[c]
            g = gcd(p, a)
            p, a = p // g, a // g
            new = {j: v * p for j, v in row.items()}
            for j, v in prow.items():
                w = new.get(j, 0) - a * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            if new:
                g = gcd(*new.values())
                if g > 1:
                    new = {j: v // g for j, v in new.items()}
            row = new
    return len(pivots)


def _regular_rows(mat: list[list], nf: NumberField) -> list[list]:
    """Rational matrix of the Q-linear map given by a matrix over the number field."""
    d = nf.degree
    powers = [nf.reduce([0] * k + [1]) for k in range(d)]
    cache = {}

    def block(x):
        x = nf(x) if not isinstance(x, NFElement) else x
        b = cache.get(x.coeffs)
        if b is None:
            cols = [(x * p).coeffs for p in powers]
            b = [[cols[k][r] if r < len(cols[k]) else 0 for k in range(d)] for r in range(d)]
            cache[x.coeffs] = b
        return b

    out = []
    for row in mat:
        blocks = [block(x) for x in row]
        for r in range(d):
            out.append([v for b in blocks for v in b[r]])
    return out


def nullspace_dim(rows: list[list], ncols: int, field=QQ) -> int:
    return ncols - rank(rows, field)


def _rref(rows: list[list], ncols: int):
    """Reduced row echelon form by Gauss-Jordan; returns (rows, pivot columns)."""
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / Fraction(mat[r][c]) if isinstance(mat[r][c], int) else 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                a = mat[i][c]
                mat[i] = [x - a * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def nullspace(rows: list[list], ncols: int, zero=Fraction(0), one=Fraction(1)) -> list[list]:
    """A basis of {v : rows . v = 0}."""
    red, pivots = _rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, pc in zip(red, pivots):
            v[pc] = zero - row[f]
        basis.append(v)
    return basis


def solve_linear(rows: list[list], rhs: list):
    """One solution of rows . v = rhs, or None when inconsistent."""
    ncols = len(rows[0]) if rows else 0
    red, pivots = _rref([list(r) + [b] for r, b in zip(rows, rhs)], ncols + 1)
    if ncols in pivots:
        return None
    v = [Fraction(0)] * ncols
    for row, pc in zip(red, pivots):
        v[pc] = row[ncols]
    return v


def inverse(matrix: list[list]) -> list[list]:
    """Exact inverse of a square matrix; ValueError when singular."""
    n = len(matrix)
    one = Fraction(1)
    aug = [list(matrix[i]) + [one if i == j else 0 * one for j in range(n)] for i in range(n)]
    red, pivots = _rref(aug, n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ValueError("singular matrix")
    return [row[n:] for row in red]


def multisets(n_labels: int, size: int):
    """Sorted tuples of ordinals with repetition (combinations_with_replacement)."""
    from itertools import combinations_with_replacement
    return combinations_with_replacement(range(n_labels), size)


__all__ = [
    "QQ", "RationalField", "FloatField", "NumberField", "NFElement", "nf_reduce",
    "IndexSet", "SparseTensor", "tensor_get", "tensor_set", "FULL", "LOWER", "NONE",
    "SeriesRing", "TSeries", "compose", "series_ops", "rank", "nullspace_dim",
    "format_rational", "as_fraction", "FieldError", "multisets", "nullspace", "inverse", "solve_linear",
]
