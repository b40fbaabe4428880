"""Concrete quantum Airy structures.

Every builder validates its output (relations, and the Lie closure check for
finite index sets) and raises :class:`ZooError` when the check fails.

Finite examples are transcribed from their operators with :func:`from_operators`,
which applies the sign conventions of the operator normal form mechanically.
Loop-space examples are built from residue pairings

    A^I_{J,K} = Res phi(xi*_I  dxi*_J  dxi*_K  theta)
    B^I_{J,K} = Res phi(xi*_I  dxi*_J  xi_K    theta)
    C^I_{J,K} = Res phi(xi*_I  xi_J    xi_K    theta)

for xi*_{(k,a)} = z^{pk+1}/(pk+1) e*_a and xi_{(k,a)} = (pk+1) z^{-pk-2} e_a,
with p = 2 for the Z2-symmetric families and p = 1 otherwise.  Two-point data
v (the regular part of xi) enters through the gauge action with u = v.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .airy_core import (AiryStructure, TruncationCertificate, index_sum_bound, structure_constants,
                        validate_relations)
from .kernel import QQ, IndexSet, NumberField, as_fraction, inverse, solve_linear
from .recursion import stable_pairs
from .transform import apply_gauge
from .weyl import lie_closure_check
from .young import support_constant

HALF = Fraction(1, 2)


class ZooError(ValueError):
    pass


def _q(x):
    return as_fraction(x) if isinstance(x, (int, str, float, Fraction)) else x


def _check(s: AiryStructure, closure: bool = True) -> AiryStructure:
    rep = validate_relations(s)
    if not rep.ok:
        raise ZooError(f"{s.name}: relations fail: {rep}")
    if closure and not s.graded:
        cl = lie_closure_check(s)
        if not cl.ok:
            raise ZooError(f"{s.name}: bracket closure fails: {cl.report}")
    return s


# ---------------------------------------------------------------------------
# finite structures from operators

def from_operators(ops: list, field=QQ, name: str = "", labels=None) -> AiryStructure:
    """Read tensors off operators  hbar d_i + (quadratic terms) + const*hbar.

    ``ops[i]`` is a dict with optional keys
    ``"xx": {(a, b): c}`` for c x_a x_b, ``"xd": {(a, b): c}`` for c hbar x_a d_b,
    ``"dd": {(a, b): c}`` for c hbar^2 d_a d_b and ``"h": c`` for c hbar.
    """
    n = len(ops)
    z = field.zero
    A = [[[z] * n for _ in range(n)] for _ in range(n)]
    B = [[[z] * n for _ in range(n)] for _ in range(n)]
    C = [[[z] * n for _ in range(n)] for _ in range(n)]
    D = [z] * n
    for i, op in enumerate(ops):
        for (a, b), c in op.get("xx", {}).items():
            c = field(c)
            if a == b:
                A[i][a][a] = A[i][a][a] - 2 * c
            else:
                A[i][a][b] = A[i][a][b] - c
                A[i][b][a] = A[i][b][a] - c
        for (a, b), c in op.get("xd", {}).items():
            B[i][a][b] = B[i][a][b] - field(c)
        for (a, b), c in op.get("dd", {}).items():
            c = field(c)
            if a == b:
                C[i][a][a] = C[i][a][a] - 2 * c
            else:
                C[i][a][b] = C[i][a][b] - c
                C[i][b][a] = C[i][b][a] - c
        if op.get("h"):
            D[i] = -field(op["h"])
    index = IndexSet(labels) if labels is not None else None
    return AiryStructure.from_dense(A, B, C, D, field=field, name=name, index=index)


def sl2_airy() -> AiryStructure:
    """Three operators on sl2 with generators labelled 1, 2, 3."""
    f = Fraction
    ops = [
        {"xd": {(0, 0): -3, (1, 1): -5, (2, 2): -1}, "h": f(-9, 2)},
        {"xd": {(2, 0): f(-8, 3), (0, 1): -3}, "dd": {(2, 2): f(-3, 80)}},
        {"xd": {(1, 0): f(-5, 3), (0, 2): -3}, "xx": {(2, 2): 60}},
    ]
    return _check(from_operators(ops, name="sl2", labels=[1, 2, 3]))


def dim1_airy(A=1, B=0, C=0, D=HALF) -> AiryStructure:
    s = AiryStructure.from_dense([[[A]]], [[[B]]], [[[C]]], [D], name="dim1")
    s.meta["params"] = {"A": str(A), "B": str(B), "C": str(C), "D": str(D)}
    return _check(s)


DIM2_CASES = ("Ia", "Ib", "Ic", "IIa", "IIb")


def dim2_family(case: str, alpha=2, beta=3, gamma=None, D0=0, t=0) -> AiryStructure:
    """Two-dimensional structures on the affine Lie algebra, [L0, L1] = -L1.

    In case IIb the relations force gamma = beta (the default); ``t`` switches
    on the one-parameter deformation available there.
    """
    a, b, t = _q(alpha), _q(beta), _q(t)
    g = b if gamma is None else _q(gamma)
    if case == "Ia":
        ops = [{"xx": {(0, 0): -a, (1, 1): b * a / 4}, "xd": {(0, 0): 2, (1, 1): 1}},
               {"xx": {(0, 1): a * b / 2}, "xd": {(1, 0): -b}}]
    elif case == "Ib":
        ops = [{"xx": {(0, 0): -a, (1, 1): -b}, "xd": {(0, 0): -2, (1, 1): -1}},
               {"xx": {(0, 1): -2 * b}, "xd": {(0, 1): -2}}]
    elif case == "Ic":
        ops = [{"xx": {(0, 0): -a}, "xd": {(0, 0): -(b + 1), (1, 1): -b}},
               {"xd": {(0, 1): -(b + 1)}}]
    elif case == "IIa":
        if not a:
            raise ZooError("case IIa needs alpha != 0")
        ops = [{"xx": {(0, 0): 4 / a, (1, 1): -b}, "xd": {(0, 0): 2, (1, 1): -1}},
               {"xx": {(0, 1): -2 * b}, "xd": {(1, 0): -a * b, (0, 1): -2}, "dd": {(0, 1): -a}}]
    elif case == "IIb":
        if not b:
            raise ZooError("case IIb needs beta != 0")
        if g != b and a:
            raise ZooError("case IIb is a quantum Airy structure only for gamma = beta")
        ops = [{"xx": {(0, 0): a * a / b}, "xd": {(0, 0): a, (1, 1): 1 - a}},
               {"xd": {(0, 1): -a}, "dd": {(0, 1): -g}}]
        if t:
            ops[0]["xd"][(0, 1)] = t * (1 - 2 * a)
            ops[1]["dd"][(1, 1)] = t * b
    else:
        raise ZooError(f"unknown dim-2 case {case!r}; expected one of {DIM2_CASES}")
    if t and case != "IIb":
        raise ZooError("the deformation parameter t only exists for case IIb")
    ops[0]["h"] = -_q(D0)
    s = from_operators(ops, name=f"dim2:{case}")
    s.meta["params"] = {"alpha": str(a), "beta": str(b), "gamma": str(g), "D0": str(D0), "t": str(t)}
    return _check(s)


LM2_FIELD = NumberField([-1, 3, -2, 2], "zeta")   # 2 zeta^3 - 2 zeta^2 + 3 zeta - 1


def dim3_lm2(alpha=Fraction(3, 7), D0=0) -> AiryStructure:
    """Three-dimensional structure over Q(zeta), 2 zeta^3 - 2 zeta^2 + 3 zeta - 1 = 0.

    Indices 0, 0', 1 (ordinals 0, 1, 2).  The Lie algebra has
    [L0, L0'] = 2 L0', [L0, L1] = -L1, [L0', L1] = 0.
    """
    K = LM2_FIELD
    z = K.gen()
    one = K.one
    al = K(_q(alpha))
    if not al:
        raise ZooError("alpha must be nonzero")
    w = -2 * z * z + z - 1
    q = 2 * z * z + 1
    f = Fraction
    A0 = [[f(2, 3) * (3 - 5 * z), f(4, 3) * w, 0], [f(4, 3) * w, f(2, 3) * (1 - z), 0], [0, 0, 2 * al]]
    A0p = [[f(4, 3) * w, f(2, 3) * (1 - z), 0], [f(2, 3) * (1 - z), 0, 0], [0, 0, -al * q]]
    A1 = [[0, 0, 2 * al], [0, 0, -al * q], [2 * al, -al * q, 0]]
    B0 = [[1 - 3 * z, 3 * w, 0], [3 * w, 3 * z + 1, 0], [0, 0, one]]
    B0p = [[3 * w, 3 * z - 1, 0], [1 - z, w, 0], [0, 0, -q]]
    B1 = [[0, 0, 2 * one], [0, 0, -q], [6 * al, 3 * al * q, 0]]
    Z = [[0] * 3 for _ in range(3)]
    C0p = [[6 * w, 6 * z, 0], [6 * z, -6 * w, 0], [0, 0, -q / al]]
    C1 = [[0, 0, 6 * one], [0, 0, 3 * q], [6 * one, 3 * q, 0]]
    D = [K(_q(D0)), HALF * (-10 * z * z + 4 * z - 5), K.zero]
    s = AiryStructure.from_dense([A0, A0p, A1], [B0, B0p, B1], [Z, C0p, C1], D, field=K,
                                 name="dim3_lm2", index=IndexSet(["0", "0'", "1"]))
    s.meta["params"] = {"alpha": str(alpha), "D0": str(D0)}
    return _check(s)


# ---------------------------------------------------------------------------
# abelian catalogs (C = 0, B^i read with rows = x slot)

def _zm(n):
    return [[0] * n for _ in range(n)]


def _diag(*v):
    m = _zm(len(v))
    for i, x in enumerate(v):
        m[i][i] = x
    return m


def _sym3(p):
    A = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    for i in range(3):
        for j in range(3):
            for k in range(3):
                key = "".join(str(x + 1) for x in sorted((i, j, k)))
                A[i][j][k] = p("a_" + key)
    return A


_R2, _R3 = (1, 2), (1, 2, 3)


def _ab(name, dim, params, zero=(), equal=(), build=None):
    return {"dim": dim, "params": params, "zero": set(zero), "equal": dict(equal), "build": build}


ABELIAN = {
    (2, 1): _ab("", 2, [f"b{i}_{j}" for i in _R2 for j in _R2], zero=["b1_2", "b2_1"],
                build=lambda p: ([_zm(2)] * 2, [_diag(p(f"b{i}_1"), p(f"b{i}_2")) for i in _R2])),
    (2, 2): _ab("", 2, ["alpha_1", "alpha_2"], zero=["alpha_2"],
                build=lambda p: ([_zm(2)] * 2, [[[p(f"alpha_{i}"), 0], [0, 0]] for i in _R2])),
    (2, 3): _ab("", 2, ["alpha", "beta", "gamma", "epsilon"],
                build=lambda p: ([[[p("alpha"), p("beta")], [p("beta"), p("gamma")]],
                                  [[p("beta"), p("gamma")], [p("gamma"), p("epsilon")]]], [_zm(2)] * 2)),
    (2, 4): _ab("", 2, ["alpha", "beta"], zero=["beta"],
                build=lambda p: ([[[p("alpha"), 0], [0, 0]], [[0, 0], [0, p("beta")]]],
                                 [[[0, 0], [-p("beta"), 0]], _zm(2)])),
    (2, 5): _ab("", 2, ["alpha_1", "alpha_2", "beta_1", "beta_2"], zero=["alpha_2"], equal={"alpha_1": "beta_2"},
                build=lambda p: ([_zm(2)] * 2, [[[p(f"alpha_{i}"), p(f"beta_{i}")], [0, p(f"alpha_{i}")]] for i in _R2])),
    (3, 1): _ab("", 3, [f"b{i}_{j}" for i in _R3 for j in _R3],
                zero=[f"b{i}_{j}" for i in _R3 for j in _R3 if i != j],
                build=lambda p: ([_zm(3)] * 3, [_diag(*[p(f"b{i}_{j}") for j in _R3]) for i in _R3])),
    (3, 2): _ab("", 3, ["alpha"] + [f"{x}_{i}" for x in ("beta", "gamma") for i in _R3],
                zero=["beta_2", "beta_3", "gamma_1", "gamma_2"],
                build=lambda p: ([_zm(3), _diag(0, p("alpha"), 0), _zm(3)],
                                 [_diag(p(f"beta_{i}"), 0, p(f"gamma_{i}")) for i in _R3])),
    (3, 3): _ab("", 3, ["alpha", "beta", "gamma", "epsilon"] + [f"kappa_{i}" for i in _R3],
                zero=["kappa_2", "kappa_3"],
                build=lambda p: ([_zm(3), [[0, 0, 0], [0, p("alpha"), p("beta")], [0, p("beta"), p("gamma")]],
                                  [[0, 0, 0], [0, p("beta"), p("gamma")], [0, p("gamma"), p("epsilon")]]],
                                 [_diag(p(f"kappa_{i}"), 0, 0) for i in _R3])),
    (3, 4): _ab("", 3, ["alpha_2", "gamma"] + [f"beta_{i}" for i in _R3], zero=["alpha_2", "beta_2", "beta_3"],
                build=lambda p: ([_zm(3), _diag(0, p("alpha_2"), 0), _diag(0, 0, p("gamma"))],
                                 [[[-p(f"beta_{i}"), 0, 0], [0, 0, 0], [0, -(p("alpha_2") if i == 2 else 0), 0]]
                                  for i in _R3])),
    (3, 5): _ab("", 3, [f"{x}_{i}" for x in ("alpha", "beta", "gamma") for i in _R3],
                zero=["alpha_2", "alpha_3", "beta_1", "beta_3", "gamma_1"], equal={"beta_2": "gamma_3"},
                build=lambda p: ([_zm(3)] * 3, [[[p(f"alpha_{i}"), 0, 0], [0, p(f"beta_{i}"), p(f"gamma_{i}")],
                                                 [0, 0, p(f"beta_{i}")]] for i in _R3])),
    (3, 6): _ab("", 3, ["alpha"] + [f"{x}_{i}" for x in ("beta", "gamma") for i in _R3],
                zero=["beta_1", "beta_3", "gamma_1"], equal={"beta_2": "gamma_3"},
                build=lambda p: ([_diag(p("alpha"), 0, 0), _zm(3), _zm(3)],
                                 [[[0, 0, 0], [0, p(f"beta_{i}"), p(f"gamma_{i}")], [0, 0, p(f"beta_{i}")]]
                                  for i in _R3])),
    (3, 7): _ab("", 3, ["a_111", "a_112", "a_113", "a_122", "a_123", "a_133", "a_222", "a_223", "a_233", "a_333"],
                build=lambda p: (_sym3(p), [_zm(3)] * 3)),
    (3, 8): _ab("", 3, ["alpha", "beta", "gamma", "epsilon", "kappa"], zero=["kappa"],
                build=lambda p: ([[[p("alpha"), p("beta"), 0], [p("beta"), p("gamma"), 0], [0, 0, 0]],
                                  [[p("beta"), p("gamma"), 0], [p("gamma"), p("epsilon"), 0], [0, 0, 0]],
                                  _diag(0, 0, p("kappa"))],
                                 [_zm(3), _zm(3), [[0, 0, -p("kappa")], [0, 0, 0], [0, 0, 0]]])),
    (3, 9): _ab("", 3, ["alpha", "beta", "gamma", "epsilon", "kappa"], zero=["kappa"],
                build=lambda p: ([[[p("alpha"), p("beta"), 0], [p("beta"), p("gamma"), 0], [0, 0, 0]],
                                  [[p("beta"), p("gamma"), 0], [p("gamma"), p("epsilon"), p("kappa")],
                                   [0, p("kappa"), 0]],
                                  _diag(0, p("kappa"), 0)],
                                 [_zm(3), [[0, 0, -p("kappa")], [0, 0, 0], [0, 0, 0]], _zm(3)])),
    (3, 10): _ab("", 3, ["alpha", "beta"], zero=["alpha", "beta"],
                 build=lambda p: ([_zm(3), [[0, 0, 0], [0, p("alpha"), p("beta")], [0, p("beta"), 0]],
                                   _diag(0, p("beta"), 0)],
                                  [_zm(3), [[0, -p("beta"), -p("alpha")], [0, 0, 0], [0, 0, 0]],
                                   [[0, 0, -p("beta")], [0, 0, 0], [0, 0, 0]]])),
    (3, 11): _ab("", 3, ["alpha", "beta", "gamma"], zero=["beta", "gamma"],
                 build=lambda p: ([_diag(p("alpha"), 0, 0),
                                   [[0, 0, 0], [0, p("beta"), p("beta") + p("gamma")],
                                    [0, p("beta") + p("gamma"), p("gamma")]],
                                   [[0, 0, 0], [0, p("beta") + p("gamma"), p("gamma")], [0, p("gamma"), -p("beta")]]],
                                  [_zm(3), [[0, -p("gamma"), -p("beta")], [0, 0, 0], [0, 0, 0]],
                                   [[0, p("beta"), -p("beta") - p("gamma")], [0, 0, 0], [0, 0, 0]]])),
    (3, 12): _ab("", 3, [f"{x}_{i}" for x in ("alpha", "beta", "gamma") for i in _R3],
                 zero=["alpha_1", "alpha_2", "alpha_3", "beta_3", "gamma_3"], equal={"gamma_1": "beta_2"},
                 build=lambda p: ([_zm(3)] * 3, [[[p(f"alpha_{i}"), 0, p(f"beta_{i}")],
                                                  [0, p(f"alpha_{i}"), p(f"gamma_{i}")],
                                                  [0, 0, p(f"alpha_{i}")]] for i in _R3])),
    (3, 13): _ab("", 3, [f"{x}_{i}" for x in ("alpha", "beta", "gamma") for i in _R3],
                 zero=["alpha_2", "alpha_3", "beta_3", "gamma_2"],
                 equal={"alpha_1": "gamma_3", "beta_2": "gamma_3"},
                 build=lambda p: ([_zm(3)] * 3, [[[p(f"alpha_{i}"), p(f"beta_{i}"), p(f"gamma_{i}")],
                                                  [0, p(f"alpha_{i}"), 0], [0, 0, p(f"alpha_{i}")]] for i in _R3])),
    (3, 14): _ab("", 3, [f"{x}_{i}" for x in ("alpha", "beta", "gamma") for i in _R3],
                 zero=["alpha_2", "alpha_3", "beta_3"],
                 equal={"alpha_1": "gamma_3", "beta_1": "gamma_2", "beta_2": "gamma_3"},
                 build=lambda p: ([_zm(3)] * 3, [[[p(f"alpha_{i}"), p(f"beta_{i}"), p(f"gamma_{i}")],
                                                  [0, p(f"alpha_{i}"), p(f"beta_{i}")],
                                                  [0, 0, p(f"alpha_{i}")]] for i in _R3])),
}


def abelian_default_params(dim: int, case: int) -> dict:
    """Generic parameter values on the locus where the listed matrices give a valid structure."""
    entry = ABELIAN[(dim, case)]
    out = {}
    for k, name in enumerate(entry["params"]):
        out[name] = Fraction(k + 2, k + 1) * (-1) ** k
    for name in entry["zero"]:
        out[name] = Fraction(0)
    for name, src in entry["equal"].items():
        out[name] = out[src]
    return out


def abelian_case(dim: int, case: int, params: dict | None = None, D=None) -> AiryStructure:
    """Abelian structure from the dimension-2/3 catalogs, C = 0.

    Parameters missing from ``params`` take the generic defaults; values off
    the valid locus (where B^i_{j,k} = B^j_{i,k} fails) are rejected.
    """
    if (dim, case) not in ABELIAN:
        raise ZooError(f"no abelian case {case} in dimension {dim}")
    entry = ABELIAN[(dim, case)]
    vals = abelian_default_params(dim, case)
    for k, v in (params or {}).items():
        if k not in vals:
            raise ZooError(f"unknown parameter {k!r} for abelian case {dim}-{case}")
        vals[k] = _q(v)
    A, B = entry["build"](lambda name: vals[name])
    n = dim
    Z = [_zm(n) for _ in range(n)]
    D = [HALF] * n if D is None else [_q(x) for x in D]
    A3 = [[[A[i][j][k] for k in range(n)] for j in range(n)] for i in range(n)]
    try:
        s = AiryStructure.from_dense(A3, B, Z, D, name=f"abelian:{dim}:{case}")
    except ValueError as e:
        raise ZooError(f"abelian case {dim}-{case}: {e}") from None
    s.meta["params"] = {k: str(v) for k, v in vals.items()}
    if not structure_constants(s).abelian:
        raise ZooError(f"abelian case {dim}-{case}: parameters give B^i_jk != B^j_ik: {vals}")
    return _check(s)


def rho1(s: AiryStructure, i: int) -> list:
    """The 2n x 2n matrix [[-B^i, A^i], [-C^i, (B^i)^T]] of the classical action."""
    A, B, C, _ = s.dense()
    n = s.dim
    z = s.field.zero
    m = [[z] * (2 * n) for _ in range(2 * n)]
    for a in range(n):
        for b in range(n):
            m[a][b] = -B[i][a][b]
            m[a][n + b] = A[i][a][b]
            m[n + a][b] = -C[i][a][b]
            m[n + a][n + b] = B[i][b][a]
    return m


# ---------------------------------------------------------------------------
# Frobenius algebras

class FrobeniusAlgebra:
    """Finite-dimensional associative algebra with a linear form phi.

    ``table[a][b]`` is the coordinate vector of e_a e_b; ``phi[a]`` = phi(e_a).
    """

    def __init__(self, table, phi, field=QQ, name: str = ""):
        self.field = field
        self.n = len(phi)
        self.table = [[[field(x) for x in table[a][b]] for b in range(self.n)] for a in range(self.n)]
        self.phi = [field(x) for x in phi]
        self.name = name
        self._check()
        G = self.gram()
        try:
            Ginv = inverse(G)
        except ValueError:
            raise ZooError("the pairing phi(ab) is degenerate") from None
        # e*_j = sum_b Ginv[b][j] e_b
        self.dual = [[Ginv[b][j] for b in range(self.n)] for j in range(self.n)]

    def _check(self):
        n = self.n
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    ea, eb, ec = self.basis(a), self.basis(b), self.basis(c)
                    if self.mul(self.mul(ea, eb), ec) != self.mul(ea, self.mul(eb, ec)):
                        raise ZooError(f"product is not associative at ({a}, {b}, {c})")

    @property
    def commutative(self) -> bool:
        return all(self.table[a][b] == self.table[b][a] for a in range(self.n) for b in range(self.n))

    def basis(self, a: int) -> list:
        v = [self.field.zero] * self.n
        v[a] = self.field.one
        return v

    def vec(self, x) -> list:
        """Coerce a scalar (times the unit) or a coordinate list to a vector."""
        if isinstance(x, (list, tuple)):
            if len(x) != self.n:
                raise ZooError("algebra element has the wrong length")
            return [self.field(_q(c)) for c in x]
        u = self.unit()
        if u is None:
            raise ZooError("scalar given but the algebra has no unit")
        c = self.field(_q(x))
        return [c * a for a in u]

    def mul(self, u, v) -> list:
        out = [self.field.zero] * self.n
        for a, x in enumerate(u):
            if not x:
                continue
            row = self.table[a]
            for b, y in enumerate(v):
                if y:
                    xy = x * y
                    for c, m in enumerate(row[b]):
                        if m:
                            out[c] = out[c] + xy * m
        return out

    def add(self, u, v) -> list:
        return [a + b for a, b in zip(u, v)]

    def scal(self, c, u) -> list:
        return [c * a for a in u]

    def form(self, u):
        return sum((p * x for p, x in zip(self.phi, u) if x), self.field.zero)

    def gram(self) -> list:
        return [[self.form(self.table[a][b]) for b in range(self.n)] for a in range(self.n)]

    def unit(self):
        n = self.n
        rows, rhs = [], []
        for b in range(n):
            for c in range(n):
                rows.append([self.table[a][b][c] for a in range(n)])
                rhs.append(self.field.one if b == c else self.field.zero)
        return solve_linear(rows, rhs)

    def H(self) -> list:
        """sum_a e_a e*_a."""
        out = [self.field.zero] * self.n
        for a in range(self.n):
            out = self.add(out, self.mul(self.basis(a), self.dual[a]))
        return out

    def is_central(self, x) -> bool:
        return all(self.mul(x, self.basis(a)) == self.mul(self.basis(a), x) for a in range(self.n))

    def trace_property(self) -> bool:
        """phi(ab) = phi(ba) for all basis elements."""
        G = self.gram()
        return all(G[a][b] == G[b][a] for a in range(self.n) for b in range(self.n))

    @classmethod
    def semisimple(cls, etas) -> FrobeniusAlgebra:
        """Orthogonal idempotents eps_r with phi(eps_r) = eta_r."""
        n = len(etas)
        table = [[[Fraction(int(a == b == c)) for c in range(n)] for b in range(n)] for a in range(n)]
        return cls(table, [_q(e) for e in etas], name=f"semisimple{n}")

    @classmethod
    def trivial(cls) -> FrobeniusAlgebra:
        return cls.semisimple([1])

    @classmethod
    def matrix_algebra(cls, n: int = 2) -> FrobeniusAlgebra:
        """n x n matrices, basis E_ij (ordinal n*i + j), phi = trace."""
        N = n * n
        table = [[[Fraction(0)] * N for _ in range(N)] for _ in range(N)]
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    table[n * i + j][n * j + k][n * i + k] = Fraction(1)
        phi = [Fraction(int(i == j)) for i in range(n) for j in range(n)]
        return cls(table, phi, name=f"M{n}")


def frobenius_airy(alg: FrobeniusAlgebra, thA=1, thB=1, thC=1, D=None) -> AiryStructure:
    """A = phi(e*_i e*_j e*_k thA), B = phi(e*_i e*_j e_k thB), C = phi(e*_i e_j e_k thC).

    Works in any basis through the dual basis e*; the default D is phi(e*_i H)/2.
    """
    if not alg.commutative:
        raise ZooError("frobenius_airy needs a commutative algebra; see nc_frobenius_airy")
    n = alg.n
    tA, tB, tC = alg.vec(thA), alg.vec(thB), alg.vec(thC)
    E = [alg.basis(a) for a in range(n)]
    Es = alg.dual
    A = [[[alg.form(alg.mul(alg.mul(Es[i], Es[j]), alg.mul(Es[k], tA))) for k in range(n)] for j in range(n)]
         for i in range(n)]
    B = [[[alg.form(alg.mul(alg.mul(Es[i], Es[j]), alg.mul(E[k], tB))) for k in range(n)] for j in range(n)]
         for i in range(n)]
    C = [[[alg.form(alg.mul(alg.mul(Es[i], E[j]), alg.mul(E[k], tC))) for k in range(n)] for j in range(n)]
         for i in range(n)]
    if D is None:
        H = alg.H()
        D = [HALF * alg.form(alg.mul(Es[i], H)) for i in range(n)]
    s = AiryStructure.from_dense(A, B, C, [_q(x) for x in D], field=alg.field, name=f"frobenius:{alg.name}")
    return _check(s)


def nc_frobenius_airy(alg: FrobeniusAlgebra, lamA=-1, lamB=1, lamC=1, D=None) -> AiryStructure:
    """A = phi(lamA {e*_j, e*_k} e*_i), B = phi(lamB [e*_i, e*_j] e_k), C = phi(lamC {e*_i, e_j} e_k).

    lamA, lamB, lamC must be central with lamB^2 + lamA lamC = 0.
    """
    if not alg.trace_property():
        raise ZooError("phi must vanish on commutators")
    lA, lB, lC = alg.vec(lamA), alg.vec(lamB), alg.vec(lamC)
    for nm, lam in (("lamA", lA), ("lamB", lB), ("lamC", lC)):
        if not alg.is_central(lam):
            raise ZooError(f"{nm} is not central")
    quad = alg.add(alg.mul(lB, lB), alg.mul(lA, lC))
    if any(quad):
        raise ZooError("constraint lamB^2 + lamA lamC = 0 fails")
    n = alg.n
    E = [alg.basis(a) for a in range(n)]
    Es = alg.dual
    m = alg.mul

    def anti(x, y):
        return alg.add(m(x, y), m(y, x))

    def comm(x, y):
        return alg.add(m(x, y), alg.scal(-1, m(y, x)))

    A = [[[alg.form(m(m(lA, anti(Es[j], Es[k])), Es[i])) for k in range(n)] for j in range(n)] for i in range(n)]
    B = [[[alg.form(m(m(lB, comm(Es[i], Es[j])), E[k])) for k in range(n)] for j in range(n)] for i in range(n)]
    C = [[[alg.form(m(m(lC, anti(Es[i], E[j])), E[k])) for k in range(n)] for j in range(n)] for i in range(n)]
    D = [alg.field.zero] * n if D is None else [_q(x) for x in D]
    s = AiryStructure.from_dense(A, B, C, D, field=alg.field, name=f"nc_frobenius:{alg.name}")
    return _check(s)


# ---------------------------------------------------------------------------
# loop spaces

def degree_cap(parity: int, s0: int, budget: int) -> tuple[int, str]:
    """Largest index degree that F_{g,n} can reach for 2g-2+n <= budget, and the rule used."""
    pairs = list(stable_pairs(budget))
    if parity == 2 and s0 == -1:
        return max(3 * g - 3 + n for g, n in pairs), "sum of indices <= 3g-3+n"
    if parity == 2:
        return max(0, max(g - 1 + s0 * (2 - n) for g, n in pairs)), f"sum of indices <= g-1+{s0}(2-n)"
    if s0 >= 0:
        return max(0, max(2 * g - 2 + s0 * (2 - n) for g, n in pairs)), f"sum of indices <= 2g-2+{s0}(2-n)"
    return budget, "F vanishes identically (lowest theta coefficient at z^-1)"


def support_bound(parity: int, s0: int, g: int, n: int):
    """Upper bound on the sum of indices of a nonzero F_{g,n}; None means F_{g,n} = 0."""
    b = index_sum_bound(parity, s0, g, n)
    return None if b < 0 and parity == 1 and s0 == -1 else b


def _theta_vectors(alg: FrobeniusAlgebra, theta: dict) -> dict:
    out = {}
    for s, v in theta.items():
        vec = alg.vec(v) if not isinstance(v, (list, tuple)) else alg.vec(list(v))
        if any(vec):
            if s < -1:
                raise ZooError("theta coefficients start at s = -1")
            out[int(s)] = vec
    if not out:
        raise ZooError("theta is zero")
    return out


def _residue_loop(alg: FrobeniusAlgebra, theta: dict, parity: int, M: int, name: str) -> AiryStructure:
    """v = 0 loop tensors for indices (k, a), k <= M."""
    nc = alg.n
    index = IndexSet.graded_range(M, nc)
    s = AiryStructure(index, alg.field, name)
    p = parity
    E = [alg.basis(a) for a in range(nc)]
    Es = alg.dual
    m, form = alg.mul, alg.form
    tA, tB, tC = {}, {}, {}
    for t, th in theta.items():
        tA[t] = [[[form(m(m(Es[a], Es[b]), m(Es[c], th))) for c in range(nc)] for b in range(nc)] for a in range(nc)]
        tB[t] = [[[form(m(m(Es[a], Es[b]), m(E[c], th))) for c in range(nc)] for b in range(nc)] for a in range(nc)]
        tC[t] = [[[form(m(m(Es[a], E[b]), m(E[c], th))) for c in range(nc)] for b in range(nc)] for a in range(nc)]

    def o(k, a):
        return k * nc + a

    # A: p(i+j+k+t) = -2 - p + ... only i = j = k = 0 and t = -1 when p = 2
    if p == 2 and -1 in theta:
        for a in range(nc):
            for b in range(nc):
                for c in range(nc):
                    v = tA[-1][a][b][c]
                    if v:
                        s.A[(o(0, a), o(0, b), o(0, c))] = v
    # B: k = i + j + t
    for i in range(M + 1):
        for j in range(M + 1):
            for t in theta:
                k = i + j + t
                if k < 0 or k > M:
                    continue
                w = Fraction(p * k + 1, p * i + 1)
                T = tB[t]
                for a in range(nc):
                    for b in range(nc):
                        for c in range(nc):
                            if T[a][b][c]:
                                s.B[(o(i, a), o(j, b), o(k, c))] = w * T[a][b][c]
    # C: t = j + k - i + 2/p
    shift = 1 if p == 2 else 2
    for i in range(M + 1):
        for j in range(M + 1):
            for t in theta:
                k = i + t - j - shift
                if k < j or k > M:
                    continue
                w = Fraction((p * j + 1) * (p * k + 1), p * i + 1)
                T = tC[t]
                for a in range(nc):
                    for b in range(nc):
                        for c in range(nc):
                            if T[a][b][c] and (j < k or b <= c):
                                s.C[(o(i, a), o(j, b), o(k, c))] = w * T[a][b][c]
    return s


def _v_dict(v, nc: int, M: int) -> dict:
    """Two-point data {((k, a), (l, b)): value} (or {(k, l): value} when nc = 1) -> ordinal dict."""
    out = {}
    for key, val in (v or {}).items():
        if not val:
            continue
        x, y = key
        if nc == 1 and not isinstance(x, tuple):
            x, y = (x, 0), (y, 0)
        (k, a), (l, b) = x, y
        if k > M or l > M:
            continue
        for p, q in (((k, a), (l, b)), ((l, b), (k, a))):
            o = (p[0] * nc + p[1], q[0] * nc + q[1])
            if o in out and out[o] != val:
                raise ZooError(f"two-point data is not symmetric at {key}")
            out[o] = _q(val)
    return out


def _loop_build(alg, theta, parity, v, D, budget, name, default_D):
    theta = _theta_vectors(alg, theta)
    s0, smax = min(theta), max(theta)
    if budget < 1:
        raise ZooError("empty budget")
    K, rule = degree_cap(parity, s0, budget)
    M = 2 * K + max(smax, 2) + 1
    base = _residue_loop(alg, theta, parity, M, name)
    nc = alg.n
    if D is None:
        D = default_D(theta, s0)
    # D given as {(k, a): value}, {k: value} (one color) or a flat list over ordinals
    if isinstance(D, dict):
        for key, val in D.items():
            k, a = key if isinstance(key, tuple) else (key, 0)
            if val:
                if k > M:
                    raise ZooError(f"D^{key} lies beyond the stored degree {M}")
                base.D[(k * nc + a,)] = alg.field(_q(val))
    else:
        for o, val in enumerate(D):
            if val:
                if o >= len(base.index):
                    raise ZooError("D is longer than the stored index range")
                base.D[(o,)] = alg.field(_q(val))
    out = apply_gauge(base, _v_dict(v, nc, M), name)
    out.certificate = TruncationCertificate(rule, K, K, (budget,), support_constant(out),
                                            f"parity {parity}, lowest theta power s0 = {s0}", parity, s0)
    out.meta.update({"parity": parity, "s0": s0, "colors": nc, "stored_degree": M})
    return _check(out)


def _z2_default_D(alg):
    def make(theta, s0):
        H = alg.H()
        out = {}
        for a in range(alg.n):
            es = alg.dual[a]
            if 0 in theta:
                out[(0, a)] = alg.form(alg.mul(alg.mul(es, H), theta[0])) / 8
            if -1 in theta:
                out[(1, a)] = alg.form(alg.mul(alg.mul(es, H), theta[-1])) / 24
        return out
    return make


def _zero_D(theta, s0):
    return {}


def _scalar_theta(t: dict) -> dict:
    return {int(k): _q(v) for k, v in t.items()}


def loop_airy(t: dict, u: dict | None = None, D=None, budget: int = 6) -> AiryStructure:
    """Loop structure on C[[z]] with theta = sum_r t_r z^r (r >= -1), no Z2 symmetry.

    ``u`` is two-point data {(k, l): value}; ``D`` is {k: value} (default 0).
    """
    return _loop_build(FrobeniusAlgebra.trivial(), _scalar_theta(t), 1, u, D, budget, "loop", _zero_D)


def z2_loop_airy(t: dict, u: dict | None = None, D=None, budget: int = 6) -> AiryStructure:
    """Z2-symmetric loop structure, theta = sum_s t_s z^(2s) (s >= -1).

    The default D is t_0/8 at index 0 and t_-1/24 at index 1, followed by the gauge shift from u.
    """
    alg = FrobeniusAlgebra.trivial()
    return _loop_build(alg, _scalar_theta(t), 2, u, D, budget, "z2_loop", _z2_default_D(alg))


def _color_theta(alg, theta: dict) -> dict:
    return {int(k): alg.vec(v) for k, v in theta.items()}


def frobenius_loop_airy(alg: FrobeniusAlgebra, theta: dict, v: dict | None = None, D=None,
                        budget: int = 6) -> AiryStructure:
    """Colored loop structure: theta = sum_r theta_r z^r with theta_r in the algebra."""
    if not alg.commutative:
        raise ZooError("loop structures need a commutative algebra")
    return _loop_build(alg, _color_theta(alg, theta), 1, v, D, budget, f"loop:{alg.name}", _zero_D)


def z2_frobenius_loop_airy(alg: FrobeniusAlgebra, theta: dict, v: dict | None = None, D=None,
                           budget: int = 6) -> AiryStructure:
    """Colored Z2 loop structure: theta = sum_s theta_s z^(2s)."""
    if not alg.commutative:
        raise ZooError("loop structures need a commutative algebra")
    return _loop_build(alg, _color_theta(alg, theta), 2, v, D, budget, f"z2_loop:{alg.name}",
                       _z2_default_D(alg))


@dataclass
class LocalCurveData:
    """Local data of a spectral curve near its special points.

    ``t[r][m]``: expansion coefficients of theta near point r (m >= -1);
    ``phi02[(r1, r2, l1, l2)]``: regular two-point coefficients;
    ``w11[(r, k)]``: coefficients of the genus-one one-point form (branch-free case).
    """

    labels: list
    t: dict
    phi02: dict = field(default_factory=dict)
    w11: dict = field(default_factory=dict)

    def phi(self, r1, r2, l1, l2):
        v = self.phi02.get((r1, r2, l1, l2))
        if v is None:
            v = self.phi02.get((r2, r1, l2, l1), 0)
        return v

    def theta(self, alg) -> dict:
        nc = len(self.labels)
        powers = sorted({m for r in self.labels for m in self.t.get(r, {})})
        out = {}
        for m in powers:
            out[m] = [_q(self.t.get(r, {}).get(m, 0)) for r in self.labels]
        return out

    def two_point(self, step: int, M: int) -> dict:
        out = {}
        for a, r1 in enumerate(self.labels):
            for b, r2 in enumerate(self.labels):
                for k in range(M + 1):
                    for l in range(M + 1):
                        v = self.phi(r1, r2, step * k, step * l)
                        if v:
                            out[((k, a), (l, b))] = v
        return out


def spectral_curve_airy(data: LocalCurveData, budget: int = 6) -> AiryStructure:
    """Structure attached to simple branch points: colored Z2 loop with two-point data phi02 at even orders."""
    for r in data.labels:
        if not data.t.get(r, {}).get(-1):
            raise ZooError(f"degenerate ramification at {r!r}: t_-1 = 0")
    alg = FrobeniusAlgebra.semisimple([1] * len(data.labels))
    theta = data.theta(alg)
    K, _ = degree_cap(2, -1, budget)
    M = 2 * K + max(max(theta), 2) + 1
    s = z2_frobenius_loop_airy(alg, theta, data.two_point(2, M), None, budget)
    s.name = "spectral_curve"
    return s


def branchfree_airy(data: LocalCurveData, budget: int = 6) -> AiryStructure:
    """Structure attached to unramified points: colored loop with two-point data and D = W11."""
    if not data.w11:
        raise ZooError("branch-free structure needs the genus-one one-point data w11")
    alg = FrobeniusAlgebra.semisimple([1] * len(data.labels))
    theta = data.theta(alg)
    s0 = min(theta)
    K, _ = degree_cap(1, s0, budget)
    M = 2 * K + max(max(theta), 2) + 1
    D = {}
    for (r, k), val in data.w11.items():
        D[(k, data.labels.index(r))] = val
    s = frobenius_loop_airy(alg, theta, data.two_point(1, M), D, budget)
    s.name = "branchfree"
    return s


def loop_structure_constants(t: dict, max_index: int) -> dict:
    """f^k_{ij} = B^i_{j,k} - B^j_{i,k} of the plain loop structure, for i, j <= max_index."""
    theta = _theta_vectors(FrobeniusAlgebra.trivial(), _scalar_theta(t))
    base = _residue_loop(FrobeniusAlgebra.trivial(), theta, 1, 2 * max_index + max(theta) + 1, "loop")
    f = {}
    for (i, j, k), v in base.B.items():
        if i <= max_index and j <= max_index and i != j:
            f[(i, j, k)] = f.get((i, j, k), 0) + v
            f[(j, i, k)] = f.get((j, i, k), 0) - v
    return {key: v for key, v in f.items() if v}


@dataclass
class WittReport:
    window: tuple
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def virasoro_basis_check(t: dict, window=(0, 4)) -> WittReport:
    """Check [Lh_m, Lh_n] = (m - n) Lh_{m+n} for Lh_n = -sum_k tau_k (i + 1) L_i, i = n + k - r0.

    tau is the expansion of z^r0 / theta(z); L are the loop operators and the
    bracket is read from their structure constants.
    """
    t = {int(k): _q(v) for k, v in t.items() if v}
    r0 = min(t)
    lo, hi = window
    if lo < r0:
        raise ZooError(f"window must start at r0 = {r0} or later")
    top = 2 * hi - r0 + 2          # largest operator index whose coefficient is compared
    # tau: 1 / sum_r t_r z^(r - r0)
    denom = [t.get(r0 + k, Fraction(0)) for k in range(top + 2)]
    tau = [1 / denom[0]]
    for k in range(1, top + 2):
        tau.append(-sum(denom[j] * tau[k - j] for j in range(1, k + 1)) / denom[0])
    f = loop_structure_constants(t, top + 2)
    by_pair = {}
    for (i, j, k), v in f.items():
        by_pair.setdefault((i, j), []).append((k, v))

    def lhat(nn):
        """{operator index: coefficient} of Lh_n in the L basis, truncated at top + 2."""
        out = {}
        for k, tk in enumerate(tau):
            idx = nn + k - r0
            if 0 <= idx <= top + 2 and tk:
                out[idx] = out.get(idx, 0) - tk * (idx + 1)
        return out

    rep = WittReport(tuple(window))
    for mm in range(lo, hi + 1):
        for nn in range(lo, hi + 1):
            if not lo <= mm + nn <= hi:
                continue
            lhs = {}
            for i, a in lhat(mm).items():
                for j, b in lhat(nn).items():
                    for k, v in by_pair.get((i, j), ()):
                        lhs[k] = lhs.get(k, 0) + a * b * v
            rhs = {k: (mm - nn) * v for k, v in lhat(mm + nn).items()}
            # operator indices below the truncation horizon are complete on both sides
            horizon = top - (hi - lo)
            for k in range(0, horizon + 1):
                rep.checked += 1
                d = lhs.get(k, 0) - rhs.get(k, 0)
                if d:
                    rep.failures.append(((mm, nn), k, d))
    return rep


# ---------------------------------------------------------------------------
# catalog

def _num(x):
    return _q(x) if isinstance(x, str) else x


def _tdict(params, prefix="t"):
    out = {}
    for k, v in params.items():
        if k.startswith(prefix) and k[len(prefix):].lstrip("-").isdigit():
            out[int(k[len(prefix):])] = _num(v)
    return out


def _udict(params):
    out = {}
    for k, v in params.items():
        if k.startswith("u") and "_" in k:
            a, b = k[1:].split("_")
            out[(int(a), int(b))] = _num(v)
    return out


def _ddict(params):
    out = {}
    for k, v in params.items():
        if k.startswith("D") and k[1:].isdigit():
            out[int(k[1:])] = _num(v)
    return out or None


def _build_abelian(name, params):
    _, dim, case = name.split(":")
    P = {k: v for k, v in params.items() if not k.startswith("D")}
    return abelian_case(int(dim), int(case), P)


def _curve_example(params):
    """Two branch points with rational local data."""
    t = {"a": {-1: _num(params.get("ta", 1)), 0: Fraction(1, 2)}, "b": {-1: _num(params.get("tb", 2)), 1: 3}}
    phi = {("a", "a", 0, 0): Fraction(1, 3), ("a", "b", 0, 0): Fraction(1, 5), ("a", "b", 2, 0): -1,
           ("b", "b", 0, 2): Fraction(1, 7)}
    return LocalCurveData(["a", "b"], t, phi)


def _branchfree_example(params):
    t = {"a": {0: 1, 1: Fraction(1, 2)}, "b": {0: 2}}
    phi = {("a", "a", 0, 0): Fraction(1, 3), ("a", "b", 0, 1): Fraction(1, 5)}
    return LocalCurveData(["a", "b"], t, phi, {("a", 0): Fraction(1, 4), ("b", 0): Fraction(-1, 2)})


CATALOG = {
    "sl2": (lambda p: sl2_airy(), "sl2 structure on three generators"),
    "dim1": (lambda p: dim1_airy(*(_num(p.get(k, d)) for k, d in (("A", 1), ("B", 0), ("C", 0), ("D", HALF)))),
             "one-dimensional structure, parameters A, B, C, D"),
    "dim3_lm2": (lambda p: dim3_lm2(_num(p.get("alpha", Fraction(3, 7))), _num(p.get("D0", 0))),
                 "three-dimensional structure over Q(zeta), parameters alpha, D0"),
    "tqft": (lambda p: frobenius_airy(FrobeniusAlgebra.semisimple([_num(x) for x in str(p.get("eta", "1,2")).split(",")])),
             "semisimple Frobenius algebra, thetas = 1, D = H/2; parameter eta = comma list"),
    "nc_frobenius": (lambda p: nc_frobenius_airy(FrobeniusAlgebra.matrix_algebra(2)),
                     "2x2 matrices with trace form, lamA = -1, lamB = lamC = 1"),
    "loop": (lambda p: loop_airy(_tdict(p) or {0: 1, 1: 2}, _udict(p), _ddict(p) or {0: 1},
                                 int(p.get("budget", 6))),
             "loop structure, theta = sum t_r z^r; parameters t<r>, u<k>_<l>, D<k>, budget"),
    "z2loop": (lambda p: z2_loop_airy(_tdict(p) or {-1: 1}, _udict(p), _ddict(p), int(p.get("budget", 6))),
               "Z2 loop structure, theta = sum t_s z^(2s); parameters t<s>, u<k>_<l>, D<k>, budget"),
    "spectral": (lambda p: spectral_curve_airy(_curve_example(p), int(p.get("budget", 4))),
                 "two simple branch points with sample local data"),
    "branchfree": (lambda p: branchfree_airy(_branchfree_example(p), int(p.get("budget", 4))),
                   "two unramified points with sample local data"),
}
for _c in DIM2_CASES:
    CATALOG[f"dim2:{_c}"] = ((lambda c: lambda p: dim2_family(
        c, *(_num(p.get(k, d)) for k, d in (("alpha", 2), ("beta", 3), ("gamma", None), ("D0", 0), ("t", 0)))))(_c),
        f"dim-2 case {_c}, parameters alpha, beta, gamma, D0 (t for IIb)")
for (_d, _k) in ABELIAN:
    CATALOG[f"abelian:{_d}:{_k}"] = ((lambda nm: lambda p: _build_abelian(nm, p))(f"abelian:{_d}:{_k}"),
                                     f"abelian catalog, dimension {_d}, case {_k}")


def catalog() -> list:
    return sorted(CATALOG)


def describe(name: str) -> str:
    return CATALOG[name][1]


def build(name: str, params: dict | None = None) -> AiryStructure:
    if name not in CATALOG:
        raise ZooError(f"unknown zoo structure {name!r}")
    return CATALOG[name][0](params or {})


def finite_examples() -> list:
    """Sample finite-dimensional structures, one per family (and per case)."""
    out = [sl2_airy(), dim1_airy(2, 3, 5, 7), dim3_lm2()]
    for c in DIM2_CASES:
        out.append(dim2_family(c, Fraction(2), Fraction(-3, 2), None, Fraction(1, 4)))
    out.append(dim2_family("IIb", Fraction(2), Fraction(-3, 2), None, Fraction(1, 4), t=Fraction(7, 5)))
    for d, k in sorted(ABELIAN):
        out.append(abelian_case(d, k))
    out.append(frobenius_airy(FrobeniusAlgebra.semisimple([1, 2]), 2, 3, 5))
    out.append(nc_frobenius_airy(FrobeniusAlgebra.matrix_algebra(2)))
    return out


__all__ = ["ZooError", "from_operators", "sl2_airy", "dim1_airy", "dim2_family", "DIM2_CASES", "dim3_lm2",
           "LM2_FIELD", "ABELIAN", "abelian_case", "abelian_default_params", "rho1", "FrobeniusAlgebra",
           "frobenius_airy", "nc_frobenius_airy", "degree_cap", "support_bound", "loop_airy", "z2_loop_airy",
           "frobenius_loop_airy", "z2_frobenius_loop_airy", "LocalCurveData", "spectral_curve_airy",
           "branchfree_airy", "loop_structure_constants", "virasoro_basis_check", "WittReport", "catalog",
           "describe", "build", "finite_examples"]
