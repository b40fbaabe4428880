"""Named cross-check suites, one per acceptance criterion.

Each suite returns a :class:`SuiteResult` with a one-line verdict and the
failing cases.  Random parameters come from ``random.Random(seed)`` so runs
are reproducible; every comparison is exact.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

from . import closed_form as cf
from . import recursion, young, zoo
from .airy_core import structure_constants, validate_relations
from .cohomology import ce_dims, hs_oracle_dims
from .transform import gauge_u, translation_consistency
from .weyl import lie_closure_check

BETA_TABLE = [5, 60, 1105, 27120, 828250, 30220800, 1282031525, 61999046400, 3366961243750,
              202903221120000, 13437880555850250, 970217083619328000, 75849500508999712500,
              6383483988812390400000]

COHOMOLOGY_TABLE = {"Ia": (1, 1, 0), "Ib": (1, 1, 0), "Ic": (2, 2, 0), "IIa": (1, 1, 0), "IIb": (2, 2, 0)}
DIM3_COHOMOLOGY = (1, 2, 1)


@dataclass
class SuiteResult:
    number: int
    name: str
    ok: bool = True
    summary: str = ""
    failures: list = field(default_factory=list)
    seconds: float = 0.0
    rows: list = field(default_factory=list)

    def fail(self, msg):
        self.ok = False
        self.failures.append(msg)

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.number:2d} {self.name}: {self.summary} ({self.seconds:.2f} s)"

    def report(self, limit: int = 10) -> str:
        out = [self.line()]
        out += [f"    {m}" for m in self.failures[:limit]]
        if len(self.failures) > limit:
            out.append(f"    ... {len(self.failures) - limit} more")
        return "\n".join(out)


def rand_q(rng, lo=-9, hi=9, nonzero=True):
    while True:
        q = Fraction(rng.randint(lo, hi), rng.randint(1, 9))
        if q or not nonzero:
            return q


def _unpruned(s):
    s.meta["prune_support"] = False
    recursion.clear_cache(s)
    return s


def graded_examples():
    """Loop-space structures covering every family and both parities."""
    alg = zoo.FrobeniusAlgebra.semisimple([1, Fraction(1, 2)])
    return [
        zoo.loop_airy({0: 1, 1: 2}, {(0, 0): 1, (0, 2): 3}, {0: 1}),
        zoo.loop_airy({1: 1, 2: 2}, None, {0: 1, 1: Fraction(1, 2)}),
        zoo.loop_airy({-1: 1, 0: 2}),
        zoo.z2_loop_airy({-1: 1}),
        zoo.z2_loop_airy({-1: 3, 0: 2, 1: Fraction(-1, 2)}, {(0, 0): 5, (0, 1): Fraction(1, 3), (1, 1): 2}),
        zoo.z2_loop_airy({0: 2, 1: 1}),
        zoo.z2_loop_airy({1: 2, 2: 1}, D={0: 1}),
        zoo.z2_frobenius_loop_airy(alg, {-1: [1, 2], 0: [Fraction(1, 3), 0]}, {((0, 0), (0, 1)): Fraction(1, 2)}),
        zoo.build("spectral", {"budget": 6}),
        zoo.build("branchfree", {"budget": 6}),
    ]


def _timed(number, name, body) -> SuiteResult:
    res = SuiteResult(number, name)
    t0 = time.perf_counter()
    body(res)
    res.seconds = time.perf_counter() - t0
    return res


# ---------------------------------------------------------------------------
# 1. dimension-one polynomial table

def suite_whittaker(seed=1) -> SuiteResult:
    def body(res):
        rng = random.Random(seed)
        table = cf.whittaker_table()
        matched = set(range(len(table)))
        t0 = time.perf_counter()
        for _ in range(3):
            a, b, c, d = (rand_q(rng) for _ in range(4))
            s = zoo.dim1_airy(a, b, c, d)
            for pos, (g, n, poly) in enumerate(table):
                got, want = recursion.fgn(s, g, [0] * n), poly(a, b, c, d)
                if got != want:
                    matched.discard(pos)
                    res.fail(f"F_{g},{n} at {(str(a), str(b), str(c), str(d))}: recursion {got}, table {want}")
        elapsed = time.perf_counter() - t0
        if elapsed >= 1:
            res.fail(f"runtime {elapsed:.2f} s >= 1 s")
        res.summary = f"{len(matched)}/{len(table)} polynomials matched at 3 rational points"
    return _timed(1, "whittaker", body)


# ---------------------------------------------------------------------------
# 2. beta sequence and the Airy case series

def suite_beta(g_max=6) -> SuiteResult:
    def body(res):
        beta = cf.bairy_beta(15)[1:]
        for g, (got, want) in enumerate(zip(beta, BETA_TABLE), start=2):
            if got != want:
                res.fail(f"beta_{g}: {got} != {want}")
        s = zoo.dim1_airy(1, 1, 1, Fraction(1, 2))
        series = cf.airy_case_series(g_max, 1)
        for g in range(1, g_max + 1):
            got, want = recursion.fgn(s, g, [0]), series[(g, 1)]
            if got != want:
                res.fail(f"F_{g},1: recursion {got}, series {want}")
        res.summary = f"beta table matched through g = 15; F_g,1 vs series for g <= {g_max}"
    res = _timed(2, "beta", body)
    if res.seconds >= 5:
        res.fail(f"runtime {res.seconds:.2f} s >= 5 s")
    return res


# ---------------------------------------------------------------------------
# 3. A = B = 0 tree counts

def suite_trees(g_tree=8, g_rec=6) -> SuiteResult:
    def body(res):
        for g in range(1, g_tree + 1):
            if cf.tree_sum(g) != cf.tree_count(g):
                res.fail(f"g = {g}: tree sum {cf.tree_sum(g)} != {cf.tree_count(g)}")
        s = zoo.dim1_airy(0, 0, 1, 1)
        for g in range(1, g_rec + 1):
            got, want = recursion.fgn(s, g, [0]), cf.tree_count(g)
            if got != want:
                res.fail(f"F_{g},1 = {got} != {want}")
            if cf.abequal0_fg(s, g)[0] != got:
                res.fail(f"tree weight f_{g} != F_{g},1")
        res.summary = f"tree sums for g <= {g_tree}, recursion for g <= {g_rec}"
    return _timed(3, "trees", body)


# ---------------------------------------------------------------------------
# 4. relations versus operator brackets

def _perturbations(s, rng, count, max_tries=2000):
    """Single-entry perturbations of A, B or C that break at least one of the two checks."""
    n = s.dim
    tries = 0
    while count and tries < max_tries:
        tries += 1
        p = s.copy(s.name + "+perturbed")
        t = getattr(p, rng.choice("ABC"))
        key = t.canonical(tuple(rng.randrange(n) for _ in range(3)))
        t.set(key, t[key] + s.field(rand_q(rng)))
        p.touched()
        rel, clo = validate_relations(p).ok, lie_closure_check(p).ok
        if rel and clo:
            continue
        count -= 1
        yield key, rel, clo


def _bracket_pattern(s, expected) -> list:
    f = structure_constants(s).f
    pos = s.index.position
    want = {}
    for (i, j), rhs in expected.items():
        for k, v in rhs.items():
            want[(pos(i), pos(j), pos(k))] = s.field(v)
            want[(pos(j), pos(i), pos(k))] = s.field(-v)
    return [] if f == want else [f"structure constants {sorted(f.items())} != {sorted(want.items())}"]


def suite_relations(seed=4, per_structure=50) -> SuiteResult:
    def body(res):
        rng = random.Random(seed)
        structures = zoo.finite_examples()
        perturbed = 0
        for s in structures:
            rep, clo = validate_relations(s), lie_closure_check(s)
            if not rep.ok:
                res.fail(f"{s.name}: relations fail: {rep}")
            if not clo.ok:
                res.fail(f"{s.name}: closure fails at {clo.failure}")
            if s.dim < 2:
                continue        # no relations to break in dimension one
            found = 0
            for key, rel, c in _perturbations(s, rng, per_structure):
                found += 1
                if rel or c:
                    res.fail(f"{s.name} perturbed at {key}: relations {'OK' if rel else 'fail'}, "
                             f"closure {'OK' if c else 'fail'}")
            perturbed += found
            if found < per_structure:
                res.fail(f"{s.name}: only {found} breaking perturbations found")
        for s in structures:
            if s.name.startswith("dim2:"):
                res.failures += [f"{s.name}: {m}" for m in _bracket_pattern(s, {(0, 1): {1: -1}})]
        res.failures += ["sl2: " + m for m in _bracket_pattern(
            zoo.sl2_airy(), {(1, 2): {2: 2}, (1, 3): {3: -2}, (2, 3): {1: 1}})]
        res.failures += ["dim3_lm2: " + m for m in _bracket_pattern(
            zoo.dim3_lm2(), {("0", "1"): {"1": -1}, ("0", "0'"): {"0'": 2}, ("0'", "1"): {}})]
        res.ok = not res.failures
        res.summary = f"{len(structures)} structures valid; {perturbed} perturbations rejected by both routes"
    return _timed(4, "relations", body)


# ---------------------------------------------------------------------------
# 5. symmetry of F_{g,n}

def suite_symmetry(budget=6) -> SuiteResult:
    def body(res):
        checked = 0
        structures = zoo.finite_examples() + graded_examples()
        for s in structures:
            rep = recursion.check_symmetry(s, budget)
            checked += rep.checked
            if not rep.ok:
                res.fail(f"{s.name}: {rep}")
        res.summary = f"{len(structures)} structures symmetric up to 2g-2+n = {budget} ({checked} comparisons)"
    return _timed(5, "symmetry", body)


# ---------------------------------------------------------------------------
# 6. vanishing and support bounds on loop structures

def suite_vanishing(budget=6, seed=6) -> SuiteResult:
    def body(res):
        rng = random.Random(seed)
        s = _unpruned(zoo.loop_airy({-1: rand_q(rng), 0: rand_q(rng), 1: rand_q(rng)}, budget=budget))
        entries = 0
        for g, n in recursion.stable_pairs(budget):
            nz = len(recursion.free_energy(s, g, n))
            if nz:
                res.fail(f"{s.name}: F_{g},{n} has {nz} nonzero entries")
        z2 = [zoo.z2_loop_airy({-1: rand_q(rng), 0: rand_q(rng), 1: rand_q(rng)},
                               {(0, 0): rand_q(rng), (0, 1): rand_q(rng)}, budget=budget),
              zoo.z2_loop_airy({0: rand_q(rng), 1: rand_q(rng)}, budget=budget),
              zoo.z2_loop_airy({1: rand_q(rng), 2: rand_q(rng)}, D={0: rand_q(rng)}, budget=budget)]
        for s in z2:
            _unpruned(s)
            cert = s.certificate
            for g, n in recursion.stable_pairs(budget):
                bound = cert.entry_bound(g, n)
                for idx, v in recursion.free_energy(s, g, n).items():
                    entries += 1
                    if sum(s.index.degree(i) for i in idx) > bound:
                        res.fail(f"{s.name} (s0 = {cert.s0}): F_{g},{n}{idx} = {v} beyond degree {bound}")
        res.summary = f"t_-1 loop vanishes; {entries} Z2 entries inside the support bounds"
    return _timed(6, "vanishing", body)


# ---------------------------------------------------------------------------
# 7. gauge and translation covariance

def suite_covariance(seed=7, gauges=20, order=3, budget=3) -> SuiteResult:
    def body(res):
        rng = random.Random(seed)
        structures = zoo.finite_examples()
        for s in structures:
            n = s.dim
            for _ in range(gauges):
                u = [[0] * n for _ in range(n)]
                for a in range(n):
                    for b in range(a, n):
                        if rng.random() < 0.6:
                            u[a][b] = u[b][a] = rand_q(rng)
                rep = validate_relations(gauge_u(s, u, validate=False))
                if not rep.ok:
                    res.fail(f"{s.name}: gauge {u} breaks {rep.first()}")
            rep = translation_consistency(s, order, budget)
            if not rep.ok:
                res.fail(f"{s.name}: {rep}")
        res.summary = (f"{gauges} gauges per structure valid; translation to order {order}, "
                       f"budget {budget} on {len(structures)} structures")
    return _timed(7, "covariance", body)


# ---------------------------------------------------------------------------
# 8. C = 0 closed form

def cequal0_samples(rng):
    """Five random valid structures with C = 0 of dimension 1 to 3."""
    q = lambda: rand_q(rng)
    out = [zoo.dim1_airy(q(), q(), 0, q()), zoo.dim1_airy(q(), q(), 0, q())]
    out.append(zoo.frobenius_airy(zoo.FrobeniusAlgebra.semisimple([q(), q()]), q(), q(), 0, [q(), q()]))
    out.append(zoo.frobenius_airy(zoo.FrobeniusAlgebra.semisimple([q(), q(), q()]), q(), q(), 0,
                                  [q(), q(), q()]))
    out.append(zoo.dim2_family("Ia", q(), q(), None, q()))
    return out


def suite_cequal0(seed=8, budget=5) -> SuiteResult:
    def body(res):
        rng = random.Random(seed)
        samples = cequal0_samples(rng)
        compared = 0
        for s in samples:
            if s.C.data:
                res.fail(f"{s.name}: sample has C != 0")
                continue
            for g, n in recursion.stable_pairs(budget):
                fe = recursion.free_energy(s, g, n)
                if g >= 2:
                    if fe.data:
                        res.fail(f"{s.name}: F_{g},{n} nonzero")
                    continue
                S0, S1 = cf.cequal0_partition(s, n)
                series = S0 if g == 0 else S1
                for idx in combinations_with_replacement(range(s.dim), n):
                    compared += 1
                    want = cf.taylor_coefficient(series, idx)
                    if fe[idx] != want:
                        res.fail(f"{s.name}: F_{g},{n}{idx} recursion {fe[idx]}, closed form {want}")
        res.summary = f"{len(samples)} C = 0 structures, {compared} coefficients up to 2g-2+n = {budget}"
    return _timed(8, "cequal0", body)


# ---------------------------------------------------------------------------
# 9. cohomology tables

def dim2_generic(case, rng):
    q = lambda: rand_q(rng)
    return zoo.dim2_family(case, q(), q(), None, q())


def suite_cohomology(seed=9) -> SuiteResult:
    def body(res):
        rng = random.Random(seed)
        for case, want in COHOMOLOGY_TABLE.items():
            for _ in range(3):
                s = dim2_generic(case, rng)
                got = ce_dims(s)
                if got != want:
                    res.fail(f"{s.name}: ce_dims {got}, table {want}")
                hs = hs_oracle_dims(s, [1], 0).dims
                if hs != got:
                    res.fail(f"{s.name}: Hochschild-Serre {hs} != CE {got}")
        for _ in range(3):
            s = zoo.dim3_lm2(rand_q(rng), rand_q(rng, nonzero=False))
            got = ce_dims(s)
            if got != DIM3_COHOMOLOGY:
                res.fail(f"{s.name}: ce_dims {got}, expected {DIM3_COHOMOLOGY}")
            r = hs_oracle_dims(s, ["1", "0'"], "0")
            if r.dims != got:
                res.fail(f"{s.name}: Hochschild-Serre {r.dims} != CE {got}")
            if r.h1_alt != got[1]:
                res.fail(f"{s.name}: second H^1 route {r.h1_alt} != CE {got[1]}")
        res.summary = "dim-2 cases at 3 generic points and dim3_lm2 at 3 points, CE vs Hochschild-Serre"
    res = _timed(9, "cohomology", body)
    if res.seconds >= 10:
        res.fail(f"runtime {res.seconds:.2f} s >= 10 s")
    return res


# ---------------------------------------------------------------------------
# 10. Young diagram dynamics

def young_samples():
    alg = zoo.FrobeniusAlgebra.semisimple([1, Fraction(1, 2)])
    return [zoo.z2_loop_airy({-1: 1}, budget=4),
            zoo.z2_loop_airy({-1: 3, 0: 2, 1: Fraction(-1, 2)}, {(0, 0): 5}, budget=4),
            zoo.z2_loop_airy({0: 2, 1: Fraction(-1, 2)}, budget=4),
            zoo.z2_frobenius_loop_airy(alg, {-1: [1, 2], 0: [Fraction(1, 3), 0]},
                                       {((0, 0), (0, 1)): Fraction(1, 2)}, budget=4)]


def young_matrix(s, budget=4) -> dict:
    """{(g, n): (entries, agree)} comparing evaluate(omega) with free_energy."""
    out = {}
    for g, n in recursion.stable_pairs(budget):
        om = young.evaluate(young.omega(s, g, n))
        fe = {tuple(sorted(k)): v for k, v in recursion.free_energy(s, g, n).items()}
        out[(g, n)] = (len(fe), om == fe)
    return out


def suite_young(budget=4) -> SuiteResult:
    def body(res):
        rows = []
        for s in young_samples():
            m = young_matrix(s, budget)
            bad = [gn for gn, (_, ok) in m.items() if not ok]
            rows.append(f"{s.name}: " + " ".join(f"{g},{n}:{c}{'' if ok else '!'}" for (g, n), (c, ok) in m.items()))
            for gn in bad:
                res.fail(f"{s.name}: Omega_{gn} differs from F_{gn}")
        s = young_samples()[1]
        p = s.copy(s.name + "+perturbed")
        p.B.set((0, 1, 1), p.B[(0, 1, 1)] + 1)
        p.touched()
        if validate_relations(p).ok:
            res.fail("perturbation did not break the relations")
        try:
            for g, n in recursion.stable_pairs(3):
                young.omega(p, g, n)
            res.fail("perturbed structure produced no symmetry failure by (0, 5)")
        except young.YoungSymmetryError as e:
            rows.append(f"perturbed: symmetry failure at (g, n) = ({e.g}, {e.n})")
        res.rows = rows
        res.summary = f"{len(rows) - 1} structures match up to 2g-2+n = {budget}; " + rows[-1].split(": ", 1)[1]
    return _timed(10, "young", body)


# ---------------------------------------------------------------------------
# 11. Z2 loop base values

def suite_z2base(seed=11, points=3) -> SuiteResult:
    def body(res):
        rng = random.Random(seed)
        for _ in range(points):
            tm, t0, t1, u00, u01 = (rand_q(rng) for _ in range(5))
            s = zoo.z2_loop_airy({-1: tm, 0: t0, 1: t1}, {(0, 0): u00, (0, 1): u01}, budget=3)
            tag = f"t = ({tm}, {t0}, {t1}), u00 = {u00}"
            checks = [("F_0,3(0,0,0)", recursion.fgn(s, 0, [0, 0, 0]), tm),
                      ("F_1,1(0)", recursion.fgn(s, 1, [0]), (t0 + u00 * tm) / 8),
                      ("F_1,1(1)", recursion.fgn(s, 1, [1]), tm / 24)]
            for what, got, want in checks:
                if got != want:
                    res.fail(f"{what} at {tag}: recursion {got}, formula {want}")
        res.summary = f"base values at {points} random (t, u)"
    return _timed(11, "z2base", body)


SUITES = {
    "whittaker": suite_whittaker, "beta": suite_beta, "trees": suite_trees, "relations": suite_relations,
    "symmetry": suite_symmetry, "vanishing": suite_vanishing, "covariance": suite_covariance,
    "cequal0": suite_cequal0, "cohomology": suite_cohomology, "young": suite_young, "z2base": suite_z2base,
}


def run_suite(name: str) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    return SUITES[name]()


__all__ = ["SuiteResult", "SUITES", "run_suite", "BETA_TABLE", "COHOMOLOGY_TABLE", "DIM3_COHOMOLOGY",
           "graded_examples", "cequal0_samples", "young_samples", "young_matrix", "dim2_generic", "rand_q"] + \
          [f"suite_{k}" for k in SUITES]
