"""Command-line front end.

Structures are read from a JSON file or from an inline zoo spec such as
``zoo:dim1?A=2&B=3&C=5&D=7`` or ``zoo:dim2:Ia?alpha=2``.  Exit status is 0 on
success, 1 on a violation or oracle failure and 2 on usage errors.  Numbers
are printed exactly as p/q.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from urllib.parse import parse_qsl

from . import oracles, recursion, transform, young, zoo
from .airy_core import AiryStructure, text_scalar, validate_relations
from .cohomology import CohomologyError, ce_dims
from .weyl import lie_closure_check


class UsageError(Exception):
    pass


class ViolationError(Exception):
    pass


def parse_zoo_spec(spec: str):
    """'zoo:name?k=v&k=v' -> (name, {k: v})."""
    body = spec[len("zoo:"):]
    name, _, query = body.partition("?")
    params = dict(parse_qsl(query, keep_blank_values=True, separator="&")) if query else {}
    return name, params


def load_structure(source: str) -> AiryStructure:
    if source.startswith("zoo:"):
        name, params = parse_zoo_spec(source)
        try:
            return zoo.build(name, params)
        except zoo.ZooError as e:
            raise UsageError(str(e)) from None
    try:
        with open(source) as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(f"{source}: {e.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        lines = text.splitlines()
        ctx = lines[e.lineno - 1] if 0 < e.lineno <= len(lines) else ""
        raise UsageError(f"{source}:{e.lineno}:{e.colno}: {e.msg}\n    {ctx}") from None
    try:
        return AiryStructure.from_json(data)
    except (KeyError, ValueError, TypeError) as e:
        raise UsageError(f"{source}: not a structure file: {e}") from None


def _fmt(s, v) -> str:
    return text_scalar(s.field, v)


def _labels(s, text: str) -> list:
    return [t.strip() for t in text.split(",") if t.strip()] if text else []


# ---------------------------------------------------------------------------
# verbs

def cmd_validate(args, out):
    s = load_structure(args.structure)
    rep = validate_relations(s)
    if s.graded:
        closure = "n/a (graded)"
    else:
        clo = lie_closure_check(s)
        closure = "OK" if clo.ok else f"FAIL {tuple(s.index.label(i) for i in clo.failure)}"
    out.write(f"relations: {'OK' if rep.ok else 'FAIL'}, lie-closure: {closure}\n")
    if not rep.ok:
        v = rep.first()
        out.write(f"first violation: {v.tag} {v.indices} residual {_fmt(s, v.residual)}\n")
        out.write(f"violations: {len(rep.violations)}\n")
    if not rep.ok or not closure.startswith(("OK", "n/a")):
        return 1
    return 0


def cmd_fgn(args, out):
    s = load_structure(args.structure)
    labels = _labels(s, args.indices)
    if args.n is not None and args.n != len(labels):
        raise UsageError(f"--n {args.n} but {len(labels)} indices given")
    out.write(_fmt(s, recursion.fgn(s, args.g, labels)) + "\n")
    return 0


def _free_energy_lines(source: str, g: int, n: int) -> list:
    s = load_structure(source)
    lab = s.index.label
    rows = []
    for idx, v in recursion.free_energy(s, g, n).items():
        rows.append((idx, f"F[{g},{n}]({','.join(str(lab(i)) for i in idx)}) = {_fmt(s, v)}"))
    rows.sort(key=lambda r: [s.index.sort_key(i) for i in r[0]])
    return [line for _, line in rows]


def cmd_free_energy(args, out):
    if args.g is not None and args.n is not None:
        pairs = [(args.g, args.n)]
    else:
        pairs = sorted(recursion.stable_pairs(args.budget), key=lambda p: (2 * p[0] - 2 + p[1], p[0]))
    load_structure(args.structure)
    if args.jobs > 1 and len(pairs) > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            chunks = list(ex.map(_free_energy_lines, [args.structure] * len(pairs), *zip(*pairs)))
    else:
        chunks = [_free_energy_lines(args.structure, g, n) for g, n in pairs]
    for lines in chunks:
        for line in lines:
            out.write(line + "\n")
    return 0


def cmd_zoo(args, out):
    if args.action == "list":
        for name in zoo.catalog():
            out.write(f"{name}: {zoo.describe(name)}\n")
        return 0
    if not args.name:
        raise UsageError("zoo build needs a structure name")
    params = {}
    for p in args.params:
        k, sep, v = p.partition("=")
        if not sep:
            raise UsageError(f"parameter {p!r} is not key=value")
        params[k] = v
    try:
        s = zoo.build(args.name, params)
    except zoo.ZooError as e:
        raise UsageError(str(e)) from None
    out.write(s.dumps() + "\n")
    return 0


def _parse_u(s, text):
    """u as JSON: a square matrix, or {"label,label": value, ...} for sparse entries."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"--u: {e}") from None
    if isinstance(raw, dict):
        out = {}
        for key, v in raw.items():
            a, sep, b = key.partition(",")
            if not sep:
                raise UsageError(f"--u key {key!r} is not 'label,label'")
            out[(a.strip(), b.strip())] = s.field.parse(v)
        return out
    return [[s.field.parse(v) for v in row] for row in raw]


def cmd_transform(args, out):
    s = load_structure(args.structure)
    try:
        if args.kind == "gauge":
            if not args.u:
                raise UsageError("gauge needs --u")
            t = transform.gauge_u(s, _parse_u(s, args.u))
        elif args.kind == "scale":
            t = transform.scale(s, s.field.parse(args.lam))
        elif args.kind == "hbar":
            t = transform.hbar_rescale(s, s.field.parse(args.z))
        else:
            rep = transform.translation_consistency(s, args.order, args.budget)
            out.write(str(rep) + "\n")
            return 0 if rep.ok else 1
    except transform.GaugeError as e:
        raise ViolationError(str(e)) from None
    out.write(t.dumps() + "\n")
    return 0


def cmd_cohomology(args, out):
    s = load_structure(args.structure)
    try:
        h = ce_dims(s)
    except CohomologyError as e:
        raise ViolationError(str(e)) from None
    out.write(f"({h[0]}, {h[1]}, {h[2]})\n")
    return 0


def cmd_young(args, out):
    s = load_structure(args.structure)
    try:
        state = young.omega(s, args.g, args.n)
    except young.YoungSymmetryError as e:
        out.write(f"symmetry failure at (g, n) = ({e.g}, {e.n}) on {e.diagram}: {e.coefficients}\n")
        return 1
    for lam, v in sorted(state.items(), key=lambda kv: kv[0].columns):
        out.write(f"{lam} {_fmt(s, v)}\n")
    return 0


def cmd_oracle(args, out):
    names = list(oracles.SUITES) if args.suite == "all" else [args.suite]
    if any(n not in oracles.SUITES for n in names):
        raise UsageError(f"unknown suite {args.suite!r}; known: all, {', '.join(oracles.SUITES)}")
    ok = True
    for name in names:
        res = oracles.run_suite(name)
        out.write(res.report() + "\n")
        for row in res.rows:
            out.write(f"    {row}\n")
        ok = ok and res.ok
    return 0 if ok else 1


def cmd_export(args, out):
    s = load_structure(args.structure)
    if args.table:
        for g, n in sorted(recursion.stable_pairs(args.budget), key=lambda p: (2 * p[0] - 2 + p[1], p[0])):
            recursion.free_energy(s, g, n)
        out.write(recursion.export_table(s) + "\n")
    else:
        text = s.dumps()
        if AiryStructure.loads(text).dumps() != text:
            raise ViolationError("JSON round trip changed the structure")
        out.write(text + "\n")
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qairy", description="Quantum Airy structures: build, validate, compute.")
    sub = p.add_subparsers(dest="verb", required=True)

    v = sub.add_parser("validate", help="check the relations and the operator brackets")
    v.add_argument("structure")
    v.set_defaults(func=cmd_validate)

    f = sub.add_parser("fgn", help="one value F_{g,n}(indices)")
    f.add_argument("structure")
    f.add_argument("--g", type=int, required=True)
    f.add_argument("--n", type=int)
    f.add_argument("--indices", required=True, help="comma separated labels")
    f.set_defaults(func=cmd_fgn)

    fe = sub.add_parser("free-energy", help="all nonzero F_{g,n} entries")
    fe.add_argument("structure")
    fe.add_argument("--g", type=int)
    fe.add_argument("--n", type=int)
    fe.add_argument("--budget", type=int, default=3, help="max 2g-2+n when --g/--n are omitted")
    fe.add_argument("--jobs", type=int, default=1)
    fe.set_defaults(func=cmd_free_energy)

    z = sub.add_parser("zoo", help="list or build catalog structures")
    z.add_argument("action", choices=["list", "build"])
    z.add_argument("name", nargs="?")
    z.add_argument("params", nargs="*", help="key=value")
    z.set_defaults(func=cmd_zoo)

    t = sub.add_parser("transform", help="gauge, scale, hbar rescaling or translation check")
    t.add_argument("kind", choices=["gauge", "scale", "hbar", "translate"])
    t.add_argument("structure")
    t.add_argument("--u", help='JSON matrix, or {"label,label": value}')
    t.add_argument("--lam", default="1")
    t.add_argument("--z", default="1")
    t.add_argument("--order", type=int, default=3)
    t.add_argument("--budget", type=int, default=3)
    t.set_defaults(func=cmd_transform)

    c = sub.add_parser("cohomology", help="(h0, h1, h2) with values in D_V")
    c.add_argument("structure")
    c.set_defaults(func=cmd_cohomology)

    y = sub.add_parser("young", help="Young diagram dynamics")
    y.add_argument("action", choices=["run"])
    y.add_argument("structure")
    y.add_argument("--g", type=int, required=True)
    y.add_argument("--n", type=int, required=True)
    y.set_defaults(func=cmd_young)

    o = sub.add_parser("oracle", help="run a named acceptance suite")
    o.add_argument("suite", help="all, " + ", ".join(oracles.SUITES))
    o.set_defaults(func=cmd_oracle)

    e = sub.add_parser("export", help="structure JSON, or the F table with --table")
    e.add_argument("structure")
    e.add_argument("--table", action="store_true")
    e.add_argument("--budget", type=int, default=3)
    e.set_defaults(func=cmd_export)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args, out)
    except UsageError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except ViolationError as e:
        sys.stderr.write(f"violation: {e}\n")
        return 1
    except (recursion.BudgetError, KeyError, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
