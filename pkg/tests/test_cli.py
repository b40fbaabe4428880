import io
import json
import subprocess
import sys

import pytest

from qairy.cli import main, parse_zoo_spec


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_zoo_spec_syntax():
    assert parse_zoo_spec("zoo:dim2:Ia?alpha=2&beta=1/3") == ("dim2:Ia", {"alpha": "2", "beta": "1/3"})


def test_validate_sl2():
    assert run("validate", "zoo:sl2") == (0, "relations: OK, lie-closure: OK\n")


def test_fgn_dim1():
    assert run("fgn", "zoo:dim1?A=2&B=3&C=5&D=7", "--g", "1", "--n", "2", "--indices", "0,0") == (0, "26\n")


def test_validate_perturbed_file(tmp_path):
    code, text = run("zoo", "build", "sl2")
    d = json.loads(text)
    d["B"][0][3] = "7"
    p = tmp_path / "perturbed.json"
    p.write_text(json.dumps(d))
    code, text = run("validate", str(p))
    assert code == 1
    assert "first violation: BB-AC" in text


def test_usage_errors(tmp_path):
    assert run("fgn", "zoo:nope", "--g", "1", "--indices", "0")[0] == 2
    assert run("bogus")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"name": "x",\n "A": [}\n')
    assert run("validate", str(bad))[0] == 2
    assert run("oracle", "nope")[0] == 2


def test_export_round_trip(tmp_path):
    code, text = run("export", "zoo:dim3_lm2")
    p = tmp_path / "s.json"
    p.write_text(text)
    assert run("export", str(p)) == (0, text)


def test_free_energy_jobs_identical():
    spec = "zoo:z2loop?t-1=2&t0=1/3&u0_0=1&budget=4"
    a = run("free-energy", spec, "--budget", "4")
    b = run("free-energy", spec, "--budget", "4", "--jobs", "3")
    assert a == b and a[0] == 0 and "F[0,3](0,0,0) = 2" in a[1]


def test_cohomology_and_young_verbs():
    assert run("cohomology", "zoo:sl2") == (0, "(1, 0, 0)\n")
    code, text = run("young", "run", "zoo:z2loop?t-1=1", "--g", "1", "--n", "2")
    assert code == 0 and text.splitlines() == ["[2/1 2/1] 1/24", "[3/1 1/1] 1/8"]


def test_transform_verbs():
    code, text = run("transform", "gauge", "zoo:dim1?A=1&B=0&C=0&D=0", "--u", "[[3]]")
    d = json.loads(text)
    assert code == 0 and d["B"] == [[0, 0, 0, "3"]] and d["D"] == [[0, "3/2"]]
    assert run("transform", "translate", "zoo:dim1?A=2&B=3&C=5&D=7")[0] == 0
    assert run("transform", "scale", "zoo:sl2", "--lam", "2")[0] == 0


def test_oracle_verb():
    code, text = run("oracle", "beta")
    assert code == 0 and text.startswith("[PASS]  2 beta")


def test_zoo_list():
    code, text = run("zoo", "list")
    assert code == 0 and "sl2: " in text and "dim2:IIb" in text


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "qairy", "validate", "zoo:sl2"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "relations: OK, lie-closure: OK\n"


def test_sparse_gauge_matches_matrix():
    a = run("transform", "gauge", "zoo:sl2", "--u", '{"1,3": "1/2"}')
    b = run("transform", "gauge", "zoo:sl2", "--u", '[[0,0,"1/2"],[0,0,0],["1/2",0,0]]')
    assert a == b and a[0] == 0
