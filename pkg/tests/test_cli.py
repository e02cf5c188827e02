"""End-to-end runs of the command line through a subprocess."""

import json
import os
import subprocess
import sys

import pytest

from leibhom.algebra import builtin_algebra
from leibhom.serialize import algebra_to_dict, save_algebra

REPO = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    env["PYTHONPATH"] = os.path.join(REPO, "src")
    if env_extra:
        env.update(env_extra)
    return subprocess.run([sys.executable, "-m", "leibhom.cli", *args],
                          capture_output=True, text=True, env=env)


def test_algebra_list():
    r = run_cli("algebra", "list")
    assert r.returncode == 0
    for name in ("rationals", "dual", "s3"):
        assert name in r.stdout


def test_algebra_inspect():
    r = run_cli("algebra", "inspect", "cyclic:3")
    assert r.returncode == 0
    assert "dim: 3" in r.stdout
    assert "group order: 3" in r.stdout
    assert run_cli("algebra", "inspect", "bogus").returncode == 2


def test_algebra_validate_paths(tmp_path):
    good = tmp_path / "dual.json"
    save_algebra(builtin_algebra("dual"), str(good))
    assert run_cli("algebra", "validate", str(good)).returncode == 0

    bad = tmp_path / "bad.json"
    bad.write_text("{...")
    assert run_cli("algebra", "validate", str(bad)).returncode == 2

    broken = tmp_path / "broken.json"
    d = algebra_to_dict(builtin_algebra("truncated_poly:3"))
    d["table"] = [row for row in d["table"] if row[:2] != [2, 2]] \
        + [[2, 2, [[0, "1"]]]]
    broken.write_text(json.dumps(d))
    r = run_cli("algebra", "validate", str(broken))
    assert r.returncode == 1
    assert "associativity" in r.stdout


def test_compute_writes_reports(tmp_path):
    out = tmp_path / "out"
    r = run_cli("compute", "--algebra", "dual", "--complex", "CHH,CLAMBDA",
                "--max-degree", "3", "--maps", "PHI", "--out", str(out))
    assert r.returncode == 0, r.stderr
    rep = json.loads((out / "report.json").read_text())
    man = json.loads((out / "manifest.json").read_text())
    md = (out / "report.md").read_text()

    chh = next(t for t in rep["tables"] if t["kind"] == "CHH")
    assert chh["betti"] == [2, 1, 1]
    assert chh["top_degree"]["boundary_incomplete"] is True
    clam = next(t for t in rep["tables"] if t["kind"] == "CLAMBDA")
    assert clam["betti"] == [2, 0, 2]
    prep = next(m for m in rep["maps"] if m["map"] == "PHI")
    assert prep["chain_map_verified"] is True
    assert {row["degree"]: row["rank"] for row in prep["induced_ranks"]}[1] == 2

    assert "report.json" not in rep  # no self reference
    assert "wall_time_s" in man and "cache" in man
    assert man["command"][0] == "leibhom"
    assert "| CHH |" in md


def test_compute_exit_codes(tmp_path):
    out = str(tmp_path / "x")
    assert run_cli("compute", "--algebra", "dual", "--complex", "NOPE",
                   "--out", out).returncode == 2
    assert run_cli("compute", "--algebra", "missing_name", "--complex", "CL",
                   "--out", out).returncode == 2
    assert run_cli("compute", "--algebra", "dual",
                   "--out", out).returncode == 2
    r = run_cli("compute", "--algebra", "s3", "--complex", "CHH",
                "--max-degree", "4", "--max-dim", "500", "--out", out)
    assert r.returncode == 3
    assert "bound" in r.stderr
    assert run_cli("compute", "--algebra", "s3", "--maps", "P_KAHLER",
                   "--out", out).returncode == 2
    assert run_cli("compute", "--algebra", "dual", "--complex", "BAR",
                   "--out", out).returncode == 2
    assert run_cli("compute", "--algebra", "dual", "--maps", "LIFT_P",
                   "--matrix-size", "2", "--out", out).returncode == 2


def test_compute_algebra_from_file_hashes_input(tmp_path):
    src = tmp_path / "alg.json"
    save_algebra(builtin_algebra("cyclic:2"), str(src))
    out = tmp_path / "out"
    r = run_cli("compute", "--algebra", str(src), "--complex", "CHH",
                "--max-degree", "3", "--out", str(out))
    assert r.returncode == 0, r.stderr
    man = json.loads((out / "manifest.json").read_text())
    assert str(src) in man["inputs"]
    assert len(man["inputs"][str(src)]) == 64
    # the file format carries no group block, so the loaded copy does not
    # qualify for the group-only complexes
    r = run_cli("compute", "--algebra", str(src), "--complex", "BAR",
                "--out", str(out))
    assert r.returncode == 2


def test_compute_workers_match_serial(tmp_path):
    a = tmp_path / "serial"
    b = tmp_path / "parallel"
    for out, workers in ((a, "1"), (b, "4")):
        r = run_cli("compute", "--algebra", "truncated_poly:3", "--complex",
                    "CL,CHH,CLAMBDA", "--max-degree", "3", "--workers",
                    workers, "--out", str(out))
        assert r.returncode == 0, r.stderr
    assert (a / "report.json").read_bytes() == (b / "report.json").read_bytes()


def test_verify_single_suite(tmp_path):
    out = tmp_path / "v"
    r = run_cli("verify", "--suite", "degree0", "--cutoff", "3",
                "--matrix-size", "2", "--out", str(out))
    assert r.returncode == 0, r.stderr
    rep = json.loads((out / "report.json").read_text())
    assert rep["totals"]["fail"] == 0
    assert rep["suites"][0]["suite"] == "degree0"
    assert "pass" in r.stdout


def test_verify_unknown_suite_and_bad_config(tmp_path):
    out = str(tmp_path / "v")
    assert run_cli("verify", "--suite", "nope", "--out", out).returncode == 2
    assert run_cli("verify", "--suite", "core", "--cutoff", "1",
                   "--out", out).returncode == 2


def test_verify_debug_break_phi_fails(tmp_path):
    out = tmp_path / "v"
    r = run_cli("verify", "--suite", "core", "--cutoff", "3", "--matrix-size",
                "2", "--debug-break-phi", "--out", str(out))
    assert r.returncode == 1
    assert "FAIL" in r.stdout
    rep = json.loads((out / "report.json").read_text())
    assert rep["totals"]["fail"] > 0


def test_verify_reports_byte_identical_across_runs(tmp_path):
    # timing lives in the manifest, so report.json must repeat exactly;
    # a shared cache directory flips the manifest counters from writes to hits
    cache = tmp_path / "cache"
    out1, out2 = tmp_path / "r1", tmp_path / "r2"
    for out in (out1, out2):
        r = run_cli("verify", "--suite", "degree0", "--cutoff", "3",
                    "--matrix-size", "2", "--seed", "42", "--cache",
                    str(cache), "--out", str(out))
        assert r.returncode == 0, r.stderr
    assert (out1 / "report.json").read_bytes() == \
        (out2 / "report.json").read_bytes()
    m1 = json.loads((out1 / "manifest.json").read_text())
    m2 = json.loads((out2 / "manifest.json").read_text())
    assert m1["cache"]["writes"] > 0 and m1["cache"]["hits"] == 0
    assert m2["cache"]["hits"] > 0 and m2["cache"]["writes"] == 0


def test_cache_env_var_used(tmp_path):
    cdir = tmp_path / "envcache"
    out = tmp_path / "out"
    r = run_cli("verify", "--suite", "degree0", "--cutoff", "3",
                "--matrix-size", "2", "--out", str(out),
                env_extra={"LEIBHOM_CACHE_DIR": str(cdir)})
    assert r.returncode == 0, r.stderr
    assert cdir.exists() and any(cdir.iterdir())


def test_console_script_entry_point():
    from leibhom.cli import main
    assert main(["algebra", "list"]) == 0
