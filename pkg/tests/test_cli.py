import json
import subprocess
import sys

import pytest

from qpb.cli import main
from qpb.formats import BuildResult, load_file, parse_spec, run_suites
from qpb.presets import generate_example, serialize_example


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(serialize_example(doc) if isinstance(doc, dict) else doc,
                 encoding="utf-8")
    return str(p)


def test_gen_validate_roundtrip(tmp_path, capsys):
    path = str(tmp_path / "z2.json")
    assert main(["gen", "c-group", "--group", "Z2", "-o", path]) == 0
    assert main(["validate", path]) == 0
    out = capsys.readouterr().out
    assert "dim B_2 = 4" in out


def test_check_exit_zero_and_deterministic_json(tmp_path, capsys):
    path = str(tmp_path / "z3.json")
    assert main(["gen", "c-group", "--group", "Z3", "--fodc", "universal",
                 "-o", path]) == 0
    assert main(["check", path, "--suite", "all", "--report", "json"]) == 0
    out1 = capsys.readouterr().out
    assert main(["check", path, "--suite", "all", "--report", "json"]) == 0
    out2 = capsys.readouterr().out
    assert out1 == out2  # byte-identical
    doc = json.loads(out1)
    assert doc["ok"] is True and doc["fail_count"] == 0
    ids = [r["identity_id"] for r in doc["records"]]
    assert ids == sorted(ids)


def test_check_classical_suite_noncommutative_is_pass(tmp_path, capsys):
    path = str(tmp_path / "cs3.json")
    assert main(["gen", "group-algebra", "--group", "S3", "-o", path]) == 0
    assert main(["check", path, "--suite", "classical"]) == 0
    out = capsys.readouterr().out
    assert "NotClassical" in out


def test_check_trivial_bundle_all(tmp_path):
    path = str(tmp_path / "triv.json")
    assert main(["gen", "trivial-bundle", "--group", "Z2", "--base-points", "2",
                 "--fodc", "universal", "--base-calculus", "universal",
                 "-o", path]) == 0
    assert main(["check", path, "--suite", "translation", "--suite", "braiding"]) == 0


def test_haar_and_classicality_commands(tmp_path, capsys):
    path = str(tmp_path / "z2.json")
    main(["gen", "c-group", "--group", "Z2", "-o", path])
    assert main(["haar", path]) == 0
    out = capsys.readouterr().out
    assert "h(dr0) = 1/2" in out
    assert main(["classicality", path]) == 0
    out = capsys.readouterr().out
    assert "classical: True" in out


def test_gauge_enumerate_and_act(tmp_path, capsys):
    path = str(tmp_path / "triv.json")
    main(["gen", "trivial-bundle", "--group", "Z2", "--base-points", "2",
          "-o", path])
    assert main(["gauge", "enumerate", path]) == 0
    out = capsys.readouterr().out
    assert "4 gauge transformations" in out
    assert main(["gauge", "act", path, "--gamma", "1",
                 "--element", "x0.dr0+1/2*x1.dr1"]) == 0
    out = capsys.readouterr().out.strip()
    assert out  # a rendered element


def test_broken_antipode_exits_two(tmp_path, capsys):
    doc = generate_example("c-group", group="Z2")
    doc["hopf"]["antipode"] = [[0, 0, "1"], [1, 1, "0"]]  # kill kappa(d_g)
    path = write(tmp_path, "broken.json", doc)
    assert main(["validate", path]) == 2
    err = capsys.readouterr().err
    assert "hopf" in err


def test_non_principal_coaction_exits_two(tmp_path, capsys):
    doc = generate_example("c-group", group="Z2")
    dim = len(doc["hopf"]["basis"])
    # explicit bundle with the trivial (non-principal) coaction b -> b (x) 1
    doc["bundle"] = {
        "basis": list(doc["hopf"]["basis"]),
        "mult": list(doc["hopf"]["mult"]),
        "star": list(doc["hopf"]["star"]),
        "coaction": [[i, i, k, "1"] for i in range(dim) for k in range(dim)],
    }
    path = write(tmp_path, "nonprincipal.json", doc)
    assert main(["validate", path]) == 2
    err = capsys.readouterr().err
    assert "bundle.coaction" in err


def test_non_ad_invariant_ideal_exits_two(tmp_path, capsys):
    doc = generate_example("c-group", group="S3")
    # d_s - d_sr is in ker eps but not a right ideal / ad-invariant
    doc["fodc"] = {"ideal_basis": [[[1, "1"], [2, "-1"]]]}
    path = write(tmp_path, "badideal.json", doc)
    assert main(["check", path, "--suite", "differential"]) == 2
    err = capsys.readouterr().err
    assert "fodc.ideal_basis" in err


def test_bad_scalar_literal_positioned(tmp_path, capsys):
    doc = generate_example("c-group", group="Z2")
    doc["hopf"]["mult"][0][3] = "1/0"
    path = write(tmp_path, "badscalar.json", doc)
    assert main(["validate", path]) == 2
    err = capsys.readouterr().err
    assert "hopf.mult[0]" in err


def test_index_out_of_range_positioned(tmp_path, capsys):
    doc = generate_example("c-group", group="Z2")
    doc["hopf"]["mult"][0][2] = 99
    path = write(tmp_path, "badindex.json", doc)
    assert main(["validate", path]) == 2
    err = capsys.readouterr().err
    assert "out of range" in err and "hopf.mult" in err


def test_unknown_key_rejected(tmp_path, capsys):
    doc = generate_example("c-group", group="Z2")
    doc["surprise"] = 1
    path = write(tmp_path, "unknown.json", doc)
    assert main(["validate", path]) == 2
    assert "unknown key" in capsys.readouterr().err


def test_expect_block_enforced(tmp_path, capsys):
    doc = generate_example("c-group", group="Z2")
    doc["expect"] = {"base_dim": 7}
    path = write(tmp_path, "expect.json", doc)
    assert main(["validate", path]) == 2
    assert "expect.base_dim" in capsys.readouterr().err


def test_expect_block_passes(tmp_path):
    doc = generate_example("c-group", group="Z2", fodc="universal")
    doc["expect"] = {"base_dim": 1, "b2_dim": 4, "gauge_dim": 2,
                     "classical": True, "gamma_inv_dim": 1}
    path = write(tmp_path, "expect_ok.json", doc)
    assert main(["validate", path]) == 0


def test_roundtrip_report_matches_direct_build():
    doc = generate_example("c-group", group="Z3", fodc="universal")
    text = serialize_example(doc)
    sf = parse_spec(text)
    build = BuildResult(sf)
    rep1 = run_suites(build, ["translation", "braiding"])
    sf2 = parse_spec(text)
    rep2 = run_suites(BuildResult(sf2), ["translation", "braiding"])
    assert rep1.to_json() == rep2.to_json()


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qpb.cli", "gen", "c-group",
                           "--group", "Z2"], capture_output=True, text=True)
    assert proc.returncode == 0
    json.loads(proc.stdout)
