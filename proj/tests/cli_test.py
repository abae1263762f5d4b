#!/usr/bin/env python3
"""End-to-end checks of the qmform command-line tool."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

BIN = Path(sys.argv[1]).resolve()
failures = 0


def check(cond, what):
    global failures
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures += 1


def run(*args, cwd, env=None):
    full_env = None
    if env:
        import os
        full_env = dict(os.environ)
        full_env.update(env)
    return subprocess.run([str(BIN), *args], cwd=cwd, capture_output=True,
                          text=True, env=full_env)


def without_manifest(path):
    doc = json.loads(Path(path).read_text())
    doc.pop("manifest", None)
    return json.dumps(doc, sort_keys=True)


with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    (tmp / "core.json").write_text(json.dumps({
        "rank": 2,
        "core": [["0", "1"], ["-1", "0"]],
        "brooks": [],
        "homog_depth": 64,
        "defect_bound": "0",
    }))
    (tmp / "noisy.json").write_text(json.dumps({
        "rank": 2,
        "core": [["0", "1"], ["-1", "0"]],
        "brooks": [{"pattern": "a b", "weight": "1"}],
        "homog_depth": 64,
        "defect_bound": "127/32",
    }))
    (tmp / "genus2.json").write_text(json.dumps({
        "kind": "product_of_surfaces",
        "surfaces": [{"genus": 2, "area": "1"}],
    }))
    (tmp / "blowup_nocurv.json").write_text(json.dumps({
        "kind": "torus_blowup",
        "blowup": {"radii": ["1", "2"], "rho": "1/4", "r": "1/2"},
    }))

    # Pure-core extraction recovers the core exactly; CSV sidecar written.
    r = run("extract", "--spec", "core.json", "--reps", "a;b", "--kmax", "4",
            "--out", "out1.json", "--csv", "out1.csv", cwd=tmp)
    check(r.returncode == 0, "extract exits 0")
    doc = json.loads((tmp / "out1.json").read_text())
    check(doc["form"] == [["0", "1"], ["-1", "0"]], "extracted form equals the core")
    check(doc["pairs"][0]["final_estimate"] == "1", "final estimate is exact")
    csv_lines = (tmp / "out1.csv").read_text().strip().splitlines()
    check(csv_lines[0] == "i,j,k,estimate,envelope", "csv header")
    check(csv_lines[1] == "1,2,1,1,0", "csv first row")

    # Determinism: identical inputs, byte-identical bodies modulo manifest.
    run("extract", "--spec", "core.json", "--reps", "a;b", "--kmax", "4",
        "--out", "out2.json", cwd=tmp)
    run("extract", "--spec", "core.json", "--reps", "a;b", "--kmax", "4",
        "--out", "out3.json", cwd=tmp)
    check(without_manifest(tmp / "out2.json") == without_manifest(tmp / "out3.json"),
          "reports are deterministic")

    # Convergence sequence for the counting spec matches (k+1)/k.
    r = run("extract", "--spec", "noisy.json", "--kmax", "8", "--out", "noisy_out.json",
            cwd=tmp)
    doc = json.loads((tmp / "noisy_out.json").read_text())
    ests = {e["k"]: e["estimate"] for e in doc["pairs"][0]["estimates"]}
    check(ests == {1: "2", 2: "3/2", 4: "5/4", 8: "9/8"},
          "counting-spec estimates follow (k+1)/k")

    # Default representatives are the generators.
    r = run("extract", "--spec", "core.json", "--out", "out4.json", cwd=tmp)
    check(r.returncode == 0 and
          json.loads((tmp / "out4.json").read_text())["form"][0][1] == "1",
          "default representatives work")

    # Zero spec extracts to the zero matrix.
    (tmp / "zero.json").write_text(json.dumps({
        "rank": 2, "core": [["0", "0"], ["0", "0"]]}))
    r = run("extract", "--spec", "zero.json", "--kmax", "2", "--out", "z.json", cwd=tmp)
    doc = json.loads((tmp / "z.json").read_text())
    check(r.returncode == 0 and doc["form"] == [["0", "0"], ["0", "0"]],
          "zero spec gives the zero matrix")

    # All-torus products predict the zero form.
    (tmp / "tori.json").write_text(json.dumps({
        "kind": "product_of_surfaces",
        "surfaces": [{"genus": 1, "area": "3/2"}, {"genus": 1, "area": "4"}],
    }))
    r = run("predict", "--manifold", "tori.json", "--out", "tz.json", cwd=tmp)
    doc = json.loads((tmp / "tz.json").read_text())
    check(r.returncode == 0 and all(v == "0" for row in doc["form"] for v in row),
          "all-torus product predicts zero")

    # predict: genus-2 surface gives -2 times the intersection form.
    r = run("predict", "--manifold", "genus2.json", "--out", "pred.json", cwd=tmp)
    doc = json.loads((tmp / "pred.json").read_text())
    check(r.returncode == 0 and doc["form"][0][1] == "-2" and doc["form"][2][3] == "-2"
          and doc["form"][0][2] == "0", "predicted genus-2 form")
    check(doc["volume"] == "1" and doc["curvature"] == "-2", "volume and curvature")

    # The emitted matrix re-parses: feed the prediction back into decide.
    r = run("decide", "extendable", "--form", "pred.json",
            "--basis", "1,0,0,0;0,0,1,0", "--out", "ext.json", cwd=tmp)
    doc = json.loads((tmp / "ext.json").read_text())
    check(r.returncode == 0 and doc["extendable"] is True,
          "alpha-span is isotropic (extendable)")

    r = run("decide", "extendable", "--form", "pred.json",
            "--basis", "1,0,0,0;0,1,0,0", "--out", "ext2.json", cwd=tmp)
    doc = json.loads((tmp / "ext2.json").read_text())
    check(doc["extendable"] is False and doc["witness"]["value"] == "-2",
          "handle pair is not isotropic, witness -2")

    # decide commute, all three I_c1 models.
    for model, expected in [("zero", "obstructed"), ("cyclic:-2", "not_obstructed"),
                            ("dense", "undecided")]:
        r = run("decide", "commute", "--manifold", "genus2.json", "--v", "1,0,0,0",
                "--w", "0,1,0,0", "--ic1", model, "--out", "com.json", cwd=tmp)
        doc = json.loads((tmp / "com.json").read_text())
        check(r.returncode == 0 and doc["value"] == "-2"
              and doc["obstructed_universal_cover"] is True
              and doc["base_obstruction"] == expected,
              f"commute verdict under ic1={model}")

    # decide reznikov: failing condition is named.
    r = run("decide", "reznikov", "--manifold", "genus2.json", "--ic1-zero", "false",
            "--basis", "", "--out", "rez.json", cwd=tmp)
    doc = json.loads((tmp / "rez.json").read_text())
    check(doc["trivial"] is False
          and doc["failing_conditions"] == ["condition_1_ic1_nonzero"],
          "reznikov names condition 1")

    # Exit code contract: 2 for validation problems, 3 for resource caps.
    (tmp / "bad.json").write_text("{not json")
    check(run("extract", "--spec", "bad.json", cwd=tmp).returncode == 2,
          "malformed JSON exits 2")
    (tmp / "asym.json").write_text(json.dumps({
        "rank": 2, "core": [["0", "1"], ["1", "0"]]}))
    check(run("extract", "--spec", "asym.json", cwd=tmp).returncode == 2,
          "non-antisymmetric core exits 2")
    check(run("predict", "--manifold", "blowup_nocurv.json", cwd=tmp).returncode == 2,
          "blow-up without curvature exits 2")
    check(run("extract", "--spec", "noisy.json", "--kmax", "1024",
              "--max-letters", "100", cwd=tmp).returncode == 3,
          "letter cap exits 3")
    check(run("extract", "--spec", "missing.json", cwd=tmp).returncode == 2,
          "missing file exits 2")

    # Spec without defect_bound gets the pure-core default 0.
    (tmp / "nodefect.json").write_text(json.dumps({
        "rank": 2, "core": [["0", "1"], ["-1", "0"]]}))
    r = run("extract", "--spec", "nodefect.json", "--kmax", "2", "--out", "nd.json",
            cwd=tmp)
    doc = json.loads((tmp / "nd.json").read_text())
    check(r.returncode == 0 and doc["spec"]["defect_bound"] == "0",
          "pure-core default defect bound is 0")

    # Worker fan-out joins deterministically.
    (tmp / "rank3.json").write_text(json.dumps({
        "rank": 3,
        "core": [["0", "1", "-2"], ["-1", "0", "3"], ["2", "-3", "0"]],
    }))
    run("extract", "--spec", "rank3.json", "--kmax", "4", "--out", "w1.json", cwd=tmp)
    run("extract", "--spec", "rank3.json", "--kmax", "4", "--out", "w3.json",
        cwd=tmp, env={"QMFORM_WORKERS": "3"})
    check(without_manifest(tmp / "w1.json") == without_manifest(tmp / "w3.json"),
          "parallel extraction matches sequential")

    # selftest: the hidden oracle hook, on both kernel implementations.
    check(run("selftest", cwd=tmp).returncode == 0, "selftest passes")
    r = run("selftest", cwd=tmp, env={"QMFORM_KERNELS": "scalar"})
    check(r.returncode == 0 and "kernels: scalar" in r.stdout,
          "selftest passes on scalar kernels")

print("cli_test:", "FAILED" if failures else "passed")
sys.exit(1 if failures else 0)
