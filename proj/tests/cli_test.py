"""End-to-end checks of the psq command line: exit codes, schemas, determinism."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema

BIN, SCHEMAS = sys.argv[1], sys.argv[2]
failures = []


def schema(name):
    with open(os.path.join(SCHEMAS, name)) as f:
        return json.load(f)


def run(*args):
    r = subprocess.run([BIN, *args], capture_output=True, text=True)
    return r.returncode, r.stdout, r.stderr


def check(cond, what):
    if not cond:
        failures.append(what)
        print("FAIL:", what)


def valid(doc, name, what):
    try:
        jsonschema.validate(doc, schema(name))
    except jsonschema.ValidationError as e:
        check(False, f"{what}: {e.message}")


def ok_json(name, *args):
    code, out, err = run(*args)
    check(code == 0, f"{' '.join(args)} exited {code}: {err.strip()}")
    if code != 0:
        return None
    doc = json.loads(out)
    valid(doc, name, " ".join(args))
    # Identical invocations give identical bytes.
    check(run(*args)[1] == out, f"{' '.join(args)} is not deterministic")
    return doc


doc = ok_json("construct.schema.json", "construct", "--p", "3", "--family", "P", "--i", "2")
check(doc and doc["order"] == "27", "construct P_2 at p = 3 has order 27")
doc = ok_json("construct.schema.json", "construct", "--p", "5", "--family", "Pprime", "--i", "5")
check(doc and doc["order"] == str(5**6), "P'_5 has order 5^6")

code, out, err = run("construct", "--p", "4", "--family", "P", "--i", "1")
check(code == 1, "non-prime p exits 1")
e = json.loads(err)
valid(e, "error.schema.json", "error JSON")
check(e["message"] == "p must be prime", "error message names the prime condition")
check(run("construct", "--p", "3")[0] == 2, "missing --i is a usage error")
check(run("nonsense")[0] == 2, "unknown subcommand is a usage error")

doc = ok_json("recognize.schema.json", "recognize", "--p", "3", "--gen", "(0 1 2 3 4 5 6 7 8)", "--gen", "(0 6 3)(1 4 7)")
check(doc and doc["p_subgroup"]["family"] == "cyclic" and doc["p_subgroup"]["i"] == 2, "recognize P_2")
doc = ok_json("normalizer.schema.json", "normalizer", "--p", "3", "--i", "1", "--family", "Pprime")
check(doc and doc["order"] == "432", "N(P'_1) = AGL(2,3)")

doc = ok_json("code.schema.json", "code", "induced", "--p", "5", "--i", "2")
check(doc and doc["code"]["dimension"] == 2, "induced code of P_2 at p = 5 has dimension 2")
doc = ok_json("code.schema.json", "code", "invariant", "--p", "11", "--q", "3")
check(doc and doc["count"] == 8, "8 cyclic ternary codes of length 11")
doc = ok_json("code.schema.json", "code", "chain", "--p", "7", "--q", "2", "--t", "2", "--vec", "1,1,1,1,1,1,1")
check(doc and doc["round_trip"], "chain round trip")

doc = ok_json("bardoe-sin.schema.json", "bardoe-sin", "--r", "2", "--t", "1", "--d", "3")
check(doc and doc["count"] == 6, "6 invariant modules at (2,1,3)")

doc = ok_json("wreath.schema.json", "wreath", "build", "--p", "3", "--top", "symmetric", "--k", "1,1,1", "--cocycle", "1")
check(doc and doc["group"]["order"] == "324", "wreath build order")
gens = []
if doc:
    for g in doc["group"]["generators"]:
        gens += ["--gen", g]
dec = ok_json("wreath.schema.json", "wreath", "decompose", "--p", "3", *gens)
check(dec and dec["tuple"]["H"]["order"] == "6", "decomposition recovers |H| = 6")
doc = ok_json("wreath.schema.json", "wreath", "equiv", "--p", "3", "--cocycle", "0", "--cocycle2", "0")
check(doc and doc["equivalent"], "a tuple is equivalent to itself")

doc = ok_json("cayley.schema.json", "cayley", "aut", "--p", "3", "--kind", "elementary", "--S", "1,2,3,6")
check(doc and doc["automorphisms"]["order"] == "72", "rook digraph has 72 automorphisms")
doc = ok_json("cayley.schema.json", "cayley", "normal", "--p", "2", "--S", "1,2,3")
check(doc and not doc["normal"] and doc["corollary3"] == "1", "K_4 over Z_4 is nonnormal")
doc = ok_json("cayley.schema.json", "cayley", "iso", "--p", "3", "--kind", "elementary", "--S", "1,3", "--S2", "1,4")
check(doc and doc["isomorphic"], "isomorphic pair found")
doc = ok_json("cayley.schema.json", "cayley", "classify", "--p", "3", "--S", "1,2,3,4,5,6,7,8")
check(doc and doc["case"] == "T15(1)", "complete digraph is case (1)")
check(run("cayley", "aut", "--p", "3", "--S", "0,1")[0] == 1, "0 in S is a domain error")

with tempfile.TemporaryDirectory() as tmp:
    out = os.path.join(tmp, "cat.jsonl")
    doc = ok_json("catalog.schema.json", "catalog", "--p", "3", "--kind", "elementary", "--out", out)
    check(doc and doc["records"] == 256, "256 records")
    rec_schema = schema("catalog-record.schema.json")
    with open(out) as f:
        lines = f.read().splitlines()
    check(len(lines) == 256, "256 lines written")
    for line in lines:
        jsonschema.validate(json.loads(line), rec_schema)
    code, stdout, _ = run("catalog", "--p", "3", "--kind", "elementary", "--jobs", "3")
    check(code == 0 and stdout.splitlines() == lines, "parallel catalog matches the file")
    env = dict(os.environ, PSQ_OUT_DIR=tmp)
    r = subprocess.run([BIN, "catalog", "--p", "2", "--kind", "cyclic"], capture_output=True, text=True, env=env)
    check(r.returncode == 0 and os.path.exists(os.path.join(tmp, "catalog_p2_cyclic.jsonl")), "PSQ_OUT_DIR default")

code, out, _ = run("verify")
doc = json.loads(out)
valid(doc, "verify.schema.json", "verify")
check(code == (0 if doc["all_pass"] else 1), "verify exit code follows the results")
check(len(doc["results"]) == 11, "verify reports 11 criteria")

print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
