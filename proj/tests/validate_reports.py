"""Runs the CLI across its subcommands and validates every report against
the shipped JSON schema; also checks exit codes and the CSV side output."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema

CLI, SCHEMA = sys.argv[1], sys.argv[2]

RUNS = [
    "roots check --family B --rank 2",
    "roots check --family F4 --rank 4",
    "roots check --family BC --rank 1",
    "roots table",
    "roots midpoint --space OP --n 2",
    "sphere kernel --lmax 6 --circles 120 --seed 3",
    "sphere invert --lmax 8 --trials 20 --seed 3",
    "sphere eigen --lmax 6 --circles 60",
    "cpn rank --n 2 --degree 1 --geodesics 50 --seed 1",
    "cpn support --n 2 --degree 1 --radius 0.5 --seed 2",
    "cpn remark31 --n 3 --trials 50",
    "cpn avoidline --trials 20 --samples 500",
    "cpn sample --n 2 --geodesics 4",
]

INVALID = [
    "roots check --family D --rank 3",
    "roots check --family Q --rank 2",
    "roots midpoint --space OP --n 3",
    "sphere kernel --lmax 40",
    "cpn rank --n 2 --degree 9",
    "cpn avoidline --n 1",
    "cpn support --radius 4",
    "bogus run",
    "roots check --rank notanumber",
]

with open(SCHEMA) as f:
    schema = json.load(f)
validator = jsonschema.Draft202012Validator(schema)
failed = 0


def run(args, **kw):
    return subprocess.run([CLI] + args.split(), capture_output=True, text=True, **kw)


for args in RUNS:
    r = run(args)
    try:
        doc = json.loads(r.stdout)
        errors = sorted(validator.iter_errors(doc), key=str)
    except json.JSONDecodeError as e:
        errors = [e]
    ok = r.returncode == 0 and not errors
    if not ok:
        failed += 1
        print(f"FAIL {args}: exit {r.returncode} {r.stderr.strip()} {[str(e)[:200] for e in errors]}")
    else:
        print(f"ok   {args}")

for args in INVALID:
    r = run(args)
    if r.returncode != 2 or not r.stderr.strip() or r.stdout:
        failed += 1
        print(f"FAIL {args}: expected exit 2 with a diagnostic, got {r.returncode}")
    else:
        print(f"ok   {args} -> 2")

with tempfile.TemporaryDirectory() as tmp:
    out, csv = os.path.join(tmp, "r.json"), os.path.join(tmp, "m.csv")
    r = run(f"cpn rank --n 2 --degree 1 --geodesics 30 --seed 4 --output {out} --csv {csv}")
    with open(out) as f:
        doc = json.load(f)
    with open(csv) as f:
        rows = [line.split(",") for line in f.read().strip().splitlines()]
    if r.returncode != 0 or r.stdout or doc["parameters"]["seed"] != 4 or len(rows) < 30:
        failed += 1
        print("FAIL --output/--csv")
    else:
        print("ok   --output/--csv")

print(f"{failed} failure(s)")
sys.exit(1 if failed else 0)
