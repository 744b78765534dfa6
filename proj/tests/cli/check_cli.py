"""Exit-code and output contract of the povindex command-line tool."""

import json
import os
import subprocess
import sys
import tempfile

cli, fixtures, configs = sys.argv[1:4]
failures = []


def run(*args):
    return subprocess.run([cli, *args], capture_output=True, text=True)


def expect(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


def fx(name):
    return os.path.join(fixtures, name)


r = run("estimate", "-i", fx("three_rows.csv"), "-z", "1.41")
expect(r.returncode == 0, "three_rows exits 0")
expect("0.322695" in r.stdout and "0.527187" in r.stdout, "three_rows prints Sen and SST U-statistics")

r = run("estimate", "-i", fx("negative_row.csv"), "-z", "1.41")
expect(r.returncode == 2 and "NEGATIVE_INCOME" in r.stderr and "3" in r.stderr,
       "negative income exits 2 with line number")
r = run("estimate", "-i", fx("three_rows.csv"), "-c", "wage", "-z", "1.41")
expect(r.returncode == 2, "missing column exits 2")
r = run("estimate", "-i", fx("single_row.csv"), "-z", "1.41")
expect(r.returncode == 2, "single row exits 2")
r = run("estimate", "-i", fx("malformed.csv"), "-d", ";", "-z", "1.41")
expect(r.returncode == 2, "malformed number exits 2")

r = run("estimate", "-i", fx("all_above.csv"), "-z", "1.41")
expect(r.returncode == 0, "no poor without CI exits 0")
r = run("estimate", "-i", fx("all_above.csv"), "-z", "1.41", "--ci", "jel")
expect(r.returncode == 3 and "NO_POOR" in r.stderr, "no poor with CI exits 3")
r = run("estimate", "-i", fx("equal_poor.csv"), "-z", "1.41", "--index", "sen", "--ci", "el")
expect(r.returncode == 3, "equal poor incomes with CI exits 3")

r = run("estimate", "-i", fx("three_rows.csv"), "-z", "1.41", "--bogus")
expect(r.returncode == 4, "unknown option exits 4")
r = run("estimate", "-i", fx("three_rows.csv"), "-z", "-1")
expect(r.returncode == 4, "negative poverty line exits 4")

args = ["estimate", "-i", fx("synthetic_households.csv"), "-z", "1.41", "--method", "all",
        "--ci", "all", "--format", "json", "--no-timestamp"]
a, b = run(*args), run(*args)
expect(a.returncode == 0 and a.stdout == b.stdout, "JSON output is byte-identical across runs")
doc = json.loads(a.stdout)
expect(doc["n"] == 395 and doc["rows"]["dropped_empty"] == 5, "synthetic fixture row counts")
expect("generated_at" not in doc, "--no-timestamp omits generated_at")

r = run("estimate", "-i", fx("synthetic_households.csv"), "-z", "1.41", "--format", "csv")
expect(r.stdout.splitlines()[0] == "index,method,n,q,estimate,ci_method,lower,upper,alpha,flags",
       "CSV header")

with tempfile.TemporaryDirectory() as tmp:
    bad = os.path.join(tmp, "bad.cfg")
    with open(bad, "w") as f:
        f.write("reps = 10\nfrobnicate = 3\n")
    r = run("simulate", bad)
    expect(r.returncode == 4 and "line 2" in r.stderr, "bad config exits 4 with line number")

cfg = os.path.join(configs, "comparison_tables.cfg")
a = run("simulate", cfg, "--reps", "1", "--threads", "1")
b = run("simulate", cfg, "--reps", "1", "--threads", "1")
expect(a.returncode == 0 and a.stdout == b.stdout, "simulate --reps 1 is deterministic")
expect(a.stdout.count("\nTable: ") == 12, "simulate prints 12 tables")

if failures:
    sys.exit(1)
