#!/usr/bin/env python3
"""Run the acceptance suite and show one PASS/FAIL line per criterion."""

import pathlib
import subprocess
import sys

ROOT = pathlib.Path(__file__).resolve().parents[1]

proc = subprocess.run(
    [sys.executable, "-m", "pytest", "tests/test_acceptance.py", "-q", "-s",
     "--no-header"],
    cwd=ROOT, capture_output=True, text=True)

failed = []
for line in proc.stdout.splitlines():
    if "ACCEPTANCE" in line:
        print(line[line.index("ACCEPTANCE"):])
    if "FAILED" in line or "ERROR" in line:
        failed.append(line)
if proc.returncode != 0:
    print()
    for line in failed:
        print(line)
    print("\nfull pytest output:\n")
    print(proc.stdout[-4000:])
print()
print("acceptance suite:", "PASS" if proc.returncode == 0 else "FAIL")
sys.exit(proc.returncode)
