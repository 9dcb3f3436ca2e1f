"""Runs the CLI over a fixed set of configurations and checks every report.

usage: check_reports.py <semik binary> <schema file> <source dir>
"""
import json
import os
import subprocess
import sys

import jsonschema

SEMIK, SCHEMA, SRC = sys.argv[1:4]
EX = os.path.join(SRC, "data", "examples")

RUNS = [
    (0, ["hull", "--preset", "free", "-n", "1", "--depth", "3", "--check", "laws,independence,rlcm"]),
    (0, ["hull", "--preset", "numerical", "--gens", "2,3", "--depth", "3", "--check", "laws,independence,rlcm"]),
    (0, ["hull", "--preset", "bs", "-k", "2", "-l", "3", "--depth", "2", "--check", "laws,rlcm"]),
    (0, ["hull", "--preset", "bs", "-k", "-2", "-l", "3", "--depth", "2", "--check", "toeplitz", "--element", "a b a^-1"]),
    (0, ["hull", "--presentation", os.path.join(EX, "free2.pres"), "--seed-order", "b,a", "--check", "laws"]),
    (0, ["hull", "--presentation", os.path.join(EX, "plactic_like.pres"), "--check", "rlcm"]),
    (0, ["paction", "--example", "z2_swap", "--roundtrip"]),
    (0, ["paction", "--example", "n_window"]),
    (0, ["paction", "--from-file", os.path.join(EX, "s3_points.json")]),
    (0, ["paction", "--preset", "bs", "-k", "2", "-l", "3", "--depth", "2"]),
    (0, ["orbits", "--example", "s3_atoms"]),
    (0, ["orbits", "--example", "n_window"]),
    (0, ["orbits", "--preset", "numerical", "--gens", "2,3", "--depth", "2"]),
    (0, ["smashlab", "--verify", "all"]),
    (0, ["smashlab", "--action", "chain3", "--verify", "nilpotent,neumann"]),
    (0, ["smashlab", "--action", "n_window", "--sigma", "0,1", "--seed", "2+N"]),
    (0, ["ktheory", "--preset", "bs", "-k", "-2", "-l", "3"]),
    (0, ["ktheory", "--preset", "artin", "-n", "3", "-m", "3"]),
    (0, ["ktheory", "--preset", "one_relator", "-u", "ab", "-v", "cd", "--generators", "5"]),
    (0, ["ktheory", "--preset", "one_relator", "-u", "ab", "-v", "ba", "--generators", "inf"]),
    (0, ["ktheory", "--preset", "numerical", "--gens", "2,3"]),
    (0, ["tiling", "--points", "0,1,2"]),
    (0, ["tiling", "--points", "(0,0),(1,0),(0,1)"]),
    (0, ["--config", os.path.join(EX, "ktheory_bs.conf")]),
    (0, ["--config", os.path.join(EX, "smash_z2.conf")]),
    (0, ["--config", os.path.join(EX, "tiling_line.conf")]),
    (2, ["ktheory", "--preset", "congruence"]),
    (2, ["hull", "--preset", "bs", "--depth", "0"]),
    (2, ["tiling", "--points", ",".join(str(i) for i in range(30))]),
]


def main():
    with open(SCHEMA) as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)
    bad = 0
    # the schema itself must reject a bounded verdict without its bound
    probe = {"schema_version": "1.0", "tool": "semik", "version": "0.3.0", "subcommand": "hull",
             "config": {"subcommand": "hull", "threads": 1, "values": {}},
             "result": {"checks": [{"verdict": "RightLCM", "provenance": "verified-to-bound"}]}}
    if validator.is_valid(probe):
        print("FAIL schema accepts a RightLCM verdict with no bound")
        bad += 1
    for want, args in RUNS:
        outs = []
        for _ in range(2):
            p = subprocess.run([SEMIK] + args, capture_output=True, cwd=SRC)
            outs.append(p)
        label = " ".join(args)
        if outs[0].returncode != want:
            print(f"FAIL exit {outs[0].returncode} != {want}: {label}\n{outs[0].stderr.decode()}")
            bad += 1
            continue
        if outs[0].stdout != outs[1].stdout:
            print(f"FAIL not byte-identical: {label}")
            bad += 1
        report = json.loads(outs[0].stdout)
        errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
        for e in errors[:3]:
            print(f"FAIL schema: {label}: {'/'.join(map(str, e.path))}: {e.message[:200]}")
        bad += bool(errors)
        if not errors:
            print(f"ok   {label}")
    print(f"{len(RUNS) - bad}/{len(RUNS)} runs clean")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
