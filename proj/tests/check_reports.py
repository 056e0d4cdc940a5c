"""Runs genss commands and validates every JSON report against the schema."""

import json
import subprocess
import sys

import jsonschema

RUNS = [
    (["solve", "--P", "1,0,1", "--f", "delta'"], 0),
    (["solve", "--P", "(x+1)^2", "--f", "H", "--candidate", "H*t*exp(-t)"], 0),
    (["green", "--P", "2,3"], 0),
    (["constants", "--P", "1,1,1"], 0),
    (["circuit", "--V", "switch", "--L", "0", "--R", "2", "--Cap", "0.75", "--A", "3"], 0),
    (["circuit", "--preset", "superconductivity", "--V", "lightning:1", "--L", "2", "--Cap", "0.125"], 0),
    (["circuit", "--V", "lightning:0", "--R", "1/delta(0)", "--Cap", "delta(0)/2"], 0),
    (["verify", "--P", "1,1", "--f", "delta"], 0),
    (["verify", "--P", "1,0,1", "--f", "delta'", "--candidate", "H*sin(t)"], 2),
    (["rod", "--eps", "1e-2", "--T", "1", "--grid", "20"], 0),
]


def main() -> int:
    genss, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args, code in RUNS:
        proc = subprocess.run([genss, *args, "--out", "-"], capture_output=True, text=True)
        label = " ".join(args)
        if proc.returncode != code:
            print(f"FAIL {label}: exit {proc.returncode}, expected {code}\n{proc.stderr}")
            failures += 1
            continue
        report = json.loads(proc.stdout)
        errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
        for e in errors:
            print(f"FAIL {label}: {list(e.path)}: {e.message}")
        failures += bool(errors)
        if report["command"] != args[0]:
            print(f"FAIL {label}: command field {report['command']}")
            failures += 1
    print(f"{len(RUNS) - failures}/{len(RUNS)} reports valid")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
