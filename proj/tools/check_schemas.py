#!/usr/bin/env python3
"""Run each mubgeo report command and validate its output against schemas/."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource


def main() -> int:
    if len(sys.argv) != 3:
        print("usage: check_schemas.py MUBGEO_BINARY SCHEMA_DIR", file=sys.stderr)
        return 2
    binary, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    schemas = {p.name: json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
    registry = Registry().with_resources(
        (s["$id"], Resource.from_contents(s)) for s in schemas.values()
    )

    def validate(instance, name):
        schema = schemas[name + ".schema.json"]
        cls = jsonschema.validators.validator_for(schema)
        cls(schema, registry=registry).validate(instance)

    runs = {
        "verify": ["verify", "--d", "3,5"],
        "geometry": ["geometry", "--d", "3"],
        "oracle": ["oracle", "--d", "3", "--prep", "line:1,2"],
        "findings": ["findings", "--d", "3"],
    }
    failures = 0
    for name, args in runs.items():
        out = subprocess.run([binary, *args], check=True, capture_output=True, text=True).stdout
        try:
            validate(json.loads(out), name)
            print(f"ok {name}")
        except jsonschema.ValidationError as e:
            failures += 1
            print(f"FAIL {name}: {e.message}")

    with tempfile.TemporaryDirectory() as tmp:
        out = pathlib.Path(tmp) / "sim.json"
        subprocess.run([binary, "simulate", "--d", "3", "--trials", "300", "--seed", "4", "--out", str(out)],
                       check=True, capture_output=True)
        try:
            validate(json.loads(out.read_text()), "simulate")
            for line in out.with_suffix(".transcripts.jsonl").read_text().splitlines():
                validate(json.loads(line), "transcript")
            print("ok simulate, transcript")
        except jsonschema.ValidationError as e:
            failures += 1
            print(f"FAIL simulate: {e.message}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
