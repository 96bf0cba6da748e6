#!/usr/bin/env python3
"""Runs every JSON-emitting potts subcommand and validates its output."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource


def load_registry(schema_dir):
    schemas = {}
    registry = Registry()
    for path in sorted(schema_dir.glob("*.schema.json")):
        schema = json.loads(path.read_text())
        registry = registry.with_resource(schema["$id"], Resource.from_contents(schema))
        schemas[path.name.removesuffix(".schema.json")] = schema
    return schemas, registry


def run(binary, args):
    proc = subprocess.run([binary, *args], capture_output=True, text=True, timeout=300)
    if proc.returncode != 0:
        raise RuntimeError(f"{args} exited {proc.returncode}: {proc.stderr.strip()}")
    return proc.stdout


def main():
    binary, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    schemas, registry = load_registry(schema_dir)
    with tempfile.TemporaryDirectory(prefix="potts_schema_") as tmpdir:
        return check(binary, schemas, registry, pathlib.Path(tmpdir))


def check(binary, schemas, registry, tmp):
    path3 = tmp / "path3.txt"
    path3.write_text("graph 3\nedge 0 1\nedge 1 2\npin 0 1\n")
    c4 = tmp / "c4.txt"
    c4.write_text("graph 4\nedge 0 1\nedge 1 2\nedge 2 3\nedge 3 0\n")
    k4 = tmp / "k4.txt"
    k4.write_text("graph 4\nedge 0 1\nedge 0 2\nedge 0 3\nedge 1 2\nedge 1 3\nedge 2 3\n")

    soft = ["--q", "4", "--beta", "0.5"]
    hard = ["--q", "3", "--beta", "0"]
    cases = [
        ("exact", ["exact", "--instance", str(path3), *hard, "--marginals"]),
        ("exact", ["exact", "--instance", str(k4), *hard]),
        ("exact", ["exact", "--instance", str(c4), *soft]),
        ("marginal", ["marginal", "--instance", str(path3), *hard, "--vertex", "2", "--depth", "3"]),
        ("marginal", ["marginal", "--instance", str(c4), *soft, "--vertex", "1"]),
        ("partition", ["partition", "--instance", str(c4), *hard, "--depth", "4"]),
        ("partition", ["partition", "--instance", str(c4), *soft, "--eps", "0.1", "--order-seed", "3"]),
        ("sample-footer", ["sample", "--instance", str(c4), *hard, "--depth", "3", "--samples", "3"]),
        ("verify-contraction", ["verify-contraction", "--family", "caterpillar", "--n", "8", "--k", "2",
                                "--q", "6", "--beta", "0", "--l-max", "5"]),
        ("verify-contraction", ["verify-contraction", "--instance", str(c4), *soft, "--l-max", "3",
                                "--constant-delta", "0.5"]),
        ("verify-sparse", ["verify-sparse", "--family", "path", "--n", "10", "--q", "5", "--beta", "0",
                           "--l-max", "3"]),
        ("verify-sparse", ["verify-sparse", "--family", "gnp", "--n", "60", "--d", "3", "--q", "5",
                           "--beta", "0", "--l-max", "3", "--mode", "sampled", "--trials", "20"]),
        ("verify-gnp", ["verify-gnp", "--n", "200", "--d", "3", "--q", "12", "--beta", "0",
                        "--l-max", "5", "--trials", "50"]),
        ("expected-contraction", ["expected-contraction", "--n", "1000", "--delta", "3", "--q", "11",
                                  "--beta", "0.25"]),
    ]
    failures = 0
    for name, args in cases:
        try:
            out = run(binary, args)
            text = out.strip().splitlines()[-1] if name == "sample-footer" else out
            jsonschema.validate(json.loads(text), schemas[name], registry=registry)
            print(f"ok   {name}: {' '.join(args[:1])}")
        except (RuntimeError, jsonschema.ValidationError, json.JSONDecodeError) as exc:
            failures += 1
            print(f"FAIL {name}: {exc}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
