#!/usr/bin/env python3
"""Runs each equipart subcommand and validates its JSON against docs/schemas."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema


def main() -> int:
    binary, schemas = pathlib.Path(sys.argv[1]), pathlib.Path(sys.argv[2])
    tmp = pathlib.Path(tempfile.mkdtemp(prefix="equipart_schema_"))

    def run(*args: str) -> dict:
        done = subprocess.run([str(binary), *args], capture_output=True, text=True, check=True)
        return json.loads(done.stdout)

    mesh = {"n": 2, "simplices": [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 1]],
            "coords_at_vertices": [[0, 0], [1, 0], [0, 1], [-1, 0], [0, -1]],
            "values": [[0.1, 0.07], [1.1, 0.07], [0.1, 1.07], [-0.9, 0.07], [0.1, -0.93]]}
    (tmp / "mesh.json").write_text(json.dumps(mesh))
    realized = run("realize", "--orbit-id", "3")["result"]
    (tmp / "testmap.json").write_text(json.dumps({
        "configuration": realized["configuration"],
        "full_measures": [{"kind": "interval", "d": 5, "lo": 0, "hi": 8},
                          {"kind": "interval", "d": 5, "lo": 9, "hi": 17}],
        "bisector_measures": [{"kind": "interval", "d": 5, "lo": 18, "hi": 20}]}))

    cases = [
        ("orbits", ["orbits"]),
        ("orbits", ["orbits", "--dim", "7", "--planes", "3", "--constraints", "F,F,F"]),
        ("realize", ["realize", "--orbit-id", "0"]),
        ("verify", ["verify", "--all"]),
        ("corollary", ["corollary"]),
        ("paper-report", ["paper-report", "--json"]),
        ("bu-check", ["bu-check", "--n", "3", "--trials", "5"]),
        ("pl-parity", ["pl-parity", "--mesh", str(tmp / "mesh.json")]),
        ("testmap", ["testmap", "eval", "--input", str(tmp / "testmap.json")]),
    ]
    failures = 0
    jsonschema.Draft202012Validator.check_schema(json.loads((schemas / "mesh.schema.json").read_text()))
    jsonschema.validate(mesh, json.loads((schemas / "mesh.schema.json").read_text()))
    for name, args in cases:
        schema = json.loads((schemas / f"{name}.schema.json").read_text())
        jsonschema.Draft202012Validator.check_schema(schema)
        try:
            jsonschema.validate(run(*args), schema)
            print(f"ok   {' '.join(args)}")
        except jsonschema.ValidationError as e:
            failures += 1
            print(f"FAIL {' '.join(args)}: {e.message}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
