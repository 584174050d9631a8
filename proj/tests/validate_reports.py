"""Runs the CLI twice per command, checks the JSON reports are byte-identical
and validate against docs/report.schema.json."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

COMMANDS = [
    (["check", "enrichment", "--model", "lattice"], 0),
    (["check", "biproduct"], 0),
    (["chase", "prove", "specs/binary_biproduct.spec"], 0),
    (["chase", "prove", "specs/delta_family.spec"], 0),
    (["chase", "prove", "specs/empty.spec"], 0),
    (["swindle", "run", "specs/swindle.spec"], 0),
    (["swindle", "run", "specs/swindle_invertible.spec"], 0),
    (["verdict", "finiteness", "--model", "finab", "--truncate", "symbolic"], 0),
    (["verdict", "finiteness", "--model", "finab", "--truncate", "5"], 0),
    (["verdict", "finiteness", "--model", "lattice", "--truncate", "3"], 0),
    (["coring", "check", "fixtures/sweedler_z4.json"], 0),
    (["coring", "check", "fixtures/broken_counit_z2.json"], 1),
    (["coring", "frobenius", "fixtures/r2_z2.json"], 0),
    (["coring", "frobenius", "fixtures/square_zero_dual_z2.json"], 1),
    (["coring", "verdict", "--ring", "6", "--truncate", "2"], 0),
    (["coring", "verdict", "--ring", "2", "--truncate", "symbolic"], 0),
    (["demo", "completed-family"], 0),
]


def main() -> int:
    exe, root = sys.argv[1], pathlib.Path(sys.argv[2])
    schema = json.loads((root / "docs" / "report.schema.json").read_text())
    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        for args, want in COMMANDS:
            outs = []
            for k in range(2):
                path = pathlib.Path(tmp) / f"r{k}.json"
                proc = subprocess.run([exe, *args, "--report", "json", "--out", str(path)], cwd=root)
                if proc.returncode != want:
                    print(f"FAIL {' '.join(args)}: exit {proc.returncode}, expected {want}")
                    failures += 1
                outs.append(path.read_bytes())
            if outs[0] != outs[1]:
                print(f"FAIL {' '.join(args)}: reports differ between runs")
                failures += 1
            try:
                jsonschema.validate(json.loads(outs[0]), schema)
            except jsonschema.ValidationError as e:
                print(f"FAIL {' '.join(args)}: {e.message}")
                failures += 1
    print(f"{len(COMMANDS)} commands, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
