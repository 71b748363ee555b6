"""Validate samples, goldens and live CLI output against schemas/."""
import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

root = pathlib.Path(sys.argv[1])
cli = sys.argv[2]
schemas = {p.name.removesuffix(".schema.json"): json.loads(p.read_text()) for p in (root / "schemas").glob("*.schema.json")}
registry = Registry().with_resources((s["$id"], Resource.from_contents(s)) for s in schemas.values())
failures = 0


def check(label, doc, name):
    global failures
    errors = list(jsonschema.Draft202012Validator(schemas[name], registry=registry).iter_errors(doc))
    status = "ok" if not errors else "FAILED"
    print(f"{status:6} {label} against {name}")
    for e in errors[:3]:
        print(f"       {list(e.absolute_path)}: {e.message}")
    failures += bool(errors)


def run(*args):
    out = subprocess.run([cli, *args], capture_output=True, text=True)
    return json.loads(out.stdout)


golden = {
    "classify_sl3": "datum", "classify_sl3_diagonal": "datum", "epipelagic_a2_3": "datum",
    "homogeneous_a2_3_2": "datum", "jlattice_sl2_toral": "jlattice", "jlattice_sl3_two_break": "jlattice",
    "list_tori_a2": "list_tori", "moveability_sl3_two_break": "moveability", "moveability_unchecked": "moveability",
    "partition_check_a2": "partition_check", "regular_numbers_g2": "regular_numbers",
    "verify_sl2_default": "verify_sl2", "verify_sl2_odd": "verify_sl2",
}
for f, name in golden.items():
    check(f"golden/{f}", json.loads((root / "tests/golden" / f"{f}.json").read_text()), name)

samples = {
    "sl3_example_tail": "classify_input", "sl3_diagonal_tail": "classify_input", "sl2_depth1_toral": "datum",
    "sl3_two_break": "datum", "sl3_unchecked_control": "datum", "sl2_odd_window": "sl2_input",
}
for f, name in samples.items():
    check(f"samples/{f}", json.loads((root / "samples" / f"{f}.json").read_text()), name)

check("yu-sequence output", run("yu-sequence", "--input", str(root / "samples/sl3_two_break.json")), "yu_sequence")
check("error output", run("epipelagic", "--type", "A2", "--m", "0"), "error")
sys.exit(1 if failures else 0)
