#!/usr/bin/env python3
"""Command-line checks: exit codes, stderr diagnostics, JSON schemas, DOT syntax and golden files."""

import argparse
import json
import pathlib
import subprocess
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parents[2]
DATA = ROOT / "testdata"
GOLDEN = DATA / "golden"
SCHEMAS = ROOT / "schemas"
SKIP = 77


class Failure(Exception):
    pass


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def validate(doc, name):
    import jsonschema

    try:
        jsonschema.validate(doc, schema(name))
    except jsonschema.ValidationError as e:
        raise Failure(f"{name} schema: {e.message} at {list(e.absolute_path)}") from None


def run(binary, args, code=0):
    p = subprocess.run([binary, *args], cwd=DATA, capture_output=True, text=True, timeout=300)
    if p.returncode != code:
        raise Failure(f"{args}: exit {p.returncode}, wanted {code}\nstdout: {p.stdout[-2000:]}\nstderr: {p.stderr[-2000:]}")
    if code != 0:
        lines = [l for l in p.stderr.splitlines() if l.strip()]
        if not lines:
            raise Failure(f"{args}: no diagnostic on stderr")
        diag = json.loads(lines[-1])
        validate(diag, "diagnostic")
        if diag["exit_code"] != code:
            raise Failure(f"{args}: diagnostic says exit {diag['exit_code']}")
    return p


def run_json(binary, args, name, code=0, seed=1):
    p = run(binary, ["--seed", str(seed), "--json", *args], code)
    doc = json.loads(p.stdout)
    validate(doc, name)
    if doc["seed"] != seed:
        raise Failure(f"{args}: seed {doc['seed']} echoed, wanted {seed}")
    return doc


def golden(name, text, update):
    path = GOLDEN / name
    if update:
        path.write_text(text)
        return
    if not path.exists():
        raise Failure(f"missing golden {path}")
    want = path.read_text()
    if want != text:
        import difflib

        diff = "".join(difflib.unified_diff(want.splitlines(True), text.splitlines(True), "golden", "actual"))
        raise Failure(f"golden {name} differs:\n{diff}")


def parse_dot(text):
    try:
        import pydot
    except ImportError:
        raise SystemExit(SKIP)
    graphs = pydot.graph_from_dot_data(text)
    if not graphs or len(graphs) != 1:
        raise Failure("DOT output does not parse")
    return graphs[0]


# ---------------------------------------------------------------------------------------------


def case_jet_text(b, update):
    golden("jet_node_m3.txt", run(b, ["jet", "node.var", "--m", "3"]).stdout, update)
    golden("jet_a1_m2_fiber.txt", run(b, ["jet", "a1.var", "--m", "2", "--fiber"]).stdout, update)


def case_jet_json(b, update):
    d = run_json(b, ["jet", "a1.var", "--m", "2", "--fiber"], "jet")
    if d["generators"] != ["x#1*y#1 - z#1^2"] or d["dim"] != 5:
        raise Failure(f"fiber of A1 at order 2: {d['generators']} dim {d['dim']}")
    d = run_json(b, ["jet", "node.var", "--m", "3", "--fiber"], "jet", seed=9)
    if len(d["generators"]) != 2:
        raise Failure("node fiber at order 3 should have 2 nonzero generators")


def case_input_errors(b, update):
    run(b, ["jet", "missing.var", "--m", "2"], 2)
    run(b, ["jet", "bad_syntax.var", "--m", "1"], 2)
    run(b, ["jet", "bad_point.var", "--m", "1"], 2)
    run(b, ["components", "nonsense", "--m", "2"], 2)
    run(b, ["components", "cone:3:2", "--m", "2"], 2)
    run(b, ["verify", "nosuchsuite"], 2)
    run(b, ["enum", "node.var", "--m", "2", "--q", "4"], 2)
    run(b, ["lct", "x^2 + y, y^3"], 2)
    run(b, ["hdv-cert", "--e", "1", "--type", "F4"], 2)
    run(b, ["jet", "node.var"], 2)
    run(b, [], 2)


def case_resource_cap(b, update):
    run(b, ["enum", "quadric_cone.var", "--m", "6", "--q", "7"], 3)


def case_variety_file(b, update):
    with tempfile.TemporaryDirectory() as tmp:
        f = pathlib.Path(tmp) / "v.var"
        f.write_text("vars: x, y\npoly: x*y\ndim: 2\n")
        run(b, ["jet", str(f), "--m", "1"], 2)
        f.write_text("vars: x, y\nfoo: 1\n")
        run(b, ["jet", str(f), "--m", "1"], 2)
        f.write_text("# only a comment\nvars: x, y\npoly: x*y   # trailing comment\npoint: 0, 1/2\n")
        d = run_json(b, ["jet", str(f), "--m", "1", "--fiber"], "jet")
        if d["generators"] != ["1/2*x#1"]:
            raise Failure(f"shifted fiber: {d['generators']}")


def case_components(b, update):
    golden("components_cA2_m4.txt", run(b, ["components", "cA:2", "--m", "4", "--oracle", "5"]).stdout, update)
    d = run_json(b, ["components", "cA:2", "--m", "4", "--oracle", "5"], "components", seed=3)
    if d["count"] != 2 or not d["certified"] or not d["oracle"]["union_equals_fiber"]:
        raise Failure("cA:2 at order 4 should certify 2 components")
    d = run_json(b, ["components", "node", "--m", "3", "--oracle", "5"], "components")
    if d["count"] != 3 or not any("erratum candidate" in n for n in d["notes"]):
        raise Failure("node at order 3: count and note")


def case_graph(b, update):
    dot = run(b, ["graph", "cA:2", "--max", "5", "--dot"]).stdout
    g = parse_dot(dot)
    if len(g.get_edges()) != 9:
        raise Failure(f"cA:2 graph should have 9 edges, DOT has {len(g.get_edges())}")
    golden("graph_cA2_M5.dot", dot, update)
    d = run_json(b, ["graph", "cA:2", "--max", "5"], "graph")
    if d["chains"]["m0"] != 2 or d["chains"]["count"] != 2 or not d["chains"]["all_reach_max"]:
        raise Failure(f"cA:2 chains: {d['chains']}")
    with tempfile.TemporaryDirectory() as tmp:
        dot_path, json_path = pathlib.Path(tmp) / "g.dot", pathlib.Path(tmp) / "g.json"
        run(b, ["graph", "node", "--max", "4", "--dot", str(dot_path), "--json", str(json_path), "--threads", "2"])
        parse_dot(dot_path.read_text())
        doc = json.loads(json_path.read_text())
        validate(doc, "graph")
        serial = run(b, ["graph", "node", "--max", "4", "--dot"]).stdout
        if serial != dot_path.read_text():
            raise Failure("threaded and serial graphs differ")
        bold = [v for v in doc["vertices"] if v["arc_type"] and v["order"] >= 2]
        if len(bold) != 2 * 3:
            raise Failure(f"node graph should flag 2 arc-type vertices per order >= 2, got {len(bold)}")


def case_lct(b, update):
    golden("lct_x2_y2_z3.txt", run(b, ["lct", "x^2,y^2,z^3", "--check"]).stdout, update)
    d = run_json(b, ["lct", "x^2,y^2,z^3", "--check"], "lct")
    if d["lct"] != "4/3" or d["vertex_oracle"] != "4/3" or not d["witness_verified"]:
        raise Failure(f"lct: {d}")


def case_hdv(b, update):
    d = run_json(b, ["hdv-cert", "--e", "2", "--type", "E6"], "hdv")
    if d["mld"] != "1" or not d["certified"] or d["dim_minus_ecodim"] != 1:
        raise Failure("E6 at e=2 should certify with mld 1")
    golden("hdv_e2_E6.json", json.dumps(d, indent=2) + "\n", update)
    d = run_json(b, ["hdv-cert", "--e", "1", "--type", "A", "--n", "2"], "hdv", seed=5)
    if d["mld"] != "1":
        raise Failure("A2 surface should certify")
    d = run_json(b, ["hdv-cert", "--e", "2", "--type", "D", "--n", "4"], "hdv", code=1)
    if d["certified"] or d["singular_locus_dim"] != 1:
        raise Failure("D4 at e=2 has a singular line")


def case_invariants(b, update):
    golden("invariants_cusp_shifted.txt", run(b, ["invariants", "cusp_shifted.var"]).stdout, update)
    d = run_json(b, ["invariants", "quadric_cone.var"], "invariants")
    if d["embedding"]["ecodim"] != 1 or d["multiplicity"] != 2:
        raise Failure(f"quadric cone: {d}")
    d = run_json(b, ["invariants", "d4_threefold.var", "--section", "1"], "invariants", seed=4)
    if d["embedding"]["dim"] != 2 or d["section"]["seed"] < 4:
        raise Failure(f"section: {d}")
    run(b, ["invariants", "node.var", "--section", "1"], 2)


def case_enum(b, update):
    golden("enum_node_m2_q5.txt", run(b, ["enum", "node.var", "--m", "2", "--q", "5", "--profile", "x,y"]).stdout, update)
    one = run_json(b, ["enum", "quadric_cone.var", "--m", "2", "--q", "3"], "enum")
    three = run_json(b, ["enum", "quadric_cone.var", "--m", "2", "--q", "3", "--shards", "3"], "enum")
    if one["total"] != "2673" or one["total"] != three["total"]:
        raise Failure(f"cone fiber counts {one['total']} vs {three['total']}")


def case_verify(b, update):
    d = run_json(b, ["verify", "lct"], "verify")
    if not d["pass"] or d["results"][0]["criterion"] != 5:
        raise Failure("lct suite should pass")
    p = run(b, ["verify", "cone"])
    if "PASS criterion 8" not in p.stdout:
        raise Failure("cone suite table")
    d = run_json(b, ["verify", "hdv"], "verify", code=1)
    failing = [l for l in d["results"][0]["lines"] if l.startswith("FAIL")]
    if len(failing) != 2:
        raise Failure(f"hdv suite failures: {failing}")


CASES = {name[5:]: fn for name, fn in globals().items() if name.startswith("case_")}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bin")
    ap.add_argument("--case")
    ap.add_argument("--list", action="store_true")
    ap.add_argument("--update", action="store_true", help="rewrite golden files")
    a = ap.parse_args()
    if a.list:
        print(";".join(CASES))
        return 0
    a.bin = str(pathlib.Path(a.bin).resolve())
    names = [a.case] if a.case else list(CASES)
    try:
        for n in names:
            CASES[n](a.bin, a.update)
    except ModuleNotFoundError as e:
        print(f"skipped: {e}", file=sys.stderr)
        return SKIP
    except Failure as e:
        print(f"FAIL {n}: {e}", file=sys.stderr)
        return 1
    print("ok", " ".join(names))
    return 0


if __name__ == "__main__":
    sys.exit(main())
