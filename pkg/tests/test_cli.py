import json
import subprocess
import sys

import pytest

from gammalab.cli import (EXIT_CAP, EXIT_FALSE, EXIT_OK, EXIT_USAGE, emit_instance,
                          parse_instance_file, run_command)
from gammalab.errors import ParseError
from gammalab.instances import builtin_instances, random_instance, rect_matrix_instance

Z2_FILE = "gammaring v1\nM: 2\nG: 2\nT 0 0 0 : 1\n"


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, gr in builtin_instances().items():
        p = tmp_path / f"{name}.gr"
        p.write_text(emit_instance(gr))
        out[name] = str(p)
    text = emit_instance(rect_matrix_instance(1, 2, 2)).replace("T 0 0 0 : 1 0", "T 0 0 0 : 1 1")
    (tmp_path / "broken.gr").write_text(text)
    out["broken"] = str(tmp_path / "broken.gr")
    (tmp_path / "garbage.gr").write_text("hello\n")
    out["garbage"] = str(tmp_path / "garbage.gr")
    out["dir"] = tmp_path
    return out


def test_parse_z2_roundtrip():
    gr = parse_instance_file(Z2_FILE)
    assert gr == builtin_instances()["z2"]
    assert emit_instance(gr) == Z2_FILE


@pytest.mark.parametrize("gr", list(builtin_instances().values())
                         + [random_instance(s) for s in range(10)], ids=lambda g: g.label())
def test_emit_parse_roundtrip(gr):
    text = emit_instance(gr, ["some comment"])
    back = parse_instance_file(text)
    assert back == gr
    assert emit_instance(back) == emit_instance(gr)


def test_parse_normalizes():
    messy = "# lead\n\ngammaring v1\nG: 2\nM: 2   # trailing\nT 0 0 0 : 3\n"
    assert emit_instance(parse_instance_file(messy)) == Z2_FILE


@pytest.mark.parametrize("text,line", [
    ("", 1),
    ("gammaring v2\n", 1),
    ("gammaring v1\nM: 2\nG: 2\nT 0 0 0 : 1\nT 0 0 0 : 1\n", 5),
    ("gammaring v1\nM: 2\nG: 2\nT 0 1 0 : 1\n", 4),
    ("gammaring v1\nM: 2\nG: 2\nT 0 0 0 : 1 1\n", 4),
    ("gammaring v1\nM: 2\nT 0 0 0 : 1\n", 3),
    ("gammaring v1\nM: 2\nG: 2\nT 0 0 : 1\n", 4),
    ("gammaring v1\nM: 2\nG: 2\nT 0 0 0 1\n", 4),
    ("gammaring v1\nM: x\n", 2),
    ("gammaring v1\nM: 1\n", 2),
    ("gammaring v1\nM: 2\nM: 2\n", 3),
    ("gammaring v1\nM: 4\nG: 2\nT 0 0 0 : 1\n", 4),
    ("gammaring v1\nM: 2\nG: 2\nwhat\n", 4),
    ("gammaring v1\nM: 2\n", 2),
])
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as exc:
        parse_instance_file(text)
    assert exc.value.line == line


def run(argv, capsys):
    code = run_command([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


# -- exit-code contract, one family at a time ------------------------------------------

def test_validate_codes(files, capsys):
    assert run(["validate", files["rect12"]], capsys)[0] == EXIT_OK
    code, out, _ = run(["validate", files["broken"]], capsys)
    assert code == EXIT_FALSE and "witness" in out
    assert run(["validate", files["garbage"]], capsys)[0] == EXIT_USAGE
    assert run(["validate", "/nonexistent.gr"], capsys)[0] == EXIT_USAGE


def test_analyze_codes(files, capsys):
    code, _, _ = run(["analyze", files["dual"], "--json", files["dir"] / "a.json"], capsys)
    assert code == EXIT_OK
    doc = json.loads((files["dir"] / "a.json").read_text())
    assert doc["hypothesis_notes"]["semiprime"] is False
    assert run(["analyze", files["broken"]], capsys)[0] == EXIT_FALSE
    assert run(["analyze", files["garbage"]], capsys)[0] == EXIT_USAGE
    assert run(["analyze", files["m2f2_x_f4"], "--cap", "10"], capsys)[0] == EXIT_CAP


def test_enum_maps_codes(files, capsys):
    code, out, _ = run(["enum-maps", files["m2f2_x_f4"], "--role", "endomorphism", "--scp",
                        "--json", "-"], capsys)
    assert code == EXIT_OK
    assert json.loads(out)["counters"]["maps"] == 3
    assert run(["enum-maps", files["broken"], "--role", "derivation"], capsys)[0] == EXIT_FALSE
    assert run(["enum-maps", files["z2"], "--role", "bogus"], capsys)[0] == EXIT_USAGE
    assert run(["enum-maps", files["m2f2_x_f4"], "--role", "endomorphism",
                "--budget", "20"], capsys)[0] == EXIT_CAP


def test_verify_codes(files, capsys):
    assert run(["verify", files["rect12"], "--theorem", "cor_prime_scp_identity"],
               capsys)[0] == EXIT_OK
    bad = files["dir"] / "upper.gr"
    bad.write_text(emit_instance(random_instance(11)))
    assert run(["verify", bad, "--theorem", "thm_left_derivation_central"],
               capsys)[0] == EXIT_FALSE
    assert run(["verify", files["rect12"], "--theorem", "nope"], capsys)[0] == EXIT_USAGE
    assert run(["verify", files["m2f2_x_f4"], "--theorem", "thm_scp_endomorphism",
                "--budget", "10"], capsys)[0] == EXIT_CAP


def test_verify_all_codes(files, capsys):
    assert run(["verify-all", files["m2f2_x_f4"], "--n-max", "2"], capsys)[0] == EXIT_OK
    assert run(["verify-all", files["broken"]], capsys)[0] == EXIT_FALSE
    assert run(["verify-all"], capsys)[0] == EXIT_USAGE
    assert run(["verify-all", files["rect12xz2"], "--budget", "5"], capsys)[0] == EXIT_CAP


def test_search_codes(capsys):
    assert run(["search", "--target", "left-derivation-not-central", "--source", "builtin",
                "--semiprime", "yes"], capsys)[0] == EXIT_OK
    code, out, _ = run(["search", "--target", "left-derivation-not-central", "--semiprime",
                        "no", "--json", "-"], capsys)
    assert code == EXIT_FALSE and json.loads(out)["witnesses"]
    assert run(["search", "--target", "x"], capsys)[0] == EXIT_USAGE
    assert run(["search", "--target", "scp-endo-defect-not-central", "--budget", "5"],
               capsys)[0] == EXIT_CAP


def test_instance_codes(files, capsys):
    out_file = files["dir"] / "r.gr"
    assert run(["instance", "rect", 1, 2, 2, "-o", out_file], capsys)[0] == EXIT_OK
    assert parse_instance_file(out_file.read_text()) == rect_matrix_instance(1, 2, 2)
    code, out, _ = run(["instance", "z2"], capsys)
    assert code == EXIT_OK and out.startswith("gammaring v1")
    assert run(["instance", "rect", 1, 2], capsys)[0] == EXIT_USAGE
    assert run(["instance", "bogus"], capsys)[0] == EXIT_USAGE
    assert run(["instance", "rect", 8, 8, 2, "-o", out_file], capsys)[0] == EXIT_CAP


def test_instance_recipes_roundtrip(files, capsys):
    for argv in (["m2f2_x_f4"], ["product", "rect12", "z2"], ["random", 3, "rect"],
                 ["zn", 6], ["dual"], ["trivial"]):
        p = files["dir"] / "x.gr"
        assert run(["instance", *argv, "-o", p], capsys)[0] == EXIT_OK
        assert run(["validate", p], capsys)[0] == EXIT_OK


def test_report_keys_and_determinism(files, capsys):
    a, b = files["dir"] / "a.json", files["dir"] / "b.json"
    for p in (a, b):
        assert run(["verify-all", files["rect12"], "--json", p, "--quiet"], capsys)[0] == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    for key in ("tool_version", "instance", "command", "hypothesis_notes", "verdict",
                "witnesses", "counters", "seed", "elapsed"):
        assert key in doc
    assert doc["elapsed"] is None and len(doc["instance"]["hash"]) == 64
    run(["verify-all", files["rect12"], "--json", a, "--timing", "--quiet"], capsys)
    assert isinstance(json.loads(a.read_text())["elapsed"], float)


def test_console_script(files):
    proc = subprocess.run([sys.executable, "-m", "gammalab.cli", "validate", files["z2"]],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "verdict=true" in proc.stdout
