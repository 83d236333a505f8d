import json
import os
import shutil
import subprocess

import pytest

from dghopf.bundle import load_bundle, parse_bundle, serialize_bundle
from dghopf.cli import main, run
from dghopf.corpus_bundles import BUNDLES, corpus_dir
from dghopf.errors import DimensionError, ParseError, ReferenceError

CORPUS = corpus_dir()
FILES = sorted(BUNDLES)
EXAMPLES = [
    (fname, tuple(ex))
    for fname in FILES
    for ex in load_bundle(os.path.join(CORPUS, fname)).examples
]
GOOD_ENTRY = '[["1", "x"], "x", "1"]'


def path(fname):
    return os.path.join(CORPUS, fname)


def read(fname):
    with open(path(fname), encoding="utf-8") as fh:
        return fh.read()


@pytest.mark.parametrize("fname", FILES)
def test_shipped_bundle_round_trips_byte_identically(fname):
    text = read(fname)
    assert serialize_bundle(parse_bundle(text)) == text


@pytest.mark.parametrize("fname", FILES)
def test_shipped_bundle_matches_a_fresh_build(fname):
    assert serialize_bundle(BUNDLES[fname]()) == read(fname)


@pytest.mark.parametrize("fname,example", EXAMPLES, ids=[f"{f}:{' '.join(e)}" for f, e in EXAMPLES])
def test_documented_example_exits_zero(fname, example):
    cmd, *rest = example
    code, text = run([cmd, path(fname), *rest])
    assert code == 0, text


def test_every_bundle_documents_examples():
    for fname in FILES:
        assert load_bundle(path(fname)).examples


# ---------------------------------------------------------------------------
# malformed input


def mutate(tmp_path, new_entry):
    text = read("lambda_x.json")
    assert text.count(GOOD_ENTRY) == 1
    out = tmp_path / "bad.json"
    out.write_text(text.replace(GOOD_ENTRY, new_entry), encoding="utf-8")
    return str(out)


def test_zero_denominator_is_a_positioned_parse_error(tmp_path):
    bad = mutate(tmp_path, '[["1", "x"], "x", "1/0"]')
    with pytest.raises(ParseError) as exc:
        load_bundle(bad)
    line = read("lambda_x.json").splitlines().index("        " + GOOD_ENTRY + ",") + 1
    assert exc.value.line == line
    assert "zero denominator" in str(exc.value)
    code, text = run(["verify", bad])
    assert code == 2 and text.startswith("parse error")


def test_malformed_json_is_a_parse_error(tmp_path):
    bad = tmp_path / "cut.json"
    bad.write_text(read("lambda_x.json")[:200], encoding="utf-8")
    with pytest.raises(ParseError) as exc:
        load_bundle(str(bad))
    assert exc.value.line > 0 and exc.value.column > 0


def test_unknown_label_is_a_reference_error(tmp_path):
    with pytest.raises(ReferenceError):
        load_bundle(mutate(tmp_path, '[["1", "q"], "x", "1"]'))


def test_label_arity_is_a_dimension_error(tmp_path):
    with pytest.raises(DimensionError):
        load_bundle(mutate(tmp_path, '[["1"], "x", "1"]'))


def test_degree_violation_is_a_dimension_error(tmp_path):
    with pytest.raises(DimensionError):
        load_bundle(mutate(tmp_path, '[["1", "x"], "1", "1"]'))


def test_missing_file_exits_two(tmp_path):
    code, text = run(["verify", str(tmp_path / "absent.json")])
    assert code == 2 and text.startswith("error")


# ---------------------------------------------------------------------------
# command behaviour


def test_antipode_output_lines():
    code, text = run(["antipode", path("lambda_x.json")])
    assert code == 0
    assert text.splitlines()[:2] == ["ς(1) = 1", "ς(x) = −x"]


def test_monoid_has_no_antipode_and_exits_one():
    code, text = run(["antipode", path("monoid_bialgebra.json")])
    assert code == 1
    assert "[FAIL] antipode exists" in text


def test_json_output_of_exp():
    code, text = run(["exp", path("interval.json"), "--element", "v", "--format", "json"])
    assert code == 0
    out = json.loads(text)
    assert out["ok"] is True and out["failures"] == []
    assert out["result"]["exp"]["images"]["x"] == {"dt": "1"}
    assert out["result"]["exp"]["blocks"]["1"] == [["1"]]


def test_json_failure_carries_a_witness(tmp_path):
    # Δ(x) = x⊗1 - 1⊗x breaks the counit on x
    text = read("lambda_x.json").replace('["x", ["1", "x"], "1"]', '["x", ["1", "x"], "-1"]', 1)
    bad = tmp_path / "sign.json"
    bad.write_text(text, encoding="utf-8")
    code, out = run(["verify", str(bad), "--kind", "bialgebra", "--format", "json"])
    assert code == 1
    failures = json.loads(out)["failures"]
    assert failures and all("witness" in f for f in failures)


def test_subcomodule_command_reports_the_generated_basis():
    code, text = run(["subcomodule", path("lambda_x.json"), "--target", "cofree", "--vector", '{"z⊗x": "1"}'])
    assert code == 0
    assert "z⊗1" in text and "z⊗x" in text


def test_bad_flag_values_exit_two():
    assert run(["homotopy", path("interval.json"), "--left", "g", "--flow-degree", "-1"])[0] == 2
    assert run(["nope", path("interval.json")])[0] == 2
    assert run(["star", path("interval.json"), "--left", "missing", "--right", "g"])[0] == 2


def test_main_prints_errors_to_stderr(capsys, tmp_path):
    assert main(["verify", str(tmp_path / "absent.json")]) == 2
    captured = capsys.readouterr()
    assert captured.out == "" and "error" in captured.err


@pytest.mark.skipif(shutil.which("dghopf") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["dghopf", "verify", path("ground.json")], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "PASS" in proc.stdout
