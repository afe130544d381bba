import json

import jsonschema
import pytest

import khroma.chromatic
from khroma.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_INPUT, EXIT_OK, main

from conftest import graph_path

SERIES_SCHEMA = {
    "type": "object",
    "required": ["D", "terms"],
    "properties": {
        "D": {"type": "integer", "minimum": 0},
        "terms": {"type": "array", "items": {
            "type": "object",
            "required": ["a", "d", "c"],
            "properties": {k: {"type": "integer"} for k in ("a", "d", "c")},
            "additionalProperties": False,
        }},
    },
    "additionalProperties": False,
}


def table_schema(index: str, construction: bool) -> dict:
    props = {
        "D": {"type": "integer", "minimum": 0},
        "entries": {"type": "array", "items": {
            "type": "object",
            "required": [index, "a", "d", "dim"],
            "properties": {index: {"type": "integer"}, "a": {"type": "integer"},
                           "d": {"type": "integer"}, "dim": {"type": "integer", "minimum": 1}},
            "additionalProperties": False,
        }},
    }
    if construction:
        props["construction"] = {"enum": ["cube", "koszul"]}
    return {"type": "object", "required": list(props), "properties": props,
            "additionalProperties": False}


UNIPOLY_SCHEMA = {
    "type": "object",
    "required": ["coeffs"],
    "properties": {"coeffs": {"type": "array", "items": {"type": "integer"}}},
}

BIPOLY_SCHEMA = {
    "type": "object",
    "required": ["terms"],
    "properties": {"terms": {"type": "array", "items": {
        "type": "object",
        "required": ["q", "v", "c"],
        "properties": {k: {"type": "integer"} for k in ("q", "v", "c")},
    }}},
}


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_poly_text(capsys):
    assert run(capsys, "poly", "chromatic", graph_path("P2")) == (EXIT_OK, "λ^2 - λ\n", "")
    assert run(capsys, "poly", "dichromatic", graph_path("loop"))[1] == "v - q·v\n"


def test_poly_json(capsys):
    code, out, _ = run(capsys, "poly", "chromatic", graph_path("C3"), "--format", "json")
    obj = json.loads(out)
    jsonschema.validate(obj, UNIPOLY_SCHEMA)
    assert obj["coeffs"] == [0, 2, -3, 1]
    code, out, _ = run(capsys, "poly", "dichromatic", graph_path("double edge"), "--format", "json")
    obj = json.loads(out)
    jsonschema.validate(obj, BIPOLY_SCHEMA)
    keys = [(t["q"], t["v"]) for t in obj["terms"]]
    assert keys == sorted(keys)


def test_series_json(capsys):
    code, out, _ = run(capsys, "series", "chromatic", graph_path("C3"), "--max-q", 5, "--format", "json")
    obj = json.loads(out)
    jsonschema.validate(obj, SERIES_SCHEMA)
    assert [t["c"] for t in obj["terms"]] == [-1, -1, 2, 5]
    code, out, _ = run(capsys, "series", "dichromatic", graph_path("N1"), "--max-q", 2, "--format", "json")
    jsonschema.validate(json.loads(out), SERIES_SCHEMA)
    assert code == EXIT_OK


def test_homology_chromatic_table(capsys):
    code, out, _ = run(capsys, "homology", "chromatic", graph_path("P2"), "--max-q", 4)
    assert code == EXIT_OK
    row = [line for line in out.splitlines() if line.strip().startswith("0   0 |")][0]
    assert row.split("|")[1].split() == ["0", "1", "2", "3", "4"]


def test_homology_json_schemas(capsys):
    code, out, _ = run(capsys, "homology", "chromatic", graph_path("C3"), "--max-q", 3, "--format", "json")
    obj = json.loads(out)
    jsonschema.validate(obj, table_schema("i", construction=True))
    code, out, _ = run(capsys, "homology", "dichromatic", graph_path("N1"), "--max-q", 2,
                       "--format", "json")
    obj = json.loads(out)
    jsonschema.validate(obj, table_schema("j", construction=False))
    assert {e["j"] for e in obj["entries"]} == {0}
    keys = [(e["j"], e["a"], e["d"]) for e in obj["entries"]]
    assert keys == sorted(keys)


def test_output_independent_of_workers(capsys):
    outs = set()
    for w in (1, 2):
        code, out, _ = run(capsys, "homology", "dichromatic", graph_path("C3"), "--max-q", 3,
                           "--format", "json", "--workers", w)
        outs.add(out)
    assert len(outs) == 1


def test_repeated_runs_identical(capsys):
    first = run(capsys, "verify", graph_path("P3"), "--max-q", 3, "--format", "json")
    second = run(capsys, "verify", graph_path("P3"), "--max-q", 3, "--format", "json")
    assert first == second


def test_missing_file(capsys, tmp_path):
    code, out, err = run(capsys, "poly", "chromatic", tmp_path / "nope.g")
    assert code == EXIT_INPUT and out == "" and "cannot read" in err


def test_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.g"
    bad.write_text("v 2\ne 1 3\n")
    code, _, err = run(capsys, "poly", "chromatic", bad)
    assert code == EXIT_INPUT
    assert "line 2" in err and "endpoint out of range" in err


def test_bad_arguments(capsys):
    assert run(capsys, "homology", "chromatic", graph_path("P2"), "--max-q", -1)[0] == EXIT_INPUT
    assert run(capsys, "verify", graph_path("P2"), "--workers", 0)[0] == EXIT_INPUT


def test_budget_exceeded(capsys, tmp_path):
    big = tmp_path / "big.g"
    big.write_text("v 2\n" + "e 1 2\n" * 30)
    code, _, err = run(capsys, "homology", "dichromatic", big, "--max-q", 2)
    assert code == EXIT_BUDGET
    assert "m+n" in err
    code, _, err = run(capsys, "homology", "chromatic", big, "--max-q", 2)
    assert code == EXIT_BUDGET and "limiting parameter: m" in err


def test_verify_triangle(capsys):
    code, out, _ = run(capsys, "verify", graph_path("C3"), "--max-q", 5)
    lines = out.splitlines()
    assert code == EXIT_OK
    assert len(lines) == 6 and all(line.startswith("PASS") for line in lines)


def test_verify_double_edge(capsys):
    code, out, _ = run(capsys, "verify", graph_path("double edge"))
    assert code == EXIT_OK, out


def test_corrupted_sign_is_caught(capsys, monkeypatch):
    monkeypatch.setattr(khroma.chromatic, "cube_sign", lambda mask, e: 1)
    code, out, _ = run(capsys, "verify", graph_path("C3"), "--max-q", 3)
    assert code == EXIT_FAIL
    failed = [line for line in out.splitlines() if line.startswith("FAIL")]
    assert failed
    assert any("cell (0, 0, 0)" in line for line in failed)


def test_homology_figure(capsys, tmp_path):
    fig = tmp_path / "c3.png"
    code, _, _ = run(capsys, "homology", "dichromatic", graph_path("C3"), "--max-q", 3, "--figure", fig)
    assert code == EXIT_OK
    assert fig.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_verify_figures(capsys, tmp_path):
    fig = tmp_path / "p2.png"
    code, _, _ = run(capsys, "verify", graph_path("P2"), "--max-q", 3, "--figure", fig)
    assert code == EXIT_OK
    for tag in ("chromatic-euler", "dichromatic-euler"):
        assert (tmp_path / f"p2-{tag}.png").stat().st_size > 0


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "khroma", "poly", "chromatic", str(graph_path("P2"))],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "λ^2 - λ\n"
