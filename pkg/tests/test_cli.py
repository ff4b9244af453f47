import json
from importlib import resources

import jsonschema
import pytest

from semitorus.cli import run


def schema(name):
    return json.loads(resources.files("semitorus").joinpath(f"schemas/{name}.json").read_text())


def call(capsys, *argv):
    status = run(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


def test_tile_info(capsys):
    status, out, _ = call(capsys, "tile", "info", "[3^4,6]")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("tile_info"))
    assert status == 0 and doc["site_count"] == 6


def test_tile_spectrum(capsys):
    status, out, _ = call(capsys, "tile", "spectrum", "[3,6,3,6]", "--full")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("tile_spectrum"))
    assert doc["spectrum"] == [1, 2, 3]


def test_map_build_analyze_export(capsys, tmp_path):
    status, out, _ = call(capsys, "map", "build", "--type", "[4^4]", "--basis", "3,0,0,3")
    jsonschema.validate(json.loads(out), schema("map_build"))
    status, out, _ = call(capsys, "map", "analyze", "--type", "[4^4]", "--basis", "3,0,0,3")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("map_analyze"))
    assert doc["orbit_count"] == 1
    path = tmp_path / "m.json"
    status, out, _ = call(capsys, "map", "export", "--type", "[4^4]", "--basis", "3,0,0,3", "--out", str(path))
    assert status == 0 and out == ""
    jsonschema.validate(json.loads(path.read_text()), schema("map_export"))
    for fmt in ("dot", "tsv", "faces"):
        status, out, _ = call(capsys, "map", "export", "--type", "[4^4]", "--basis", "3,0,0,3", "--format", fmt)
        assert status == 0 and out


def test_domain_and_usage_errors(capsys):
    status, out, err = call(capsys, "map", "build", "--type", "[4^4]", "--basis", "1,0,0,1")
    assert status == 1 and out == "" and "NotPolyhedral" in err
    status, _, err = call(capsys, "tile", "info", "[5^3]")
    assert status == 1 and "UnknownType" in err
    with pytest.raises(SystemExit) as exc:
        run(["map", "build", "--type", "[4^4]", "--basis", "1,2,2,4"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run(["map", "export", "--type", "[4^4]", "--basis", "3,0,0,3", "--format", "png"])
    assert exc.value.code == 2


def test_cover_square_find_verify(capsys, tmp_path):
    status, out, _ = call(capsys, "cover", "square", "--type", "[4,6,12]", "--basis", "2,1,0,2")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("certificate"))
    assert status == 0 and doc["sheets"] == 4 and doc["verified"]
    cert = tmp_path / "c.json"
    status, out, _ = call(capsys, "cover", "find", "--type", "[4,6,12]", "--basis", "1,2,0,6",
                          "--orbits", "3", "--max-ratio", "8", "--certificate", str(cert), "--expect", "found")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("cover_find"))
    assert status == 0 and doc["outcome"] == "found"
    status, out, _ = call(capsys, "cover", "verify", str(cert))
    doc = json.loads(out)
    jsonschema.validate(doc, schema("cover_verify"))
    assert status == 0 and doc["valid"]
    status, out, _ = call(capsys, "cover", "find", "--type", "[4,6,12]", "--basis", "1,2,0,6",
                          "--orbits", "4", "--max-ratio", "6", "--expect", "found")
    assert status == 1 and json.loads(out)["outcome"] == "exhausted"


def test_verify_lemma(capsys):
    status, out, _ = call(capsys, "verify", "lemma-4612")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("lemma_4612"))
    assert status == 0 and doc["five_orbital"] == "unachievable" and 5 not in doc["spectrum"]


def test_verify_presets(capsys):
    status, out, _ = call(capsys, "verify", "presets", "--max-index", "12")
    jsonschema.validate(json.loads(out), schema("presets"))


def test_table_is_deterministic(capsys):
    status, a, _ = call(capsys, "table", "orbit-bounds", "--max-index", "10", "--seed", "4", "--sample", "20")
    status2, b, _ = call(capsys, "table", "orbit-bounds", "--max-index", "10", "--seed", "4", "--sample", "20")
    assert status == status2 == 0 and a == b
    rows = [r.split("\t") for r in a.splitlines()]
    assert rows[0][:4] == ["vertex_type", "template", "bound", "max_observed"]
    assert len(rows) == 12
