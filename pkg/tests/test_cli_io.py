import json
import subprocess
import sys
import xml.etree.ElementTree as ET
from pathlib import Path

import jsonschema
import pytest
from referencing import Registry, Resource

from asymlat.body import canonical_equal, validate
from asymlat.cli import RunConfig, main, run
from asymlat.formats import (
    ParseError, ValidationError, body_to_json, decomposition_from_json, decomposition_to_json,
    parse_body, serialize_body,
)
from asymlat.analyzer import decide
from asymlat.generate import generate
from asymlat.svg import Viewport, render_svg

from conftest import FIXTURES, GOLDEN

SCHEMAS = Path(__file__).parent.parent / "schemas" / "v1"
SVG_NS = "{http://www.w3.org/2000/svg}"


def schema_validator(name):
    docs = {p.name: json.loads(p.read_text()) for p in SCHEMAS.glob("*.json")}
    registry = Registry().with_resources([(n, Resource.from_contents(d)) for n, d in docs.items()])
    return jsonschema.Draft202012Validator(docs[name], registry=registry)


def fixture(name):
    return (FIXTURES / name).read_text()


# -------------------------------------------------------------- parse_body

def test_parse_standard_fixture(standard_body):
    K = parse_body(fixture("standard_body.json"))
    assert validate(K) and canonical_equal(K, standard_body)


def test_parse_zero_denominator():
    with pytest.raises(ParseError, match="vertices"):
        parse_body(fixture("zero_denominator.json"))


def test_parse_gapped_segment():
    with pytest.raises(ValidationError) as err:
        parse_body(fixture("gapped_segment.json"))
    assert err.value.invariant == "R1"


@pytest.mark.parametrize("text, where", [
    ('{"vertices": [["0", "0"]', "line 1"),
    ('{"vertices": [["0"]], "rays": [], "vertex_flags": [true], "edge_flags": []}', "vertices[0]"),
    ('{"vertices": [["0", "0"]], "rays": [], "vertex_flags": [1], "edge_flags": []}', "vertex_flags"),
])
def test_parse_errors_name_the_location(text, where):
    with pytest.raises(ParseError, match=where.replace("[", r"\[")):
        parse_body(text)


def test_wrong_flag_count_is_a_validation_error():
    doc = json.loads(fixture("standard_body.json"))
    doc["edge_flags"] = [True]
    with pytest.raises(ValidationError):
        parse_body(json.dumps(doc))


def test_round_trip_on_generated_bodies():
    validator = schema_validator("body.schema.json")
    for K in generate(17, 80):
        text = serialize_body(K)
        validator.validate(json.loads(text))
        back = parse_body(text)
        assert canonical_equal(back, K)
        assert serialize_body(back) == text


def test_decomposition_json_round_trip(standard_body):
    validator = schema_validator("decomposition.schema.json")
    for K in [standard_body] + generate(3, 40):
        d = decide(K).decomposition
        if d is None:
            continue
        doc = decomposition_to_json(d)
        validator.validate(doc)
        assert decomposition_from_json(doc) == d


# --------------------------------------------------------------------- CLI

def run_cli(tmp_path, *args):
    out = tmp_path / "out"
    code = main(list(args) + ["--output", str(out)])
    return code, out.read_text() if out.exists() else None


def test_analyze_standard(tmp_path):
    code, text = run_cli(tmp_path, "analyze", "--input", str(FIXTURES / "standard_body.json"),
                         "--norm", str(FIXTURES / "l1_norm.json"))
    assert code == 0
    report = json.loads(text)
    schema_validator("report.schema.json").validate(report)
    assert report["verdict"] == "Q_COMPACT" and report["decomposition"]["case"] == 2
    assert report["norm"] == {"type": "weighted_l1", "w": ["1", "1"]}


def test_certify_excluded_vertex(tmp_path):
    code, text = run_cli(tmp_path, "certify", "--input", str(FIXTURES / "excluded_vertex_body.json"),
                         "--samples", "2000")
    assert code == 0
    report = json.loads(text)
    schema_validator("report.schema.json").validate(report)
    assert report["verdict"] == "NOT_Q_COMPACT"
    assert report["witness"]["family"] == "U_FAMILY"
    demos = report["oracle"]["uncovered_points"]
    assert len(demos) == 3 and all(d["in_set"] and not d["covered"] for d in demos)
    assert report["agreement"]


def test_certify_standard_cross_check(tmp_path):
    code, text = run_cli(tmp_path, "certify", "--input", str(FIXTURES / "standard_body.json"), "--seed", "7")
    report = json.loads(text)
    assert code == 0 and report["oracle"]["cross_check"]["disagreements"] == 0


def test_decompose(tmp_path):
    code, text = run_cli(tmp_path, "decompose", "--input", str(FIXTURES / "cone_body.json"))
    assert code == 0
    d = json.loads(text)
    schema_validator("decomposition.schema.json").validate(d)
    assert d["case"] == 1 and d["s0"] == "0" and d["t0"] == "0"
    code, text = run_cli(tmp_path, "decompose", "--input", str(FIXTURES / "excluded_vertex_body.json"))
    assert code == 1


@pytest.mark.parametrize("name", ["zero_denominator.json", "gapped_segment.json", "missing.json"])
def test_input_errors_exit_1(tmp_path, name, capsys):
    code, _ = run_cli(tmp_path, "analyze", "--input", str(FIXTURES / name))
    assert code == 1
    assert "error" in capsys.readouterr().err


def test_missing_input_and_bad_count(capsys):
    assert run(RunConfig("analyze")) == 1
    assert run(RunConfig("gen", count=0)) == 1


def test_render_all_fixtures(tmp_path):
    for name in ["standard_body", "excluded_vertex_body", "cone_body", "half_open_segment"]:
        code, text = run_cli(tmp_path, "render", "--input", str(FIXTURES / f"{name}.json"))
        assert code == 0 and text.startswith("<?xml")


def test_demo3d(tmp_path):
    code, text = run_cli(tmp_path, "demo3d", "--count", "100")
    r = json.loads(text)
    assert code == 0 and r["arc_samples"] == 100 and r["not_strongly_q_compact"]
    code, _ = run_cli(tmp_path, "demo3d", "--count", "3")
    assert code == 1


def test_gen_is_deterministic_and_valid(tmp_path):
    _, a = run_cli(tmp_path, "gen", "--seed", "9", "--count", "25")
    _, b = run_cli(tmp_path, "gen", "--seed", "9", "--count", "25")
    _, c = run_cli(tmp_path, "gen", "--seed", "10", "--count", "25")
    assert a == b and a != c
    doc = json.loads(a)
    validator = schema_validator("body.schema.json")
    assert len(doc["bodies"]) == 25
    for body in doc["bodies"]:
        validator.validate(body)
        assert validate(parse_body(json.dumps(body)))


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "asymlat", "analyze", "--input",
                           str(FIXTURES / "standard_body.json")], capture_output=True, text=True)
    assert proc.returncode == 0 and '"case": 2' in proc.stdout


# --------------------------------------------------------------------- SVG

def svg_elements(text, tag, cls=None):
    root = ET.fromstring(text.encode())
    return [e for e in root.iter(SVG_NS + tag) if cls is None or e.get("class") == cls]


@pytest.mark.parametrize("name", ["standard_body", "cone_body", "half_open_segment"])
def test_svg_golden(tmp_path, name):
    code, text = run_cli(tmp_path, "render", "--input", str(FIXTURES / f"{name}.json"))
    assert code == 0
    assert text == (GOLDEN / f"{name}.svg").read_text()


def test_svg_standard_overlays():
    text = (GOLDEN / "standard_body.svg").read_text()
    assert len(svg_elements(text, "polygon", "delta")) == 1
    assert len(svg_elements(text, "polyline", "farc")) == 1
    assert len(svg_elements(text, "polygon", "region")) == 1


def test_svg_half_open_segment():
    text = (GOLDEN / "half_open_segment.svg").read_text()
    hollow = svg_elements(text, "circle", "vex")
    filled = svg_elements(text, "circle", "vin")
    assert len(hollow) == 1 and len(filled) == 1
    # (0,1) is the upper-left endpoint of the picture
    assert float(hollow[0].get("cx")) < float(filled[0].get("cx"))
    assert float(hollow[0].get("cy")) < float(filled[0].get("cy"))


def test_svg_cone():
    text = (GOLDEN / "cone_body.svg").read_text()
    rays = [e for e in svg_elements(text, "polyline") if e.get("marker-end")]
    assert len(rays) == 2 and all(e.get("class") == "exc" for e in rays)
    assert len(svg_elements(text, "polygon", "region")) == 1


def test_svg_is_deterministic_and_wellformed():
    for K in generate(13, 30):
        a, b = render_svg(K), render_svg(K)
        assert a == b
        ET.fromstring(a.encode())


def test_svg_rejects_degenerate_viewport(standard_body):
    from fractions import Fraction
    with pytest.raises(ValueError):
        render_svg(standard_body, viewport=Viewport(Fraction(0), Fraction(0), Fraction(0), Fraction(1)))
