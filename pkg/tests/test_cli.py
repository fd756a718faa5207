import io
import json
from importlib import resources

import pytest

from motzeta import load_model_text, model_to_dict, parse_model, parse_poly, render_model
from motzeta.cli import run
from motzeta.errors import ParseError, ValidationError

FIXTURES = ["node", "cusp", "smooth"]


def fixture_path(name):
    return str(resources.files("motzeta") / "fixtures" / f"{name}.json")


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


# ---------------------------------------------------------------- parse_poly

def test_parse_poly_examples():
    p = parse_poly("x1*x2")
    assert p.num_vars == 2 and p.monomials == (((1, 1), 1),)
    assert len(parse_poly("x1^2 + x2^3").monomials) == 2
    assert parse_poly("x1 - x1").is_zero()


def test_parse_poly_merges_and_expands():
    p = parse_poly("(x1 + x2)^2 - 2*x1*x2")
    assert p.as_dict() == {(2, 0): 1, (0, 2): 1}
    assert parse_poly(" - x1 +3 ").as_dict() == {(1,): -1, (0,): 3}
    assert parse_poly("x2", num_vars=3).num_vars == 3


@pytest.mark.parametrize("text,pos", [("x1 + + ", 5), ("x1 $ x2", 3), ("x1^x2", 3), ("(x1", 3),
                                       ("x0", 0), ("x1 x2", 3)])
def test_parse_poly_errors(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_poly(text)
    assert exc.value.position == pos


# --------------------------------------------------------------- parse_model

def test_parse_node_fixture():
    m = parse_model(fixture_path("node"))
    assert len(m.components) == 2 and len(m.strata) == 3


def test_missing_N_names_component():
    doc = {"rel_dim": 1, "components": [{"id": "E7"}], "strata": []}
    with pytest.raises(ParseError) as exc:
        load_model_text(json.dumps(doc))
    assert "E7" in str(exc.value)


def test_m_inconsistency_is_validation_error():
    doc = {"rel_dim": 1, "components": [{"id": "A", "N": 2}, {"id": "B", "N": 3}],
           "strata": [{"J": ["A", "B"], "chi": {}, "m": 2}]}
    with pytest.raises(ValidationError) as exc:
        load_model_text(json.dumps(doc))
    assert "m" in exc.value.violations[0]


def test_bad_json_reports_line():
    with pytest.raises(ParseError) as exc:
        load_model_text('{\n"rel_dim": 1,\n oops}')
    assert exc.value.line == 3


def test_class_L_list_shorthand_means_total():
    doc = {"rel_dim": 0, "components": [{"id": "A", "N": 1}],
           "strata": [{"J": ["A"], "chi": {"total": 1}, "class_L": [[1, 1], [0, -1]]}]}
    m = load_model_text(json.dumps(doc))
    assert set(m.strata[0].class_L) == {"total"}


@pytest.mark.parametrize("name", FIXTURES)
def test_round_trip(name):
    m = parse_model(fixture_path(name))
    assert load_model_text(render_model(m)) == m
    assert model_to_dict(load_model_text(render_model(m))) == model_to_dict(m)


# ---------------------------------------------------------------------- CLI

def test_cli_zeta_node():
    code, out, _ = call("zeta", "--model", "node.json")
    assert code == 0
    assert out.splitlines()[0] == "[E1] * L^-1*T/(1 - L^-1*T)"
    assert "((L - 1)*[E1,E2]) * L^-1*T/(1 - L^-1*T) * L^-1*T/(1 - L^-1*T)" in out


def test_cli_verify_trace():
    assert call("verify-trace", "--model", "cusp.json", "--support", "origin", "--d", "6") == \
        (0, "lhs=-1 rhs=-1 OK\n", "")


def test_cli_count_jets():
    assert call("count-jets", "--f", "x1*x2", "--d", "1", "--q", "2")[:2] == (0, "4\n")
    assert call("count-jets", "--f", "x1*x2", "--d", "2", "--q", "2", "--origin")[:2] == (0, "4\n")


def test_cli_exit_codes(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"rel_dim": 1, "components": [{"id": "A", "N": 1}],
                               "strata": [{"J": ["A"], "chi": {"total": 0}, "chi_cover": {"total": 3}}]}))
    code, _, err = call("zeta", "--model", str(bad))
    assert code == 2 and "chi_cover" in err
    code, out, _ = call("validate", "--model", str(bad))
    assert code == 2 and "chi_cover" in out
    assert call("validate", "--model", "node.json")[:2] == (0, "OK\n")
    assert call("zeta", "--model", str(tmp_path / "missing.json"))[0] == 2
    assert call("count-jets", "--f", "x1 - x1", "--d", "1", "--q", "2")[0] == 2
    assert call("count-jets", "--f", "x1*x2", "--d", "1", "--q", "4")[0] == 2
    assert call("bogus")[0] == 2


def test_cli_mismatch_exit_1(tmp_path):
    doc = json.loads(open(fixture_path("cusp")).read())
    for c in doc["components"]:
        c["mu"] = c["nu"] - c["N"]
    doc["components"][3]["mu"] = 0  # should be nu - N = -1; no gelfand_leray flag, so it loads
    p = tmp_path / "cusp_bad.json"
    p.write_text(json.dumps(doc))
    code, out, _ = call("verify-weil", "--model", str(p))
    assert code == 1 and "[E3]" in out


def test_cli_point_count():
    code, out, _ = call("verify-point-count", "--model", "node.json", "--f", "x1*x2",
                        "--d", "2", "--q", "3", "--support", "total")
    assert (code, out) == (0, "formula=54 oracle=54 OK\n")


def test_cli_blowup_check():
    code, out, _ = call("blowup", "--model", "cusp.json", "--J", "E1", "E3", "--check", "--dmax", "12")
    assert code == 0 and out.rstrip().endswith("check: OK")
    code, out, _ = call("blowup", "--model", "node.json", "--J", "E1", "E2", "--format", "json")
    data = json.loads(out)
    assert data["model"]["components"][-1] == {"id": "B1", "N": 2, "nu": 2}
    assert data["rewrite"]["B1"] == {"E1,E2": [[1, 1], [0, -1]]}


def test_cli_nearby_cycles_chi():
    code, out, _ = call("nearby-cycles", "--model", "cusp.json", "--chi", "origin", "--format", "json")
    assert code == 0 and json.loads(out)["chi"] == -1


def test_cli_json_mode():
    code, out, _ = call("monodromy-zeta", "--model", "cusp.json", "--support", "origin", "--format", "json")
    assert json.loads(out) == {"support": "origin", "factors": [[2, -1], [3, -1], [6, 1]],
                               "euler_milnor": -1}
    code, out, _ = call("coeff", "--model", "node.json", "--d", "3", "--format", "json")
    assert json.loads(out)["coefficient"] == {"E1": [[-1, 1]], "E1,E2": [[0, 2], [-1, -2]],
                                              "E2": [[-1, 1]]}


@pytest.mark.parametrize("argv", [
    ["zeta", "--model", "cusp.json"],
    ["volume-series", "--model", "cusp.json"],
    ["serre-series", "--model", "cusp.json"],
    ["coeff", "--model", "cusp.json", "--d", "12"],
    ["direct-coeff", "--model", "cusp.json", "--d", "12"],
    ["limit", "--model", "cusp.json"],
    ["motivic-volume", "--model", "cusp.json"],
    ["lefschetz", "--model", "cusp.json", "--support", "origin", "--d", "4"],
    ["blowup", "--model", "cusp.json", "--J", "E2", "E3"],
])
def test_cli_deterministic(argv):
    first = call(*argv)
    assert first[0] == 0
    for fmt in ([], ["--format", "json"]):
        assert call(*argv, *fmt) == call(*argv, *fmt)


def test_cli_direct_matches_coeff():
    for d in range(1, 13):
        assert call("coeff", "--model", "cusp.json", "--d", str(d))[1] == \
            call("direct-coeff", "--model", "cusp.json", "--d", str(d))[1]


def test_cli_lefschetz_and_limit():
    assert call("lefschetz", "--model", "cusp.json", "--support", "origin", "--d", "3")[1] == "3\n"
    out = call("limit", "--model", "node.json")[1]
    assert out == "-L^-1*[E1] - L^-1*[E2] + (1 - L^-1)*[E1,E2]\n"
