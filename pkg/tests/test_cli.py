import json
import shutil
import subprocess
import sys

import pytest

from isohopf.cli import main
from isohopf.errors import NotIsotropic, ParseError, SchemaError
from isohopf.specfile import fixture_path, list_fixtures, parse_spec, spec_from_dict
from isohopf.routes import RefinedIndex
from isohopf.suite import _compare, cross_validate, paper_suite, running_example

BASE = {
    "base_variables": ["x", "y"],
    "quadratic_form": "hyperbolic(2)",
    "components": ["x^2", "y^2", "x*y", "-x*y"],
}


def write(tmp_path, data, name="spec.json"):
    p = tmp_path / name
    p.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bundled_fixtures_parse():
    assert set(list_fixtures()) >= {"eg", "eg2", "run_d3_i2_j1", "x0y0"}
    for name in list_fixtures():
        spec = parse_spec(fixture_path(name))
        assert spec.section().n in (2, 3)


def test_eg_fixture_is_flagship():
    spec = parse_spec(fixture_path("eg"))
    assert [str(p) for p in spec.section().components] == ["x^2", "y^2", "x*y", "-x*y"]


def test_unknown_key_rejected():
    with pytest.raises(SchemaError) as err:
        spec_from_dict({**BASE, "foo": 1})
    assert err.value.field == "foo"
    with pytest.raises(SchemaError) as err:
        spec_from_dict({**BASE, "torus": {"base_weights": [1, -1], "bar": []}})
    assert err.value.field == "torus.bar"


def test_missing_and_malformed_fields():
    with pytest.raises(SchemaError):
        spec_from_dict({k: v for k, v in BASE.items() if k != "components"})
    with pytest.raises(SchemaError):
        spec_from_dict({**BASE, "orientation": 2})
    with pytest.raises(SchemaError):
        spec_from_dict({**BASE, "quadratic_form": "nope(2)"})
    with pytest.raises(SchemaError):
        spec_from_dict({**BASE, "routes": ["rh99"]})


def test_gram_matrix_form():
    gram = [[0, "1/2", 0, 0], ["1/2", 0, 0, 0], [0, 0, 0, "1/2"], [0, 0, "1/2", 0]]
    spec = spec_from_dict({**BASE, "quadratic_form": {"gram": gram, "names": ["X", "Y", "Z", "W"]}})
    assert spec.section().colength == 3


def test_not_isotropic_file(tmp_path):
    path = write(tmp_path, {**BASE, "components": ["x^2", "y^2", "x*y", "x*y"]})
    with pytest.raises(NotIsotropic) as err:
        parse_spec(path).section()
    assert "x^2*y^2" in str(err.value)


def test_json_syntax_error_position(tmp_path):
    path = write(tmp_path, '{\n  "base_variables": ["x", "y"],\n  "components": [x]\n}')
    with pytest.raises(ParseError) as err:
        parse_spec(path)
    assert (err.value.line, err.value.column) == (3, 18)


def test_polynomial_syntax_error(tmp_path):
    path = write(tmp_path, {**BASE, "components": ["x^2", "y^2", "x*y", "-x*+"]})
    with pytest.raises(ParseError) as err:
        parse_spec(path)
    assert err.value.column is not None


def test_compute_flagship_json(capsys):
    code, out, _ = run(capsys, "compute", "eg", "--json", "--samples", "100000")
    assert code == 0
    rep = json.loads(out)
    assert (rep["sqrt_e"], rep["d1"], rep["d2"], rep["colength"], rep["segre"]) == (0, 1, 1, 3, 4)
    assert rep["verdict"] == "pass"
    for route in ("rh3", "rh7", "rh4", "rh5", "oh5", "oh8", "rh8", "oh1", "rh6"):
        assert rep["routes"][route]["sqrt_e"] == 0


def test_compute_running_fixture(capsys):
    code, out, _ = run(capsys, "compute", "run_d3_i2_j1", "--json", "--routes", "rh3,rh7,rh4,oh8,rh8")
    rep = json.loads(out)
    assert code == 0 and (rep["sqrt_e"], rep["d1"], rep["d2"]) == (3, 4, 1)


def test_compute_eg2(capsys):
    code, out, _ = run(capsys, "compute", "eg2", "--json")
    rep = json.loads(out)
    assert code == 0
    assert abs(rep["sqrt_e"]) == 4 and rep["segre"] == 8


def test_compute_table_output(capsys):
    code, out, _ = run(capsys, "compute", "x0y0", "--routes", "rh3,rh7,oh3")
    assert code == 0
    assert "verdict: pass" in out and "rh3" in out


def test_report_is_deterministic(capsys):
    argv = ("compute", "eg", "--json", "--routes", "rh3,rh7,rh4,oh1,segre", "--samples", "50000", "--seed", "4")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_report_dir(tmp_path, capsys):
    code, _, err = run(capsys, "compute", "eg", "--routes", "rh3,rh7,oh8", "--report-dir", str(tmp_path))
    assert code == 0
    assert (tmp_path / "eg_routes.csv").read_text().startswith("route,")
    assert (tmp_path / "eg_routes.png").stat().st_size > 0
    assert "wrote" in err


def test_spec_errors_exit_two(tmp_path, capsys):
    code, _, err = run(capsys, "compute", write(tmp_path, {**BASE, "foo": 1}))
    assert code == 2 and "SchemaError" in err
    code, _, err = run(capsys, "validate", write(tmp_path, {**BASE, "components": ["x", "0", "0", "0"]}))
    assert code == 2 and "ZeroLocusNotOriginOnly" in err
    code, _, _ = run(capsys, "validate", str(tmp_path / "missing.json"))
    assert code == 2


def test_validate_command(capsys):
    code, out, _ = run(capsys, "validate", "eg2", "--json")
    info = json.loads(out)
    assert code == 0 and info["n"] == 3 and info["rationally_split"] is False


def test_cone_command(capsys):
    code, out, _ = run(capsys, "cone", "eg", "--json")
    info = json.loads(out)
    assert code == 0
    assert (info["alpha"], info["beta"], info["segre"], info["sqrt_e"]) == (2, 2, 4, 0)
    assert "Z + W" in info["cone_ideal"]


def test_degree_command(capsys):
    code, out, _ = run(capsys, "degree", "x0y0", "--json", "--samples", "100000")
    assert code == 0 and json.loads(out)["degree"] == -1


def test_step_budget_flag(capsys):
    code, _, err = run(capsys, "cone", "eg", "--step-budget", "1")
    assert code == 2 and "ResourceError" in err


def test_verdict_failure_exit_one(tmp_path, capsys):
    # spin data that is internally consistent but belongs to a different section
    spec = json.loads(fixture_path("eg").read_text())
    spec["spin"]["v"] = ["y^2", "x^2"]
    spec["spin"]["m_minus_weights"] = [-2, 2]
    spec["spin"]["m_plus_weights"] = [2, -2]
    spec["spin"]["F"] = ["y^2", "x^2"]
    code, out, _ = run(capsys, "compute", write(tmp_path, spec), "--routes", "rh3,rh8", "--json")
    assert code == 1
    assert json.loads(out)["verdict"] == "fail"


def test_cross_validate_flags_verifier_mismatch():
    s = running_example(2, 1, 0)
    rep = cross_validate(s, ("rh3", "oh8"))
    assert rep.passed
    rep.routes["oh1"] = RefinedIndex(1, "oh1")
    rep.mismatches.clear()
    _compare(rep)
    assert any("verifier-mismatch" in m for m in rep.mismatches)


def test_injected_orientation_fault_detected():
    rows = paper_suite(routes=("rh3", "rh7"), max_d=2, winding_spots=(), orientation=-1, expected_orientation=1)
    bad = [r for r in rows if not r.ok]
    grid_bad = [r for r in bad if r.route in ("rh3", "rh7")]
    assert grid_bad
    for r in grid_bad:
        assert r.got == (r.expected[1], r.expected[0])


def test_flipped_orientation_suite_passes():
    rows = paper_suite(routes=("rh3", "rh7", "oh8"), max_d=2, winding_spots=(), orientation=-1)
    grid = [r for r in rows if r.instance.startswith("run")]
    assert grid and all(r.ok for r in grid)


def test_paper_suite_cli_small(tmp_path, capsys):
    code, out, _ = run(capsys, "paper-suite", "--max-d", "2", "--samples", "100000", "--report-dir", str(tmp_path))
    assert code == 0
    assert "checks passed" in out
    assert (tmp_path / "suite.csv").exists() and (tmp_path / "grid_sqrt_e.png").exists()


def test_paper_suite_cli_fault(capsys):
    code, out, _ = run(capsys, "paper-suite", "--max-d", "1", "--samples", "50000", "--inject-orientation-fault")
    assert code == 1 and "FAIL" in out


@pytest.mark.skipif(shutil.which("isohopf") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["isohopf", "validate", "eg", "--json"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["colength"] == 3


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "isohopf.cli", "--help"], capture_output=True, text=True)
    assert res.returncode == 0 and "paper-suite" in res.stdout
