import csv
import io
import json

import numpy as np
import pytest

from sopharvest import NotCanonical, ParseError
from sopharvest.cli import load_mode_spec, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def divergent_file(tmp_path):
    path = tmp_path / "divergent.json"
    path.write_text(json.dumps({"n": 3, "eta": 1.0, "x": [1, 0, 0], "w": [1, 1, 0]}))
    return str(path)


def test_vacuum_csv():
    code, out, _ = call("vacuum", "--n", "3", "--eta", "1")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["d", "dq", "dp"]
    np.testing.assert_allclose(np.array(rows[1:], dtype=float),
                               [[0, 1 / 3, 5 / 6], [1, 1 / 12, -1 / 6], [2, 1 / 12, -1 / 6]], atol=5e-10)
    assert rows[1][1] == "3.333333333e-01"


def test_cost_json():
    code, out, _ = call("cost", "--eta", "1", "--delta", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["gamma_a"] == pytest.approx(1.0)
    assert doc["delta_e_swap"] == pytest.approx(doc["delta_e_swap_oracle"], rel=1e-9)
    assert [d["coefficient"] for d in doc["discrepancies"]] == ["alpha_q"]
    assert list(doc) == sorted(doc)


def test_sweep_csv_header_and_rows():
    code, out, _ = call("sweep", "--points", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "phi,kappa_m2,kappa_m1,gamma_a_m1,mu_a_m1,gamma_b_m1,mu_b_m1"
    assert len(lines) == 4


@pytest.mark.parametrize("argv", [
    ("sweep", "--points", "0"),
    ("sweep", "--points", "1"),
    ("cost", "--eta", "-1", "--delta", "1"),
    ("vacuum", "--n", "1", "--eta", "1"),
    ("cost", "--eta", "1", "--delta", "1", "--dev-a", "1,2"),
    ("mode", "--spec", "/nonexistent/spec.json"),
    ("nonsense",),
])
def test_validation_errors_exit_2(argv):
    assert call(*argv)[0] == 2


def test_uncertainty_violation_exit_3():
    code, _, err = call("cost", "--eta", "1", "--delta", "1", "--dev-a", "0.1,0.1,0")
    assert code == 3
    assert "uncertainty" in err


def test_usage_error_names_the_flag(capsys):
    assert call("sweep", "--points", "0")[0] == 2
    assert "--points" in capsys.readouterr().err


def test_mode_partner_harvest(divergent_file):
    code, out, _ = call("mode", "--spec", divergent_file)
    assert code == 0
    mode = json.loads(out)
    assert mode["g"] == pytest.approx(np.sqrt(7) / 3)
    assert mode["momentum_checks"]["sum_abs_q2"] == pytest.approx(1.0, abs=1e-9)

    code, out, _ = call("partner", "--spec", divergent_file)
    partner = json.loads(out)
    assert code == 0
    assert {"g", "s_ee", "classification", "residuals", "b_windows", "m_ab"} <= set(partner)
    assert partner["classification"] == "SOP"
    assert partner["m_ab"][0][1] == pytest.approx(np.sqrt(7) / 6, abs=1e-9)

    code, out, _ = call("harvest", "--spec", divergent_file, "--dev-a", "2,0.125,0")
    doc = json.loads(out)
    assert code == 0
    assert {"device_covariance", "device_entropy", "field_mode_marginal", "spectrum_check"} <= set(doc)
    np.testing.assert_allclose(doc["device_covariance"], partner["m_ab"], atol=1e-9)
    assert doc["device_entropy"] == pytest.approx(partner["s_ee"], abs=1e-8)


def test_output_is_deterministic_and_written_to_file(tmp_path, divergent_file):
    target = tmp_path / "out.json"
    assert call("partner", "--spec", divergent_file, "--out", str(target))[0] == 0
    first = target.read_bytes()
    assert call("partner", "--spec", divergent_file, "--out", str(target))[0] == 0
    assert target.read_bytes() == first
    assert call("partner", "--spec", divergent_file)[1].encode() == first


def test_csv_and_json_carry_the_same_numbers(divergent_file):
    _, js, _ = call("harvest", "--spec", divergent_file, "--format", "json")
    _, cs, _ = call("harvest", "--spec", divergent_file, "--format", "csv")
    table = dict(list(csv.reader(io.StringIO(cs)))[1:])
    doc = json.loads(js)
    assert float(table["device_entropy"]) == pytest.approx(doc["device_entropy"], rel=1e-9)
    assert float(table["device_covariance[0][1]"]) == pytest.approx(doc["device_covariance"][0][1], rel=1e-9)


def test_sweep_json_matches_csv():
    _, js, _ = call("sweep", "--points", "2", "--format", "json")
    _, cs, _ = call("sweep", "--points", "2")
    rows = np.array(list(csv.reader(io.StringIO(cs)))[1:], dtype=float)
    np.testing.assert_allclose(json.loads(js)["mu_a_m1"], rows[:, 4], rtol=1e-9)


def test_load_mode_spec_sparse_equals_dense(tmp_path):
    dense = tmp_path / "dense.json"
    sparse = tmp_path / "sparse.json"
    dense.write_text(json.dumps({"n": 3, "eta": 1.0, "x": [1, 0, 0], "y": [0, 0, 0], "w": [1, 10, 0]}))
    sparse.write_text(json.dumps({"n": 3, "eta": 1.0, "x": {"1": 1}, "w": {"1": 1.0, "2": 10.0}}))
    (spec_d, win_d), (spec_s, win_s) = load_mode_spec(dense), load_mode_spec(sparse)
    assert spec_d == spec_s
    for name in "xyzw":
        np.testing.assert_array_equal(getattr(win_d, name), getattr(win_s, name))


def test_load_mode_spec_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 3, "eta": 1.0, "x": [1, 0, 0], "w": [2, 0, 0]}))
    with pytest.raises(NotCanonical) as err:
        load_mode_spec(bad)
    assert err.value.residual == pytest.approx(1.0)

    broken = tmp_path / "broken.json"
    broken.write_text('{"n": 3,\n "eta": }')
    with pytest.raises(ParseError, match="line 2"):
        load_mode_spec(broken)

    for doc, field in [({"eta": 1, "x": [1], "w": [1]}, "'n'"),
                       ({"n": 3, "eta": 1, "w": [1, 0, 0]}, "'x'"),
                       ({"n": 3, "eta": 1, "x": [1, 0], "w": [1, 0, 0]}, "'x'"),
                       ({"n": 3, "eta": 1, "x": {"4": 1}, "w": [1, 0, 0]}, "'x'"),
                       ({"n": 3, "eta": 1, "x": [1, 0, 0], "w": [1, "a", 0]}, "'w'")]:
        bad.write_text(json.dumps(doc))
        with pytest.raises(ParseError, match=field):
            load_mode_spec(bad)
