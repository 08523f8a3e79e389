import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from hullwalk.cli import exact_fields, main
from hullwalk.closed_forms import shift_avg_face_prob


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def as_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    data = json.loads(out)
    assert data["schema_version"] == 1
    return code, data


def test_exact_fields_format():
    assert exact_fields(Fraction(11, 3)) == {"exact": "11/3", "decimal": "3.66666666666667"}
    assert exact_fields(2) == {"exact": "2/1", "decimal": "2"}


def test_exact_planar_rows(capsys):
    code, data = as_json(capsys, "exact", "--n", "3", "--d", "2")
    assert code == 0
    assert [(r["k"], r["exact"]) for r in data["rows"]] == [(0, "11/3"), (1, "11/3")]


def test_exact_line_and_total(capsys):
    code, data = as_json(capsys, "exact", "--n", "5", "--d", "1")
    assert [Fraction(r["exact"]) for r in data["rows"]] == [2]
    code, data = as_json(capsys, "exact", "--total", "--n", "3", "--d", "2")
    assert data["rows"][0]["exact"] == "22/3"


def test_exact_grid_and_csv(capsys):
    code, out, _ = run(capsys, "exact", "--n", "2-4", "--d", "1,2", "--format", "csv")
    assert code == 0
    assert "\r\n" in out
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 3 * (1 + 2)
    assert rows[0].keys() == {"n", "d", "k", "exact", "decimal"}


def test_exact_validation(capsys):
    code, _, err = run(capsys, "exact", "--n", "1", "--d", "2")
    assert code == 2 and "n >= d" in err
    code, _, err = run(capsys, "exact", "--n", "3", "--d", "2", "--k", "2")
    assert code == 2


def test_faceprob_and_absorb(capsys):
    _, data = as_json(capsys, "faceprob", "--walk", "--n", "2", "--d", "1", "--indices", "1")
    assert data["exact"] == "1/2"
    _, data = as_json(capsys, "faceprob", "--bridge", "--n", "4", "--d", "2", "--indices", "0,2")
    assert data["exact"] == "1/2"
    _, data = as_json(capsys, "absorb", "--d", "1", "--walks", "2")
    assert data["exact"] == "1/4" and data["non_absorption"]["exact"] == "3/4"
    _, data = as_json(capsys, "absorb", "--d", "1", "--bridges", "3")
    assert data["exact"] == "1/3"


@pytest.mark.parametrize(
    "argv",
    [
        ["faceprob", "--n", "2", "--d", "1", "--indices", "3"],
        ["faceprob", "--n", "4", "--d", "1", "--indices", "0,2"],
        ["faceprob", "--bridge", "--n", "4", "--d", "2", "--indices", "0,4"],
        ["faceprob", "--n", "4", "--d", "2", "--indices", "2,1"],
        ["faceprob", "--n", "4", "--d", "2", "--indices", "x"],
        ["absorb", "--d", "1", "--bridges", "1"],
        ["absorb", "--d", "1"],
    ],
)
def test_validation_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.count("\n") == 1


def test_simulate_rejects_small_samples(capsys):
    code, _, err = run(capsys, "simulate", "--n", "2", "--d", "1", "--indices", "1", "--samples", "0")
    assert code == 2


def test_simulate_passes_and_is_deterministic(capsys, tmp_path):
    argv = ["simulate", "--n", "5", "--d", "1", "--indices", "2", "--samples", "5000",
            "--seed", "4", "--workers", "1"]
    code, out1, _ = run(capsys, *argv)
    _, out2, _ = run(capsys, *argv)
    assert code == 0 and out1 == out2
    data = json.loads(out1)
    assert data["pass"] is True and data["exact"] == "15/64"
    for key in ("p_hat", "stderr", "z", "seed", "n_discarded"):
        assert key in data
    target = tmp_path / "r.json"
    main(argv + ["--out", str(target)])
    assert target.read_text() == out1


def test_simulate_other_targets(capsys):
    code, data = as_json(capsys, "simulate", "--target", "absorb", "--d", "1", "--walks", "2",
                         "--samples", "5000", "--workers", "1")
    assert code == 0 and data["exact"] == "1/4"
    code, data = as_json(capsys, "simulate", "--target", "faces", "--n", "4", "--d", "2",
                         "--samples", "2000", "--workers", "1")
    assert code == 0 and data["exact"] == "25/6"
    code, data = as_json(capsys, "simulate", "--target", "shift", "--n", "4", "--d", "2",
                         "--lags", "2", "--law", "shifted", "--samples", "1000", "--workers", "1")
    assert code == 0 and Fraction(data["exact"]) == shift_avg_face_prob(4, 2, (2,))


def test_simulate_failure_exits_3(capsys):
    # A nearly deterministic drift makes S_0 a vertex almost surely, far above
    # the symmetric-law value.
    code, out, _ = run(capsys, "simulate", "--target", "faceprob", "--n", "5", "--d", "2",
                       "--indices", "0", "--law", "shifted", "--noise", "0.01",
                       "--samples", "2000", "--workers", "1")
    data = json.loads(out)
    assert code == 3 and data["pass"] is False and data["z"] > 3


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("HULLWALK_SEED", "1234")
    _, data = as_json(capsys, "simulate", "--n", "2", "--d", "1", "--indices", "1",
                      "--samples", "1000", "--workers", "1")
    assert data["seed"] in (1234, 1234 ^ 0x9E3779B9)
    monkeypatch.setenv("HULLWALK_SEED", "abc")
    code, _, _ = run(capsys, "simulate", "--n", "2", "--d", "1", "--indices", "1",
                     "--samples", "1000")
    assert code == 2


def test_chambers_command(capsys):
    code, data = as_json(capsys, "chambers", "--b", "2", "--trials", "20", "--workers", "1")
    assert code == 0
    assert data["predicted"] == 2 and data["enumerated"] == [2] and data["matches"] == 20
    code, data = as_json(capsys, "chambers", "--a", "3", "--d", "1", "--trials", "20",
                         "--workers", "1")
    assert code == 0 and data["predicted"] == 2
    code, data = as_json(capsys, "chambers", "--b", "3", "--a", "3", "--trials", "3",
                         "--workers", "1")
    assert code == 0 and data["group_order"] == 288
    assert data["char_poly_whitney"] == data["char_poly_product"]
    assert data["predicted_over_order"]["exact"] == data["absorption"]["exact"]


def test_chambers_validation(capsys):
    code, _, _ = run(capsys, "chambers")
    assert code == 2
    code, _, _ = run(capsys, "chambers", "--a", "3", "--d", "2")
    assert code == 2


def test_identity_check(capsys):
    code, data = as_json(capsys, "identity-check")
    assert code == 0 and data["pass"] and data["checks"] > 300
    code, data = as_json(capsys, "identity-check", "--n-max", "0")
    assert code == 0 and data["checks"] == 0


def test_identity_check_catches_corruption(capsys):
    code, out, err = run(capsys, "identity-check", "--corrupt-stirling", "5,2,51")
    data = json.loads(out)
    assert code == 3 and not data["pass"]
    assert data["first_failure"]["params"] == "(4, 2, 0)"
    assert "(4, 2, 0)" in err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "hullwalk", "absorb", "--d", "1", "--walks", "2",
                          "--format", "csv"], capture_output=True, text=True, check=True)
    assert res.stdout.splitlines()[1].endswith("1/4,0.25")
