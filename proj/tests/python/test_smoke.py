import json
import math
import os
import subprocess

import numpy as np
import pytest

import cca_decay as cd


def test_series_is_normalized():
    x = cd.sample_series(1201, 2.0, 5)
    assert x.shape == (1201,)
    assert abs(x.mean()) < 1e-12
    assert abs(x.var() - 1.0) < 1e-12
    assert np.array_equal(x, cd.sample_series(1201, 2.0, 5))


def test_rabi_trajectory():
    tr = cd.trajectory(n=1, homogeneous=True, t_max=5 * math.pi / 0.1)
    assert np.max(np.abs(tr["p_e"] - np.cos(0.1 * tr["t"]) ** 2)) < 1e-8
    assert np.max(np.abs(tr["norm"] - 1.0)) < 1e-12


def test_markov_limit_and_non_markovianity():
    tr = cd.trajectory(n=1001, homogeneous=True, t_max=100.0, stride=10)
    assert np.max(np.abs(tr["p_e"] - np.exp(-0.01 * tr["t"]))) < 0.02
    res = cd.non_markovianity(tr["t"], tr["p_e"])
    assert 0.0 <= res["N"] < 0.05
    assert res["method"] == "integral"


def test_spectral_parameters_homogeneous():
    s = cd.spectral(n=1001, homogeneous=True)
    p = s["params"]
    assert p["xi"] == pytest.approx(501.0, rel=1e-9)
    assert p["gamma"] == pytest.approx(math.pi * p["window_weight"])
    assert p["r"] == pytest.approx(p["gamma"] / p["g_ell"])
    width = s["omega"][1] - s["omega"][0]
    assert np.sum(s["G"]) * width == pytest.approx(np.sum(s["couplings"] ** 2), rel=1e-12)


def test_models_match_lindblad():
    sol = cd.lindblad_bath_plus_mode(2.0, 0.1, 100.0, 0.01)
    closed = cd.pe_model("bath_plus_mode", sol["t"], 2.0, 0.1)
    assert np.max(np.abs(sol["p_e"] - closed)) < 1e-7
    assert cd.predict("lorentzian", 1.0)["valid"]
    assert not cd.predict("lorentzian", 2.5)["valid"]


def test_invalid_arguments_raise():
    with pytest.raises(ValueError):
        cd.sample_series(100, 1.0, 1)
    with pytest.raises(ValueError):
        cd.pe_model("nope", np.array([0.0]), 1.0, 0.1)


def test_sweep_writes_outputs(tmp_path):
    cfg = {"alphas": [0.0, 3.0], "n_realizations": 2, "t_max": 10.0, "spectral_n": 51,
           "system": {"n_cavities": 51}}
    rows = cd.run_sweep(json.dumps(cfg), tmp_path)
    assert [r["alpha"] for r in rows] == [0.0, 3.0]
    assert all(r["completed"] == 2 for r in rows)
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["complete"] is True
    assert {f["name"] for f in manifest["files"]} >= {"summary.csv", "pe_curves.csv", "realizations.csv"}


@pytest.mark.skipif("CCA_DECAY_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_effective_stdout():
    out = subprocess.run([os.environ["CCA_DECAY_CLI"], "effective", "--model", "bath_plus_mode", "--r", "1.0"],
                         check=True, capture_output=True, text=True).stdout
    assert out.startswith("t,p_e")
