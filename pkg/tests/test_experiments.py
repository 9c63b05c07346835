import json

import pytest
from click.testing import CliRunner

from quenchlab import cli
from quenchlab.experiments import clifford_orbit_experiment


def test_orbit_experiment_reports_linear_relation():
    res = clifford_orbit_experiment(n=3, n_states=8, orbit_size=40,
                                    layers=12, seed=3)
    assert set(res) >= {"slope", "intercept", "correlation", "m2_lin_range"}
    # orbit-averaged anti-flatness grows with the state's magic
    assert res["correlation"] > 0.5
    assert res["slope"] > 0
    lo, hi = res["m2_lin_range"]
    assert 0 <= lo < hi <= 1


def test_orbit_cli():
    cr = CliRunner()
    res = cr.invoke(cli.main, ["orbit", "--n", "3", "--states", "6",
                               "--orbit-size", "20", "--layers", "10"])
    assert res.exit_code == 0, res.output
    out = json.loads(res.output)
    assert out["n_qubits"] == 3
    assert "slope" in out and "correlation" in out
