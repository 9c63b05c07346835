"""Regenerate the CSV fixtures from the primary package.

Run from the repository root:  python3 frontend/test/gen_fixtures.py

Small deterministic runs (N=6, M=4) so the files stay tiny; the SVG
regression baselines in test/expected/ must be refreshed whenever these
fixtures change (see test/plots.test.ts).
"""

import shutil
from pathlib import Path

from quenchlab.config import config_from_dict
from quenchlab.runner import run_experiment

HERE = Path(__file__).parent
FIX = HERE / "fixtures"


def cfg(out, hx, regions=None):
    measures = {"region_sizes": regions} if regions else {}
    return config_from_dict({
        "model": {"name": "tfim_l",
                  "params": {"j_coupling": 1.0, "hz": 1.5, "hx": hx}},
        "ensemble": {"kind": "FR", "n_qubits": 6, "n_realizations": 4},
        "evolution": {"dt": 0.5, "t_final": 10.0, "max_subspace": 40},
        "measures": measures,
        "averaging": {"window": 5},
        "output": {"directory": str(out)},
        "seed": 1234,
    })


def main():
    FIX.mkdir(exist_ok=True)
    scratch = HERE / "_scratch"
    run_a = run_experiment(cfg(scratch / "a", 0.5, regions=[3, 1, 2, 4, 5]))
    run_b = run_experiment(cfg(scratch / "b", 0.0))
    shutil.copy(run_a / "timeseries_mean.csv", FIX / "timeseries_mean_a.csv")
    shutil.copy(run_b / "timeseries_mean.csv", FIX / "timeseries_mean_b.csv")
    shutil.copy(run_a / "page_curve.csv", FIX / "page_curve.csv")
    shutil.copy(run_a / "summary.csv", FIX / "summary_n6_nonint.csv")
    shutil.copy(run_b / "summary.csv", FIX / "summary_n6_ff.csv")
    shutil.rmtree(scratch)
    print("fixtures written to", FIX)


if __name__ == "__main__":
    main()
