"""Pilot run that freezes the integrability-gap thresholds used by the
acceptance suite.

Two TFIM+L quenches from the FR ensemble (N=10, M=20, dt=2, t_final=1e3,
window 50): the free-fermion point hx=0 and the non-integrable point
hx=0.5.  The long-time relative differences against the Haar baselines
are written to pilot/thresholds.json and committed so reruns of the
acceptance tests check against fixed numbers.

Regenerate with:  python3 pilot/run_pilot.py
"""

import csv
import json
from pathlib import Path

from quenchlab.config import config_from_dict
from quenchlab.runner import run_experiment

HERE = Path(__file__).parent


def base_config(hx, out_dir):
    return {
        "model": {"name": "tfim_l",
                  "params": {"j_coupling": 1.0, "hz": 1.5, "hx": hx}},
        "ensemble": {"kind": "FR", "n_qubits": 10, "n_realizations": 20},
        "evolution": {"dt": 2.0, "t_final": 1000.0, "max_subspace": 100},
        "averaging": {"window": 50},
        "output": {"directory": str(out_dir)},
        "seed": 20260826,
    }


def summary_map(run_dir):
    out = {}
    with open(run_dir / "summary.csv") as fh:
        reader = csv.reader(fh)
        next(reader)
        for q, mean, std, stderr, haar, rel in reader:
            out[q] = {"mean": float(mean), "std": float(std),
                      "stderr": float(stderr), "haar_value": float(haar),
                      "relative_difference": float(rel)}
    return out


def main():
    results = {}
    for label, hx in (("free_fermion", 0.0), ("non_integrable", 0.5)):
        run_dir = HERE / label
        cfg = config_from_dict(base_config(hx, run_dir))
        run_experiment(cfg, resume=True)
        results[label] = summary_map(run_dir)

    report = {"config": "N=10 FR TFIM+L dt=2 t_final=1e3 window=50 M=20",
              "quantities": {}}
    for q in ("S1_avg", "M2", "log_antiflatness_halfchain"):
        ni = results["non_integrable"][q]["relative_difference"]
        ff = results["free_fermion"][q]["relative_difference"]
        report["quantities"][q] = {
            "non_integrable_rel_diff": ni,
            "free_fermion_rel_diff": ff,
            "ratio": ff / ni,
        }
    (HERE / "thresholds.json").write_text(json.dumps(report, indent=2) + "\n")
    print(json.dumps(report, indent=2))


if __name__ == "__main__":
    main()
