"""Experiment orchestration: seeded ensemble sweeps, quench evolution,
measure recording, averaging and persistence.

Layout of a result directory:

    resolved_config.yaml     canonical config actually run
    manifest.json            schema version, config hash, timings, status
    realizations/m0000.csv   per-realization time series (written first)
    timeseries.csv           concatenation of all realizations, in order
    timeseries_mean.csv      per-time ensemble mean/std per quantity
    summary.csv              long-time window averages + Haar baselines
    page_curve.csv           per-region entropies (multi-region runs only)
    otoc.csv                 OTOC statistics (when configured)
    checkpoints/             state dumps for resumable long runs

Realizations are the unit of parallelism and of resume: each one is fully
determined by (seed, m), so output bytes do not depend on thread count or
on interruption points.
"""

from __future__ import annotations

import csv
import io
import json
import math
import subprocess
import time as _time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import haar_ref, kernels, measures
from .config import (SCHEMA_VERSION, ExperimentConfig, canonical_yaml,
                     config_from_dict, config_hash, config_to_dict)
from .ensembles import generate
from .hamiltonian import build_model
from .otoc import OtocSpec, otoc_ensemble
from .propagator import KrylovConfig, evolve
from .statevec import StateVector

TIMESERIES_COLUMNS = [
    "time", "realization", "alpha", "S1_avg", "S2_avg", "S3_avg",
    "M2", "M2_lin", "antiflatness_halfchain", "log_antiflatness_halfchain",
]

PAGE_COLUMNS = ["time", "realization", "region_size", "S1_avg"]

SUMMARY_QUANTITIES = ["S1_avg", "S2_avg", "S3_avg", "M2", "M2_lin",
                      "antiflatness_halfchain", "log_antiflatness_halfchain"]


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    # plain-float repr keeps output bytes identical across fresh/resumed runs
    return repr(float(x))


def _write_csv(path: Path, header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    path.write_text(buf.getvalue())


def _git_revision() -> str:
    try:
        out = subprocess.run(
            ["git", "rev-parse", "HEAD"], capture_output=True, text=True,
            timeout=5, cwd=Path(__file__).parent)
        return out.stdout.strip() if out.returncode == 0 else "unknown"
    except OSError:
        return "unknown"


def _haar_baseline_for(quantity: str, n: int, r: int) -> float:
    if quantity == "S1_avg":
        return haar_ref.page_renyi(n, r, 1)
    if quantity == "S2_avg":
        return haar_ref.page_renyi(n, r, 2)
    if quantity == "S3_avg":
        return haar_ref.page_renyi(n, r, 3)
    if quantity == "M2":
        return haar_ref.haar_m2(n)
    if quantity == "M2_lin":
        return haar_ref.haar_m2_lin(n)
    if quantity == "antiflatness_halfchain":
        return haar_ref.haar_antiflatness(n, r)
    if quantity == "log_antiflatness_halfchain":
        return haar_ref.haar_log_antiflatness(n, r)
    raise KeyError(quantity)


def _measure_row(cfg: ExperimentConfig, t: float, m: int,
                 psi: StateVector):
    """One main-CSV row plus optional extra-region page rows."""
    primary = cfg.primary_region()
    spectra = measures.window_spectra(psi, primary)
    s1 = measures.averaged_entropy_from_spectra(spectra, 1)
    s2 = measures.averaged_entropy_from_spectra(spectra, 2)
    s3 = measures.averaged_entropy_from_spectra(spectra, 3)
    if cfg.measures.sre:
        magic = measures.sre_exact(psi, cfg.measures.sre_alpha)
        m2, m2_lin = magic.sre, magic.sre_linearized
    else:
        m2 = m2_lin = float("nan")
    if cfg.measures.antiflatness:
        flat = [measures.antiflatness_from_spectrum(s) for s in spectra]
        af = float(np.mean([f.antiflatness for f in flat]))
        log_af = float(np.mean([f.log_antiflatness for f in flat]))
    else:
        af = log_af = float("nan")
    row = [t, m, cfg.measures.sre_alpha, s1, s2, s3, m2, m2_lin, af, log_af]

    page_rows = []
    for r in cfg.region_sizes():
        if r == primary:
            page_rows.append([t, m, r, s1])
        else:
            page_rows.append([t, m, r, measures.averaged_entropy(psi, r, 1)])
    return row, page_rows


def _checkpoint_path(ckpt_dir: Path, m: int) -> Path:
    return ckpt_dir / f"m{m:04d}.npz"


def run_realization(cfg: ExperimentConfig, m: int,
                    ckpt_dir: Path | None = None):
    """Evolve realization m and return (rows, page_rows).

    When a checkpoint directory is given, progress is dumped every
    ``output.checkpoint_every`` steps and picked up again on re-entry.
    """
    ev = cfg.evolution
    kcfg = KrylovConfig(dt=ev.dt, max_subspace=ev.max_subspace,
                        rel_tolerance=ev.rel_tolerance)
    h = build_model(cfg.model.name, cfg.ensemble.n_qubits, cfg.model.params)

    rows: list = []
    page_rows: list = []
    start_step = 0
    t0 = 0.0
    psi = None
    ckpt = _checkpoint_path(ckpt_dir, m) if ckpt_dir is not None else None
    if ckpt is not None and ckpt.exists():
        data = np.load(ckpt, allow_pickle=False)
        psi = StateVector(data["amplitudes"])
        start_step = int(data["step"])
        t0 = start_step * ev.dt
        rows = [list(r) for r in data["rows"]]
        page_rows = [list(r) for r in data["page_rows"]]
    if psi is None:
        psi = generate(cfg.ensemble, m)

    every = cfg.output.checkpoint_every

    def observer(step, t, state):
        if step > start_step or start_step == 0:
            if step % ev.save_every == 0:
                row, extra = _measure_row(cfg, t, m, state)
                rows.append(row)
                page_rows.extend(extra)
        if (ckpt is not None and every and step > start_step
                and step % every == 0):
            np.savez(ckpt, amplitudes=state.amplitudes, step=step,
                     rows=np.array(rows, dtype=np.float64),
                     page_rows=np.array(page_rows, dtype=np.float64))

    if start_step == 0:
        evolve(h, psi, ev.t_final, kcfg, observer)
    elif t0 < ev.t_final:
        evolve(h, psi, ev.t_final, kcfg, observer,
               step_offset=start_step, t0=t0)
    if ckpt is not None and ckpt.exists():
        ckpt.unlink()
    return rows, page_rows


def _realization_worker(cfg_dict, m, out_dir_str):
    cfg = config_from_dict(cfg_dict)
    out = Path(out_dir_str)
    ckpt_dir = out / "checkpoints" if cfg.output.checkpoint_every else None
    rows, page_rows = run_realization(cfg, m, ckpt_dir)
    _write_csv(out / "realizations" / f"m{m:04d}.csv",
               TIMESERIES_COLUMNS, rows)
    if len(cfg.region_sizes()) > 1:
        _write_csv(out / "realizations" / f"m{m:04d}_regions.csv",
                   PAGE_COLUMNS, page_rows)
    return m


def run_experiment(cfg: ExperimentConfig, *, threads: int = 1,
                   resume: bool = False) -> Path:
    """Run every realization, aggregate, and persist; returns the out dir."""
    cfg.validate()
    out = Path(cfg.output.directory)
    out.mkdir(parents=True, exist_ok=True)
    (out / "realizations").mkdir(exist_ok=True)
    if cfg.output.checkpoint_every:
        (out / "checkpoints").mkdir(exist_ok=True)

    chash = config_hash(cfg)
    manifest_path = out / "manifest.json"
    if resume and manifest_path.exists():
        previous = json.loads(manifest_path.read_text())
        if previous.get("config_hash") != chash:
            raise ValueError(
                "resume directory was produced by a different config "
                f"(hash {previous.get('config_hash')} != {chash})")
    (out / "resolved_config.yaml").write_text(canonical_yaml(cfg))

    m_total = cfg.ensemble.n_realizations
    pending = []
    for m in range(m_total):
        if resume and (out / "realizations" / f"m{m:04d}.csv").exists():
            continue
        pending.append(m)

    started = _time.time()
    cfg_dict = config_to_dict(cfg)
    failure = None
    try:
        if threads > 1 and len(pending) > 1:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                list(pool.map(_realization_worker, [cfg_dict] * len(pending),
                              pending, [str(out)] * len(pending)))
        else:
            for m in pending:
                _realization_worker(cfg_dict, m, str(out))
    except Exception as exc:  # noqa: BLE001 - failure manifest, then re-raise
        failure = exc

    completed = [m for m in range(m_total)
                 if (out / "realizations" / f"m{m:04d}.csv").exists()]
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "config_hash": chash,
        "git_revision": _git_revision(),
        "kernels": kernels.IMPL,
        "wall_time_s": round(_time.time() - started, 3),
        "status": "failed" if failure else "ok",
        "completed_realizations": completed,
        "n_realizations": m_total,
    }
    if failure is not None:
        manifest["error"] = f"{type(failure).__name__}: {failure}"
        manifest_path.write_text(json.dumps(manifest, indent=2) + "\n")
        raise failure

    _aggregate(cfg, out)
    if cfg.measures.otoc is not None:
        _run_otoc(cfg, out)
    manifest["wall_time_s"] = round(_time.time() - started, 3)
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n")
    return out


def _read_rows(path: Path):
    with open(path) as fh:
        reader = csv.reader(fh)
        header = next(reader)
        return header, [[float(v) for v in row] for row in reader]


def _aggregate(cfg: ExperimentConfig, out: Path):
    n = cfg.ensemble.n_qubits
    primary = cfg.primary_region()
    all_rows = []
    for m in range(cfg.ensemble.n_realizations):
        _, rows = _read_rows(out / "realizations" / f"m{m:04d}.csv")
        all_rows.extend(rows)
    _write_csv(out / "timeseries.csv", TIMESERIES_COLUMNS, all_rows)

    data = np.array(all_rows, dtype=np.float64)
    times = np.unique(data[:, 0])
    col_of = {name: i for i, name in enumerate(TIMESERIES_COLUMNS)}

    mean_rows = []
    for t in times:
        sel = data[data[:, 0] == t]
        for q in SUMMARY_QUANTITIES:
            vals = sel[:, col_of[q]]
            mean_rows.append([
                float(t), q, float(np.mean(vals)),
                float(np.std(vals, ddof=1)) if len(vals) > 1 else 0.0,
                _haar_baseline_for(q, n, primary)])
    _write_csv(out / "timeseries_mean.csv",
               ["time", "quantity", "mean", "std", "haar_value"], mean_rows)

    # long-time average: last `window` saved samples, per realization
    window_times = times[-cfg.averaging.window:]
    summary_rows = []
    for q in SUMMARY_QUANTITIES:
        per_m = []
        for m in range(cfg.ensemble.n_realizations):
            sel = data[(data[:, col_of["realization"]] == m)
                       & np.isin(data[:, 0], window_times)]
            per_m.append(float(np.mean(sel[:, col_of[q]])))
        per_m = np.array(per_m)
        mean = float(np.mean(per_m))
        std = float(np.std(per_m, ddof=1)) if len(per_m) > 1 else 0.0
        baseline = _haar_baseline_for(q, n, primary)
        rel = (measures.relative_difference(mean, baseline)
               if baseline != 0 else float("nan"))
        summary_rows.append([q, mean, std,
                             std / math.sqrt(len(per_m)), baseline, rel])
    _write_csv(out / "summary.csv",
               ["quantity", "mean", "std", "stderr", "haar_value",
                "relative_difference"], summary_rows)

    if len(cfg.region_sizes()) > 1:
        _aggregate_page_curve(cfg, out, window_times)


def _aggregate_page_curve(cfg: ExperimentConfig, out: Path, window_times):
    n = cfg.ensemble.n_qubits
    rows = []
    for m in range(cfg.ensemble.n_realizations):
        _, part = _read_rows(out / "realizations" / f"m{m:04d}_regions.csv")
        rows.extend(part)
    data = np.array(rows, dtype=np.float64)
    page_rows = []
    for r in cfg.region_sizes():
        sel = data[(data[:, 2] == r) & np.isin(data[:, 0], window_times)]
        per_m = [float(np.mean(sel[sel[:, 1] == m][:, 3]))
                 for m in range(cfg.ensemble.n_realizations)]
        mean = float(np.mean(per_m))
        std = (float(np.std(per_m, ddof=1)) if len(per_m) > 1 else 0.0)
        f = r / n
        haar = haar_ref.page_renyi(n, r, 1)
        rescale = 2.0 / (n * math.log(2.0))
        page_rows.append([r, f, mean, std, haar,
                          mean * rescale, 2.0 * min(f, 1.0 - f)])
    _write_csv(out / "page_curve.csv",
               ["region_size", "f", "S1", "S1_std", "haar_S1",
                "S1_rescaled", "haar_rescaled"], page_rows)


def _run_otoc(cfg: ExperimentConfig, out: Path):
    o = cfg.measures.otoc
    h = build_model(cfg.model.name, cfg.ensemble.n_qubits, cfg.model.params)
    n_pts = int(round(o.t_final / o.grid_dt))
    spec = OtocSpec(v_site=o.v_site, w_site=o.w_site, v_op=o.v_op,
                    w_op=o.w_op,
                    times=np.linspace(0.0, o.t_final, n_pts + 1))
    kcfg = KrylovConfig(dt=o.grid_dt, max_subspace=cfg.evolution.max_subspace,
                        rel_tolerance=cfg.evolution.rel_tolerance)
    stats = otoc_ensemble(h, cfg.ensemble, spec, kcfg)
    rows = []
    for i, t in enumerate(stats["times"]):
        rows.append([float(t), cfg.ensemble.kind,
                     float(stats["re_mean"][i]), float(stats["im_mean"][i]),
                     float(stats["re_std"][i]), float(stats["im_std"][i]),
                     stats["n_realizations"]])
    _write_csv(out / "otoc.csv",
               ["time", "ensemble", "re_mean", "im_mean", "re_std",
                "im_std", "M"], rows)


def sweep(base: dict, grid: list, *, out_dir: str, profile=None,
          threads: int = 1) -> Path:
    """Run one experiment per override set and aggregate one summary table.

    Every entry of ``grid`` is a dict of dotted-key overrides applied to
    the base config.  All runs must share the qubit count and measures so
    summary rows align.
    """
    from .config import _apply_overrides  # same module family

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    configs = []
    for i, overrides in enumerate(grid):
        data = _apply_overrides(base, dict(overrides))
        data.setdefault("output", {})
        data["output"]["directory"] = str(out / f"run{i:03d}")
        configs.append((overrides, config_from_dict(data, profile=profile)))

    if configs:
        n0 = configs[0][1].ensemble.n_qubits
        a0 = tuple(configs[0][1].measures.alphas)
        for _, c in configs:
            if c.ensemble.n_qubits != n0 or tuple(c.measures.alphas) != a0:
                raise ValueError("sweep configs must share N and measures")

    table = []
    for overrides, c in configs:
        run_dir = run_experiment(c, threads=threads)
        with open(run_dir / "summary.csv") as fh:
            reader = csv.reader(fh)
            next(reader)
            for row in reader:
                table.append([json.dumps(overrides, sort_keys=True),
                              c.model.name, c.ensemble.kind,
                              c.ensemble.n_qubits] + row)
    _write_csv(out / "sweep_summary.csv",
               ["overrides", "model", "ensemble", "n_qubits", "quantity",
                "mean", "std", "stderr", "haar_value",
                "relative_difference"], table)
    return out
