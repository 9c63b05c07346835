"""Declarative experiment configs (YAML) and their canonical form.

A config fully determines a run: model, ensemble, evolution grid,
measures, averaging window, outputs and the master seed.  Parsing is
strict (unknown keys fail) and the resolved canonical form is emitted
alongside every result so runs are reproducible from their output
directory alone.
"""

from __future__ import annotations

import copy
import hashlib
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .ensembles import KINDS, EnsembleSpec

SCHEMA_VERSION = 1

SRE_QUBIT_CAP = 14
ENTROPY_QUBIT_CAP = 16

# named size profiles; values fill in keys the user left unset
PROFILES = {
    "desk": {
        "ensemble": {"n_qubits": 10, "n_realizations": 20},
        "evolution": {"dt": 2.0, "t_final": 1000.0},
        "averaging": {"window": 50},
    },
    "paper": {
        "ensemble": {"n_qubits": 16, "n_realizations": 100},
        "evolution": {"dt": 2.0, "t_final": 10000.0},
        "averaging": {"window": 100},
    },
}


@dataclass
class ModelBlock:
    name: str
    params: dict = field(default_factory=dict)


@dataclass
class EvolutionBlock:
    dt: float
    t_final: float
    save_every: int = 1  # record measures every this many steps
    max_subspace: int = 30
    rel_tolerance: float = 1e-12


@dataclass
class OtocBlock:
    v_site: int = 0
    w_site: int = 0
    v_op: str = "Z"
    w_op: str = "Z"
    t_final: float = 10.0
    grid_dt: float = 0.5


@dataclass
class MeasuresBlock:
    alphas: list = field(default_factory=lambda: [1, 2, 3])
    region_sizes: list | None = None  # None -> [n // 2]
    sre: bool = True
    sre_alpha: int = 2
    antiflatness: bool = True
    otoc: OtocBlock | None = None


@dataclass
class AveragingBlock:
    window: int = 50  # long-time average over the last `window` saved samples


@dataclass
class OutputBlock:
    directory: str
    formats: list = field(default_factory=lambda: ["csv", "json"])
    checkpoint_every: int | None = None  # steps between state checkpoints


@dataclass
class ExperimentConfig:
    model: ModelBlock
    ensemble: EnsembleSpec
    evolution: EvolutionBlock
    measures: MeasuresBlock
    averaging: AveragingBlock
    output: OutputBlock
    seed: int

    def region_sizes(self) -> list:
        if self.measures.region_sizes:
            return list(self.measures.region_sizes)
        return [self.ensemble.n_qubits // 2]

    def primary_region(self) -> int:
        """Region size backing the per-time CSV columns (first listed)."""
        return self.region_sizes()[0]

    def validate(self):
        n = self.ensemble.n_qubits
        if self.measures.sre and n > SRE_QUBIT_CAP:
            raise ValueError(f"SRE requested for n = {n} > cap {SRE_QUBIT_CAP}")
        if n > ENTROPY_QUBIT_CAP:
            raise ValueError(f"n = {n} > entropy cap {ENTROPY_QUBIT_CAP}")
        for r in self.region_sizes():
            if not 1 <= r < n:
                raise ValueError(f"region size {r} out of range for n = {n}")
        if self.evolution.save_every < 1:
            raise ValueError("save_every must be >= 1")
        n_steps = round(self.evolution.t_final / self.evolution.dt)
        if abs(n_steps * self.evolution.dt - self.evolution.t_final) > 1e-9:
            raise ValueError("t_final must be an integer number of steps")
        n_saved = n_steps // self.evolution.save_every + 1
        if self.averaging.window > n_saved:
            raise ValueError(
                f"averaging window {self.averaging.window} exceeds the "
                f"{n_saved} saved samples")
        return self


def _take(block: dict, allowed: set, context: str) -> dict:
    unknown = set(block) - allowed
    if unknown:
        raise ValueError(f"unknown keys in {context}: {sorted(unknown)}")
    return block


def _merge_defaults(data: dict, defaults: dict) -> dict:
    out = copy.deepcopy(data)
    for key, val in defaults.items():
        if key not in out:
            out[key] = copy.deepcopy(val)
        elif isinstance(val, dict) and isinstance(out[key], dict):
            out[key] = _merge_defaults(out[key], val)
    return out


def config_from_dict(data: dict, profile: str | None = None) -> ExperimentConfig:
    if profile is not None:
        if profile not in PROFILES:
            raise ValueError(f"unknown profile {profile!r}")
        data = _merge_defaults(data, PROFILES[profile])
    data = _take(dict(data), {"model", "ensemble", "evolution", "measures",
                              "averaging", "output", "seed"}, "config")
    for key in ("model", "ensemble", "evolution", "output"):
        if key not in data:
            raise ValueError(f"config is missing the {key!r} block")
    if "seed" not in data:
        raise ValueError("config is missing the seed")
    seed = int(data["seed"])

    mb = _take(dict(data["model"]), {"name", "params"}, "model")
    model = ModelBlock(name=mb["name"], params=dict(mb.get("params", {})))

    eb = _take(dict(data["ensemble"]),
               {"kind", "n_qubits", "n_realizations", "seed",
                "layers_per_n_squared", "bloch_uniform"}, "ensemble")
    if eb["kind"] not in KINDS:
        raise ValueError(f"unknown ensemble kind {eb['kind']!r}")
    ensemble = EnsembleSpec(
        kind=eb["kind"],
        n_qubits=int(eb["n_qubits"]),
        n_realizations=int(eb["n_realizations"]),
        seed=int(eb.get("seed", seed)),
        layers_per_n_squared=float(eb.get("layers_per_n_squared", 50.0)),
        bloch_uniform=bool(eb.get("bloch_uniform", False)))

    vb = _take(dict(data["evolution"]),
               {"dt", "t_final", "save_every", "max_subspace",
                "rel_tolerance"}, "evolution")
    evolution = EvolutionBlock(
        dt=float(vb["dt"]), t_final=float(vb["t_final"]),
        save_every=int(vb.get("save_every", 1)),
        max_subspace=int(vb.get("max_subspace", 30)),
        rel_tolerance=float(vb.get("rel_tolerance", 1e-12)))

    sb = _take(dict(data.get("measures", {})),
               {"alphas", "region_sizes", "sre", "sre_alpha", "otoc",
                "antiflatness"}, "measures")
    otoc = None
    if sb.get("otoc"):
        ob = _take(dict(sb["otoc"]),
                   {"v_site", "w_site", "v_op", "w_op", "t_final", "grid_dt"},
                   "measures.otoc")
        otoc = OtocBlock(**{k: ob[k] for k in ob})
    measures = MeasuresBlock(
        alphas=[float(a) for a in sb.get("alphas", [1, 2, 3])],
        region_sizes=(list(sb["region_sizes"])
                      if sb.get("region_sizes") else None),
        sre=bool(sb.get("sre", True)),
        sre_alpha=int(sb.get("sre_alpha", 2)),
        antiflatness=bool(sb.get("antiflatness", True)),
        otoc=otoc)

    ab = _take(dict(data.get("averaging", {})), {"window"}, "averaging")
    averaging = AveragingBlock(window=int(ab.get("window", 50)))

    outb = _take(dict(data["output"]),
                 {"directory", "formats", "checkpoint_every"}, "output")
    output = OutputBlock(
        directory=str(outb["directory"]),
        formats=list(outb.get("formats", ["csv", "json"])),
        checkpoint_every=(int(outb["checkpoint_every"])
                          if outb.get("checkpoint_every") else None))

    return ExperimentConfig(model, ensemble, evolution, measures,
                            averaging, output, seed).validate()


def config_to_dict(cfg: ExperimentConfig) -> dict:
    """Canonical dict form; round-trips through config_from_dict."""
    out = {
        "model": {"name": cfg.model.name, "params": dict(cfg.model.params)},
        "ensemble": {
            "kind": cfg.ensemble.kind,
            "n_qubits": cfg.ensemble.n_qubits,
            "n_realizations": cfg.ensemble.n_realizations,
            "seed": cfg.ensemble.seed,
            "layers_per_n_squared": cfg.ensemble.layers_per_n_squared,
            "bloch_uniform": cfg.ensemble.bloch_uniform,
        },
        "evolution": {
            "dt": cfg.evolution.dt,
            "t_final": cfg.evolution.t_final,
            "save_every": cfg.evolution.save_every,
            "max_subspace": cfg.evolution.max_subspace,
            "rel_tolerance": cfg.evolution.rel_tolerance,
        },
        "measures": {
            "alphas": list(cfg.measures.alphas),
            "region_sizes": cfg.region_sizes(),
            "sre": cfg.measures.sre,
            "sre_alpha": cfg.measures.sre_alpha,
            "antiflatness": cfg.measures.antiflatness,
        },
        "averaging": {"window": cfg.averaging.window},
        "output": {
            "directory": cfg.output.directory,
            "formats": list(cfg.output.formats),
            "checkpoint_every": cfg.output.checkpoint_every,
        },
        "seed": cfg.seed,
    }
    if cfg.measures.otoc is not None:
        o = cfg.measures.otoc
        out["measures"]["otoc"] = {
            "v_site": o.v_site, "w_site": o.w_site,
            "v_op": o.v_op, "w_op": o.w_op,
            "t_final": o.t_final, "grid_dt": o.grid_dt,
        }
    return out


def canonical_yaml(cfg: ExperimentConfig) -> str:
    return yaml.safe_dump(config_to_dict(cfg), sort_keys=True)


def config_hash(cfg: ExperimentConfig) -> str:
    return hashlib.sha256(canonical_yaml(cfg).encode()).hexdigest()[:16]


def load_config(path, profile: str | None = None,
                overrides: dict | None = None) -> ExperimentConfig:
    with open(path) as fh:
        data = yaml.safe_load(fh) or {}
    if overrides:
        data = _apply_overrides(data, overrides)
    return config_from_dict(data, profile=profile)


def _apply_overrides(data: dict, overrides: dict) -> dict:
    """Apply dotted-key overrides, e.g. {"model.params.hx": 0.5}."""
    out = copy.deepcopy(data)
    for dotted, value in overrides.items():
        node = out
        *parents, leaf = dotted.split(".")
        for part in parents:
            node = node.setdefault(part, {})
        node[leaf] = value
    return out
