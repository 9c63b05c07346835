"""Command-line entry points.

    quenchlab run <config.yaml> [--profile desk|paper] [--threads K]
                  [--resume <dir>] [--dry-run]
    quenchlab sweep <sweep.yaml> [--threads K]
    quenchlab baselines --n N [--region R]
    quenchlab validate <config.yaml>
    quenchlab orbit [...]        Clifford-orbit anti-flatness experiment

QUENCHLAB_OUTPUT_ROOT, when set, is prepended to relative output
directories.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

import click
import yaml

from . import haar_ref
from .config import canonical_yaml, config_from_dict, load_config
from .runner import run_experiment
from .runner import sweep as run_sweep


def _resolve_output(cfg):
    root = os.environ.get("QUENCHLAB_OUTPUT_ROOT")
    if root and not Path(cfg.output.directory).is_absolute():
        cfg.output.directory = str(Path(root) / cfg.output.directory)
    return cfg


@click.group()
def main():
    """Quench dynamics of entanglement, magic and anti-flatness."""


@main.command()
@click.argument("config_path", type=click.Path(exists=True))
@click.option("--profile", type=click.Choice(["desk", "paper"]), default=None)
@click.option("--threads", type=int, default=1, show_default=True)
@click.option("--resume", "resume_dir", type=click.Path(), default=None,
              help="Resume an interrupted run from its output directory.")
@click.option("--dry-run", is_flag=True,
              help="Validate and print the resolved plan without computing.")
def run(config_path, profile, threads, resume_dir, dry_run):
    """Run one experiment described by a YAML config."""
    cfg = load_config(config_path, profile=profile)
    if resume_dir:
        cfg.output.directory = resume_dir
    cfg = _resolve_output(cfg)
    if dry_run:
        n_steps = round(cfg.evolution.t_final / cfg.evolution.dt)
        click.echo(canonical_yaml(cfg))
        click.echo(f"plan: {cfg.ensemble.n_realizations} realizations x "
                   f"{n_steps} steps, saving every "
                   f"{cfg.evolution.save_every}")
        return
    out = run_experiment(cfg, threads=threads, resume=resume_dir is not None)
    click.echo(f"results in {out}")


@main.command()
@click.argument("sweep_path", type=click.Path(exists=True))
@click.option("--profile", type=click.Choice(["desk", "paper"]), default=None)
@click.option("--threads", type=int, default=1, show_default=True)
def sweep(sweep_path, profile, threads):
    """Run a parameter grid: YAML with `base:`, `grid:` and `out_dir:`."""
    with open(sweep_path) as fh:
        data = yaml.safe_load(fh)
    for key in ("base", "grid", "out_dir"):
        if key not in data:
            raise click.UsageError(f"sweep file is missing {key!r}")
    out_dir = data["out_dir"]
    root = os.environ.get("QUENCHLAB_OUTPUT_ROOT")
    if root and not Path(out_dir).is_absolute():
        out_dir = str(Path(root) / out_dir)
    out = run_sweep(data["base"], data["grid"], out_dir=out_dir,
                    profile=profile, threads=threads)
    click.echo(f"sweep summary in {out / 'sweep_summary.csv'}")


@main.command()
@click.option("--n", "n_qubits", type=int, required=True)
@click.option("--region", type=int, default=None,
              help="Region size (default: half chain).")
def baselines(n_qubits, region):
    """Print analytic Haar baselines for N qubits."""
    vals = haar_ref.baselines(n_qubits, region)
    click.echo(json.dumps(vals, indent=2, sort_keys=True))


@main.command()
@click.argument("config_path", type=click.Path(exists=True))
@click.option("--profile", type=click.Choice(["desk", "paper"]), default=None)
def validate(config_path, profile):
    """Parse and validate a config; print its canonical form."""
    cfg = load_config(config_path, profile=profile)
    click.echo(canonical_yaml(cfg))
    click.echo("config is valid")


@main.command()
@click.option("--n", "n_qubits", type=int, default=4, show_default=True)
@click.option("--states", type=int, default=20, show_default=True)
@click.option("--orbit-size", type=int, default=200, show_default=True)
@click.option("--layers", type=int, default=40, show_default=True,
              help="Clifford layers per orbit sample.")
@click.option("--seed", type=int, default=7, show_default=True)
def orbit(n_qubits, states, orbit_size, layers, seed):
    """Clifford-orbit experiment: orbit-averaged anti-flatness vs M2_lin.

    Reports the fitted slope and correlation; asserts nothing.
    """
    from .experiments import clifford_orbit_experiment

    res = clifford_orbit_experiment(n_qubits, states, orbit_size, layers, seed)
    click.echo(json.dumps(res, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
