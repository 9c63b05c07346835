"""Seeded generators for the three initial-state families.

FR: product of random single-qubit states (local magic, no entanglement).
FC: random circuit of {I, S, H} single-qubit gates on |0...0> (neither
resource).  NFC: random circuit of two-qubit Clifford gates including
CNOTs (extensive entanglement, still stabilizer).  Layer count is
round(layers_per_n_squared * N^2); each layer holds N-1 gates at
positions drawn i.i.d. with replacement.

Each realization m draws from an independent RNG substream derived from
(seed, m), so realizations are reproducible and order-independent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .statevec import (CNOT, HADAMARD, IDENTITY_2, S_GATE, StateVector,
                       apply_one_qubit_gate, apply_two_qubit_gate, basis_state)

FR = "FR"
FC = "FC"
NFC = "NFC"
KINDS = (FR, FC, NFC)


@dataclass(frozen=True)
class EnsembleSpec:
    kind: str
    n_qubits: int
    n_realizations: int
    seed: int
    layers_per_n_squared: float = 50.0
    bloch_uniform: bool = False  # cos(theta)-uniform alternative for FR

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown ensemble kind {self.kind!r}")
        if self.n_qubits < 2:
            raise ValueError("n_qubits must be >= 2")
        if self.n_realizations < 1:
            raise ValueError("n_realizations must be >= 1")
        if self.n_layers < 1:
            raise ValueError("layer count must be >= 1")

    @property
    def n_layers(self) -> int:
        return int(round(self.layers_per_n_squared * self.n_qubits ** 2))


def realization_rng(spec: EnsembleSpec, m: int) -> np.random.Generator:
    """Independent, deterministic substream for realization m."""
    return np.random.default_rng(np.random.SeedSequence([int(spec.seed) & (2**64 - 1), m]))


def generate_fr(spec: EnsembleSpec, m: int, *, angles=None) -> StateVector:
    """Tensor product of single-qubit states with random Bloch angles.

    theta ~ Uniform[0, pi] (or cos(theta)-uniform when bloch_uniform),
    phi ~ Uniform[0, 2 pi).  ``angles`` overrides the draw for tests.
    """
    if spec.kind != FR:
        raise ValueError("spec is not an FR ensemble")
    n = spec.n_qubits
    if angles is None:
        rng = realization_rng(spec, m)
        if spec.bloch_uniform:
            thetas = np.arccos(rng.uniform(-1.0, 1.0, size=n))
        else:
            thetas = rng.uniform(0.0, np.pi, size=n)
        phis = rng.uniform(0.0, 2.0 * np.pi, size=n)
    else:
        thetas, phis = angles
    amp = np.array([1.0 + 0.0j])
    # qubit 0 is the lowest bit, i.e. the last kron factor
    for j in reversed(range(n)):
        q = np.array([np.cos(thetas[j] / 2.0),
                      np.exp(1j * phis[j]) * np.sin(thetas[j] / 2.0)])
        amp = np.kron(amp, q)
    return StateVector(amp / np.linalg.norm(amp), _checked=True)


_FC_GATES = (IDENTITY_2, S_GATE, HADAMARD)


def generate_fc(spec: EnsembleSpec, m: int, *, gate_log=None) -> StateVector:
    """Restricted Clifford circuit of {I, S, H} gates on |0...0>."""
    if spec.kind != FC:
        raise ValueError("spec is not an FC ensemble")
    n = spec.n_qubits
    rng = realization_rng(spec, m)
    psi = basis_state(n, 0)
    for layer in range(spec.n_layers):
        sites = rng.integers(0, n, size=n - 1)
        choices = rng.integers(0, 3, size=n - 1)
        for site, choice in zip(sites, choices):
            if choice == 0:
                continue  # identity
            psi = apply_one_qubit_gate(psi, int(site), _FC_GATES[choice])
            if gate_log is not None:
                gate_log.append((layer, "ISH"[choice], int(site)))
    return psi


def generate_nfc(spec: EnsembleSpec, m: int, *, gate_log=None) -> StateVector:
    """Clifford circuit with two-qubit gates on random ordered pairs.

    Gate set per pair (j, l): {I(x)S, S(x)I, I(x)H, H(x)I, CNOT_jl, CNOT_lj}.
    Pairs may repeat within a layer (collisions allowed).
    """
    if spec.kind != NFC:
        raise ValueError("spec is not an NFC ensemble")
    n = spec.n_qubits
    rng = realization_rng(spec, m)
    psi = basis_state(n, 0)
    for layer in range(spec.n_layers):
        for _ in range(n - 1):
            j = int(rng.integers(0, n))
            l = int(rng.integers(0, n - 1))
            if l >= j:
                l += 1
            choice = int(rng.integers(0, 6))
            if choice == 0:
                psi = apply_one_qubit_gate(psi, l, S_GATE)
            elif choice == 1:
                psi = apply_one_qubit_gate(psi, j, S_GATE)
            elif choice == 2:
                psi = apply_one_qubit_gate(psi, l, HADAMARD)
            elif choice == 3:
                psi = apply_one_qubit_gate(psi, j, HADAMARD)
            elif choice == 4:
                psi = apply_two_qubit_gate(psi, j, l, CNOT)
            else:
                psi = apply_two_qubit_gate(psi, l, j, CNOT)
            if gate_log is not None:
                gate_log.append((layer, choice, j, l))
    return psi


_GENERATORS = {FR: generate_fr, FC: generate_fc, NFC: generate_nfc}


def generate(spec: EnsembleSpec, m: int) -> StateVector:
    """Realization m of the ensemble described by spec."""
    return _GENERATORS[spec.kind](spec, m)
