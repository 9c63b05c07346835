"""Property experiments reported rather than asserted.

Currently: the Clifford-orbit relation between orbit-averaged
anti-flatness of a subregion and the linearized stabilizer entropy of the
full state.  Averaged over random Clifford circuits appended to a fixed
state, <F(rho_R)>_C is proportional to M2_lin; the proportionality
constant depends on total and subsystem dimension, so only linearity is
meaningful here.
"""

from __future__ import annotations

import numpy as np

from .ensembles import NFC, EnsembleSpec, generate_nfc
from .haar_ref import sample_haar_state
from .measures import antiflatness_from_spectrum, sre_exact
from .statevec import (CNOT, HADAMARD, S_GATE, StateVector,
                       apply_one_qubit_gate, apply_two_qubit_gate,
                       reduced_density_matrix)


def random_clifford_circuit(psi: StateVector, rng, layers: int) -> StateVector:
    """Apply `layers` layers of the NFC two-qubit Clifford gate set."""
    n = psi.n_qubits
    for _ in range(layers):
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
    return psi


def _t_doped_state(n, n_t, rng) -> StateVector:
    """Stabilizer-random state doped with n_t T gates (tunable magic)."""
    spec = EnsembleSpec(kind=NFC, n_qubits=n, n_realizations=1,
                        seed=int(rng.integers(0, 2**63)),
                        layers_per_n_squared=2.0)
    psi = generate_nfc(spec, 0)
    t_gate = np.diag([1.0, np.exp(1j * np.pi / 4)]).astype(np.complex128)
    for _ in range(n_t):
        psi = apply_one_qubit_gate(psi, int(rng.integers(0, n)), t_gate)
        psi = random_clifford_circuit(psi, rng, 2)
    return psi


def clifford_orbit_experiment(n: int = 4, n_states: int = 20,
                              orbit_size: int = 200, layers: int = 40,
                              seed: int = 7) -> dict:
    """Slope/correlation of orbit-averaged anti-flatness vs M2_lin."""
    rng = np.random.default_rng(seed)
    region = list(range(n // 2))
    m2_lins = []
    orbit_means = []
    for s in range(n_states):
        # mix of doped stabilizer states and Haar states spans M2_lin
        if s % 4 == 3:
            psi = sample_haar_state(n, rng)
        else:
            psi = _t_doped_state(n, s % 4, rng)
        m2_lins.append(sre_exact(psi, 2).sre_linearized)
        vals = []
        for _ in range(orbit_size):
            phi = random_clifford_circuit(psi, rng, layers)
            spec = reduced_density_matrix(phi, region).spectrum()
            vals.append(antiflatness_from_spectrum(spec).antiflatness)
        orbit_means.append(float(np.mean(vals)))

    x = np.array(m2_lins)
    y = np.array(orbit_means)
    slope, intercept = np.polyfit(x, y, 1)
    corr = float(np.corrcoef(x, y)[0, 1])
    return {
        "n_qubits": n,
        "n_states": n_states,
        "orbit_size": orbit_size,
        "slope": float(slope),
        "intercept": float(intercept),
        "correlation": corr,
        "m2_lin_range": [float(x.min()), float(x.max())],
    }
