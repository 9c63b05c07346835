"""Pauli-sum Hamiltonians on a periodic spin-1/2 ring, applied matrix-free.

Two models: transverse-field Ising with an optional longitudinal field
(the longitudinal field breaks free-fermion integrability), and an XXZ
chain with an optional next-to-nearest-neighbor coupling (the NNN term
breaks Bethe-ansatz integrability).  Energy is in units of the leading
coupling; time is its inverse.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import ResourceCapError
from .pauli import PauliString
from .statevec import StateVector

INTEGRABLE_FF = "integrable_ff"
INTEGRABLE_BA = "integrable_ba"
NON_INTEGRABLE = "non_integrable"

DENSE_CAP = 12


@dataclass
class PauliSumHamiltonian:
    """H = sum_k c_k P_k with real c_k and phase-free Hermitian P_k."""

    n_qubits: int
    terms: list  # [(float, PauliString)]
    integrability: str = NON_INTEGRABLE
    model: str = ""
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        for c, p in self.terms:
            if p.phase_power != 0:
                raise ValueError("Hamiltonian terms must be phase-free")
            if p.n_qubits != self.n_qubits:
                raise ValueError("term size mismatch")
        self._coeffs = np.array([c for c, _ in self.terms], dtype=np.float64)
        self._xs = np.array([p.x_mask for _, p in self.terms], dtype=np.uint64)
        self._zs = np.array([p.z_mask for _, p in self.terms], dtype=np.uint64)
        self._phases = np.array(
            [kernels.pauli_phase(p.x_mask, p.z_mask) for _, p in self.terms],
            dtype=np.complex128)

    @property
    def n_terms(self):
        return len(self.terms)

    def apply_vec(self, vec: np.ndarray) -> np.ndarray:
        """H @ vec on a raw amplitude array (linear, unnormalized)."""
        if vec.shape[0] != 1 << self.n_qubits:
            raise ValueError("dimension mismatch")
        out = np.zeros_like(vec)
        kernels.apply_pauli_sum(
            self._coeffs, self._xs, self._zs, self._phases, vec, out)
        return out

    def apply(self, psi: StateVector) -> np.ndarray:
        """H|psi> as a raw (unnormalized) amplitude array."""
        if psi.n_qubits != self.n_qubits:
            raise ValueError("dimension mismatch")
        return self.apply_vec(psi.amplitudes)

    def expectation(self, psi: StateVector) -> float:
        val = np.vdot(psi.amplitudes, self.apply(psi))
        assert abs(val.imag) < 1e-10
        return float(val.real)

    def dense_matrix(self) -> np.ndarray:
        """Dense matrix for oracle tests; capped at DENSE_CAP qubits."""
        if self.n_qubits > DENSE_CAP:
            raise ResourceCapError(f"dense Hamiltonian above n = {DENSE_CAP}")
        d = 1 << self.n_qubits
        h = np.zeros((d, d), dtype=np.complex128)
        eye = np.eye(d)
        for col in range(d):
            h[:, col] = self.apply_vec(eye[:, col].astype(np.complex128))
        return h


def _two_site(n, j, l, op_j, op_l):
    """Phase-free string with single-site Paulis op_j on j and op_l on l."""
    x = z = 0
    for site, op in ((j, op_j), (l, op_l)):
        if op in ("X", "Y"):
            x |= 1 << site
        if op in ("Z", "Y"):
            z |= 1 << site
    return PauliString(n, x, z)


def _one_site(n, j, op):
    return _two_site(n, j, j, op, "I") if op != "I" else PauliString(n, 0, 0)


def build_tfim_l(n: int, j_coupling: float = 1.0, hz: float = 1.5,
                 hx: float = 0.0) -> PauliSumHamiltonian:
    """-J sum X_i X_{i+1} - h_z sum Z_i - h_x sum X_i, periodic ring.

    hx = 0 is free-fermion integrable (Jordan-Wigner); hx != 0 breaks it.
    """
    if n < 3:
        raise ValueError("ring needs n >= 3")
    terms = []
    for i in range(n):  # bonds ascending, wrap bond last
        terms.append((-j_coupling, _two_site(n, i, (i + 1) % n, "X", "X")))
    for i in range(n):
        terms.append((-hz, _one_site(n, i, "Z")))
    if hx != 0.0:
        for i in range(n):
            terms.append((-hx, _one_site(n, i, "X")))
    flag = INTEGRABLE_FF if hx == 0.0 else NON_INTEGRABLE
    return PauliSumHamiltonian(
        n, terms, integrability=flag, model="tfim_l",
        params={"j_coupling": j_coupling, "hz": hz, "hx": hx})


def build_xxz_nnn(n: int, delta: float = 0.5,
                  nnn_coupling: float = 0.0) -> PauliSumHamiltonian:
    """sum [XX + YY + delta ZZ] on NN bonds plus nnn_coupling times the
    same pattern on next-to-nearest bonds, periodic ring.

    (0, 0) is free-fermion integrable, (delta, 0) Bethe-ansatz integrable,
    any nonzero NNN coupling is non-integrable.
    """
    if n < 5:
        raise ValueError("NNN ring needs n >= 5 so NNN bonds are distinct")
    terms = []
    for dist, scale in ((1, 1.0), (2, nnn_coupling)):
        if scale == 0.0:
            continue
        for i in range(n):
            l = (i + dist) % n
            terms.append((scale, _two_site(n, i, l, "X", "X")))
            terms.append((scale, _two_site(n, i, l, "Y", "Y")))
            if delta != 0.0:
                terms.append((scale * delta, _two_site(n, i, l, "Z", "Z")))
    if nnn_coupling != 0.0:
        flag = NON_INTEGRABLE
    elif delta != 0.0:
        flag = INTEGRABLE_BA
    else:
        flag = INTEGRABLE_FF
    return PauliSumHamiltonian(
        n, terms, integrability=flag, model="xxz_nnn",
        params={"delta": delta, "nnn_coupling": nnn_coupling})


def build_model(name: str, n: int, params: dict) -> PauliSumHamiltonian:
    if name == "tfim_l":
        return build_tfim_l(n, **params)
    if name == "xxz_nnn":
        return build_xxz_nnn(n, **params)
    raise ValueError(f"unknown model {name!r}")
