"""Dense pure states, local gate application, reduced density matrices.

Bit convention (used everywhere in this package): qubit 0 is the *leftmost*
character of a ket label and the *lowest* bit of a basis index, so
``basis_state(3, 5)`` is |101> (qubit 0 = 1, qubit 1 = 0, qubit 2 = 1).
"""

from __future__ import annotations

import logging
import struct

import numpy as np

log = logging.getLogger(__name__)

NORM_ATOL = 1e-10

_DUMP_MAGIC = b"QLSV"
_DUMP_VERSION = 1


class StateVector:
    """Normalized dense state of ``n_qubits`` qubits.

    The amplitude array is treated as immutable after construction; all
    gate operations return a new StateVector.
    """

    __slots__ = ("n_qubits", "amplitudes")

    def __init__(self, amplitudes, *, _checked=False):
        amplitudes = np.ascontiguousarray(amplitudes, dtype=np.complex128)
        d = amplitudes.shape[0]
        n = d.bit_length() - 1
        if amplitudes.ndim != 1 or d != (1 << n):
            raise ValueError(f"amplitude length {d} is not a power of two")
        if not _checked:
            norm = np.linalg.norm(amplitudes)
            if abs(norm - 1.0) > NORM_ATOL:
                raise ValueError(f"state not normalized: |psi| = {norm}")
        self.n_qubits = n
        self.amplitudes = amplitudes
        self.amplitudes.flags.writeable = False

    @property
    def dim(self):
        return 1 << self.n_qubits

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def inner(self, other: "StateVector") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))


def basis_state(n: int, index: int) -> StateVector:
    """Computational basis state |index> of n qubits."""
    if not 0 <= index < (1 << n):
        raise ValueError(f"basis index {index} out of range for {n} qubits")
    amp = np.zeros(1 << n, dtype=np.complex128)
    amp[index] = 1.0
    return StateVector(amp, _checked=True)


def from_amplitudes(amplitudes, normalize=False) -> StateVector:
    amplitudes = np.asarray(amplitudes, dtype=np.complex128)
    if normalize:
        amplitudes = amplitudes / np.linalg.norm(amplitudes)
    return StateVector(amplitudes)


def _check_unitary(g, dim, atol=1e-12):
    g = np.asarray(g, dtype=np.complex128)
    if g.shape != (dim, dim):
        raise ValueError(f"gate must be {dim}x{dim}, got {g.shape}")
    dev = np.max(np.abs(g.conj().T @ g - np.eye(dim)))
    if dev > atol:
        raise ValueError(f"gate is not unitary (deviation {dev:.2e})")
    return g


def _qubit_axis(n, j):
    # numpy's row-major reshape puts qubit n-1 on axis 0
    return n - 1 - j


def apply_one_qubit_gate(psi: StateVector, j: int, g) -> StateVector:
    """Apply a 2x2 unitary to qubit j."""
    n = psi.n_qubits
    if not 0 <= j < n:
        raise ValueError(f"site {j} out of range")
    g = _check_unitary(g, 2)
    t = psi.amplitudes.reshape([2] * n)
    t = np.moveaxis(t, _qubit_axis(n, j), 0)
    out = np.tensordot(g, t, axes=([1], [0]))
    out = np.moveaxis(out, 0, _qubit_axis(n, j)).reshape(-1)
    return StateVector(out, _checked=True)


def apply_two_qubit_gate(psi: StateVector, j: int, l: int, g) -> StateVector:
    """Apply a 4x4 unitary to qubits (j, l).

    The gate matrix is indexed in the local basis |b_j b_l> with b_j the
    most significant bit, so textbook matrices (e.g. CNOT with control j)
    apply directly.
    """
    n = psi.n_qubits
    if j == l:
        raise ValueError("two-qubit gate needs distinct sites")
    if not (0 <= j < n and 0 <= l < n):
        raise ValueError(f"sites ({j},{l}) out of range")
    g = _check_unitary(g, 4)
    t = psi.amplitudes.reshape([2] * n)
    t = np.moveaxis(t, (_qubit_axis(n, j), _qubit_axis(n, l)), (0, 1))
    shape = t.shape
    out = (g @ t.reshape(4, -1)).reshape(shape)
    out = np.moveaxis(out, (0, 1), (_qubit_axis(n, j), _qubit_axis(n, l)))
    return StateVector(out.reshape(-1), _checked=True)


# common gates
HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2.0)
S_GATE = np.array([[1, 0], [0, 1j]], dtype=np.complex128)
IDENTITY_2 = np.eye(2, dtype=np.complex128)
CNOT = np.array(
    [[1, 0, 0, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1],
     [0, 0, 1, 0]], dtype=np.complex128)


class ReducedDensityMatrix:
    """rho_R = Tr_{R^c} |psi><psi| for a site subset R.

    The local basis index is little-endian in the order the region sites
    were listed: bit k of the index corresponds to region[k].
    """

    __slots__ = ("region", "matrix", "_eigenvalues")

    def __init__(self, region, matrix):
        self.region = tuple(region)
        self.matrix = matrix
        self._eigenvalues = None
        herm_dev = np.max(np.abs(matrix - matrix.conj().T))
        if herm_dev > 1e-12:
            raise ValueError(f"RDM not Hermitian (deviation {herm_dev:.2e})")
        tr = np.trace(matrix).real
        if abs(tr - 1.0) > 1e-10:
            raise ValueError(f"RDM trace {tr} != 1")

    @property
    def region_size(self):
        return len(self.region)

    @property
    def dim(self):
        return self.matrix.shape[0]

    def spectrum(self):
        """Descending eigenvalues, clamped to [0, 1] and renormalized."""
        if self._eigenvalues is None:
            self._eigenvalues = entanglement_spectrum(self)
        return self._eigenvalues


def reduced_density_matrix(psi: StateVector, region) -> ReducedDensityMatrix:
    """Trace out the complement of ``region`` (any site subset)."""
    n = psi.n_qubits
    region = list(region)
    if not region:
        raise ValueError("region must be non-empty")
    if len(set(region)) != len(region):
        raise ValueError("region has repeated sites")
    if any(not 0 <= s < n for s in region):
        raise ValueError("region site out of range")
    if len(region) == n:
        raise ValueError("region must be a strict subset of sites")

    complement = [s for s in range(n) if s not in region]
    # axes ordered so the reshaped row index is little-endian in region order
    perm = [_qubit_axis(n, q) for q in reversed(region)]
    perm += [_qubit_axis(n, q) for q in reversed(complement)]
    m = psi.amplitudes.reshape([2] * n).transpose(perm)
    m = m.reshape(1 << len(region), 1 << len(complement))
    rho = m @ m.conj().T
    # symmetrize away roundoff so the Hermiticity invariant is exact
    rho = 0.5 * (rho + rho.conj().T)
    return ReducedDensityMatrix(region, rho)


def entanglement_spectrum(rho: ReducedDensityMatrix):
    """Descending real spectrum of an RDM; tiny negatives clamped to 0."""
    lam = np.linalg.eigvalsh(rho.matrix)[::-1]
    if lam[-1] < -1e-12:
        raise ValueError(f"RDM has eigenvalue {lam[-1]} < -1e-12")
    lam = np.clip(lam, 0.0, None)
    total = lam.sum()
    if abs(total - 1.0) > 1e-10:
        log.warning("spectrum renormalized by %.3e", total - 1.0)
    return lam / total


def dump_state(psi: StateVector, path):
    """Binary checkpoint: magic, version, n_qubits, little-endian re/im."""
    with open(path, "wb") as fh:
        fh.write(_DUMP_MAGIC)
        fh.write(struct.pack("<II", _DUMP_VERSION, psi.n_qubits))
        data = np.empty(2 * psi.dim, dtype="<f8")
        data[0::2] = psi.amplitudes.real
        data[1::2] = psi.amplitudes.imag
        fh.write(data.tobytes())


def load_state(path) -> StateVector:
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != _DUMP_MAGIC:
            raise ValueError(f"not a state dump: bad magic {magic!r}")
        version, n = struct.unpack("<II", fh.read(8))
        if version != _DUMP_VERSION:
            raise ValueError(f"unsupported dump version {version}")
        data = np.frombuffer(fh.read(16 << n), dtype="<f8")
    amp = data[0::2] + 1j * data[1::2]
    return StateVector(amp)
