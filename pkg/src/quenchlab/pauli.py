"""N-qubit Pauli strings in symplectic bitmask form.

A string is a pair of masks (x_mask, z_mask): bit j of x_mask set means an
X component on qubit j, bit j of z_mask a Z component; both set means Y
(with the convention Y = i X Z, so the canonical operator is
``i**popcount(x & z) * X^x Z^z`` and is Hermitian).  An extra power of i
can be tracked on top of that; phase_power in {0, 2} keeps the string
Hermitian.

Qubit 0 is the leftmost label character and the lowest mask bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import kernels
from .errors import ResourceCapError
from .statevec import StateVector

PAULI_ENUM_CAP = 14

_LABEL_TO_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_TO_LABEL = {v: k for k, v in _LABEL_TO_BITS.items()}

_MATRICES = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


@dataclass(frozen=True)
class PauliString:
    """Immutable Pauli string; operator = i**phase_power * (Hermitian string)."""

    n_qubits: int
    x_mask: int
    z_mask: int
    phase_power: int = 0

    def __post_init__(self):
        full = (1 << self.n_qubits) - 1
        if self.x_mask & ~full or self.z_mask & ~full:
            raise ValueError("mask exceeds qubit count")
        object.__setattr__(self, "phase_power", self.phase_power & 3)

    @property
    def is_hermitian(self):
        return self.phase_power in (0, 2)

    @property
    def label(self) -> str:
        chars = []
        for j in range(self.n_qubits):
            bits = ((self.x_mask >> j) & 1, (self.z_mask >> j) & 1)
            chars.append(_BITS_TO_LABEL[bits])
        return "".join(chars)

    def masks_hex(self) -> str:
        """Machine-readable (x_mask, z_mask) form used in dumps."""
        return f"0x{self.x_mask:x},0x{self.z_mask:x}"

    def to_matrix(self) -> np.ndarray:
        """Dense 2^n x 2^n matrix (oracle/test use; small n only)."""
        if self.n_qubits > 12:
            raise ResourceCapError("dense Pauli matrix above n = 12")
        m = np.array([[1.0 + 0.0j]])
        # qubit 0 is the lowest bit, i.e. the last kron factor
        for j in reversed(range(self.n_qubits)):
            bits = ((self.x_mask >> j) & 1, (self.z_mask >> j) & 1)
            m = np.kron(m, _MATRICES[_BITS_TO_LABEL[bits]])
        return (1j ** self.phase_power) * m


def pauli_from_label(label: str) -> PauliString:
    """Parse a text label like "XIZY" (qubit 0 leftmost)."""
    if not label:
        raise ValueError("empty Pauli label")
    x_mask = z_mask = 0
    for j, ch in enumerate(label):
        try:
            xb, zb = _LABEL_TO_BITS[ch]
        except KeyError:
            raise ValueError(f"invalid Pauli character {ch!r} in {label!r}") from None
        x_mask |= xb << j
        z_mask |= zb << j
    return PauliString(len(label), x_mask, z_mask)


def expectation(p: PauliString, psi: StateVector) -> float:
    """<psi|P|psi> for a Hermitian string, computed matrix-free.

    One pass over the amplitudes: index i pairs with i XOR x_mask, the
    sign comes from the parity of z_mask AND i, and the Y bookkeeping is
    the i**popcount(x & z) prefactor.
    """
    if p.n_qubits != psi.n_qubits:
        raise ValueError("Pauli string and state have different qubit counts")
    if not p.is_hermitian:
        raise ValueError("expectation needs a Hermitian string (phase +-1)")
    raw = kernels.pauli_expectation_raw(psi.amplitudes, p.x_mask, p.z_mask)
    val = (1j ** p.phase_power) * kernels.pauli_phase(p.x_mask, p.z_mask) * raw
    assert abs(val.imag) < 1e-12, f"expectation imag {val.imag}"
    return float(val.real)


def enumerate_pauli_group(n: int, *, cap: int = PAULI_ENUM_CAP) -> Iterator[PauliString]:
    """All 4**n phase-free strings, lexicographic in (x_mask, z_mask)."""
    if n > cap:
        raise ResourceCapError(
            f"Pauli enumeration for n = {n} exceeds the cap of {cap}; "
            "pass a larger cap explicitly to override")
    for x in range(1 << n):
        for z in range(1 << n):
            yield PauliString(n, x, z)
