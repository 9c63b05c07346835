"""Pure-numpy implementations of the hot kernels.

Selected automatically when the compiled extension is unavailable (see
``quenchlab.kernels``).  All functions operate on raw complex128 arrays;
Pauli strings enter as (x_mask, z_mask) integer pairs where bit j of a mask
refers to qubit j (qubit 0 = lowest bit).

The canonical Hermitian Pauli string for masks (a, b) is
``i**popcount(a & b) * X^a Z^b``, which acts on a basis index as
``|i> -> phase * (-1)**popcount(b & i) |i XOR a>``.
"""

import numpy as np

IMPL = "numpy"

_I_POW = np.array([1.0, 1.0j, -1.0, -1.0j], dtype=np.complex128)


def _parity(values):
    """Parity (0/1) of the popcount of each entry of an integer array."""
    return np.bitwise_count(values).astype(np.int64) & 1


def pauli_phase(a, b):
    """Phase i**popcount(a & b) of the canonical Hermitian string."""
    return complex(_I_POW[int(a & b).bit_count() & 3])


def pauli_expectation_raw(psi, a, b):
    """<psi| X^a Z^b |psi> without the i**popcount(a & b) prefactor."""
    d = psi.shape[0]
    idx = np.arange(d, dtype=np.uint64)
    signs = 1.0 - 2.0 * _parity(idx & np.uint64(b))
    return complex(np.dot(np.conj(psi[idx ^ np.uint64(a)]) * signs, psi))


def fwht_rows(m):
    """In-place Walsh-Hadamard transform along the last axis (len 2**k)."""
    d = m.shape[-1]
    rows = m.reshape(-1, d)
    h = 1
    while h < d:
        v = rows.reshape(rows.shape[0], d // (2 * h), 2, h)
        x = v[:, :, 0, :] + v[:, :, 1, :]
        y = v[:, :, 0, :] - v[:, :, 1, :]
        v[:, :, 0, :] = x
        v[:, :, 1, :] = y
        h *= 2
    return m


def _pauli_amplitude_blocks(psi, chunk=256):
    """Yield |<P(a,b)>|^2 arrays for blocks of x-masks a.

    For fixed a the row f_i = conj(psi[i ^ a]) * psi[i] satisfies
    <P(a,b)> = i**popcount(a&b) * WHT(f)[b], so a Walsh-Hadamard transform
    produces all z-masks at once; the phase has unit modulus and drops out
    of |<P>|^2.
    """
    d = psi.shape[0]
    idx = np.arange(d, dtype=np.uint64)
    for start in range(0, d, chunk):
        a_block = np.arange(start, min(start + chunk, d), dtype=np.uint64)
        f = np.conj(psi[a_block[:, None] ^ idx[None, :]]) * psi[None, :]
        fwht_rows(f)
        yield (f.real * f.real + f.imag * f.imag)


def pauli_moment_sum(psi, alpha):
    """Sum over all 4**n Pauli strings of |<psi|P|psi>|**(2*alpha)."""
    total = 0.0
    for p2 in _pauli_amplitude_blocks(psi):
        total += float(np.sum(p2 ** alpha))
    return total


def pauli_xlogx_sum(psi):
    """Sum of <P>^2 * ln(<P>^2) over all Pauli strings (0 ln 0 := 0)."""
    total = 0.0
    for p2 in _pauli_amplitude_blocks(psi):
        nz = p2[p2 > 1e-300]
        total += float(np.sum(nz * np.log(nz)))
    return total


def apply_pauli_sum(coeffs, xs, zs, phases, psi, out):
    """out += sum_k coeffs[k] * phases[k] * X^xs[k] Z^zs[k] |psi>."""
    d = psi.shape[0]
    idx = np.arange(d, dtype=np.uint64)
    for c, a, b, ph in zip(coeffs, xs, zs, phases):
        signs = 1.0 - 2.0 * _parity(idx & np.uint64(b))
        # i ^ a is a permutation, so fancy-indexed += has no collisions
        out[idx ^ np.uint64(a)] += (c * ph) * signs * psi
    return out
