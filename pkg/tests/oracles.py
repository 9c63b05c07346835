"""Independent dense-matrix oracles used to cross-check the fast kernels.

Everything here is built from explicit 2x2 matrices and np.kron, with no
reliance on the bitmask machinery under test.  Exponential in n by design;
keep n small.
"""

import numpy as np
from functools import reduce

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI_1Q = {"I": I2, "X": X, "Y": Y, "Z": Z}


def kron_chain(mats):
    return reduce(np.kron, mats)


def pauli_matrix(label):
    """Dense matrix for a Pauli label, qubit 0 = leftmost character.

    Qubit 0 lives in the lowest-order bit of the basis index, i.e. the
    *last* kron factor.
    """
    return kron_chain([PAULI_1Q[c] for c in reversed(label)])


def all_pauli_labels(n):
    if n == 0:
        yield ""
        return
    for rest in all_pauli_labels(n - 1):
        for c in "IXYZ":
            yield rest + c


def sre_bruteforce(psi, alpha):
    """Stabilizer Renyi entropy by explicit enumeration of all 4^n strings."""
    n = int(np.log2(psi.size))
    probs = []
    for lab in all_pauli_labels(n):
        ev = np.vdot(psi, pauli_matrix(lab) @ psi).real
        probs.append(ev * ev)
    probs = np.asarray(probs) / psi.size
    purity = float(np.sum(probs ** alpha) * psi.size ** (alpha - 1))
    if alpha == 1:
        p = probs[probs > 1e-300]
        return float(-np.sum(p * np.log2(p * psi.size)))
    return float(np.log2(np.sum((probs * psi.size) ** alpha) / psi.size) / (1 - alpha))


def reduced_dm(psi, n, region):
    """Partial trace via explicit tensor reshape; region is a qubit list."""
    # axis for qubit j in the reshaped tensor is n-1-j (qubit 0 = low bit)
    tensor = np.asarray(psi).reshape([2] * n)
    keep = sorted(region)
    # region qubit k is bit k of the RDM index, so the last region element
    # is the most significant axis
    keep_axes = [n - 1 - j for j in reversed(keep)]
    other = [ax for ax in range(n) if ax not in keep_axes]
    perm = keep_axes + other
    t = np.transpose(tensor, perm).reshape(2 ** len(keep), -1)
    return t @ t.conj().T


def renyi_from_rho(rho, alpha):
    lam = np.linalg.eigvalsh(rho)
    lam = lam[lam > 1e-14]
    if alpha == 1:
        return float(-np.sum(lam * np.log(lam)))
    return float(np.log(np.sum(lam ** alpha)) / (1 - alpha))


def dense_tfim_l(n, j_coupling, hz, hx):
    dim = 2 ** n
    h = np.zeros((dim, dim), dtype=complex)
    for site in range(n):
        lab = ["I"] * n
        lab[site] = "X"
        lab[(site + 1) % n] = "X"
        h -= j_coupling * pauli_matrix("".join(lab))
    for site in range(n):
        lab = ["I"] * n
        lab[site] = "Z"
        h -= hz * pauli_matrix("".join(lab))
        lab[site] = "X"
        h -= hx * pauli_matrix("".join(lab))
    return h


def dense_xxz_nnn(n, delta, g):
    dim = 2 ** n
    h = np.zeros((dim, dim), dtype=complex)
    for dist, coef in ((1, 1.0), (2, g)):
        for site in range(n):
            for op, w in (("X", 1.0), ("Y", 1.0), ("Z", delta)):
                lab = ["I"] * n
                lab[site] = op
                lab[(site + dist) % n] = op
                h += coef * w * pauli_matrix("".join(lab))
    return h
