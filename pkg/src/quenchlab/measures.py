"""State functionals: Rényi/von Neumann entropies, partition averaging,
stabilizer Rényi entropy (exact Pauli enumeration), anti-flatness, and the
relative difference against a baseline.

Unit conventions follow common usage: entanglement entropies are in nats
(natural log), the stabilizer entropy is in bits (log2).  Every record
carries its units in the field names or docstrings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ResourceCapError
from .pauli import PAULI_ENUM_CAP
from .statevec import ReducedDensityMatrix, StateVector, reduced_density_matrix

_EIG_ZERO = 1e-14  # eigenvalues below this count as exact zeros


@dataclass
class MagicRecord:
    """Stabilizer Rényi entropy bundle; sre is in bits."""

    alpha: int
    sre: float
    sre_linearized: float
    stabilizer_purity: float


@dataclass
class FlatnessRecord:
    """Anti-flatness of one RDM; log_antiflatness = 2 (S2 - S3) in nats."""

    antiflatness: float
    log_antiflatness: float
    tr_rho2: float
    tr_rho3: float


def _validate_spectrum(spectrum):
    lam = np.asarray(spectrum, dtype=np.float64)
    if lam.ndim != 1 or lam.size == 0:
        raise ValueError("spectrum must be a non-empty 1-d array")
    if np.any(lam < -1e-12):
        raise ValueError("spectrum has negative eigenvalues")
    if abs(lam.sum() - 1.0) > 1e-8:
        raise ValueError(f"spectrum sums to {lam.sum()}, not 1")
    return np.clip(lam, 0.0, None)


def renyi_entropy(spectrum, alpha: float) -> float:
    """S_alpha in nats; alpha = 1 is the von Neumann limit."""
    lam = _validate_spectrum(spectrum)
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    nz = lam[lam > _EIG_ZERO]
    if alpha == 1.0:
        return float(-np.sum(nz * np.log(nz)))
    if alpha == 0.0:
        return float(np.log(nz.size))
    return float(np.log(np.sum(nz ** alpha)) / (1.0 - alpha))


def window_spectra(psi: StateVector, region_size: int):
    """Spectra of all N contiguous (wrapping) windows of a given size."""
    n = psi.n_qubits
    if not 1 <= region_size < n:
        raise ValueError(f"region size {region_size} out of range")
    spectra = []
    for start in range(n):
        region = [(start + k) % n for k in range(region_size)]
        spectra.append(reduced_density_matrix(psi, region).spectrum())
    return spectra


def averaged_entropy(psi: StateVector, region_size: int, alpha: float) -> float:
    """Mean S_alpha over all N wrapping windows of length region_size."""
    spectra = window_spectra(psi, region_size)
    return averaged_entropy_from_spectra(spectra, alpha)


def averaged_entropy_from_spectra(spectra, alpha: float) -> float:
    return float(np.mean([renyi_entropy(s, alpha) for s in spectra]))


def sre_exact(psi: StateVector, alpha: int = 2, *,
              cap: int = PAULI_ENUM_CAP) -> MagicRecord:
    """Exact SRE by summation over all 4**N Pauli expectation values.

    P_alpha = (1/d) sum_P <P>^(2 alpha); M_alpha = log2(P_alpha)/(1-alpha)
    for alpha >= 2, and the Shannon-limit form for alpha = 1.
    """
    if psi.n_qubits > cap:
        raise ResourceCapError(
            f"exact SRE for n = {psi.n_qubits} exceeds the cap of {cap}")
    if alpha < 1 or int(alpha) != alpha:
        raise ValueError("alpha must be an integer >= 1")
    alpha = int(alpha)
    d = float(psi.dim)
    if alpha == 1:
        # M_1 = -(1/d) sum <P>^2 log2 <P>^2
        sre = -kernels.pauli_xlogx_sum(psi.amplitudes) / (d * math.log(2.0))
        purity = 1.0  # P_1 = 1 for pure states
        return MagicRecord(1, max(sre, 0.0), float("nan"), purity)
    purity = kernels.pauli_moment_sum(psi.amplitudes, alpha) / d
    sre = math.log2(purity) / (1.0 - alpha)
    return MagicRecord(alpha, max(sre, 0.0), 1.0 - purity, purity)


def antiflatness_from_spectrum(spectrum) -> FlatnessRecord:
    lam = _validate_spectrum(spectrum)
    tr2 = float(np.sum(lam ** 2))
    tr3 = float(np.sum(lam ** 3))
    af = tr3 - tr2 * tr2
    s2 = renyi_entropy(lam, 2)
    s3 = renyi_entropy(lam, 3)
    return FlatnessRecord(af, 2.0 * (s2 - s3), tr2, tr3)


def antiflatness(rho: ReducedDensityMatrix) -> FlatnessRecord:
    """F = Tr rho^3 - (Tr rho^2)^2, plus the logarithmic variant.

    Computed from the spectrum and cross-checked against the direct
    matrix-product route; the two must agree to 1e-11.
    """
    rec = antiflatness_from_spectrum(rho.spectrum())
    m2 = rho.matrix @ rho.matrix
    tr2 = float(np.trace(m2).real)
    tr3 = float(np.trace(m2 @ rho.matrix).real)
    if abs(tr2 - rec.tr_rho2) > 1e-11 or abs(tr3 - rec.tr_rho3) > 1e-11:
        raise ArithmeticError(
            "spectral and trace routes disagree: "
            f"Tr rho^2 {rec.tr_rho2} vs {tr2}, Tr rho^3 {rec.tr_rho3} vs {tr3}")
    return rec


def relative_difference(value: float, haar_value: float) -> float:
    """|value - baseline| / baseline."""
    if haar_value == 0:
        raise ValueError("baseline must be nonzero")
    return abs(value - haar_value) / haar_value
