"""Analytic Haar-random baselines plus a numerical Haar sampler.

The leading-order mean Rényi entropy of a Haar state on a subregion of
R <= N/2 qubits is

    S_alpha = log[ 2^(N - R(1+alpha)) * sum_k H(alpha, k) 2^((2R-N) k) ] / (1 - alpha)

with Narayana coefficients H(alpha, k).  All rational pieces are kept as
exact fractions until the final float conversion, so the baselines add no
roundoff of their own.  Regions above the half chain use R -> N - R.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .statevec import StateVector

HAAR_SAMPLE_CAP = 12


def narayana(alpha: int, k: int) -> Fraction:
    """Narayana number (1/alpha) C(alpha, k) C(alpha, k-1)."""
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    if not 1 <= k <= alpha:
        raise ValueError(f"k = {k} out of range 1..{alpha}")
    return Fraction(math.comb(alpha, k) * math.comb(alpha, k - 1), alpha)


def haar_moment(n: int, r: int, alpha: int) -> Fraction:
    """Exact leading-order Haar mean of Tr[rho_R^alpha] as a fraction."""
    if not 1 <= r < n:
        raise ValueError("region size out of range")
    r = min(r, n - r)
    total = Fraction(0)
    for k in range(1, alpha + 1):
        total += narayana(alpha, k) * Fraction(2) ** ((2 * r - n) * k)
    return Fraction(2) ** (n - r * (1 + alpha)) * total


def _log_fraction(f: Fraction) -> float:
    return math.log(f.numerator) - math.log(f.denominator)


def page_renyi(n: int, r: int, alpha: int) -> float:
    """Mean Haar S_alpha (nats) for a region of r sites out of n.

    alpha = 1 uses the Page von Neumann limit R log 2 - 2^(2R-N-1)
    (equal to (N/2) log 2 - 1/2 at the half chain).
    """
    if not 1 <= r < n:
        raise ValueError("region size out of range")
    r_eff = min(r, n - r)
    if alpha == 1:
        return r_eff * math.log(2.0) - 0.5 * 2.0 ** (2 * r_eff - n)
    if alpha < 1 or int(alpha) != alpha:
        raise ValueError("alpha must be a positive integer")
    return _log_fraction(haar_moment(n, r_eff, int(alpha))) / (1.0 - alpha)


def haar_m2_lin(n: int) -> float:
    """Haar mean of the linearized SRE, 1 - 4/(d+3)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    d = 1 << n
    return float(1 - Fraction(4, d + 3))


def haar_m2(n: int) -> float:
    """Finite-size Haar M_2 prediction (bits), -log2(1 - M_2^lin)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    d = 1 << n
    return math.log2((d + 3) / 4.0)


def haar_m2_limit(n: int) -> float:
    """Large-N limit M_2 = N - 2 (bits)."""
    return float(n - 2)


def haar_antiflatness(n: int, r: int | None = None) -> float:
    """Haar mean anti-flatness Tr rho^3 - (Tr rho^2)^2 from exact moments."""
    r = n // 2 if r is None else r
    m2 = haar_moment(n, r, 2)
    m3 = haar_moment(n, r, 3)
    return float(m3 - m2 * m2)


def haar_log_antiflatness(n: int | None = None, r: int | None = None) -> float:
    """Haar mean logarithmic anti-flatness 2 (S2 - S3) from exact moments.

    Without arguments returns the half-chain value log(5/4), which is
    independent of N at leading order.
    """
    if n is None:
        return math.log(5.0 / 4.0)
    r = n // 2 if r is None else r
    m2 = haar_moment(n, r, 2)
    m3 = haar_moment(n, r, 3)
    return _log_fraction(m3 / (m2 * m2))


def sample_haar_state(n: int, rng) -> StateVector:
    """One Haar-random pure state (normalized complex Gaussian vector)."""
    if n > HAAR_SAMPLE_CAP:
        raise ValueError(f"Haar sampling capped at n = {HAAR_SAMPLE_CAP}")
    if isinstance(rng, (int, np.integer)):
        rng = np.random.default_rng(rng)
    d = 1 << n
    vec = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return StateVector(vec / np.linalg.norm(vec), _checked=True)


def baselines(n: int, region_size: int | None = None) -> dict:
    """Baseline bundle attached to runner outputs."""
    r = n // 2 if region_size is None else region_size
    return {
        "S1": page_renyi(n, r, 1),
        "S2": page_renyi(n, r, 2),
        "S3": page_renyi(n, r, 3),
        "M2": haar_m2(n),
        "M2_lin": haar_m2_lin(n),
        "antiflatness": haar_antiflatness(n, r),
        "log_antiflatness": haar_log_antiflatness(n, r),
    }
