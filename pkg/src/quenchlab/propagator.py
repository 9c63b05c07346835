"""Krylov (Lanczos) time evolution psi -> exp(-i H dt) psi.

The Hermitian three-term recurrence with full reorthogonalization builds a
small tridiagonal T; the step is V expm(-i dt T) e1, grown until the
last-subdiagonal residual estimate drops below the relative tolerance.
A dense eigendecomposition propagator is kept alongside as the oracle.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ConvergenceError, ResourceCapError
from .hamiltonian import PauliSumHamiltonian
from .statevec import StateVector

log = logging.getLogger(__name__)

EXACT_CAP = 10
_BREAKDOWN_EPS = 1e-13


@dataclass
class KrylovConfig:
    dt: float
    max_subspace: int = 30
    rel_tolerance: float = 1e-12
    reorthogonalize: bool = True

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.max_subspace < 2:
            raise ValueError("max_subspace must be >= 2")
        if self.rel_tolerance <= np.finfo(float).eps:
            raise ValueError("rel_tolerance below machine epsilon")


def _small_exp_column(alphas, betas, dt):
    """First column of expm(-i dt T) for tridiagonal T."""
    k = len(alphas)
    t = np.diag(alphas).astype(np.complex128)
    if k > 1:
        off = np.array(betas[: k - 1])
        t += np.diag(off, 1) + np.diag(off, -1)
    return scipy.linalg.expm(-1j * dt * t)[:, 0]


def krylov_step(h: PauliSumHamiltonian, psi: StateVector,
                cfg: KrylovConfig) -> tuple[StateVector, float]:
    """One step exp(-i H dt)|psi> with an a-posteriori error estimate."""
    v = psi.amplitudes.astype(np.complex128, copy=True)
    d = v.shape[0]
    kmax = min(cfg.max_subspace, d)
    basis = np.empty((kmax, d), dtype=np.complex128)
    basis[0] = v
    alphas: list[float] = []
    betas: list[float] = []

    w = h.apply_vec(v)
    err_est = np.inf
    u = np.array([1.0 + 0.0j])
    k = 1
    while True:
        a = np.vdot(basis[k - 1], w).real
        alphas.append(a)
        w = w - a * basis[k - 1]
        if k > 1:
            w = w - betas[-1] * basis[k - 2]
        if cfg.reorthogonalize:
            # second Gram-Schmidt pass keeps the basis orthonormal
            w = w - basis[:k].T @ (basis[:k].conj() @ w)
        beta = float(np.linalg.norm(w))

        u = _small_exp_column(alphas, betas, cfg.dt)
        if beta < _BREAKDOWN_EPS:
            err_est = 0.0  # happy breakdown: exact in reached subspace
            break
        err_est = beta * abs(u[-1]) * cfg.dt
        if err_est < cfg.rel_tolerance or k == kmax:
            break
        betas.append(beta)
        basis[k] = w / beta
        w = h.apply_vec(basis[k])
        k += 1

    if err_est > cfg.rel_tolerance:
        raise ConvergenceError(
            f"Krylov step did not converge: estimate {err_est:.3e} after "
            f"{k} vectors (tolerance {cfg.rel_tolerance:.1e})",
            achieved=err_est)

    out = basis[:k].T @ u
    norm = np.linalg.norm(out)
    drift = abs(norm - 1.0)
    if drift > 1e-12:
        log.debug("krylov step norm drift %.3e", drift)
    return StateVector(out / norm, _checked=True), float(err_est)


def evolve(h: PauliSumHamiltonian, psi0: StateVector, t_final: float,
           cfg: KrylovConfig, observer=None, *, step_offset: int = 0,
           t0: float = 0.0) -> StateVector:
    """Repeated krylov_step from t0 to t_final on a fixed dt grid.

    ``observer(step_index, time, state)`` is invoked at every step,
    including once for the initial state.  t_final - t0 must be an
    integer number of steps.
    """
    span = t_final - t0
    if span <= 0:
        raise ValueError("t_final must exceed t0")
    n_steps = int(round(span / cfg.dt))
    if abs(n_steps * cfg.dt - span) > 1e-9:
        raise ValueError(
            f"t span {span} is not an integer multiple of dt = {cfg.dt}")

    e0 = h.expectation(psi0)
    psi = psi0
    if observer is not None:
        observer(step_offset, t0, psi)
    for i in range(1, n_steps + 1):
        try:
            psi, _ = krylov_step(h, psi, cfg)
        except ConvergenceError as exc:
            raise ConvergenceError(
                f"evolution aborted at step {step_offset + i} "
                f"(t = {t0 + i * cfg.dt}): {exc}",
                achieved=exc.achieved) from exc
        if observer is not None:
            observer(step_offset + i, t0 + i * cfg.dt, psi)

    drift = abs(psi.norm() - 1.0)
    assert drift < 1e-10, f"cumulative norm drift {drift:.3e}"
    e1 = h.expectation(psi)
    scale = max(abs(e0), 1.0)
    if abs(e1 - e0) / scale > 1e-8:
        log.warning("energy drift %.3e over evolution", abs(e1 - e0) / scale)
    return psi


def exact_propagate(h: PauliSumHamiltonian, psi0: StateVector,
                    t: float) -> StateVector:
    """Dense eigendecomposition propagator (oracle; small systems only)."""
    if h.n_qubits > EXACT_CAP:
        raise ResourceCapError(f"exact propagation above n = {EXACT_CAP}")
    evals, evecs = _dense_eig(h)
    coeff = evecs.conj().T @ psi0.amplitudes
    out = evecs @ (np.exp(-1j * evals * t) * coeff)
    return StateVector(out / np.linalg.norm(out), _checked=True)


_EIG_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _dense_eig(h: PauliSumHamiltonian):
    key = id(h)
    if key not in _EIG_CACHE:
        if len(_EIG_CACHE) > 8:
            _EIG_CACHE.clear()
        _EIG_CACHE[key] = np.linalg.eigh(h.dense_matrix())
    return _EIG_CACHE[key]
