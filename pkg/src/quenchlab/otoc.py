"""State-dependent four-point out-of-time-ordered correlators.

F(t) = <psi| W(t)^dag V^dag W(t) V |psi> with W(t) = e^{iHt} W e^{-iHt},
evaluated for pure states as the overlap <psi_{W(t)V} | psi_{V W(t)}>.
The evaluation propagates states (never Heisenberg operator matrices):
for each grid time the forward trajectories of |psi> and V|psi> are
stepped incrementally, W is applied, and the results are evolved back to
t = 0, keeping memory at O(2^N).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ensembles import EnsembleSpec, generate
from .errors import ConvergenceError, ResourceCapError
from .hamiltonian import PauliSumHamiltonian
from .pauli import PauliString, pauli_from_label
from .propagator import KrylovConfig, krylov_step
from .statevec import StateVector

_SINGLE_OPS = ("X", "Y", "Z")


@dataclass
class OtocSpec:
    v_site: int
    w_site: int
    v_op: str = "Z"
    w_op: str = "Z"
    times: np.ndarray = field(default_factory=lambda: np.arange(0.0, 10.5, 0.5))

    def __post_init__(self):
        if self.v_op not in _SINGLE_OPS or self.w_op not in _SINGLE_OPS:
            raise ValueError("v_op/w_op must be single-site X, Y or Z")
        times = np.asarray(self.times, dtype=np.float64)
        if times.size == 0 or times[0] < 0 or np.any(np.diff(times) <= 0):
            raise ValueError("times must be strictly increasing from 0")
        self.times = times


def _site_pauli(n: int, site: int, op: str) -> PauliString:
    if not 0 <= site < n:
        raise ValueError(f"site {site} out of range")
    label = ["I"] * n
    label[site] = op
    return pauli_from_label("".join(label))


def _apply_pauli(p: PauliString, vec: np.ndarray) -> np.ndarray:
    d = vec.shape[0]
    idx = np.arange(d, dtype=np.uint64)
    signs = 1.0 - 2.0 * (np.bitwise_count(idx & np.uint64(p.z_mask)).astype(np.int64) & 1)
    phase = 1j ** ((p.x_mask & p.z_mask).bit_count() & 3)
    out = np.empty_like(vec)
    out[idx ^ np.uint64(p.x_mask)] = phase * signs * vec
    return out


def _steps_for(times, dt):
    steps = np.round(times / dt).astype(int)
    if np.max(np.abs(steps * dt - times)) > 1e-9:
        raise ValueError("every OTOC time must sit on the dt grid")
    return steps


def otoc_trajectory(h: PauliSumHamiltonian, psi: StateVector, spec: OtocSpec,
                    cfg: KrylovConfig) -> np.ndarray:
    """Complex F(t) on spec.times for one initial state."""
    n = h.n_qubits
    v_op = _site_pauli(n, spec.v_site, spec.v_op)
    w_op = _site_pauli(n, spec.w_site, spec.w_op)
    steps = _steps_for(spec.times, cfg.dt)

    back_cfg = KrylovConfig(dt=cfg.dt, max_subspace=cfg.max_subspace,
                            rel_tolerance=cfg.rel_tolerance,
                            reorthogonalize=cfg.reorthogonalize)

    # forward trajectories of |psi> and V|psi>
    fwd_plain = psi
    fwd_v = StateVector(_apply_pauli(v_op, psi.amplitudes), _checked=True)
    values = np.empty(len(steps), dtype=np.complex128)
    current = 0
    for out_idx, target in enumerate(steps):
        try:
            while current < target:
                fwd_plain, _ = krylov_step(h, fwd_plain, cfg)
                fwd_v, _ = krylov_step(h, fwd_v, cfg)
                current += 1
            # |psi_{W(t)V}> = e^{+iHt} W e^{-iHt} V |psi>
            left = StateVector(_apply_pauli(w_op, fwd_v.amplitudes), _checked=True)
            # |psi_{V W(t)}> = V e^{+iHt} W e^{-iHt} |psi>
            right = StateVector(_apply_pauli(w_op, fwd_plain.amplitudes), _checked=True)
            left = _evolve_back(h, left, current, back_cfg)
            right = _evolve_back(h, right, current, back_cfg)
        except ConvergenceError as exc:
            raise ConvergenceError(
                f"OTOC propagation failed at time index {out_idx} "
                f"(t = {spec.times[out_idx]}): {exc}",
                achieved=exc.achieved) from exc
        right_v = _apply_pauli(v_op, right.amplitudes)
        values[out_idx] = np.vdot(left.amplitudes, right_v)
    return values


def _evolve_back(h, psi, n_steps, cfg):
    neg = _negated(h)
    for _ in range(n_steps):
        psi, _ = krylov_step(neg, psi, cfg)
    return psi


_NEG_CACHE: dict[int, PauliSumHamiltonian] = {}


def _negated(h: PauliSumHamiltonian) -> PauliSumHamiltonian:
    key = id(h)
    if key not in _NEG_CACHE:
        if len(_NEG_CACHE) > 8:
            _NEG_CACHE.clear()
        _NEG_CACHE[key] = PauliSumHamiltonian(
            h.n_qubits, [(-c, p) for c, p in h.terms],
            integrability=h.integrability, model=h.model, params=h.params)
    return _NEG_CACHE[key]


def otoc_dense_oracle(h: PauliSumHamiltonian, psi: StateVector,
                      spec: OtocSpec) -> np.ndarray:
    """Heisenberg-picture oracle W(t) = e^{iHt} W e^{-iHt} (tests, small N)."""
    if h.n_qubits > 6:
        raise ResourceCapError("dense OTOC oracle capped at n = 6")
    n = h.n_qubits
    v = _site_pauli(n, spec.v_site, spec.v_op).to_matrix()
    w = _site_pauli(n, spec.w_site, spec.w_op).to_matrix()
    evals, evecs = np.linalg.eigh(h.dense_matrix())
    vec = psi.amplitudes
    out = np.empty(len(spec.times), dtype=np.complex128)
    for i, t in enumerate(spec.times):
        u = evecs @ np.diag(np.exp(-1j * evals * t)) @ evecs.conj().T
        wt = u.conj().T @ w @ u
        out[i] = np.vdot(wt @ v @ vec, v @ wt @ vec)
    return out


def otoc_ensemble(h: PauliSumHamiltonian, ensemble: EnsembleSpec,
                  spec: OtocSpec, cfg: KrylovConfig) -> dict:
    """Per-time complex sample mean and re/im standard deviation."""
    samples = np.empty((ensemble.n_realizations, len(spec.times)),
                       dtype=np.complex128)
    for m in range(ensemble.n_realizations):
        psi = generate(ensemble, m)
        samples[m] = otoc_trajectory(h, psi, spec, cfg)
    ddof = 0 if ensemble.n_realizations == 1 else 1
    return {
        "times": spec.times.copy(),
        "mean": samples.mean(axis=0),
        "re_mean": samples.real.mean(axis=0),
        "im_mean": samples.imag.mean(axis=0),
        "re_std": samples.real.std(axis=0, ddof=ddof),
        "im_std": samples.imag.std(axis=0, ddof=ddof),
        "n_realizations": ensemble.n_realizations,
        "samples": samples,
    }
