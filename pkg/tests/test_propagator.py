import numpy as np
import pytest
from scipy.linalg import expm

from quenchlab import hamiltonian as ham
from quenchlab import propagator as prop
from quenchlab.errors import ConvergenceError, ResourceCapError
from quenchlab.statevec import StateVector, basis_state

import oracles


def _random_state(n, seed):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=2 ** n) + 1j * rng.normal(size=2 ** n)
    return StateVector(v / np.linalg.norm(v))


def _expm_oracle(h, psi, t):
    u = expm(-1j * t * h.dense_matrix())
    return u @ psi.amplitudes


def test_krylov_step_matches_expm():
    h = ham.build_tfim_l(5, 1.0, 1.5, 0.5)
    psi = _random_state(5, 1)
    cfg = prop.KrylovConfig(dt=0.2)
    out, err = prop.krylov_step(h, psi, cfg)
    np.testing.assert_allclose(out.amplitudes, _expm_oracle(h, psi, 0.2),
                               atol=1e-10)
    assert err < cfg.rel_tolerance


def test_krylov_step_large_dt():
    h = ham.build_xxz_nnn(6, 0.5, 0.5)
    psi = _random_state(6, 2)
    cfg = prop.KrylovConfig(dt=2.0, max_subspace=40)
    out, _ = prop.krylov_step(h, psi, cfg)
    np.testing.assert_allclose(out.amplitudes, _expm_oracle(h, psi, 2.0),
                               atol=1e-9)


def test_krylov_unconverged_raises():
    h = ham.build_xxz_nnn(7, 0.5, 0.5)
    psi = _random_state(7, 3)
    cfg = prop.KrylovConfig(dt=5.0, max_subspace=5)
    with pytest.raises(ConvergenceError) as exc:
        prop.krylov_step(h, psi, cfg)
    assert exc.value.achieved is not None
    assert exc.value.achieved > cfg.rel_tolerance


def test_happy_breakdown_on_eigenstate():
    # basis states are eigenstates of a pure ZZ+Z Hamiltonian
    h = ham.build_tfim_l(4, 0.0, 1.5, 0.0)
    psi = basis_state(4, 0b0110)
    cfg = prop.KrylovConfig(dt=1.0)
    out, err = prop.krylov_step(h, psi, cfg)
    # evolution is a pure phase
    overlap = abs(np.vdot(out.amplitudes, psi.amplitudes))
    assert overlap == pytest.approx(1.0, abs=1e-12)
    assert err < 1e-12


def test_evolve_against_expm_grid():
    h = ham.build_tfim_l(4, 1.0, 1.5, 0.5)
    psi0 = _random_state(4, 4)
    cfg = prop.KrylovConfig(dt=0.25)
    seen = []
    final = prop.evolve(h, psi0, 2.0, cfg,
                        observer=lambda s, t, st: seen.append((s, t)))
    assert seen[0] == (0, 0.0)
    assert len(seen) == 9  # initial plus 8 steps
    np.testing.assert_allclose(final.amplitudes, _expm_oracle(h, psi0, 2.0),
                               atol=1e-9)


def test_evolve_offset_resume_equivalence():
    h = ham.build_xxz_nnn(5, 0.5, 0.5)
    psi0 = _random_state(5, 5)
    cfg = prop.KrylovConfig(dt=0.5)
    full = prop.evolve(h, psi0, 3.0, cfg)
    half = prop.evolve(h, psi0, 1.5, cfg)
    resumed = prop.evolve(h, half, 3.0, cfg, step_offset=3, t0=1.5)
    np.testing.assert_allclose(resumed.amplitudes, full.amplitudes, atol=1e-11)


def test_evolve_grid_mismatch_rejected():
    h = ham.build_tfim_l(3, 1.0, 1.5, 0.0)
    psi = basis_state(3, 0)
    with pytest.raises(ValueError):
        prop.evolve(h, psi, 1.05, prop.KrylovConfig(dt=0.5))
    with pytest.raises(ValueError):
        prop.evolve(h, psi, 0.0, prop.KrylovConfig(dt=0.5))


def test_exact_propagate_matches_expm():
    h = ham.build_tfim_l(4, 1.0, 1.5, 0.5)
    psi = _random_state(4, 6)
    out = prop.exact_propagate(h, psi, 1.7)
    np.testing.assert_allclose(out.amplitudes, _expm_oracle(h, psi, 1.7),
                               atol=1e-11)


def test_exact_propagate_cap():
    h = ham.build_tfim_l(11, 1.0, 1.5, 0.0)
    with pytest.raises(ResourceCapError):
        prop.exact_propagate(h, basis_state(11, 0), 1.0)


def test_config_validation():
    with pytest.raises(ValueError):
        prop.KrylovConfig(dt=0.0)
    with pytest.raises(ValueError):
        prop.KrylovConfig(dt=0.1, max_subspace=1)
    with pytest.raises(ValueError):
        prop.KrylovConfig(dt=0.1, rel_tolerance=0.0)


def test_energy_conserved_along_trajectory():
    h = ham.build_xxz_nnn(6, 0.5, 0.5)
    psi = _random_state(6, 7)
    cfg = prop.KrylovConfig(dt=0.5)
    e0 = h.expectation(psi)
    out = prop.evolve(h, psi, 5.0, cfg)
    assert h.expectation(out) == pytest.approx(e0, abs=1e-9)
