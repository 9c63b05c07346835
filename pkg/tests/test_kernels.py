"""Backend equivalence: the compiled kernels and the numpy fallback must
agree bit-for-bit in semantics (same algorithm, same tolerances)."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quenchlab import kernels
from quenchlab.kernels import fallback


def _random_vec(n, seed):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=2 ** n) + 1j * rng.normal(size=2 ** n)
    return v / np.linalg.norm(v)


def test_active_backend_exposed():
    assert kernels.IMPL in ("cython", "numpy")


def test_pauli_phase_agreement():
    for a in range(8):
        for b in range(8):
            assert kernels.pauli_phase(a, b) == fallback.pauli_phase(a, b)
            # canonical phase is i^popcount(a & b)
            assert kernels.pauli_phase(a, b) == 1j ** bin(a & b).count("1")


@given(st.integers(0, 31), st.integers(0, 31), st.integers(0, 10 ** 6))
@settings(max_examples=80, deadline=None)
def test_expectation_raw_agreement(a, b, seed):
    v = _random_vec(5, seed)
    got = kernels.pauli_expectation_raw(v, a, b)
    want = fallback.pauli_expectation_raw(v, a, b)
    assert got == pytest.approx(want, abs=1e-12)


def test_moment_sum_agreement():
    for n in (2, 3, 4, 5):
        v = _random_vec(n, n)
        for alpha in (2, 3, 4):
            got = kernels.pauli_moment_sum(v, alpha)
            want = fallback.pauli_moment_sum(v, alpha)
            assert got == pytest.approx(want, rel=1e-12)
    # alpha = 1: sum of <P>^2 equals d for any pure state
    v = _random_vec(4, 0)
    assert kernels.pauli_moment_sum(v, 1) == pytest.approx(16.0, abs=1e-9)


def test_xlogx_sum_agreement():
    for n in (2, 3, 5):
        v = _random_vec(n, n + 10)
        got = kernels.pauli_xlogx_sum(v)
        want = fallback.pauli_xlogx_sum(v)
        assert got == pytest.approx(want, rel=1e-11)


def test_apply_pauli_sum_agreement():
    rng = np.random.default_rng(5)
    n, n_terms = 5, 12
    dim = 2 ** n
    coeffs = rng.normal(size=n_terms)
    xs = rng.integers(0, dim, size=n_terms).astype(np.uint64)
    zs = rng.integers(0, dim, size=n_terms).astype(np.uint64)
    phases = np.array([kernels.pauli_phase(int(a), int(b))
                       for a, b in zip(xs, zs)], dtype=np.complex128)
    v = _random_vec(n, 6)
    out1 = np.zeros(dim, dtype=np.complex128)
    out2 = np.zeros(dim, dtype=np.complex128)
    kernels.apply_pauli_sum(coeffs, xs, zs, phases, v, out1)
    fallback.apply_pauli_sum(coeffs, xs, zs, phases, v, out2)
    np.testing.assert_allclose(out1, out2, atol=1e-13)


def test_apply_single_term_semantics():
    # X on qubit 0 of |00> gives |01> (index 1)
    v = np.zeros(4, dtype=np.complex128)
    v[0] = 1.0
    out = np.zeros(4, dtype=np.complex128)
    kernels.apply_pauli_sum(np.array([1.0]), np.array([1], dtype=np.uint64),
                            np.array([0], dtype=np.uint64),
                            np.array([1.0 + 0j]), v, out)
    assert out[1] == pytest.approx(1.0)
    # Z on qubit 1 of |10> (index 2) gives -|10>
    v = np.zeros(4, dtype=np.complex128)
    v[2] = 1.0
    out[:] = 0
    kernels.apply_pauli_sum(np.array([1.0]), np.array([0], dtype=np.uint64),
                            np.array([2], dtype=np.uint64),
                            np.array([1.0 + 0j]), v, out)
    assert out[2] == pytest.approx(-1.0)


def test_env_override_selects_backend(monkeypatch, tmp_path):
    import importlib
    import subprocess
    import sys
    code = ("import os; os.environ['QUENCHLAB_KERNELS']='python';"
            "import quenchlab.kernels as k; print(k.IMPL)")
    out = subprocess.run([sys.executable, "-c", code],
                         capture_output=True, text=True)
    assert out.stdout.strip() == "numpy"
