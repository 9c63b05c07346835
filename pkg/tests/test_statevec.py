import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quenchlab import statevec
from quenchlab.statevec import (
    CNOT, HADAMARD, S_GATE, StateVector, apply_one_qubit_gate,
    apply_two_qubit_gate, basis_state, dump_state, from_amplitudes,
    load_state, reduced_density_matrix, entanglement_spectrum,
)

import oracles


def _random_state(n, seed):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=2 ** n) + 1j * rng.normal(size=2 ** n)
    return StateVector(v / np.linalg.norm(v))


def test_basis_state_bit_order():
    # index 5 = 0b101: qubits 0 and 2 are |1>
    psi = basis_state(3, 5)
    assert psi.amplitudes[5] == 1.0
    assert psi.norm() == pytest.approx(1.0)


def test_normalization_enforced():
    with pytest.raises(ValueError):
        StateVector(np.array([1.0, 1.0], dtype=complex))
    psi = from_amplitudes([1.0, 1.0], normalize=True)
    assert psi.norm() == pytest.approx(1.0)


def test_amplitudes_immutable():
    psi = basis_state(2, 0)
    with pytest.raises(ValueError):
        psi.amplitudes[0] = 0.0


def test_one_qubit_gate_against_kron():
    psi = _random_state(3, 0)
    for j in range(3):
        got = apply_one_qubit_gate(psi, j, HADAMARD).amplitudes
        full = oracles.kron_chain(
            [HADAMARD if k == j else np.eye(2) for k in reversed(range(3))])
        np.testing.assert_allclose(got, full @ psi.amplitudes, atol=1e-13)


def test_two_qubit_gate_against_kron():
    # CNOT control 0 target 1: in the full matrix, qubit 0 is the low bit
    psi = _random_state(2, 1)
    got = apply_two_qubit_gate(psi, 0, 1, CNOT).amplitudes
    # |q1 q0>: control low bit -> flips q1 when q0 = 1
    full = np.zeros((4, 4))
    for i in range(4):
        q0, q1 = i & 1, (i >> 1) & 1
        full[(q1 ^ q0) << 1 | q0, i] = 1.0
    np.testing.assert_allclose(got, full @ psi.amplitudes, atol=1e-13)


def test_two_qubit_gate_nonadjacent():
    psi = _random_state(4, 2)
    rng = np.random.default_rng(5)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    q, _ = np.linalg.qr(a)
    got = apply_two_qubit_gate(psi, 3, 1, q).amplitudes
    # oracle: loop over basis states, local basis |b_j b_l> with b_j high bit
    want = np.zeros(16, dtype=complex)
    for i in range(16):
        bj, bl = (i >> 3) & 1, (i >> 1) & 1
        col = (bj << 1) | bl
        for row in range(4):
            nj, nl = (row >> 1) & 1, row & 1
            tgt = (i & ~((1 << 3) | (1 << 1))) | (nj << 3) | (nl << 1)
            want[tgt] += q[row, col] * psi.amplitudes[i]
    np.testing.assert_allclose(got, want, atol=1e-13)


def test_nonunitary_gate_rejected():
    psi = basis_state(1, 0)
    with pytest.raises(ValueError):
        apply_one_qubit_gate(psi, 0, np.array([[1, 0], [0, 2]], dtype=complex))


def test_bell_state_rdm_maximally_mixed():
    psi = basis_state(2, 0)
    psi = apply_one_qubit_gate(psi, 0, HADAMARD)
    psi = apply_two_qubit_gate(psi, 0, 1, CNOT)
    rho = reduced_density_matrix(psi, [0])
    np.testing.assert_allclose(rho.matrix, np.eye(2) / 2, atol=1e-14)
    np.testing.assert_allclose(rho.spectrum(), [0.5, 0.5], atol=1e-14)


def test_reduced_density_matrix_against_einsum_oracle():
    psi = _random_state(5, 9)
    for region in ([0], [1, 3], [0, 2, 4], [2, 3]):
        rho = reduced_density_matrix(psi, region)
        want = oracles.reduced_dm(psi.amplitudes, 5, region)
        np.testing.assert_allclose(rho.matrix, want, atol=1e-13)
        assert np.trace(rho.matrix).real == pytest.approx(1.0, abs=1e-10)


def test_spectrum_descending_and_normalized():
    psi = _random_state(6, 13)
    lam = reduced_density_matrix(psi, [0, 1, 2]).spectrum()
    assert np.all(np.diff(lam) <= 1e-15)
    assert lam.sum() == pytest.approx(1.0, abs=1e-10)
    assert np.all(lam >= 0)


def test_entanglement_spectrum_function():
    psi = _random_state(4, 17)
    rho = reduced_density_matrix(psi, [0, 1])
    lam = entanglement_spectrum(rho)
    want = np.sort(np.linalg.eigvalsh(
        oracles.reduced_dm(psi.amplitudes, 4, [0, 1])))[::-1]
    np.testing.assert_allclose(lam, want, atol=1e-12)


def test_product_state_zero_entanglement():
    rng = np.random.default_rng(23)
    singles = []
    for _ in range(4):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        singles.append(v / np.linalg.norm(v))
    # qubit 0 = low bit = last kron factor
    full = oracles.kron_chain(list(reversed(singles)))
    psi = StateVector(full)
    for r in ([0], [1, 2], [0, 3]):
        lam = reduced_density_matrix(psi, r).spectrum()
        assert lam[0] == pytest.approx(1.0, abs=1e-12)


def test_dump_load_roundtrip(tmp_path):
    psi = _random_state(5, 31)
    path = tmp_path / "state.qlsv"
    dump_state(psi, path)
    back = load_state(path)
    assert back.n_qubits == 5
    np.testing.assert_array_equal(back.amplitudes, psi.amplitudes)


def test_load_rejects_garbage(tmp_path):
    path = tmp_path / "bad.qlsv"
    path.write_bytes(b"NOPE" + b"\x00" * 32)
    with pytest.raises(ValueError):
        load_state(path)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_gates_preserve_norm(seed):
    psi = _random_state(3, seed)
    rng = np.random.default_rng(seed + 1)
    j = int(rng.integers(3))
    out = apply_one_qubit_gate(psi, j, S_GATE)
    assert out.norm() == pytest.approx(1.0, abs=1e-12)
