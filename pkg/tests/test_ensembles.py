import math

import numpy as np
import pytest

from quenchlab import ensembles, measures
from quenchlab.ensembles import EnsembleSpec
from quenchlab.statevec import reduced_density_matrix


def _spec(kind, n=4, m=8, seed=7, **kw):
    return EnsembleSpec(kind=kind, n_qubits=n, n_realizations=m, seed=seed, **kw)


def test_spec_validation():
    with pytest.raises(ValueError):
        _spec("XX")
    with pytest.raises(ValueError):
        EnsembleSpec(kind="FR", n_qubits=0, n_realizations=1, seed=0)
    with pytest.raises(ValueError):
        EnsembleSpec(kind="FR", n_qubits=2, n_realizations=0, seed=0)


def test_layer_count_rule():
    assert _spec("NFC", n=4).n_layers == 800
    assert _spec("NFC", n=10).n_layers == 5000
    s = EnsembleSpec(kind="NFC", n_qubits=4, n_realizations=1, seed=0,
                     layers_per_n_squared=2.0)
    assert s.n_layers == 32


def test_determinism_and_independence():
    for kind in ensembles.KINDS:
        spec = _spec(kind)
        a = ensembles.generate(spec, 3)
        b = ensembles.generate(spec, 3)
        np.testing.assert_array_equal(a.amplitudes, b.amplitudes)
        c = ensembles.generate(spec, 4)
        assert not np.allclose(a.amplitudes, c.amplitudes)
    # different master seeds decorrelate realization 0
    x = ensembles.generate(_spec("FR", seed=1), 0)
    y = ensembles.generate(_spec("FR", seed=2), 0)
    assert not np.allclose(x.amplitudes, y.amplitudes)


def test_fr_states_are_products():
    spec = _spec("FR", n=5)
    for m in range(4):
        psi = ensembles.generate_fr(spec, m)
        assert psi.norm() == pytest.approx(1.0, abs=1e-12)
        for j in range(5):
            lam = reduced_density_matrix(psi, [j]).spectrum()
            assert lam[0] == pytest.approx(1.0, abs=1e-12)


def test_fr_known_angles():
    # theta = 0 on every site gives |0...0>
    spec = _spec("FR", n=3, m=1)
    angles = (np.zeros(3), np.zeros(3))
    psi = ensembles.generate_fr(spec, 0, angles=angles)
    assert abs(psi.amplitudes[0]) == pytest.approx(1.0)
    # theta = pi flips every site to |1...1>
    angles = (np.full(3, math.pi), np.zeros(3))
    psi = ensembles.generate_fr(spec, 0, angles=angles)
    assert abs(psi.amplitudes[-1]) == pytest.approx(1.0)


def test_fr_sites_have_magic_but_products_dont_entangle():
    spec = _spec("FR", n=4)
    psi = ensembles.generate_fr(spec, 0)
    # product states generically carry single-qubit magic
    rec = measures.sre_exact(psi, 2)
    assert 0 < rec.sre < 4 * math.log2(4 / 3) + 1e-9


def test_fc_states_are_stabilizer_products():
    spec = _spec("FC", n=4)
    for m in range(4):
        psi = ensembles.generate_fc(spec, m)
        assert measures.sre_exact(psi, 2).sre == pytest.approx(0.0, abs=1e-10)
        for j in range(4):
            lam = reduced_density_matrix(psi, [j]).spectrum()
            assert lam[0] == pytest.approx(1.0, abs=1e-12)


def test_fc_gate_log_draws_from_restricted_set():
    spec = EnsembleSpec(kind="FC", n_qubits=6, n_realizations=1, seed=5,
                        layers_per_n_squared=1.0)
    log = []
    ensembles.generate_fc(spec, 0, gate_log=log)
    # identity draws are skipped, so at most (n-1) gates per layer
    assert 0 < len(log) <= spec.n_layers * 5
    assert {g for _, g, _ in log} <= {"S", "H"}
    assert all(0 <= site < 6 for _, _, site in log)


def test_nfc_states_are_stabilizer_and_scrambled():
    spec = EnsembleSpec(kind="NFC", n_qubits=4, n_realizations=2, seed=11,
                        layers_per_n_squared=2.0)
    for m in range(2):
        psi = ensembles.generate_nfc(spec, m)
        assert psi.norm() == pytest.approx(1.0, abs=1e-10)
        assert measures.sre_exact(psi, 2).sre == pytest.approx(0.0, abs=1e-9)
    # entanglement of a Clifford state across a cut is an integer number of
    # bits; with two-qubit gates in play some realization is entangled
    tops = [reduced_density_matrix(ensembles.generate_nfc(spec, m),
                                   [0, 1]).spectrum()[0]
            for m in range(4)]
    assert min(tops) < 1.0 - 1e-6


def test_nfc_gate_log_pairs_distinct_sites():
    spec = EnsembleSpec(kind="NFC", n_qubits=5, n_realizations=1, seed=3,
                        layers_per_n_squared=1.0)
    log = []
    ensembles.generate_nfc(spec, 0, gate_log=log)
    assert len(log) == spec.n_layers * 4
    for _, choice, j, l in log:
        assert j != l
        assert 0 <= choice < 6
        assert 0 <= j < 5 and 0 <= l < 5


def test_realization_rng_substreams():
    spec = _spec("FR")
    a = ensembles.realization_rng(spec, 0).random(4)
    b = ensembles.realization_rng(spec, 1).random(4)
    assert not np.allclose(a, b)
    c = ensembles.realization_rng(spec, 0).random(4)
    np.testing.assert_array_equal(a, c)
