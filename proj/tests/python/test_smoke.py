import math

import numpy as np
import pytest

import qcohere as qc


def test_state_factories_and_l1():
    rho = qc.mcms(0.5, 3)
    assert rho.shape == (3, 3)
    res = qc.c_l1(rho)
    assert res["method"] == "analytic"
    assert res["value"] == pytest.approx(1.0)


def test_validation_rejects_bad_states():
    bad = np.eye(2, dtype=complex)  # trace 2
    with pytest.raises(qc.QcError):
        qc.validate_state(bad)


def test_trace_discord_median():
    rho = qc.bell_diagonal(0.5, 0.3, 0.1)
    assert qc.trace_discord(rho, 2, 2)["value"] == pytest.approx(0.3)
    assert qc.hs_discord(qc.werner(0.8, 2), 2, 2)["value"] == pytest.approx((2 * 0.8 - 1) ** 2 / 18)


def test_lqu_hellinger_duality():
    rho = qc.random_density(4, 4, seed=5)
    lqu = qc.lqu(rho, 2, 2)["value"]
    hel = qc.hellinger_discord(rho, 2, 2)["value"]
    assert lqu == pytest.approx(2 * hel, abs=1e-9)


def test_robust_and_rel_entropy_on_plus_state():
    plus = 0.5 * np.array([[1, 1], [1, 1]], dtype=complex)
    assert qc.c_rel_entropy(plus)["value"] == pytest.approx(1.0)
    assert qc.robustness(plus)["value"] == pytest.approx(1.0)
    assert qc.c_max_relative_entropy(plus)["value"] == pytest.approx(1.0)


def test_rotated_reference_basis():
    plus = 0.5 * np.array([[1, 1], [1, 1]], dtype=complex)
    hadamard = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
    assert qc.c_l1(plus, basis=hadamard)["value"] == pytest.approx(0.0, abs=1e-12)


def test_channels():
    kraus = qc.standard_channel_kraus("phase_flip", 0.3)
    flags = qc.classify_channel(kraus)
    assert flags["strictly_incoherent"] and flags["unital"]
    plus = 0.5 * np.array([[1, 1], [1, 1]], dtype=complex)
    out = qc.apply_channel(kraus, plus)
    assert qc.c_l1(out)["value"] == pytest.approx(0.4)

    hadamard = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
    assert qc.cohering_power([hadamard], "l1") == pytest.approx(1.0)
    assert qc.average_cohering_power_unitary(hadamard) == pytest.approx(1 / 6)


def test_protocols():
    assert qc.grover_success(4, 1, 1) == pytest.approx(1.0)
    assert qc.grover_coherence(4, 1, 0, "l1") == pytest.approx(3.0)
    assert qc.grover_r_opt(4, 1) == 1
    assert qc.odlro_coherence(4, 2) == pytest.approx(4.0)

    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    assert qc.dqc1_coherence_consumption(1, sx) == pytest.approx(1.0)

    phi = qc.bell_diagonal(1.0, -1.0, 1.0)
    bounds = qc.teleport_fidelity_bounds(phi)
    assert bounds["fidelity"] == pytest.approx(1.0)
    assert qc.rsp_fidelity(phi) == pytest.approx(1.0)


def test_haar_average():
    avg = qc.haar_average_coherence(2, 2000, 3, "l1")
    assert abs(avg["mean"] - math.pi / 4) <= 4 * avg["stderr"]


def test_unruh_states():
    bell = qc.fermionic_degraded_bell(1.0, 1e-3)
    assert qc.negativity(bell, 2, 2) == pytest.approx(0.5, abs=1e-9)
    degraded = qc.fermionic_degraded_bell(1e-3, 1e3)
    assert 0.05 < qc.negativity(degraded, 2, 2) < 0.5

    boson = qc.bosonic_degraded_bell(1.0, 1e-3, n_max=8)
    assert boson.shape == (20, 20)
