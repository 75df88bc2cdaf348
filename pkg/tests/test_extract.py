import csv

import numpy as np
import pytest

from bellsim.errors import FitError, SignalsInconsistentError
from bellsim.measure import (
    CoherenceEstimate,
    SignalTable,
    coherence_from_fit,
    combine_mqc_energy,
    extract_coherence_mqc,
    extract_coherence_parity,
    mqc_settings,
    parity_settings,
    run_mqc_pipeline,
    run_parity_pipeline,
    sinusoid_fit,
    write_signals_csv,
)
from bellsim.qsim import antidiagonal_coherence, prepare
from bellsim.verify import random_circuit

from conftest import ghz_circuit


def exact_table(method, angles, values):
    k = len(angles)
    return SignalTable(method, angles, values, np.zeros(k), np.zeros(k))


def test_ghz_minus_parity_extraction():
    n = 6
    gammas = parity_settings(n)
    est = extract_coherence_parity(exact_table("parity", gammas, -np.cos(n * gammas)), n)
    assert est.value == pytest.approx(-0.5, abs=1e-12)
    assert est.energy == pytest.approx(-(2 ** ((n - 1) / 2)), abs=1e-9)


def test_ghz_plus_energy_sign():
    n = 4
    gammas = parity_settings(n)
    est = extract_coherence_parity(exact_table("parity", gammas, np.cos(n * gammas)), n)
    assert est.energy == pytest.approx(2 ** ((n - 1) / 2), abs=1e-9)


def test_zero_signal():
    n = 5
    gammas = parity_settings(n)
    est = extract_coherence_parity(exact_table("parity", gammas, np.zeros(n + 1)), n)
    assert est.value == 0
    phis = mqc_settings(n)
    est = extract_coherence_mqc(exact_table("mqc", phis, np.zeros(len(phis))), n)
    assert est.value == 0
    assert est.std == 0


def test_extraction_matches_direct_coherence(rng):
    for _ in range(5):
        circuit = random_circuit(rng, 5, 14)
        params = rng.uniform(-np.pi, np.pi, circuit.num_params)
        direct = antidiagonal_coherence(prepare(circuit, params))
        par = extract_coherence_parity(run_parity_pipeline(circuit, params), 5)
        assert par.value == pytest.approx(direct, abs=1e-9)
        mqc = extract_coherence_mqc(run_mqc_pipeline(circuit, params), 5)
        assert mqc.value.real == pytest.approx(abs(direct), abs=1e-9)


def test_grid_warning():
    n = 4
    gammas = np.linspace(-np.pi / 2, np.pi / 2, 3)
    with pytest.warns(UserWarning, match="Fourier"):
        extract_coherence_parity(exact_table("parity", gammas, np.zeros(3)), n)


def test_dense_grid_remains_exact():
    n = 8
    ns = 10 * n + 1
    gammas = -np.pi / 2 + np.pi * np.arange(ns) / ns
    with pytest.warns(UserWarning):
        est = extract_coherence_parity(exact_table("parity", gammas, -np.cos(n * gammas)), n)
    assert est.value == pytest.approx(-0.5, abs=1e-9)


def test_method_mismatch():
    n = 4
    with pytest.raises(ValueError):
        extract_coherence_parity(exact_table("mqc", mqc_settings(n), np.zeros(2 * n + 2)), n)


def test_out_of_range_signal_rejected():
    n = 4
    phis = mqc_settings(n)
    values = np.zeros(len(phis))
    values[0] = 1.5  # probability > 1 with zero std
    with pytest.raises(SignalsInconsistentError):
        extract_coherence_mqc(exact_table("mqc", phis, values), n)


def test_coherence_ceiling():
    with pytest.raises(SignalsInconsistentError):
        CoherenceEstimate(value=0.9 + 0j, std=0.0, method="parity", num_qubits=3)


def test_mqc_std_floor():
    # pure-noise signal whose Fourier magnitude is below its own std
    n = 4
    phis = mqc_settings(n)
    values = np.full(len(phis), 0.5)
    stds = np.full(len(phis), 0.05)
    table = SignalTable("mqc", phis, values, stds, np.full(len(phis), 100))
    est = extract_coherence_mqc(table, n)
    assert est.value.real > 0
    assert est.std == pytest.approx(est.value.real / 2)


def test_sinusoid_fit_dense_ghz():
    gammas = np.linspace(-np.pi / 2, np.pi / 2, 81, endpoint=False)
    table = exact_table("parity", gammas, -np.cos(8 * gammas))
    fit = sinusoid_fit(table, 8)
    assert fit.amplitude == pytest.approx(1.0, abs=1e-9)
    assert fit.phase == pytest.approx(np.pi, abs=1e-9)
    est = coherence_from_fit(fit, 8)
    assert est.value == pytest.approx(-0.5, abs=1e-9)


def test_sinusoid_fit_zero_signal():
    gammas = np.linspace(-np.pi / 2, np.pi / 2, 11)
    fit = sinusoid_fit(exact_table("parity", gammas, np.zeros(11)), 4)
    assert fit.amplitude == 0.0


def test_sinusoid_fit_errors():
    with pytest.raises(ValueError):
        sinusoid_fit(exact_table("parity", np.array([0.0, 0.1]), np.zeros(2)), 3)
    same = np.zeros(5)  # all settings identical -> rank deficient
    with pytest.raises(FitError):
        sinusoid_fit(exact_table("parity", same, np.ones(5)), 3)


def test_three_methods_agree_exactly():
    n = 8
    circuit = ghz_circuit(n, minus=True)
    sparse = extract_coherence_parity(run_parity_pipeline(circuit, None), n)
    ns = 10 * n + 1
    dense_angles = -np.pi / 2 + np.pi * np.arange(ns) / ns
    with pytest.warns(UserWarning):
        dense = extract_coherence_parity(
            run_parity_pipeline(circuit, None, angles=dense_angles), n
        )
    fit = coherence_from_fit(
        sinusoid_fit(run_parity_pipeline(circuit, None, angles=dense_angles), n), n
    )
    assert sparse.value == pytest.approx(dense.value, abs=1e-9)
    assert sparse.value == pytest.approx(fit.value, abs=1e-9)


def test_combine_mqc_energy():
    n = 6
    c = ghz_circuit(n, minus=True)
    par = extract_coherence_parity(run_parity_pipeline(c, None), n)
    mqc = extract_coherence_mqc(run_mqc_pipeline(c, None), n)
    combined = combine_mqc_energy(mqc, par)
    assert combined.energy == pytest.approx(par.energy, abs=1e-9)


def test_csv_export(tmp_path):
    c = ghz_circuit(3)
    t1 = run_parity_pipeline(c, None, shots=200, master_seed=1)
    t2 = run_mqc_pipeline(c, None, shots=200, master_seed=1, repetitions=2)
    path = tmp_path / "signals.csv"
    write_signals_csv([t1, t2], path)
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["method", "angle", "value", "std", "shots", "repetition"]
    assert len(rows) == 1 + len(t1.angles) + 2 * len(t2.angles)
    assert {r[0] for r in rows[1:]} == {"parity", "mqc"}
