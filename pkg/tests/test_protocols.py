import numpy as np
import pytest

from bellsim.errors import ConfigError
from bellsim.measure import (
    ReadoutModel,
    measure_mqc,
    measure_parity,
    mqc_settings,
    parity_settings,
    run_mqc_pipeline,
    run_parity_pipeline,
    shots_schedule,
)
from bellsim.qsim import Circuit

from conftest import ghz_circuit


def test_parity_settings_n2():
    assert np.allclose(parity_settings(2), [-np.pi / 2, -np.pi / 6, np.pi / 6])


def test_parity_settings_counts():
    assert len(parity_settings(8)) == 9
    assert len(parity_settings(24)) == 25


def test_mqc_settings_counts():
    assert len(mqc_settings(2)) == 6
    assert len(mqc_settings(24)) == 50
    # roughly double the parity sampling
    assert len(mqc_settings(10)) == 2 * len(parity_settings(10))


def test_shots_schedule():
    assert shots_schedule(2) == 900
    assert shots_schedule(12) == 7200
    assert shots_schedule(24) == 30000
    with pytest.raises(ConfigError):
        shots_schedule(5)


def test_ghz_minus_parity_curve():
    n = 5
    c = ghz_circuit(n, minus=True)
    for gamma in parity_settings(n):
        value, std = measure_parity(c, None, gamma)
        assert std == 0.0
        assert value == pytest.approx(-np.cos(n * gamma), abs=1e-12)


def test_product_state_parity_zero():
    # product |0..0>: each factor <0|cos g X + sin g Y|0> = 0, so parity = 0
    c = Circuit(3)
    for gamma in (-0.7, 0.0, np.pi / 2, 1.1):
        value, _ = measure_parity(c, None, gamma)
        assert abs(value) < 1e-12


def test_ghz_mqc_curve():
    n = 4
    c = ghz_circuit(n)
    for phi in mqc_settings(n):
        value, std = measure_mqc(c, None, phi)
        assert std == 0.0
        assert value == pytest.approx((1 + np.cos(n * phi)) / 2, abs=1e-12)


def test_mqc_identity_prep_zero():
    # with the refocusing RX(pi) layer, an identity preparation never returns
    # to |0..0>; the echo probability vanishes for every phase
    c = Circuit(2)
    for phi in mqc_settings(2):
        value, _ = measure_mqc(c, None, phi)
        assert abs(value) < 1e-12


def test_mqc_refocusing_at_zero_phase():
    value, _ = measure_mqc(ghz_circuit(6), None, 0.0)
    assert value == pytest.approx(1.0, abs=1e-12)


def test_shot_mode_needs_rng():
    with pytest.raises(ValueError):
        measure_parity(ghz_circuit(2), None, 0.1, shots=100)


def test_pipeline_determinism():
    c = ghz_circuit(3, minus=True)
    t1 = run_parity_pipeline(c, None, shots=500, master_seed=9)
    t2 = run_parity_pipeline(c, None, shots=500, master_seed=9)
    assert np.array_equal(t1.values, t2.values)
    t3 = run_mqc_pipeline(c, None, shots=500, master_seed=9)
    t4 = run_mqc_pipeline(c, None, shots=500, master_seed=9)
    assert np.array_equal(t3.values, t4.values)


def test_pipeline_shot_consistency():
    n = 4
    c = ghz_circuit(n, minus=True)
    table = run_parity_pipeline(c, None, shots=4000, master_seed=3)
    ideal = -np.cos(n * table.angles)
    assert np.all(np.abs(table.values - ideal) < 4 * np.maximum(table.stds, 1e-6) + 0.05)


def test_repetitions_aggregate():
    c = ghz_circuit(3)
    table = run_parity_pipeline(c, None, shots=800, repetitions=5, master_seed=11)
    assert table.raw_values.shape == (5, 4)
    assert np.allclose(table.values, table.raw_values.mean(axis=0))
    assert table.repetitions == 5


def test_mqc_with_readout_error():
    n = 4
    model = ReadoutModel.symmetric(n, 0.02)
    c = ghz_circuit(n)
    # mitigated estimate recovers the ideal curve within noise
    for phi in mqc_settings(n)[:3]:
        rng = np.random.default_rng(5)
        value, std = measure_mqc(c, None, phi, shots=20000, readout=model, rng=rng, mitigate=True)
        ideal = (1 + np.cos(n * phi)) / 2
        assert value == pytest.approx(ideal, abs=4 * max(std, 1e-4))
