import math

import numpy as np
import pytest

import czsim


def test_presets():
    assert "paper-tableI" in czsim.device_preset_names()
    p = czsim.pulse_preset("tableII-a")
    assert p.t_f == 250.0
    assert p.lambda3 == pytest.approx(1 - 0.3395)


def test_zz_table_one():
    d = czsim.device_preset("paper-tableI")
    assert abs(czsim.zz_exact(d)) == pytest.approx(12.57, abs=0.6)
    assert czsim.zz_perturbative(d) == pytest.approx(-12.57, abs=0.01)
    r = czsim.zz_report(d)
    assert r["delta12_ghz"] == pytest.approx(2.0)


def test_hamiltonian_is_hermitian():
    h = czsim.static_hamiltonian(czsim.device_preset("paper-tableIII"))
    assert h.shape == (64, 64)
    assert np.allclose(h, h.conj().T)


def test_inline_device_and_errors():
    t = czsim.TransmonParams
    d = czsim.DeviceParams(t(6.5, -0.3), t(5.5, -0.3), t(4.5, -0.3), 0.0, 0.0)
    assert czsim.zz_exact(d) == 0.0
    with pytest.raises(czsim.InvalidArgument):
        czsim.DeviceParams(t(6.5, -0.3), t(5.5, -0.3), t(4.5, -0.3), -0.1, 0.0)
    d.q2 = t(5.5, -0.3)
    d.g1c = d.g2c = 0.08
    with pytest.raises(czsim.AmbiguousLabeling):
        czsim.zz_exact(d)


def test_envelope():
    p = czsim.pulse_preset("tableII-a")
    assert czsim.envelope(p, 0.0) == pytest.approx(0.0, abs=1e-15)
    assert czsim.envelope(p, 125.0) == pytest.approx(p.amp0)


def test_short_gate_and_unitary():
    d = czsim.device_preset("paper-tableI")
    p = czsim.PulseParams(0.03, 0.3, 0.1, 30.0, -0.015)
    s = czsim.EvolutionSettings(dt=0.01)
    u = czsim.evolve_unitary(d, czsim.resolved(d, p), s)
    assert czsim.max_unitarity_defect(u) < 1e-8
    r = czsim.simulate_gate(d, p, s)
    assert 0.0 <= r["leakage"] <= 1.0
    assert -math.pi < r["cond_phase"] < 3 * math.pi
    block = czsim.gate_block(d, p, s)
    assert block.shape == (4, 4)


def test_trajectory():
    d = czsim.device_preset("paper-tableI")
    p = czsim.PulseParams(0.03, 0.3, 0.1, 20.0, 0.0)
    tr = czsim.evolve_trajectory(d, p, czsim.EvolutionSettings(0.01, 500), "101")
    assert tr["times"][0] == 0.0
    assert tr["populations"].shape[1] == 64
    assert np.allclose(tr["populations"].sum(axis=1), 1.0)


def test_optimizer_budget():
    d = czsim.device_preset("paper-tableI")
    r = czsim.optimize_pulse(d, 40.0, -0.015, max_evals=10, dt=0.02)
    assert r["evaluations"] == 10
    assert r["best_history"] == sorted(r["best_history"], reverse=True)


def test_cli_roundtrip():
    status, out, err = czsim.run_cli(["zz", "--device", "paper-tableI"])
    assert status == 0
    assert out.startswith("# czsim " + czsim.__version__)
    assert "12.57" in err
    status, _, err = czsim.run_cli(["zz", "--device", "nowhere"])
    assert status == 2
