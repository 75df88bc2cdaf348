import json
from pathlib import Path

import numpy as np
import pytest

from bellsim.cli import cmd_bounds, cmd_depth, cmd_measure, cmd_train, main
from bellsim.config import ExperimentConfig
from bellsim.verify import check_operator_equalities

DATA = Path(__file__).resolve().parent.parent / "data"


def make_cfg(model, **extra):
    data = {"schema_version": 1, "seed": 11, "model": model}
    data.update(extra)
    return ExperimentConfig.from_dict(data)


def write_cfg(tmp_path, model, **extra):
    data = {"schema_version": 1, "seed": 11, "model": model}
    data.update(extra)
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(data))
    return path


def test_bounds_chsh_gisin():
    rep = cmd_bounds(make_cfg({"kind": "chsh"}), None, quiet=True)
    assert rep["classical_bound"] == -2.0
    assert rep["bruteforce_confirms"] is True
    rep = cmd_bounds(make_cfg({"kind": "gisin"}), None, quiet=True)
    assert rep["classical_bound"] == -6.0
    assert rep["bruteforce_confirms"] is True


def test_bounds_chain21():
    rep = cmd_bounds(
        make_cfg({"kind": "chain", "n": 21, "delta": 2.0, "eps": 0.95}), None, quiet=True
    )
    assert rep["classical_bound"] == -160.0
    assert rep["bruteforce_bound"] is None  # 74 strategy bits: skipped


def test_bounds_honeycomb73():
    rep = cmd_bounds(
        make_cfg(
            {"kind": "honeycomb", "lattice_file": str(DATA / "honeycomb_73.json"), "eps": 0.9}
        ),
        None,
        quiet=True,
    )
    assert rep["classical_bound"] == pytest.approx(-131.3, abs=1e-9)


def test_bounds_svetlichny_table(tmp_path):
    out = tmp_path / "out"
    out.mkdir()
    rep = cmd_bounds(make_cfg({"kind": "svetlichny", "n": 24}), out, quiet=True)
    assert rep["k_nonlocal_bounds"]["23"] == -2048.0
    data = json.loads((out / "bounds.json").read_text())
    assert data["k_nonlocal_bounds"]["1"] == -1.0
    manifest = json.loads((out / "manifest.json").read_text())
    assert "bounds.json" in manifest["outputs"]


def test_train_writes_outputs(tmp_path):
    out = tmp_path / "run"
    out.mkdir()
    cfg = make_cfg(
        {"kind": "chsh"},
        train={"ansatz": "chain", "layers": 3, "max_iters": 60, "init": "random",
               "learning_rate": 0.1},
    )
    summary = cmd_train(cfg, out, quiet=True)
    assert (out / "trajectory.jsonl").exists()
    assert (out / "final_params.json").exists()
    lines = (out / "trajectory.jsonl").read_text().splitlines()
    header = json.loads(lines[0])
    assert header["schema"] == "bellsim-trajectory"
    assert len(lines) == 2 + summary["iterations"]
    manifest = json.loads((out / "manifest.json").read_text())
    for name in manifest["outputs"]:
        assert (out / name).exists()


def test_train_byte_determinism(tmp_path):
    blobs = []
    for name in ("a", "b"):
        out = tmp_path / name
        out.mkdir()
        cfg = make_cfg(
            {"kind": "chsh"},
            train={"ansatz": "chain", "layers": 2, "max_iters": 25, "mode": "shots",
                   "shots": 256},
        )
        cmd_train(cfg, out, quiet=True)
        blobs.append((out / "trajectory.jsonl").read_bytes())
    assert blobs[0] == blobs[1]


def test_measure_ideal_ghz(tmp_path):
    out = tmp_path / "m"
    out.mkdir()
    cfg = make_cfg(
        {"kind": "svetlichny", "n": 6},
        measure={"methods": ["parity", "mqc"], "mode": "exact", "n": 6},
    )
    rep = cmd_measure(cfg, out, quiet=True)
    est = rep["estimates"]["parity"]
    assert est["value_re"] == pytest.approx(-0.5, abs=1e-9)
    assert rep["estimates"]["mqc_energy"]["energy"] == pytest.approx(est["energy"], abs=1e-9)
    assert (out / "signals.csv").exists()
    assert (out / "coherence.json").exists()


def test_measure_signal_determinism(tmp_path):
    blobs = []
    for name in ("a", "b"):
        out = tmp_path / name
        out.mkdir()
        cfg = make_cfg(
            {"kind": "svetlichny", "n": 4},
            measure={"methods": ["parity"], "mode": "shots", "shots": 400, "n": 4},
        )
        cmd_measure(cfg, out, quiet=True)
        blobs.append((out / "signals.csv").read_bytes())
    assert blobs[0] == blobs[1]


def test_depth_direct():
    cfg = make_cfg({"kind": "svetlichny", "n": 24}, depth={"n": 24, "energy": -1500.0})
    rep = cmd_depth(cfg, None, quiet=True)
    assert rep["certified_depth"] == 12


def test_depth_from_measure():
    cfg = make_cfg(
        {"kind": "svetlichny", "n": 6},
        measure={"methods": ["parity"], "mode": "exact", "n": 6},
        depth={"from_measure": True},
    )
    rep = cmd_depth(cfg, None, quiet=True)
    assert rep["certified_depth"] == 6  # ideal GHZ on 6 qubits


def test_exit_codes(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"schema_version": 1, "model": {"kind": "chsh"}}))
    assert main(["bounds", "--config", str(bad)]) == 2

    big = write_cfg(tmp_path, {"kind": "svetlichny", "n": 24},
                    measure={"methods": ["parity"], "mode": "exact", "n": 30})
    assert main(["measure", "--config", str(big)]) == 3


def test_cli_bounds_end_to_end(tmp_path, capsys):
    cfg = write_cfg(tmp_path, {"kind": "chsh"})
    assert main(["bounds", "--config", str(cfg), "--out", str(tmp_path / "o")]) == 0
    text = capsys.readouterr().out
    assert "classical bound -2" in text


def test_seed_override(tmp_path):
    cfg = write_cfg(tmp_path, {"kind": "svetlichny", "n": 4},
                    measure={"methods": ["parity"], "mode": "shots", "shots": 300, "n": 4})
    out1, out2, out3 = tmp_path / "s1", tmp_path / "s2", tmp_path / "s3"
    assert main(["measure", "--config", str(cfg), "--out", str(out1), "--seed", "99", "--quiet"]) == 0
    assert main(["measure", "--config", str(cfg), "--out", str(out2), "--seed", "99", "--quiet"]) == 0
    assert main(["measure", "--config", str(cfg), "--out", str(out3), "--seed", "100", "--quiet"]) == 0
    assert (out1 / "signals.csv").read_bytes() == (out2 / "signals.csv").read_bytes()
    assert (out1 / "signals.csv").read_bytes() != (out3 / "signals.csv").read_bytes()


def test_injected_sign_error_caught():
    from bellsim.bell import build_svetlichny_expression

    def corrupted(n):
        expr, meas = build_svetlichny_expression(n)
        key = next(iter(expr.coefficients))
        expr.coefficients[key] *= -1
        return expr, meas

    ok, _ = check_operator_equalities(svetlichny_builder=corrupted)
    assert not ok
    ok, _ = check_operator_equalities()
    assert ok
