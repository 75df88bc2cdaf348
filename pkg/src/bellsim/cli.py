"""Command-line runner: bounds / train / measure / depth / verify.

Exit codes: 0 success, 2 config error, 3 capacity error, 4 verification
failure.  All products of a run are listed in a manifest; trajectory and
signal files contain no timestamps so identically-seeded runs are
byte-identical.
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bell.bounds import k_nonlocal_bound, lhv_bound_bruteforce
from .bell.depth import certify_depth
from .config import ExperimentConfig, ModelBundle, load_config, resolve_model
from .errors import BellSimError, CapacityError, ConfigError
from .measure.extract import (
    combine_mqc_energy,
    extract_coherence_mqc,
    extract_coherence_parity,
    write_signals_csv,
)
from .measure.protocols import SHOTS_SCHEDULE, run_pipeline
from .qsim.gates import Circuit
from .vqc.ansatz import AnsatzSpec
from .vqc.train import TrainConfig, hierarchical_train, train, write_trajectory
from . import verify as verify_mod

_BRUTEFORCE_OPS_CAP = 1 << 28


# ---------------------------------------------------------------------------
# helpers


def _say(quiet: bool, *parts) -> None:
    if not quiet:
        print(*parts)


class RunManifest:
    def __init__(self, cfg: ExperimentConfig, out_dir: Path):
        self.out_dir = out_dir
        self.data = {
            "artifact_version": __version__,
            "config_hash": cfg.config_hash(),
            "started": datetime.datetime.now(datetime.timezone.utc).isoformat(),
            "outputs": [],
        }

    def add(self, path: Path) -> Path:
        self.data["outputs"].append(path.name)
        return path

    def write(self) -> None:
        self.data["finished"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
        for name in self.data["outputs"]:
            if not (self.out_dir / name).exists():
                raise BellSimError(f"manifest lists missing output {name}")
        (self.out_dir / "manifest.json").write_text(
            json.dumps(self.data, sort_keys=True, indent=1) + "\n"
        )


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, sort_keys=True, indent=1) + "\n")


def _ghz_minus_circuit(n: int) -> Circuit:
    c = Circuit(n)
    c.add("h", 0)
    c.add("rz", 0, angles=(np.pi,))
    for q in range(n - 1):
        c.add("cnot", q, q + 1)
    return c


def _ansatz_for(cfg: ExperimentConfig, bundle: ModelBundle) -> AnsatzSpec:
    family = cfg.train.ansatz
    if family is None:
        family = {
            "honeycomb": "honeycomb",
            "chain": "chain",
            "svetlichny": "hierarchical",
            "chsh": "chain",
            "gisin": "chain",
        }[bundle.kind]
    if family == "honeycomb":
        if bundle.lattice is None:
            raise ConfigError("honeycomb ansatz needs a lattice-backed model")
        return AnsatzSpec("honeycomb", lattice=bundle.lattice)
    if family == "chain":
        return AnsatzSpec("chain", num_qubits=bundle.num_qubits, layers=cfg.train.layers)
    if family == "hierarchical":
        return AnsatzSpec("hierarchical", phase=cfg.train.max_phase)
    raise ConfigError(f"unknown ansatz family {family!r}")


def _train_config(cfg: ExperimentConfig, bound: float | None) -> TrainConfig:
    t = cfg.train
    return TrainConfig(
        max_iters=t.max_iters,
        learning_rate=t.learning_rate,
        mode=t.mode,
        shots=t.shots,
        seed=cfg.seed,
        init=t.init,
        early_stop_bound=bound if t.early_stop else None,
    )


# ---------------------------------------------------------------------------
# subcommands


def cmd_bounds(cfg: ExperimentConfig, out_dir: Path | None, quiet: bool = False) -> dict:
    bundle = resolve_model(cfg.model, cfg.base_dir)
    report: dict = {
        "model": bundle.kind,
        "num_parties": bundle.num_qubits,
        "classical_bound": bundle.classical_bound,
    }
    _say(quiet, f"model {bundle.kind}: classical bound {bundle.classical_bound:.6g}")

    if bundle.kind == "svetlichny":
        table = {
            str(k): k_nonlocal_bound(bundle.num_qubits, k)
            for k in range(1, bundle.num_qubits)
        }
        report["k_nonlocal_bounds"] = table
        for k, b in table.items():
            _say(quiet, f"  k={k}: {b:.6g}")

    expr = bundle.expression
    if expr is not None:
        bits = expr.strategy_bits()
        ops = (1 << bits) * len(expr.coefficients) if bits <= 40 else None
        if bits <= 24 and ops is not None and ops <= _BRUTEFORCE_OPS_CAP:
            brute = lhv_bound_bruteforce(expr)
            report["bruteforce_bound"] = brute
            report["bruteforce_confirms"] = bool(
                abs(brute - bundle.classical_bound) < 1e-9
            )
            _say(
                quiet,
                f"  brute force over 2^{bits} strategies: {brute:.6g} "
                f"({'confirms' if report['bruteforce_confirms'] else 'DISAGREES'})",
            )
        else:
            report["bruteforce_bound"] = None
            _say(quiet, f"  brute force skipped ({bits} strategy bits)")

    if out_dir is not None:
        manifest = RunManifest(cfg, out_dir)
        _write_json(manifest.add(out_dir / "bounds.json"), report)
        manifest.write()
    return report


def cmd_train(cfg: ExperimentConfig, out_dir: Path | None, quiet: bool = False) -> dict:
    bundle = resolve_model(cfg.model, cfg.base_dir)
    spec = _ansatz_for(cfg, bundle)
    tcfg = _train_config(cfg, bundle.classical_bound)

    summary: dict = {
        "model": bundle.kind,
        "classical_bound": bundle.classical_bound,
        "mode": tcfg.mode,
        "seed": cfg.seed,
    }
    certificates = None
    if spec.family == "hierarchical":
        if bundle.num_qubits % 2:
            raise ConfigError("hierarchical training needs an even qubit count")
        max_phase = min(cfg.train.max_phase, bundle.num_qubits // 2)
        result = hierarchical_train(
            tcfg, max_phase, final_retrain=cfg.train.final_retrain
        )
        records, params = result.records, result.params
        final_energy = result.phases[-1].energy
        final_std = result.phases[-1].energy_std
        certificates = [
            {
                "phase": ph.phase,
                "num_qubits": ph.num_qubits,
                "energy": ph.energy,
                "energy_std": ph.energy_std,
                "certified_depth": ph.certificate.certified_depth,
            }
            for ph in result.phases
        ]
        summary["certificates"] = certificates
        summary["certified_depth"] = certificates[-1]["certified_depth"]
        num_qubits = result.circuit.num_qubits
    else:
        circuit = spec.build()
        result = train(circuit, bundle.observable, tcfg)
        records, params = result.records, result.params
        final_energy, final_std = result.final_energy, result.final_energy_std
        num_qubits = circuit.num_qubits

    summary["num_qubits"] = num_qubits
    summary["iterations"] = records[-1].iteration
    summary["final_energy"] = final_energy
    summary["final_energy_std"] = final_std
    summary["violation"] = bool(final_energy < bundle.classical_bound)
    if final_std > 0:
        summary["sigma_margin"] = (bundle.classical_bound - final_energy) / final_std
    else:
        summary["sigma_margin"] = None

    _say(
        quiet,
        f"trained {bundle.kind} ({num_qubits} qubits, {summary['iterations']} iterations): "
        f"E = {final_energy:.6g}, classical bound {bundle.classical_bound:.6g}, "
        f"violation: {summary['violation']}",
    )
    if certificates:
        for c in certificates:
            _say(
                quiet,
                f"  phase {c['phase']}: n={c['num_qubits']} E={c['energy']:.6g} "
                f"depth={c['certified_depth']}",
            )

    if out_dir is not None:
        manifest = RunManifest(cfg, out_dir)
        write_trajectory(
            records,
            manifest.add(out_dir / "trajectory.jsonl"),
            meta={"config_hash": cfg.config_hash(), "model": bundle.kind},
        )
        _write_json(
            manifest.add(out_dir / "final_params.json"),
            {"params": list(params), "num_qubits": num_qubits, "family": spec.family},
        )
        _write_json(manifest.add(out_dir / "summary.json"), summary)
        manifest.write()
    return summary


def _measurement_target(cfg: ExperimentConfig, bundle: ModelBundle):
    m = cfg.measure
    if m.source == "ideal_ghz":
        n = m.n if m.n is not None else bundle.num_qubits
        return _ghz_minus_circuit(n), None, n
    spec = _ansatz_for(cfg, bundle)
    circuit = spec.build()
    if m.source == "params_file":
        if m.params_file is None:
            raise ConfigError("measure.source=params_file needs measure.params_file")
        path = Path(m.params_file)
        if not path.is_absolute():
            path = cfg.base_dir / path
        try:
            params = np.asarray(json.loads(path.read_text())["params"], dtype=float)
        except (OSError, json.JSONDecodeError, KeyError) as exc:
            raise ConfigError(f"cannot read params file {path}: {exc}") from exc
        return circuit, params, circuit.num_qubits
    # source == "train"
    tcfg = _train_config(cfg, bundle.classical_bound)
    result = train(circuit, bundle.observable, tcfg)
    return circuit, result.params, circuit.num_qubits


def cmd_measure(cfg: ExperimentConfig, out_dir: Path | None, quiet: bool = False) -> dict:
    bundle = resolve_model(cfg.model, cfg.base_dir)
    circuit, params, n = _measurement_target(cfg, bundle)
    m = cfg.measure
    if m.mode == "exact":
        shots = None
    elif m.shots is not None:
        shots = m.shots
    elif n in SHOTS_SCHEDULE:
        shots = SHOTS_SCHEDULE[n]
    else:
        raise ConfigError(f"no tabulated shots for n={n}; set measure.shots")

    tables = []
    estimates: dict = {}
    for method in m.methods:
        table = run_pipeline(
            method, circuit, params,
            shots=shots, readout=m.readout, mitigate=m.mitigate,
            repetitions=m.repetitions, master_seed=cfg.seed,
        )
        tables.append(table)
        if method == "parity":
            estimates["parity"] = extract_coherence_parity(table, n)
        else:
            estimates["mqc"] = extract_coherence_mqc(table, n)
    if "parity" in estimates and "mqc" in estimates:
        estimates["mqc_energy"] = combine_mqc_energy(estimates["mqc"], estimates["parity"])

    report = {
        "num_qubits": n,
        "shots_per_setting": shots,
        "mitigated": m.mitigate,
        "repetitions": m.repetitions,
        "estimates": {k: v.to_json_dict() for k, v in estimates.items()},
    }
    for name, est in estimates.items():
        _say(
            quiet,
            f"{name}: value {est.value:.6g} +- {est.std:.3g}"
            + (f", energy {est.energy:.6g}" if est.energy is not None else ""),
        )

    if out_dir is not None:
        manifest = RunManifest(cfg, out_dir)
        write_signals_csv(tables, manifest.add(out_dir / "signals.csv"))
        _write_json(manifest.add(out_dir / "coherence.json"), report)
        manifest.write()
    return report


def cmd_depth(cfg: ExperimentConfig, out_dir: Path | None, quiet: bool = False) -> dict:
    d = cfg.depth
    if d.from_measure:
        measured = cmd_measure(cfg, None, quiet=True)
        n = measured["num_qubits"]
        source = measured["estimates"].get("parity")
        if source is None:
            raise ConfigError("depth.from_measure needs the parity method enabled")
        energy, energy_std = source["energy"], source["energy_std"]
    else:
        if d.n is None or d.energy is None:
            raise ConfigError("depth needs n and energy (or from_measure: true)")
        n, energy, energy_std = d.n, d.energy, d.energy_std

    cert = certify_depth(n, energy, energy_std)
    _say(quiet, f"n={n} energy={energy:.6g} certified depth {cert.certified_depth}")
    for margin in cert.margins:
        _say(
            quiet,
            f"  k={margin.k}: bound {margin.bound:.6g} "
            f"sigma_margin {margin.sigma_margin:.3g}",
        )
    report = cert.to_json_dict()
    if out_dir is not None:
        manifest = RunManifest(cfg, out_dir)
        _write_json(manifest.add(out_dir / "depth.json"), report)
        manifest.write()
    return report


def cmd_verify(quiet: bool = False) -> bool:
    results = verify_mod.run_all()
    ok = True
    for name, passed, detail in results:
        ok &= passed
        _say(quiet, f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")
    _say(quiet, f"{'all checks passed' if ok else 'VERIFICATION FAILED'}")
    return ok


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellsim",
        description="Variational Bell-correlation experiments on an exact statevector emulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, needs_config in (
        ("bounds", True), ("train", True), ("measure", True), ("depth", True), ("verify", False),
    ):
        p = sub.add_parser(name)
        p.add_argument("--quiet", action="store_true", help="suppress progress output")
        if needs_config:
            p.add_argument("--config", required=True, help="experiment config JSON")
            p.add_argument("--out", default=None, help="output directory")
            p.add_argument("--seed", type=int, default=None, help="override config seed")
            p.add_argument("--mode", choices=("exact", "shots"), default=None,
                           help="override train/measure evaluation mode")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return 0 if cmd_verify(args.quiet) else 4

        cfg = load_config(args.config)
        if args.seed is not None:
            cfg.raw["seed"] = args.seed
            cfg = ExperimentConfig.from_dict(cfg.raw, base_dir=cfg.base_dir)
        if args.mode is not None:
            cfg.train.mode = args.mode
            cfg.measure.mode = args.mode
        out_dir = None
        if args.out is not None or cfg.out_dir is not None:
            out_dir = Path(args.out if args.out is not None else cfg.out_dir)
            out_dir.mkdir(parents=True, exist_ok=True)

        handler = {
            "bounds": cmd_bounds,
            "train": cmd_train,
            "measure": cmd_measure,
            "depth": cmd_depth,
        }[args.command]
        handler(cfg, out_dir, args.quiet)
        return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
