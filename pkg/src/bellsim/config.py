"""Experiment configuration: strict JSON parsing and model resolution.

Config files carry a schema_version and are validated key-by-key; unknown
keys are hard errors so a typo in a physics parameter cannot silently fall
back to a default.  A seed is mandatory.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .bell.expressions import (
    BellExpression,
    MeasurementAssignment,
    build_chain_expression,
    build_chsh_expression,
    build_gisin_expression,
    build_honeycomb_expression,
    build_svetlichny_expression,
)
from .bell.lattice import HoneycombLattice, load_lattice
from .bell.operators import (
    AntidiagonalOperator,
    build_chain_hamiltonian,
    build_honeycomb_hamiltonian,
    classical_bound_chain,
    depth_witness_operator,
    honeycomb_classical_bound,
)
from .errors import ConfigError
from .measure.readout import ReadoutModel
from .qsim.pauli import PauliSum

SCHEMA_VERSION = 1


def _check_keys(section: dict, allowed: set[str], required: set[str], where: str) -> None:
    if not isinstance(section, dict):
        raise ConfigError(f"{where} must be an object")
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"unknown keys in {where}: {sorted(unknown)}")
    missing = required - set(section)
    if missing:
        raise ConfigError(f"missing keys in {where}: {sorted(missing)}")


@dataclass
class TrainSection:
    ansatz: str | None = None        # default derived from the model kind
    layers: int = 4
    max_phase: int = 8
    final_retrain: bool = True
    mode: str = "exact"
    shots: int | None = None
    learning_rate: float = 0.1
    max_iters: int = 300
    init: str = "ones"
    early_stop: bool = False

    @classmethod
    def from_dict(cls, d: dict) -> "TrainSection":
        _check_keys(
            d,
            {"ansatz", "layers", "max_phase", "final_retrain", "mode", "shots",
             "learning_rate", "max_iters", "init", "early_stop"},
            set(),
            "train",
        )
        out = cls(**d)
        if out.mode not in ("exact", "shots"):
            raise ConfigError(f"train.mode must be exact|shots, got {out.mode!r}")
        if out.init not in ("ones", "random"):
            raise ConfigError(f"train.init must be ones|random, got {out.init!r}")
        return out


@dataclass
class MeasureSection:
    methods: tuple[str, ...] = ("parity", "mqc")
    mode: str = "exact"
    shots: int | None = None
    readout: ReadoutModel | None = None
    mitigate: bool = False
    repetitions: int = 1
    source: str = "ideal_ghz"        # "ideal_ghz" | "params_file" | "train"
    params_file: str | None = None
    n: int | None = None

    @classmethod
    def from_dict(cls, d: dict) -> "MeasureSection":
        _check_keys(
            d,
            {"methods", "mode", "shots", "readout", "mitigate", "repetitions",
             "source", "params_file", "n"},
            set(),
            "measure",
        )
        d = dict(d)
        readout = d.pop("readout", None)
        out = cls(**d)
        if isinstance(out.methods, list):
            out.methods = tuple(out.methods)
        for m in out.methods:
            if m not in ("parity", "mqc"):
                raise ConfigError(f"unknown measure method {m!r}")
        if out.mode not in ("exact", "shots"):
            raise ConfigError(f"measure.mode must be exact|shots, got {out.mode!r}")
        if out.source not in ("ideal_ghz", "params_file", "train"):
            raise ConfigError(f"unknown measure.source {out.source!r}")
        if readout is not None:
            _check_keys(readout, {"e0", "e1"}, {"e0", "e1"}, "measure.readout")
            n = out.n
            if n is None:
                raise ConfigError("measure.readout needs measure.n to size the model")
            out.readout = ReadoutModel(np.full(n, readout["e0"]), np.full(n, readout["e1"]))
        return out


@dataclass
class DepthSection:
    n: int | None = None
    energy: float | None = None
    energy_std: float = 0.0
    from_measure: bool = False

    @classmethod
    def from_dict(cls, d: dict) -> "DepthSection":
        _check_keys(d, {"n", "energy", "energy_std", "from_measure"}, set(), "depth")
        return cls(**d)


@dataclass
class ExperimentConfig:
    seed: int
    model: dict
    train: TrainSection = field(default_factory=TrainSection)
    measure: MeasureSection = field(default_factory=MeasureSection)
    depth: DepthSection = field(default_factory=DepthSection)
    out_dir: str | None = None
    base_dir: Path = field(default_factory=Path)
    raw: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: dict, base_dir: Path = Path(".")) -> "ExperimentConfig":
        _check_keys(
            data,
            {"schema_version", "seed", "model", "train", "measure", "depth", "out_dir"},
            {"schema_version", "seed", "model"},
            "config",
        )
        if data["schema_version"] != SCHEMA_VERSION:
            raise ConfigError(
                f"unsupported schema_version {data['schema_version']}; this build reads {SCHEMA_VERSION}"
            )
        seed = data["seed"]
        if not isinstance(seed, int) or isinstance(seed, bool) or not (0 <= seed < 2**64):
            raise ConfigError("seed must be an unsigned 64-bit integer")
        return cls(
            seed=seed,
            model=data["model"],
            train=TrainSection.from_dict(data.get("train", {})),
            measure=MeasureSection.from_dict(data.get("measure", {})),
            depth=DepthSection.from_dict(data.get("depth", {})),
            out_dir=data.get("out_dir"),
            base_dir=Path(base_dir),
            raw=data,
        )

    def config_hash(self) -> str:
        return hashlib.sha256(
            json.dumps(self.raw, sort_keys=True).encode("utf-8")
        ).hexdigest()


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return ExperimentConfig.from_dict(data, base_dir=path.parent)


# ---------------------------------------------------------------------------
# model resolution


@dataclass
class ModelBundle:
    kind: str
    num_qubits: int
    classical_bound: float
    observable: object                      # PauliSum | AntidiagonalOperator
    expression: BellExpression | None = None
    assignment: MeasurementAssignment | None = None
    lattice: HoneycombLattice | None = None
    params: dict = field(default_factory=dict)


def resolve_model(model: dict, base_dir: Path = Path(".")) -> ModelBundle:
    if "kind" not in model:
        raise ConfigError("model.kind is required")
    kind = model["kind"]

    if kind == "honeycomb":
        _check_keys(model, {"kind", "lattice_file", "rows", "cols", "eps"}, {"kind", "eps"}, "model")
        eps = float(model["eps"])
        if "lattice_file" in model:
            path = Path(model["lattice_file"])
            if not path.is_absolute():
                path = base_dir / path
            lattice = load_lattice(path)
        elif "rows" in model and "cols" in model:
            from .bell.lattice import brick_wall_patch

            lattice = brick_wall_patch(int(model["rows"]), int(model["cols"]))
        else:
            raise ConfigError("honeycomb model needs lattice_file or rows+cols")
        expr, meas = build_honeycomb_expression(lattice, eps)
        return ModelBundle(
            kind, lattice.num_sites, honeycomb_classical_bound(lattice, eps),
            build_honeycomb_hamiltonian(lattice, eps),
            expression=expr, assignment=meas, lattice=lattice, params={"eps": eps},
        )

    if kind == "chain":
        _check_keys(model, {"kind", "n", "delta", "eps"}, {"kind", "n", "delta", "eps"}, "model")
        n, delta, eps = int(model["n"]), float(model["delta"]), float(model["eps"])
        expr, meas = build_chain_expression(n, delta, eps)
        return ModelBundle(
            kind, n, classical_bound_chain(n, delta),
            build_chain_hamiltonian(n, delta, eps),
            expression=expr, assignment=meas,
            params={"n": n, "delta": delta, "eps": eps},
        )

    if kind == "svetlichny":
        _check_keys(model, {"kind", "n"}, {"kind", "n"}, "model")
        n = int(model["n"])
        if n < 2:
            raise ConfigError("svetlichny model needs n >= 2")
        # the coefficient dict is O(2^n); only materialize it where dense
        # operator work is feasible anyway
        lhv = -float(np.sqrt(2.0)) if n % 2 else -1.0
        bundle = ModelBundle(
            kind, n, lhv, depth_witness_operator(n), params={"n": n}
        )
        if n <= 12:
            expr, meas = build_svetlichny_expression(n)
            bundle.expression, bundle.assignment = expr, meas
        return bundle

    if kind == "chsh":
        _check_keys(model, {"kind"}, {"kind"}, "model")
        expr, meas = build_chsh_expression()
        h = PauliSum(2, [(np.sqrt(2.0), "XX"), (np.sqrt(2.0), "ZZ")])
        return ModelBundle(kind, 2, expr.classical_bound, h, expression=expr, assignment=meas)

    if kind == "gisin":
        _check_keys(model, {"kind", "delta"}, {"kind"}, "model")
        delta = float(model.get("delta", 1.0))
        expr, meas = build_gisin_expression(delta)
        j = 4.0 / np.sqrt(3.0)
        h = PauliSum(2, [(j, "XX"), (j, "YY"), (j * delta, "ZZ")])
        return ModelBundle(
            kind, 2, expr.classical_bound, h, expression=expr, assignment=meas,
            params={"delta": delta},
        )

    raise ConfigError(f"unknown model kind {kind!r}")
