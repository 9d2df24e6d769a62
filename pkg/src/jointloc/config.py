"""
JSON scenario configuration.

Operators are nested arrays whose innermost entries are either real numbers
or ``[re, im]`` pairs.  Every parse error names the offending field path,
and JSON syntax errors carry line and column.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import metric_space as ms
from . import observables as ob
from . import operator_core as oc
from .errors import ConfigError, JointLocError

KNOWN_CHECKS = (
    "landau_pollak",
    "theorem1",
    "key_inequality",
    "theorem2",
    "proposition_bp",
    "theorem3",
    "theorem4",
    "corollary",
    "miyah",
)


@dataclass
class Config:
    dimension: int | None = None
    pvm_a: ob.Pvm | None = None
    pvm_b: ob.Pvm | None = None
    joint_povm: ob.JointPovm | None = None
    states: list = field(default_factory=list)
    epsilons: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    seed: int | None = None
    tolerance: float | None = None


def _complex_entry(v, path):
    if isinstance(v, bool):
        raise ConfigError(f"{path}: expected a number or [re, im] pair")
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in v):
        return complex(v[0], v[1])
    raise ConfigError(f"{path}: expected a number or [re, im] pair, got {v!r}")


def parse_matrix(data, path: str) -> np.ndarray:
    if not isinstance(data, list) or not data:
        raise ConfigError(f"{path}: expected a non-empty list of rows")
    rows = []
    for i, row in enumerate(data):
        if not isinstance(row, list):
            raise ConfigError(f"{path}[{i}]: expected a row list")
        rows.append([_complex_entry(v, f"{path}[{i}][{j}]") for j, v in enumerate(row)])
    n = len(rows)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ConfigError(f"{path}[{i}]: row has {len(row)} entries, expected {n}")
    return np.array(rows, dtype=complex)


def parse_vector(data, path: str) -> np.ndarray:
    if not isinstance(data, list) or not data:
        raise ConfigError(f"{path}: expected a non-empty list")
    return np.array([_complex_entry(v, f"{path}[{i}]") for i, v in enumerate(data)])


def parse_metric(desc, n: int, path: str) -> ms.FiniteMetricSpace:
    if desc is None:
        return ms.discrete(n)
    if not isinstance(desc, dict) or "type" not in desc:
        raise ConfigError(f"{path}: metric descriptor needs a 'type'")
    kind = desc["type"]
    params = desc.get("params", {}) or {}
    try:
        if kind == "discrete":
            space = ms.discrete(n)
        elif kind == "cyclic":
            space = ms.cyclic(n, params.get("scale"))
        elif kind == "hamming":
            bits = int(params.get("n", round(np.log2(n))))
            space = ms.hamming_rescaled(bits)
        elif kind == "explicit":
            if "matrix" not in params:
                raise ConfigError(f"{path}.params.matrix: missing")
            space = ms.explicit(params["matrix"], params.get("labels"))
        else:
            raise ConfigError(f"{path}.type: unknown metric type {kind!r}")
    except ConfigError:
        raise
    except (JointLocError, TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    if space.size != n:
        raise ConfigError(f"{path}: metric has {space.size} points but the observable has {n} outcomes")
    return space


def parse_pvm(data, dim: int | None, path: str) -> ob.Pvm:
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected an object")
    if "projectors" in data:
        projs = data["projectors"]
        if not isinstance(projs, list) or not projs:
            raise ConfigError(f"{path}.projectors: expected a non-empty list")
        mats = [parse_matrix(p, f"{path}.projectors[{k}]") for k, p in enumerate(projs)]
    elif "basis" in data:
        if dim is None:
            raise ConfigError(f"{path}.basis: 'dimension' is required")
        kind = data["basis"]
        if kind == "computational":
            u = np.eye(dim)
        elif kind == "fourier":
            u = ob.fourier_basis(dim)
        elif kind == "hadamard":
            bits = int(round(np.log2(dim)))
            if 2**bits != dim:
                raise ConfigError(f"{path}.basis: hadamard basis needs a power-of-two dimension")
            u = None
            mats = list(ob.hadamard_pvm(bits).elements)
        else:
            raise ConfigError(f"{path}.basis: unknown basis {kind!r}")
        if u is not None:
            mats = [np.outer(u[:, k], u[:, k].conj()) for k in range(dim)]
    else:
        raise ConfigError(f"{path}: needs 'projectors' or 'basis'")
    shapes = {m.shape for m in mats}
    if len(shapes) != 1:
        raise ConfigError(f"{path}.projectors: projectors have different sizes")
    d = mats[0].shape[0]
    if dim is not None and d != dim:
        raise ConfigError(f"{path}.projectors: size {d} does not match dimension {dim}")
    space = parse_metric(data.get("metric"), len(mats), f"{path}.metric")
    try:
        return ob.Pvm(space, np.array(mats))
    except JointLocError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def parse_joint(data, a: ob.Pvm | None, b: ob.Pvm | None, path: str) -> ob.JointPovm:
    if not isinstance(data, dict) or "family" not in data:
        raise ConfigError(f"{path}: needs a 'family'")
    fam = data["family"]
    params = data.get("params", {}) or {}
    try:
        if fam == "covariant_qubit":
            return ob.family_qubit_covariant(float(params["lambda"]), float(params["mu"]))
        if a is None or b is None:
            raise ConfigError(f"{path}: family {fam!r} needs pvm_a and pvm_b")
        if fam == "trivial":
            q = params.get("q")
            if q is None:
                q = np.full(b.space.size, 1.0 / b.space.size)
            return ob.family_trivial(a, ob.ProbabilityDistribution(b.space, q))
        if fam == "smeared":
            return ob.family_smeared(a, b)
        if fam == "random":
            return ob.random_joint_povm(a.dim, a.space, b.space, params.get("seed", 0))
        if fam == "explicit":
            ops = params.get("operators")
            if not isinstance(ops, list):
                raise ConfigError(f"{path}.params.operators: expected a nested list")
            mats = [
                [parse_matrix(op, f"{path}.params.operators[{i}][{j}]") for j, op in enumerate(row)]
                for i, row in enumerate(ops)
            ]
            return ob.JointPovm(a.space, b.space, np.array(mats))
        raise ConfigError(f"{path}.family: unknown family {fam!r}")
    except ConfigError:
        raise
    except KeyError as exc:
        raise ConfigError(f"{path}.params: missing {exc}") from exc
    except (JointLocError, TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def parse_state(data, dim: int, path: str) -> np.ndarray:
    if isinstance(data, dict) and "ket" in data:
        v = parse_vector(data["ket"], f"{path}.ket")
        rho = oc.pure_state(v)
    elif isinstance(data, dict) and "density" in data:
        rho = parse_matrix(data["density"], f"{path}.density")
    elif isinstance(data, dict) and "random" in data:
        rho = ob.random_state(dim, data["random"])
    else:
        raise ConfigError(f"{path}: expected {{'ket': ...}}, {{'density': ...}} or {{'random': seed}}")
    if rho.shape[0] != dim:
        raise ConfigError(f"{path}: state dimension {rho.shape[0]} does not match {dim}")
    try:
        return oc.check_density(rho)
    except JointLocError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def parse_config(doc: dict) -> Config:
    if not isinstance(doc, dict):
        raise ConfigError("<root>: expected a JSON object")
    cfg = Config()
    dim = doc.get("dimension")
    if dim is not None and (not isinstance(dim, int) or dim < 1):
        raise ConfigError("dimension: expected a positive integer")
    cfg.dimension = dim
    if "pvm_a" in doc:
        cfg.pvm_a = parse_pvm(doc["pvm_a"], dim, "pvm_a")
        dim = cfg.pvm_a.dim
    if "pvm_b" in doc:
        cfg.pvm_b = parse_pvm(doc["pvm_b"], dim, "pvm_b")
        dim = cfg.pvm_b.dim
    cfg.dimension = dim
    if "joint_povm" in doc:
        cfg.joint_povm = parse_joint(doc["joint_povm"], cfg.pvm_a, cfg.pvm_b, "joint_povm")
        if dim is not None and cfg.joint_povm.dim != dim:
            raise ConfigError(f"joint_povm: dimension {cfg.joint_povm.dim} does not match {dim}")
    for i, s in enumerate(doc.get("states", [])):
        if dim is None:
            raise ConfigError("states: 'dimension' or a PVM is required first")
        cfg.states.append(parse_state(s, dim, f"states[{i}]"))
    for i, pair in enumerate(doc.get("epsilons", [])):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(e, (int, float)) and 0 <= e <= 1 for e in pair)
            or pair[0] + pair[1] > 1
        ):
            raise ConfigError(f"epsilons[{i}]: expected [eps1, eps2] in [0, 1] with eps1 + eps2 <= 1")
        cfg.epsilons.append((float(pair[0]), float(pair[1])))
    for i, name in enumerate(doc.get("checks", [])):
        if name not in KNOWN_CHECKS:
            raise ConfigError(f"checks[{i}]: unknown check {name!r}")
        cfg.checks.append(name)
    if "seed" in doc:
        if not isinstance(doc["seed"], int):
            raise ConfigError("seed: expected an integer")
        cfg.seed = doc["seed"]
    if "tolerance" in doc:
        if not isinstance(doc["tolerance"], (int, float)) or doc["tolerance"] < 0:
            raise ConfigError("tolerance: expected a non-negative number")
        cfg.tolerance = float(doc["tolerance"])
    return cfg


def load_config(path) -> Config:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return parse_config(doc)


def operator_to_json(op) -> list:
    """Inverse of :func:`parse_matrix`: nested ``[re, im]`` pairs."""
    op = np.asarray(op, dtype=complex)
    return [[[float(v.real), float(v.imag)] for v in row] for row in op]
