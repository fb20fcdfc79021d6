"""Experiment configuration: a JSON document mapped onto game objects.

One experiment per document.  Parse errors name the offending field so a
malformed config can be fixed without reading source code.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .game import RiskProfile
from .resources import (Affine, AffineRbar, Constant, DirectRbar, FailureProb,
                        Polynomial, PowerLaw, PowerShift, RateOfReturn)

EXPERIMENT_KINDS = ("solve", "fuc_sweep", "bounds", "k_spread", "alpha_table",
                    "alpha_sweep", "poa_sweep")


class ConfigError(ValueError):
    """A configuration document failed to parse or validate."""


def _get(obj: dict, key: str, path: str, required: bool = True, default=None):
    if key not in obj:
        if required:
            raise ConfigError(f"{path}.{key}: missing required field")
        return default
    return obj[key]


def _number(obj: dict, key: str, path: str, required: bool = True, default=None) -> float:
    v = _get(obj, key, path, required, default)
    if v is None:
        return default
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{path}.{key}: expected a number, got {v!r}")
    return float(v)


def _integer(obj: dict, key: str, path: str, required: bool = True, default=None) -> int:
    v = _get(obj, key, path, required, default)
    if v is None:
        return default
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"{path}.{key}: expected an integer, got {v!r}")
    return v


def _table(obj, path: str) -> dict:
    if not isinstance(obj, dict):
        raise ConfigError(f"{path}: expected an object, got {obj!r}")
    return obj


def parse_rate(obj, path: str = "resource.rate") -> RateOfReturn:
    obj = _table(obj, path)
    family = _get(obj, "family", path)
    if family == "affine":
        return Affine(_number(obj, "c0", path), _number(obj, "c1", path))
    if family == "constant":
        return Constant(_number(obj, "b", path))
    if family == "direct_affine":
        return DirectRbar(AffineRbar(_number(obj, "a", path), _number(obj, "b", path)))
    if family == "direct_power_shift":
        return DirectRbar(PowerShift(_number(obj, "c", path), _number(obj, "e", path)))
    raise ConfigError(
        f"{path}.family: unknown family {family!r} (expected affine, constant, "
        f"direct_affine or direct_power_shift)")


def parse_failure(obj, path: str = "resource.failure") -> FailureProb:
    obj = _table(obj, path)
    family = _get(obj, "family", path)
    if family == "power":
        return PowerLaw(_number(obj, "gamma", path))
    if family == "polynomial":
        coeffs = _get(obj, "coeffs", path)
        if not isinstance(coeffs, list) or not coeffs or \
                any(isinstance(c, bool) or not isinstance(c, (int, float)) for c in coeffs):
            raise ConfigError(f"{path}.coeffs: expected a nonempty list of numbers")
        return Polynomial(coeffs)
    raise ConfigError(f"{path}.family: unknown family {family!r} "
                      f"(expected power or polynomial)")


def parse_players(obj, path: str = "players") -> tuple[RiskProfile, ...]:
    obj = _table(obj, path)
    if "profiles" in obj:
        raw = obj["profiles"]
        if not isinstance(raw, list) or not raw:
            raise ConfigError(f"{path}.profiles: expected a nonempty list")
        out = []
        for i, entry in enumerate(raw):
            sub = _table(entry, f"{path}.profiles[{i}]")
            try:
                out.append(RiskProfile(_number(sub, "alpha", f"{path}.profiles[{i}]"),
                                       _number(sub, "k", f"{path}.profiles[{i}]")))
            except ValueError as exc:
                raise ConfigError(f"{path}.profiles[{i}]: {exc}") from exc
        return tuple(out)
    n = _integer(obj, "n", path)
    if n < 1:
        raise ConfigError(f"{path}.n: must be >= 1, got {n}")
    try:
        profile = RiskProfile(_number(obj, "alpha", path), _number(obj, "k", path))
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return (profile,) * n


@dataclass(frozen=True)
class SolverOptions:
    sweep_tol: float = 1e-10
    max_sweeps: int = 10 ** 5
    seed: int = 0


@dataclass(frozen=True)
class ExperimentConfig:
    rate: RateOfReturn
    failure: FailureProb
    players: tuple[RiskProfile, ...]
    kind: str
    params: dict = field(default_factory=dict)
    solver: SolverOptions = SolverOptions()
    output: str = "experiment.csv"


def _parse_range(obj: dict, key: str, path: str) -> tuple[int, int]:
    raw = _get(obj, key, path)
    if not isinstance(raw, list) or len(raw) != 2 or \
            any(isinstance(v, bool) or not isinstance(v, int) for v in raw):
        raise ConfigError(f"{path}.{key}: expected [lo, hi] with integer bounds")
    lo, hi = raw
    if lo > hi:
        raise ConfigError(f"{path}.{key}: lo must not exceed hi, got {raw}")
    return lo, hi


def parse_experiment(obj, path: str = "experiment") -> tuple[str, dict]:
    obj = _table(obj, path)
    kind = _get(obj, "kind", path)
    if kind not in EXPERIMENT_KINDS:
        raise ConfigError(f"{path}.kind: unknown kind {kind!r} "
                          f"(expected one of {', '.join(EXPERIMENT_KINDS)})")
    params: dict = {}
    if kind == "fuc_sweep":
        if "gamma_range" in obj:
            params["gamma_range"] = _parse_range(obj, "gamma_range", path)
        elif "n_range" in obj:
            params["n_range"] = _parse_range(obj, "n_range", path)
        else:
            raise ConfigError(f"{path}: fuc_sweep needs gamma_range or n_range")
    elif kind == "k_spread":
        params["k_mean"] = _number(obj, "k_mean", path)
        params["n_samples"] = _integer(obj, "n_samples", path, required=False, default=500)
    elif kind == "alpha_table":
        rows = _get(obj, "alpha_rows", path)
        if not isinstance(rows, list) or not rows or \
                not all(isinstance(r, list) for r in rows):
            raise ConfigError(f"{path}.alpha_rows: expected a list of alpha lists")
        params["alpha_rows"] = [[float(a) for a in row] for row in rows]
    elif kind == "alpha_sweep":
        grid = _get(obj, "alpha_grid", path, required=False)
        if grid is not None:
            if not isinstance(grid, list) or not grid:
                raise ConfigError(f"{path}.alpha_grid: expected a nonempty list")
            params["alpha_grid"] = [float(a) for a in grid]
    elif kind == "poa_sweep":
        params["n_range"] = _parse_range(obj, "n_range", path)
    return kind, params


def parse_solver(obj, path: str = "solver") -> SolverOptions:
    if obj is None:
        return SolverOptions()
    obj = _table(obj, path)
    return SolverOptions(
        sweep_tol=_number(obj, "sweep_tol", path, required=False, default=1e-10),
        max_sweeps=_integer(obj, "max_sweeps", path, required=False, default=10 ** 5),
        seed=_integer(obj, "seed", path, required=False, default=0),
    )


def parse_config(document: dict) -> ExperimentConfig:
    document = _table(document, "config")
    resource = _table(_get(document, "resource", "config"), "resource")
    rate = parse_rate(_get(resource, "rate", "resource"))
    failure = parse_failure(_get(resource, "failure", "resource"))
    players = parse_players(_get(document, "players", "config"))
    kind, params = parse_experiment(_get(document, "experiment", "config"))
    solver = parse_solver(document.get("solver"))
    output = document.get("output", "experiment.csv")
    if not isinstance(output, str) or not output:
        raise ConfigError("config.output: expected a nonempty path string")
    return ExperimentConfig(rate, failure, players, kind, params, solver, output)


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            document = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return parse_config(document)
