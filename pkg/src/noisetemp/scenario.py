"""Scenario and sweep files (JSON with a top-level ``version``)."""
from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import optimize

from . import bounds
from .errors import NoiseTempError, ValidationError
from .spectra import (PhysicalConstants, constants_for, error_probability,
                      spectrum_from_dict, Harmonic, TwoLevel)
from .thermo import effective_temperature

SCHEMA_VERSION = 1
MODELS = {
    "qubit": ("e1",),
    "oscillator": ("delta_e", "n_states"),
    "power_law": ("alpha", "a", "n_states", "rate"),
    "pipeline": ("spectrum", "rate"),
}


@dataclass(frozen=True)
class Scenario:
    model: str
    params: dict
    epsilon: Optional[float] = None
    entropy: Optional[float] = None
    unit_system: str = "natural"
    environment_temperature: Optional[float] = None

    @property
    def consts(self) -> PhysicalConstants:
        return constants_for(self.unit_system)


def _number(d, key, where="scenario"):
    v = d[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ValidationError(f"{where} field '{key}' must be a finite number, got {v!r}")
    return v


def _check_version(d, where):
    if not isinstance(d, dict):
        raise ValidationError(f"{where} must be a JSON object")
    if "version" not in d:
        raise ValidationError(f"{where} is missing required field 'version'")
    if d["version"] != SCHEMA_VERSION:
        raise ValidationError(f"unsupported {where} field 'version': {d['version']!r}")


def scenario_from_dict(d: dict, *, require_version=True) -> Scenario:
    if require_version:
        _check_version(d, "scenario")
    elif not isinstance(d, dict):
        raise ValidationError("scenario must be a JSON object")
    model = d.get("model")
    if model not in MODELS:
        raise ValidationError(f"scenario field 'model' must be one of {sorted(MODELS)}, got {model!r}")
    params = {}
    for key in MODELS[model]:
        if key not in d:
            raise ValidationError(f"scenario is missing required field '{key}' for model {model!r}")
        if key == "spectrum":
            try:
                params[key] = spectrum_from_dict(d[key])
            except ValidationError as exc:
                raise ValidationError(f"scenario field 'spectrum': {exc}") from None
        else:
            params[key] = _number(d, key)
    has_eps, has_h = "epsilon" in d, "entropy" in d
    if has_eps == has_h:
        raise ValidationError("scenario needs exactly one of fields 'epsilon' or 'entropy'")
    eps = _number(d, "epsilon") if has_eps else None
    ent = _number(d, "entropy") if has_h else None
    units = d.get("unit_system", "natural")
    if units not in ("natural", "si"):
        raise ValidationError(f"scenario field 'unit_system' must be 'natural' or 'si', got {units!r}")
    t_env = None
    if d.get("environment_temperature") is not None:
        t_env = _number(d, "environment_temperature")
        if t_env < 0:
            raise ValidationError("scenario field 'environment_temperature' must be >= 0")
    return Scenario(model, params, eps, ent, units, t_env)


def _powerlaw_epsilon_for_entropy(alpha, target):
    # continuum model: H(eps) = -ln(1-eps) + (alpha+1)*eps, increasing on [0, 1)
    if target == 0:
        return 0.0
    f = lambda e: -math.log1p(-e) + (alpha + 1) * e - target
    hi = 1.0 - 1e-16
    if f(hi) < 0:
        raise ValidationError(f"scenario field 'entropy' is too large: {target!r}")
    return optimize.brentq(f, 0.0, hi, xtol=1e-300, rtol=1e-15)


def scenario_epsilon(sc: Scenario, consts: PhysicalConstants) -> float:
    if sc.epsilon is not None:
        return sc.epsilon
    p = sc.params
    if sc.model == "power_law":
        return _powerlaw_epsilon_for_entropy(p["alpha"], sc.entropy)
    spec = {"qubit": lambda: TwoLevel(p["e1"]),
            "oscillator": lambda: Harmonic(p["delta_e"]),
            "pipeline": lambda: p["spectrum"]}[sc.model]()
    T = effective_temperature(spec, sc.entropy, consts).temperature
    return error_probability(spec, T, consts)


def evaluate(sc: Scenario, consts: Optional[PhysicalConstants] = None) -> bounds.DissipationReport:
    """Run the scenario's bound computation; raises :class:`NoiseTempError`."""
    consts = consts or sc.consts
    eps = scenario_epsilon(sc, consts)
    p = sc.params
    if sc.model == "qubit":
        rep = bounds.qubit_dissipation(p["e1"], eps, consts)
    elif sc.model == "oscillator":
        rep = bounds.oscillator_dissipation(p["delta_e"], p["n_states"], eps, consts)
    elif sc.model == "power_law":
        rep = bounds.powerlaw_dissipation_asymptotic(p["alpha"], p["a"], p["n_states"],
                                                     p["rate"], eps, consts)
    else:
        rep = bounds.dissipation_pipeline(p["spectrum"], p["rate"], eps, consts)
    if sc.environment_temperature is not None:
        rep = bounds.with_environment(rep, sc.environment_temperature, consts)
    return rep


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}") from None


# --- sweeps ----------------------------------------------------------------

@dataclass(frozen=True)
class SweepSpec:
    scenario: dict       # raw scenario mapping; each point overrides ``axis``
    axis: str
    values: tuple


def grid_values(grid: dict):
    try:
        start, stop = _number(grid, "start", "grid"), _number(grid, "stop", "grid")
        count = grid["count"]
    except KeyError as exc:
        raise ValidationError(f"sweep grid is missing required field '{exc.args[0]}'") from None
    if isinstance(count, bool) or not isinstance(count, int) or count < 2:
        raise ValidationError(f"sweep grid field 'count' must be an integer >= 2, got {count!r}")
    scale = grid.get("scale", "linear")
    if scale == "linear":
        return tuple(float(v) for v in np.linspace(start, stop, count))
    if scale == "log":
        if not (start > 0 and stop > 0):
            raise ValidationError("log sweep grid needs positive 'start' and 'stop'")
        return tuple(float(v) for v in np.geomspace(start, stop, count))
    raise ValidationError(f"sweep grid field 'scale' must be 'linear' or 'log', got {scale!r}")


def sweep_from_dict(d: dict) -> SweepSpec:
    _check_version(d, "sweep")
    for key in ("scenario", "axis"):
        if key not in d:
            raise ValidationError(f"sweep is missing required field '{key}'")
    axis = d["axis"]
    if not isinstance(axis, str):
        raise ValidationError("sweep field 'axis' must be a string")
    if ("values" in d) == ("grid" in d):
        raise ValidationError("sweep needs exactly one of fields 'values' or 'grid'")
    if "values" in d:
        vals = d["values"]
        if not isinstance(vals, list) or len(vals) < 2:
            raise ValidationError("sweep field 'values' must list at least 2 points")
        values = tuple(_number({"v": v}, "v", "sweep values") for v in vals)
    else:
        values = grid_values(d["grid"])
    # validate the base scenario (with the first grid value applied) up front
    scenario_from_dict(apply_axis(d["scenario"], axis, values[0]), require_version=False)
    return SweepSpec(d["scenario"], axis, values)


def apply_axis(raw: dict, axis: str, value):
    """Copy of ``raw`` with the dotted field ``axis`` set to ``value``."""
    out = copy.deepcopy(raw)
    node = out
    parts = axis.split(".")
    for part in parts[:-1]:
        if not isinstance(node.get(part), dict):
            raise ValidationError(f"sweep field 'axis' names unknown path {axis!r}")
        node = node[part]
    node[parts[-1]] = value
    return out


def sweep_points(sw: SweepSpec, consts: Optional[PhysicalConstants] = None):
    """Yield ``(value, report or None, error message or None)`` in grid order."""
    for v in sw.values:
        try:
            sc = scenario_from_dict(apply_axis(sw.scenario, sw.axis, v), require_version=False)
            yield v, evaluate(sc, consts), None
        except NoiseTempError as exc:
            yield v, None, str(exc)
