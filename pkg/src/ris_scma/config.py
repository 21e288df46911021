"""Config documents: JSON in, validated RunConfig out, canonical JSON back.

An empty document means "all defaults".  The defaults reproduce the reference
experiment setup: 6 users on 4 OREs (3 interferers each, codebook size 2),
40 m cell with the panel 1.5 m off-axis and 2 m from the BS at 2.4 GHz,
Rician factor 1, 3-bit phases, 3 sweeps.  The fading defaults (common-phase
LoS, direct link 26 dB below free space) are the calibrated link budget that
reproduces the reported 1.88 / 2.38 dB optimization gains at N = 16 / 64;
see README for the sensitivity knobs.
"""

from __future__ import annotations

import copy
import hashlib
import json
from dataclasses import dataclass

from .campaign import (ALGORITHMS, AVERAGE_MODES, AXIS_BY_SCENARIO,
                       COMPLEXITY_AXES, SCENARIOS, Campaign)
from .channel import FadingConfig, Geometry
from .factor_graph import ScmaConfig
from .optimizer import DEFAULT_EXHAUSTIVE_BUDGET


class ConfigError(ValueError):
    """Malformed or out-of-domain configuration."""


OUTPUT_FORMATS = ("csv", "json")

DEFAULT_SWEEP_GRIDS = {
    "deploy_sweep": (2.0, 5.0, 10.0, 20.0, 30.0, 35.0, 38.0),
    "bits_sweep": (1, 2, 3, 4),
    "n_sweep": (16, 64),
    "convergence": (1, 2, 3, 4, 5, 6),
    "complexity_grid": (4, 8, 16, 32, 64, 128),
}

DEFAULTS = {
    "scenario": "n_sweep",
    "sweep": {"axis": None, "grid": None},   # None = scenario defaults
    "algorithms": ["blind", "ao", "lc_ao"],
    "num_trials": 10000,
    "master_seed": 12345,
    "num_elements": 16,
    "phase_bits": 3,
    "num_iterations": 3,
    "average_mode": "db_of_mean",
    "exhaustive_budget": DEFAULT_EXHAUSTIVE_BUDGET,
    "workers": 1,
    "system": {
        "num_users": 6,
        "num_ores": 4,
        "codebook_size": 2,
        "nonzero_per_user": 2,
        "nonzero_per_ore": 3,
    },
    "geometry": {
        "bs_user_distance": 40.0,
        "ris_perpendicular_offset": 1.5,
        "ris_horizontal_offset": 2.0,
        "carrier_frequency": 2.4e9,
    },
    "fading": {
        "rician_factor": 1.0,
        "noise_variance": 1e-8,
        "symbol_energy": 1.0,
        "los_phase": "common",
        "direct_loss_scale": 0.0025,
    },
    "output": {
        "directory": "results",
        "formats": ["csv", "json"],
    },
    "verbosity": 0,
}


@dataclass(frozen=True)
class RunConfig:
    """Validated, fully-defaulted campaign + output specification."""

    scenario: str
    sweep_axis: str
    sweep_grid: tuple
    algorithms: tuple
    num_trials: int
    master_seed: int
    num_elements: int
    phase_bits: int
    num_iterations: int
    average_mode: str
    exhaustive_budget: int
    workers: int
    system: ScmaConfig
    geometry: Geometry
    fading: FadingConfig
    output_directory: str
    output_formats: tuple
    verbosity: int


def _reject_unknown_keys(doc: dict, allowed: dict, path: str = "") -> None:
    for key in doc:
        if key not in allowed:
            where = f"{path}.{key}" if path else key
            raise ConfigError(f"unknown config key: {where!r}")
        if isinstance(allowed[key], dict) and isinstance(doc[key], dict):
            _reject_unknown_keys(doc[key], allowed[key], f"{path}.{key}" if path else key)


def parse_config(text: str) -> RunConfig:
    """Parse a JSON config document; empty input means all defaults."""
    if text.strip() == "":
        doc = {}
    else:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(
                f"config parse error at line {exc.lineno}, column {exc.colno}: "
                f"{exc.msg}") from None
    if not isinstance(doc, dict):
        raise ConfigError(f"config document must be a JSON object, got {type(doc).__name__}")
    _reject_unknown_keys(doc, DEFAULTS)
    merged = copy.deepcopy(DEFAULTS)
    for key, value in doc.items():
        if isinstance(value, dict):
            merged[key].update(value)
        else:
            merged[key] = value

    scenario = merged["scenario"]
    if scenario not in SCENARIOS:
        raise ConfigError(f"scenario must be one of {SCENARIOS}, got {scenario!r}")
    axis = merged["sweep"]["axis"]
    if axis is None:
        axis = ("num_elements" if scenario == "complexity_grid"
                else AXIS_BY_SCENARIO[scenario])
    grid = merged["sweep"]["grid"]
    if grid is None:
        grid = DEFAULT_SWEEP_GRIDS[scenario]
        if scenario == "complexity_grid" and axis == "phase_bits":
            grid = (1, 2, 3, 4, 5, 6)
    if scenario == "complexity_grid":
        if axis not in COMPLEXITY_AXES:
            raise ConfigError(f"sweep.axis for complexity_grid must be one of "
                              f"{COMPLEXITY_AXES}, got {axis!r}")
    elif axis != AXIS_BY_SCENARIO[scenario]:
        raise ConfigError(f"sweep.axis for {scenario} must be "
                          f"{AXIS_BY_SCENARIO[scenario]!r}, got {axis!r}")
    if axis == "ris_horizontal_offset":
        grid = tuple(float(x) for x in grid)
    else:
        for x in grid:
            if int(x) != x:
                raise ConfigError(f"sweep.grid for axis {axis!r} must be integers, got {x}")
        grid = tuple(int(x) for x in grid)

    if scenario == "complexity_grid" and "algorithms" not in doc:
        merged["algorithms"] = ["ao", "lc_ao"]
    algorithms = tuple(merged["algorithms"])
    for alg in algorithms:
        if alg not in ALGORITHMS:
            raise ConfigError(f"algorithms: unknown algorithm {alg!r}")
    if merged["average_mode"] not in AVERAGE_MODES:
        raise ConfigError(f"average_mode must be one of {AVERAGE_MODES}, "
                          f"got {merged['average_mode']!r}")
    formats = tuple(merged["output"]["formats"])
    for fmt in formats:
        if fmt not in OUTPUT_FORMATS:
            raise ConfigError(f"output.formats: unknown format {fmt!r}")
    if merged["phase_bits"] < 1:
        raise ConfigError(f"phase_bits must be >= 1, got {merged['phase_bits']}")

    try:
        system = ScmaConfig(**merged["system"])
        geometry = Geometry(**merged["geometry"])
        fading = FadingConfig(**merged["fading"])
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None

    cfg = RunConfig(
        scenario=scenario, sweep_axis=axis, sweep_grid=grid,
        algorithms=algorithms, num_trials=int(merged["num_trials"]),
        master_seed=int(merged["master_seed"]),
        num_elements=int(merged["num_elements"]),
        phase_bits=int(merged["phase_bits"]),
        num_iterations=int(merged["num_iterations"]),
        average_mode=merged["average_mode"],
        exhaustive_budget=int(merged["exhaustive_budget"]),
        workers=int(merged["workers"]), system=system, geometry=geometry,
        fading=fading, output_directory=merged["output"]["directory"],
        output_formats=formats, verbosity=int(merged["verbosity"]))
    campaign_from_config(cfg)   # surfaces cross-field domain violations now
    return cfg


def serialize_config(cfg: RunConfig) -> str:
    """Canonical JSON with every field explicit; parse(serialize(x)) == x."""
    doc = {
        "scenario": cfg.scenario,
        "sweep": {"axis": cfg.sweep_axis, "grid": list(cfg.sweep_grid)},
        "algorithms": list(cfg.algorithms),
        "num_trials": cfg.num_trials,
        "master_seed": cfg.master_seed,
        "num_elements": cfg.num_elements,
        "phase_bits": cfg.phase_bits,
        "num_iterations": cfg.num_iterations,
        "average_mode": cfg.average_mode,
        "exhaustive_budget": cfg.exhaustive_budget,
        "workers": cfg.workers,
        "system": {
            "num_users": cfg.system.num_users,
            "num_ores": cfg.system.num_ores,
            "codebook_size": cfg.system.codebook_size,
            "nonzero_per_user": cfg.system.nonzero_per_user,
            "nonzero_per_ore": cfg.system.nonzero_per_ore,
        },
        "geometry": {
            "bs_user_distance": cfg.geometry.bs_user_distance,
            "ris_perpendicular_offset": cfg.geometry.ris_perpendicular_offset,
            "ris_horizontal_offset": cfg.geometry.ris_horizontal_offset,
            "carrier_frequency": cfg.geometry.carrier_frequency,
        },
        "fading": {
            "rician_factor": cfg.fading.rician_factor,
            "noise_variance": cfg.fading.noise_variance,
            "symbol_energy": cfg.fading.symbol_energy,
            "los_phase": cfg.fading.los_phase,
            "direct_loss_scale": cfg.fading.direct_loss_scale,
        },
        "output": {
            "directory": cfg.output_directory,
            "formats": list(cfg.output_formats),
        },
        "verbosity": cfg.verbosity,
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def config_hash(cfg: RunConfig) -> str:
    return hashlib.sha256(serialize_config(cfg).encode("utf-8")).hexdigest()


def campaign_from_config(cfg: RunConfig) -> Campaign:
    try:
        return Campaign(
            scenario=cfg.scenario, scma=cfg.system, geometry=cfg.geometry,
            fading=cfg.fading, num_elements=cfg.num_elements,
            phase_bits=cfg.phase_bits, num_iterations=cfg.num_iterations,
            sweep_axis=cfg.sweep_axis, sweep_grid=cfg.sweep_grid,
            num_trials=cfg.num_trials, master_seed=cfg.master_seed,
            algorithms=cfg.algorithms, average_mode=cfg.average_mode,
            exhaustive_budget=cfg.exhaustive_budget, workers=cfg.workers)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
