"""Seeded Monte Carlo campaigns over the phase-shift optimizers.

Every trial draws its own channel realization from a child seed derived as
``first 8 bytes (big endian) of SHA-256("{master_seed}:{grid_index}:{trial_index}")``,
so results are bit-identical for any worker count and reproducible in any
language.  All requested algorithms run on the same realization (paired
comparison), and the reduction is ordered by (grid index, trial index),
never by completion order.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .channel import (ChannelRealization, FadingConfig, Geometry,
                      draw_link_channels, stack_realizations)
from .factor_graph import ScmaConfig, build_factor_graph
from .opcount import (OpCount, predicted_ao, predicted_exhaustive,
                      predicted_lc_ao)
from .optimizer import (DEFAULT_EXHAUSTIVE_BUDGET, PhaseAlphabet,
                        PhaseAssignment, ao_optimize, blind_phases,
                        composite_channel, db_from_linear, exhaustive_optimize,
                        lc_ao_optimize, no_ris_snr, received_snr)

SCENARIOS = ("deploy_sweep", "bits_sweep", "n_sweep", "convergence", "complexity_grid")
ALGORITHMS = ("blind", "ao", "lc_ao", "exhaustive", "no_ris")
AVERAGE_MODES = ("db_of_mean", "mean_of_db")

AXIS_BY_SCENARIO = {
    "deploy_sweep": "ris_horizontal_offset",
    "bits_sweep": "phase_bits",
    "n_sweep": "num_elements",
    "convergence": "num_iterations",
}
COMPLEXITY_AXES = ("num_elements", "phase_bits")

_TRIAL_BATCH = 256


@dataclass(frozen=True)
class Campaign:
    """One experiment: a scenario, its sweep grid, and the shared parameters."""

    scenario: str
    scma: ScmaConfig
    geometry: Geometry
    fading: FadingConfig
    num_elements: int
    phase_bits: int
    num_iterations: int
    sweep_axis: str
    sweep_grid: tuple
    num_trials: int
    master_seed: int
    algorithms: tuple
    average_mode: str = "db_of_mean"
    exhaustive_budget: int = DEFAULT_EXHAUSTIVE_BUDGET
    workers: int = 1

    def __post_init__(self) -> None:
        if self.scenario not in SCENARIOS:
            raise ValueError(f"scenario must be one of {SCENARIOS}, got {self.scenario!r}")
        if len(self.sweep_grid) == 0:
            raise ValueError("sweep_grid must be non-empty")
        if any(b >= a for a, b in zip(self.sweep_grid[1:], self.sweep_grid)):
            raise ValueError(f"sweep_grid must be strictly increasing, got {self.sweep_grid}")
        if self.scenario == "complexity_grid":
            if self.sweep_axis not in COMPLEXITY_AXES:
                raise ValueError(
                    f"complexity_grid sweeps one of {COMPLEXITY_AXES}, got {self.sweep_axis!r}")
        elif self.sweep_axis != AXIS_BY_SCENARIO[self.scenario]:
            raise ValueError(
                f"scenario {self.scenario!r} sweeps "
                f"{AXIS_BY_SCENARIO[self.scenario]!r}, got {self.sweep_axis!r}")
        if not self.algorithms:
            raise ValueError("algorithms must be non-empty")
        for alg in self.algorithms:
            if alg not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {alg!r}; choose from {ALGORITHMS}")
        if self.scenario == "complexity_grid":
            bad = [a for a in self.algorithms if a not in ("ao", "lc_ao")]
            if bad:
                raise ValueError(
                    f"complexity_grid only counts ao/lc_ao, got {bad}")
        if self.num_trials < 1 and self.scenario != "complexity_grid":
            raise ValueError(f"num_trials must be >= 1, got {self.num_trials}")
        if self.average_mode not in AVERAGE_MODES:
            raise ValueError(
                f"average_mode must be one of {AVERAGE_MODES}, got {self.average_mode!r}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        for name, value in (("num_elements", self.num_elements),
                            ("phase_bits", self.phase_bits),
                            ("num_iterations", self.num_iterations)):
            if value < 1:
                raise ValueError(f"{name} must be >= 1, got {value}")
        if "exhaustive" in self.algorithms:
            for value in self.sweep_grid:
                n, b = self.num_elements, self.phase_bits
                if self.sweep_axis == "num_elements":
                    n = int(value)
                elif self.sweep_axis == "phase_bits":
                    b = int(value)
                evals = (2**b) ** n
                if evals > self.exhaustive_budget:
                    raise ValueError(
                        f"exhaustive budget exceeded at grid point {value}: "
                        f"2^(b*N) = {evals} > {self.exhaustive_budget}")

    def point_params(self, axis_value) -> tuple:
        """(geometry, num_elements, phase_bits, num_iterations) at a grid point."""
        geom, n, b, t = (self.geometry, self.num_elements,
                         self.phase_bits, self.num_iterations)
        if self.sweep_axis == "ris_horizontal_offset":
            geom = replace(geom, ris_horizontal_offset=float(axis_value))
        elif self.sweep_axis == "num_elements":
            n = int(axis_value)
        elif self.sweep_axis == "phase_bits":
            b = int(axis_value)
        elif self.sweep_axis == "num_iterations":
            t = int(axis_value)
        return geom, n, b, t


@dataclass(frozen=True)
class ResultRow:
    """One (grid point, algorithm) aggregate."""

    axis_value: float
    algorithm: str
    trials: int
    mean_linear: Optional[float]
    mean_snr_db: Optional[float]
    stderr_db: Optional[float]
    real_adds: int
    real_mults: int


@dataclass(frozen=True)
class CampaignResult:
    scenario: str
    sweep_axis: str
    sweep_grid: tuple
    algorithms: tuple
    num_trials: int
    master_seed: int
    average_mode: str
    config_hash: str
    rows: tuple


def trial_seed(master_seed: int, grid_index: int, trial_index: int) -> int:
    """Stable, language-agnostic child seed for one (grid point, trial)."""
    msg = f"{master_seed}:{grid_index}:{trial_index}".encode("ascii")
    return int.from_bytes(hashlib.sha256(msg).digest()[:8], "big")


def _predicted_ops(algorithm: str, num_ores: int, n: int, b: int, df: int,
                   t: int) -> OpCount:
    """Per-run arithmetic counts reported alongside the SNR aggregates."""
    if algorithm == "ao":
        return predicted_ao(num_ores, n, b, df, t)
    if algorithm == "lc_ao":
        return predicted_lc_ao(num_ores, n, b, df, t)
    if algorithm == "exhaustive":
        return predicted_exhaustive(num_ores, n, b, df)
    return OpCount()


def _trial_block(campaign: Campaign, grid_index: int, trial_lo: int,
                 trial_hi: int) -> dict:
    """Per-trial ORE-mean linear SNRs for trials [trial_lo, trial_hi)."""
    axis_value = campaign.sweep_grid[grid_index]
    geom, n, b, t = campaign.point_params(axis_value)
    alphabet = PhaseAlphabet.from_bits(b)
    graph = build_factor_graph(campaign.scma)
    fading = campaign.fading
    out = {alg: [] for alg in campaign.algorithms}
    trace_iters = None
    if campaign.scenario == "convergence":
        # One trajectory per trial covers every grid point; seeds use grid 0.
        trace_iters = int(max(campaign.sweep_grid))
    for start in range(trial_lo, trial_hi, _TRIAL_BATCH):
        stop = min(start + _TRIAL_BATCH, trial_hi)
        seed_grid = 0 if campaign.scenario == "convergence" else grid_index
        chs = [draw_link_channels(
                   np.random.default_rng(trial_seed(campaign.master_seed, seed_grid, i)),
                   graph.num_ores, graph.users_per_ore, geom, fading, n)
               for i in range(start, stop)]
        ch = stack_realizations(chs)
        num = stop - start
        scale = fading.symbol_energy / fading.noise_variance
        for alg in campaign.algorithms:
            if alg == "blind":
                lin = received_snr(
                    ch, blind_phases(alphabet, ch.num_ores, ch.num_elements),
                    fading).per_ore_linear
            elif alg == "no_ris":
                lin = no_ris_snr(ch, fading).per_ore_linear
            elif alg == "ao" or alg == "lc_ao":
                optimize = ao_optimize if alg == "ao" else lc_ao_optimize
                if trace_iters is not None:
                    sweeps: list = []
                    optimize(ch, alphabet, trace_iters, sweep_norms=sweeps)
                    lin = scale * sweeps[t - 1]
                else:
                    phases = optimize(ch, alphabet, t)
                    lin = received_snr(ch, phases, fading).per_ore_linear
            elif alg == "exhaustive":
                phases = exhaustive_optimize(ch, alphabet, campaign.exhaustive_budget)
                lin = received_snr(ch, phases, fading).per_ore_linear
            out[alg].append(lin.reshape(num, graph.num_ores).mean(axis=1))
    return {alg: np.concatenate(vals) for alg, vals in out.items()}


def _aggregate(campaign: Campaign, axis_value, algorithm: str,
               per_trial: np.ndarray, num_ores: int, n: int, b: int,
               t: int, df: int) -> ResultRow:
    ops = _predicted_ops(algorithm, num_ores, n, b, df, t)
    trials = per_trial.size
    mean_lin = float(per_trial.mean())
    if campaign.average_mode == "db_of_mean":
        mean_db = db_from_linear(mean_lin)
        if trials > 1 and mean_lin > 0:
            stderr = float(per_trial.std(ddof=1) / np.sqrt(trials))
            stderr_db = float(10.0 / np.log(10.0) * stderr / mean_lin)
        else:
            stderr_db = 0.0
    else:
        with np.errstate(divide="ignore"):
            per_db = 10.0 * np.log10(per_trial)
        mean_db = float(per_db.mean())
        stderr_db = float(per_db.std(ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0
    return ResultRow(axis_value=float(axis_value), algorithm=algorithm,
                     trials=trials, mean_linear=mean_lin, mean_snr_db=mean_db,
                     stderr_db=stderr_db, real_adds=ops.real_additions,
                     real_mults=ops.real_multiplications)


def run_campaign(campaign: Campaign, config_hash: str = "") -> CampaignResult:
    """Run every (grid point, trial, algorithm) cell and aggregate.

    Deterministic for a fixed master seed: trials are indexed, not streamed,
    so the worker count never changes the numbers.
    """
    rows = []
    if campaign.scenario == "complexity_grid":
        df = campaign.scma.nonzero_per_ore
        num_ores = campaign.scma.num_ores
        for axis_value in campaign.sweep_grid:
            _, n, b, t = campaign.point_params(axis_value)
            for alg in campaign.algorithms:
                ops = _predicted_ops(alg, num_ores, n, b, df, t)
                rows.append(ResultRow(
                    axis_value=float(axis_value), algorithm=alg, trials=0,
                    mean_linear=None, mean_snr_db=None, stderr_db=None,
                    real_adds=ops.real_additions,
                    real_mults=ops.real_multiplications))
        return CampaignResult(
            scenario=campaign.scenario, sweep_axis=campaign.sweep_axis,
            sweep_grid=campaign.sweep_grid, algorithms=campaign.algorithms,
            num_trials=0, master_seed=campaign.master_seed,
            average_mode=campaign.average_mode, config_hash=config_hash,
            rows=tuple(rows))

    df = campaign.scma.nonzero_per_ore
    num_ores = campaign.scma.num_ores
    blocks = _plan_blocks(campaign)
    if campaign.workers > 1:
        with ProcessPoolExecutor(max_workers=campaign.workers) as pool:
            partials = list(pool.map(_block_entry,
                                     [(campaign, gi, lo, hi) for gi, lo, hi in blocks]))
    else:
        partials = [_trial_block(campaign, gi, lo, hi) for gi, lo, hi in blocks]

    for gi, axis_value in enumerate(campaign.sweep_grid):
        per_alg = {alg: [] for alg in campaign.algorithms}
        for (bgi, lo, hi), part in zip(blocks, partials):
            if bgi == gi:
                for alg in campaign.algorithms:
                    per_alg[alg].append(part[alg])
        _, n, b, t = campaign.point_params(axis_value)
        for alg in campaign.algorithms:
            per_trial = np.concatenate(per_alg[alg])
            rows.append(_aggregate(campaign, axis_value, alg, per_trial,
                                   num_ores, n, b, t, df))
    return CampaignResult(
        scenario=campaign.scenario, sweep_axis=campaign.sweep_axis,
        sweep_grid=campaign.sweep_grid, algorithms=campaign.algorithms,
        num_trials=campaign.num_trials, master_seed=campaign.master_seed,
        average_mode=campaign.average_mode, config_hash=config_hash,
        rows=tuple(rows))


def _plan_blocks(campaign: Campaign) -> list:
    """(grid_index, lo, hi) work items aligned to the fixed batch size, so the
    stacked groups (and thus every float) are identical for any worker count."""
    blocks = []
    for gi in range(len(campaign.sweep_grid)):
        for lo in range(0, campaign.num_trials, _TRIAL_BATCH):
            blocks.append((gi, lo, min(lo + _TRIAL_BATCH, campaign.num_trials)))
    return blocks


def _block_entry(args) -> dict:
    return _trial_block(*args)


@dataclass(frozen=True)
class DeploymentProfile:
    """Shape summary of a deployment sweep curve."""

    argmax_offsets: tuple
    interior_min_offset: float
    is_endpoint_high: bool


def deploy_sweep_profile(result: CampaignResult,
                         algorithm: str = "ao") -> DeploymentProfile:
    """Locate the best offsets and check the endpoint-high, middle-low shape."""
    if result.scenario != "deploy_sweep":
        raise ValueError(f"expected a deploy_sweep result, got {result.scenario!r}")
    curve = [(row.axis_value, row.mean_snr_db) for row in result.rows
             if row.algorithm == algorithm]
    if len(curve) < 3:
        raise ValueError(f"degenerate grid: need >= 3 points, got {len(curve)}")
    xs = [p[0] for p in curve]
    ys = [p[1] for p in curve]
    top = max(ys)
    argmax = tuple(x for x, y in curve if y == top)
    k = int(np.argmin(ys))
    interior = 0 < k < len(ys) - 1
    endpoint_high = min(ys[0], ys[-1]) > ys[k]
    return DeploymentProfile(argmax_offsets=argmax,
                             interior_min_offset=xs[k],
                             is_endpoint_high=interior and endpoint_high)


def synthesize_received_signal(ch: ChannelRealization, phases: PhaseAssignment,
                               codewords: np.ndarray, fading: FadingConfig,
                               rng: np.random.Generator) -> np.ndarray:
    """One noisy received scalar per ORE: composite row times the codeword
    column plus CN(0, sigma^2) noise.  End-to-end sanity hook only."""
    codewords = np.asarray(codewords)
    if codewords.shape != (ch.num_ores, ch.num_interferers):
        raise ValueError(
            f"codewords must be (R, d_f) = ({ch.num_ores}, {ch.num_interferers}), "
            f"got {codewords.shape}")
    w = composite_channel(ch, phases)
    noise = (rng.standard_normal(ch.num_ores) + 1j * rng.standard_normal(ch.num_ores)) \
        * np.sqrt(fading.noise_variance / 2.0)
    return (w * codewords).sum(axis=1) + noise
