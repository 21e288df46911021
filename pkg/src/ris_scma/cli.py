"""Command-line front end.

Verbs: ``run <config>`` (full campaign from a JSON config), ``sweep
<figure_id>`` (preset desk-scale experiments), ``verify-complexity <grid>``
(measured vs closed-form operation counts), ``selftest`` (oracle-equivalence
suite at small N).  Exit code 0 on success; on failure one machine-readable
JSON error line goes to stderr and the exit code is nonzero.

The environment variable ``RIS_SCMA_OUTPUT_DIR`` overrides the output
directory; ``--seed`` overrides the master seed.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from pathlib import Path

import numpy as np

from .campaign import run_campaign, trial_seed
from .channel import FadingConfig, Geometry, draw_link_channels
from .config import ConfigError, campaign_from_config, config_hash, parse_config
from .opcount import measured_run, predicted_ao, predicted_lc_ao
from .optimizer import (PhaseAlphabet, ao_optimize, blind_phases,
                        exhaustive_optimize, lc_ao_optimize, received_snr,
                        snr_decomposition)
from .writers import FIGURE_SCENARIOS, emit_plot_data, write_results

OUTPUT_DIR_ENV = "RIS_SCMA_OUTPUT_DIR"

FIGURE_PRESETS = {
    "fig2": {"scenario": "deploy_sweep", "num_elements": 32, "num_trials": 500},
    "fig4": {"scenario": "bits_sweep", "num_elements": 16, "num_trials": 2000},
    "fig5a": {"scenario": "convergence", "num_elements": 16, "num_trials": 2000,
              "algorithms": ["blind", "ao", "lc_ao"]},
    "fig5b": {"scenario": "n_sweep", "num_trials": 2000,
              "sweep": {"grid": [8, 16, 32, 64]},
              "algorithms": ["blind", "ao", "lc_ao", "no_ris"]},
    "fig6a": {"scenario": "complexity_grid",
              "sweep": {"axis": "num_elements", "grid": [4, 8, 16, 32, 64, 128]}},
    "fig6b": {"scenario": "complexity_grid", "num_elements": 32,
              "sweep": {"axis": "phase_bits", "grid": [1, 2, 3, 4, 5, 6]}},
}

DEFAULT_COMPLEXITY_GRID = {
    "num_ores": [1, 4],
    "num_elements": [1, 2, 8, 16],
    "phase_bits": [1, 2, 3],
    "num_interferers": [1, 3],
    "iterations": [1, 3],
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ConfigError as exc:
        _error_line("config", str(exc))
        return 2
    except (ValueError, OSError) as exc:
        _error_line(type(exc).__name__, str(exc))
        return 1


def _error_line(kind: str, message: str) -> None:
    print(json.dumps({"error": {"type": kind, "message": message}}),
          file=sys.stderr)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ris-scma",
        description="Monte Carlo experiments for discrete RIS phase optimization "
                    "over an uplink SCMA link.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p_run = sub.add_parser("run", help="run a campaign from a JSON config file")
    p_run.add_argument("config", help="path to the config document")
    _common_flags(p_run)
    p_run.set_defaults(handler=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a preset figure experiment")
    p_sweep.add_argument("figure_id", choices=sorted(FIGURE_SCENARIOS))
    p_sweep.add_argument("--trials", type=int, default=None,
                         help="override the preset trial count")
    _common_flags(p_sweep)
    p_sweep.set_defaults(handler=_cmd_sweep)

    p_ver = sub.add_parser("verify-complexity",
                           help="measured vs closed-form operation counts")
    p_ver.add_argument("grid", help="'default' or a JSON file with axis lists")
    p_ver.set_defaults(handler=_cmd_verify)

    p_self = sub.add_parser("selftest",
                            help="oracle-equivalence checks at small N")
    p_self.set_defaults(handler=_cmd_selftest)
    return parser


def _common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None, help="override master_seed")
    p.add_argument("--output-dir", default=None,
                   help=f"output directory (also settable via {OUTPUT_DIR_ENV})")
    p.add_argument("--workers", type=int, default=None,
                   help="override the worker count")


def _resolve_output_dir(cfg_dir: str, args) -> str:
    if args.output_dir is not None:
        return args.output_dir
    return os.environ.get(OUTPUT_DIR_ENV, cfg_dir)


def _apply_overrides(doc: dict, args) -> dict:
    if args.seed is not None:
        doc["master_seed"] = args.seed
    if args.workers is not None:
        doc["workers"] = args.workers
    return doc


def _run_config_doc(doc: dict, args, figure_id=None) -> int:
    cfg = parse_config(json.dumps(_apply_overrides(doc, args)))
    campaign = campaign_from_config(cfg)
    result = run_campaign(campaign, config_hash=config_hash(cfg))
    out_dir = _resolve_output_dir(cfg.output_directory, args)
    paths = write_results(result, out_dir, cfg.output_formats)
    if figure_id is not None:
        paths += emit_plot_data(result, figure_id, out_dir)
    for path in paths:
        print(path)
    return 0


def _cmd_run(args) -> int:
    path = Path(args.config)
    if not path.exists():
        raise OSError(f"config file not found: {path}")
    text = path.read_text()
    doc = {} if text.strip() == "" else json.loads(text)
    if not isinstance(doc, dict):
        raise ConfigError("config document must be a JSON object")
    return _run_config_doc(doc, args)


def _cmd_sweep(args) -> int:
    doc = json.loads(json.dumps(FIGURE_PRESETS[args.figure_id]))
    if args.trials is not None:
        doc["num_trials"] = args.trials
    return _run_config_doc(doc, args, figure_id=args.figure_id)


def _cmd_verify(args) -> int:
    if args.grid == "default":
        grid = DEFAULT_COMPLEXITY_GRID
    else:
        grid = json.loads(Path(args.grid).read_text())
        unknown = set(grid) - set(DEFAULT_COMPLEXITY_GRID)
        if unknown:
            raise ValueError(f"unknown grid axes: {sorted(unknown)}")
        grid = {**DEFAULT_COMPLEXITY_GRID, **grid}
    geom = Geometry(40.0, 1.5, 2.0, 2.4e9)
    fading = FadingConfig()
    mismatches = 0
    axes = [grid[k] for k in ("num_ores", "num_elements", "phase_bits",
                              "num_interferers", "iterations")]
    for r, n, b, df, t in itertools.product(*axes):
        rng = np.random.default_rng(trial_seed(0, 0, r * 1000 + n))
        ch = draw_link_channels(rng, r, df, geom, fading, n)
        alphabet = PhaseAlphabet.from_bits(b)
        for kind, predict in (("ao", predicted_ao), ("lc_ao", predicted_lc_ao)):
            measured = measured_run(kind, ch, alphabet, t)
            expected = predict(r, n, b, df, t)
            ok = measured == expected
            mismatches += 0 if ok else 1
            tag = "ok" if ok else "MISMATCH"
            print(f"{tag} {kind:5s} R={r} N={n} b={b} d_f={df} T={t} "
                  f"adds={measured.real_additions}/{expected.real_additions} "
                  f"mults={measured.real_multiplications}/{expected.real_multiplications}")
    print(f"verify-complexity: {mismatches} mismatches")
    return 0 if mismatches == 0 else 1


def _cmd_selftest(args) -> int:
    geom = Geometry(40.0, 1.5, 2.0, 2.4e9)
    fading = FadingConfig()
    failures = 0

    rng = np.random.default_rng(20240601)
    mismatch = 0
    for _ in range(60):
        n = int(rng.integers(1, 9))
        b = int(rng.integers(1, 4))
        df = int(rng.integers(1, 4))
        r = int(rng.integers(1, 5))
        t = int(rng.integers(1, 4))
        ch = draw_link_channels(rng, r, df, geom, fading, n)
        alphabet = PhaseAlphabet.from_bits(b)
        if not np.array_equal(ao_optimize(ch, alphabet, t).indices,
                              lc_ao_optimize(ch, alphabet, t).indices):
            mismatch += 1
    failures += _report("full-norm and cached selections identical (60 draws)",
                        mismatch == 0)

    bad = 0
    alphabet = PhaseAlphabet.from_bits(2)
    for _ in range(40):
        ch = draw_link_channels(rng, 2, 3, geom, fading, 3)
        best = received_snr(ch, exhaustive_optimize(ch, alphabet), fading).per_ore_linear
        mid = received_snr(ch, ao_optimize(ch, alphabet, 3), fading).per_ore_linear
        low = received_snr(ch, blind_phases(alphabet, 2, 3), fading).per_ore_linear
        tol = 1e-12 * best
        if not ((best >= mid - tol).all() and (mid >= low - tol).all()):
            bad += 1
    failures += _report("oracle >= ascent >= blind on every ORE (40 draws)", bad == 0)

    bad = 0
    for _ in range(50):
        ch = draw_link_channels(rng, 4, 3, geom, fading, 4)
        phases = ao_optimize(ch, PhaseAlphabet.from_bits(3), 1)
        quad, cross, direct = snr_decomposition(ch, phases)
        total = (quad + cross + direct) * fading.symbol_energy / fading.noise_variance
        ref = received_snr(ch, phases, fading).per_ore_linear
        if (np.abs(total - ref) > 1e-10 * np.abs(ref)).any():
            bad += 1
    failures += _report("objective decomposition identity (50 draws)", bad == 0)

    ok = True
    for r, n, b, df, t in ((1, 2, 2, 1, 1), (2, 4, 2, 3, 2)):
        ch = draw_link_channels(rng, r, df, geom, fading, n)
        alpha = PhaseAlphabet.from_bits(b)
        ok = ok and measured_run("ao", ch, alpha, t) == predicted_ao(r, n, b, df, t)
        ok = ok and measured_run("lc_ao", ch, alpha, t) == predicted_lc_ao(r, n, b, df, t)
    failures += _report("measured operation counts match closed forms", ok)

    print(f"selftest: {'PASS' if failures == 0 else 'FAIL'}")
    return 0 if failures == 0 else 1


def _report(name: str, ok: bool) -> int:
    print(f"[{'ok' if ok else 'FAIL'}] {name}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
