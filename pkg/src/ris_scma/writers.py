"""Result serialization: one CSV + one JSON per campaign, plus per-figure
plot series.  Writers only format fields; the single dB conversion already
happened during aggregation."""

from __future__ import annotations

import json
from pathlib import Path

from .campaign import CampaignResult, ResultRow

FIGURE_SCENARIOS = {
    "fig2": "deploy_sweep",
    "fig4": "bits_sweep",
    "fig5a": "convergence",
    "fig5b": "n_sweep",
    "fig6a": "complexity_grid",
    "fig6b": "complexity_grid",
}
FIGURE_AXES = {"fig6a": "num_elements", "fig6b": "phase_bits"}

CSV_HEADER = "axis_value,algorithm,mean_snr_db,stderr_db,real_adds,real_mults,trials"


def _fmt(value) -> str:
    if value is None:
        return ""
    return repr(value) if isinstance(value, float) else str(value)


def result_to_csv_text(result: CampaignResult) -> str:
    lines = [CSV_HEADER]
    for row in result.rows:
        lines.append(",".join([
            _fmt(row.axis_value), row.algorithm, _fmt(row.mean_snr_db),
            _fmt(row.stderr_db), str(row.real_adds), str(row.real_mults),
            str(row.trials)]))
    return "\n".join(lines) + "\n"


def result_to_json_text(result: CampaignResult) -> str:
    doc = {
        "scenario": result.scenario,
        "sweep_axis": result.sweep_axis,
        "sweep_grid": list(result.sweep_grid),
        "algorithms": list(result.algorithms),
        "num_trials": result.num_trials,
        "master_seed": result.master_seed,
        "average_mode": result.average_mode,
        "config_hash": result.config_hash,
        "rows": [
            {
                "axis_value": row.axis_value,
                "algorithm": row.algorithm,
                "trials": row.trials,
                "mean_linear": row.mean_linear,
                "mean_snr_db": row.mean_snr_db,
                "stderr_db": row.stderr_db,
                "real_adds": row.real_adds,
                "real_mults": row.real_mults,
            }
            for row in result.rows
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def result_from_json_text(text: str) -> CampaignResult:
    doc = json.loads(text)
    rows = tuple(
        ResultRow(axis_value=r["axis_value"], algorithm=r["algorithm"],
                  trials=r["trials"], mean_linear=r["mean_linear"],
                  mean_snr_db=r["mean_snr_db"], stderr_db=r["stderr_db"],
                  real_adds=r["real_adds"], real_mults=r["real_mults"])
        for r in doc["rows"])
    return CampaignResult(
        scenario=doc["scenario"], sweep_axis=doc["sweep_axis"],
        sweep_grid=tuple(doc["sweep_grid"]), algorithms=tuple(doc["algorithms"]),
        num_trials=doc["num_trials"], master_seed=doc["master_seed"],
        average_mode=doc["average_mode"], config_hash=doc["config_hash"],
        rows=rows)


def write_results(result: CampaignResult, out_dir, formats=("csv", "json")) -> list:
    """Write results.csv / results.json into ``out_dir``; returns the paths."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {out}: {exc}") from None
    paths = []
    for fmt in formats:
        if fmt == "csv":
            path = out / "results.csv"
            path.write_text(result_to_csv_text(result))
        elif fmt == "json":
            path = out / "results.json"
            path.write_text(result_to_json_text(result))
        else:
            raise ValueError(f"unknown output format {fmt!r}")
        paths.append(path)
    return paths


def emit_plot_data(result: CampaignResult, figure_id: str, out_dir) -> list:
    """One plot-ready CSV per algorithm series, axes matching the figure."""
    if figure_id not in FIGURE_SCENARIOS:
        raise ValueError(f"unknown figure id {figure_id!r}; "
                         f"choose from {sorted(FIGURE_SCENARIOS)}")
    expected = FIGURE_SCENARIOS[figure_id]
    if result.scenario != expected:
        raise ValueError(f"figure {figure_id} needs a {expected!r} result, "
                         f"got {result.scenario!r}")
    if figure_id in FIGURE_AXES and result.sweep_axis != FIGURE_AXES[figure_id]:
        raise ValueError(f"figure {figure_id} sweeps {FIGURE_AXES[figure_id]!r}, "
                         f"got {result.sweep_axis!r}")
    if not result.algorithms:
        raise ValueError("result has no algorithm series to plot")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    complexity = result.scenario == "complexity_grid"
    paths = []
    for alg in result.algorithms:
        rows = [r for r in result.rows if r.algorithm == alg]
        lines = []
        if complexity:
            lines.append(f"{result.sweep_axis},real_adds,real_mults")
            for r in rows:
                lines.append(f"{_fmt(r.axis_value)},{r.real_adds},{r.real_mults}")
        else:
            lines.append(f"{result.sweep_axis},mean_snr_db,stderr_db")
            for r in rows:
                lines.append(f"{_fmt(r.axis_value)},{_fmt(r.mean_snr_db)},{_fmt(r.stderr_db)}")
        path = out / f"{figure_id}_{alg}.csv"
        path.write_text("\n".join(lines) + "\n")
        paths.append(path)
    return paths
