"""Deployment study: slide the panel from the BS toward the users.

Runs a small paired Monte Carlo campaign per element count and plots the
average received SNR against the panel offset.  The curves are U-shaped:
best near either end of the link, worst mid-span, tracking the cascaded
path loss from demo 01.
"""

import json

from ris_scma import (campaign_from_config, config_hash, deploy_sweep_profile,
                      parse_config, run_campaign, write_results)

TRIALS = 400

results = {}
for n in (16, 32, 64):
    cfg = parse_config(json.dumps({
        "scenario": "deploy_sweep",
        "num_trials": TRIALS,
        "num_elements": n,
        "algorithms": ["blind", "ao"],
        "master_seed": 3333,
    }))
    result = run_campaign(campaign_from_config(cfg), config_hash=config_hash(cfg))
    results[n] = result
    profile = deploy_sweep_profile(result, algorithm="ao")
    print(f"N={n:3d}: endpoint-high profile={profile.is_endpoint_high}, "
          f"worst offset={profile.interior_min_offset:g} m, "
          f"best offsets={profile.argmax_offsets}")

paths = write_results(results[32], "demo03_results")
print("wrote", *paths)

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5.2, 3.4))
    for n, result in results.items():
        xs = [r.axis_value for r in result.rows if r.algorithm == "ao"]
        ys = [r.mean_snr_db for r in result.rows if r.algorithm == "ao"]
        ax.plot(xs, ys, marker="o", label=f"ascent, N={n}")
    xs = [r.axis_value for r in results[32].rows if r.algorithm == "blind"]
    ys = [r.mean_snr_db for r in results[32].rows if r.algorithm == "blind"]
    ax.plot(xs, ys, marker="s", ls="--", color="gray", label="blind, N=32")
    ax.set_xlabel("panel offset from BS, $d_0$ [m]")
    ax.set_ylabel("average received SNR [dB]")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig("demo03_deployment.png", dpi=150)
    print("saved demo03_deployment.png")
except ImportError:
    print("matplotlib not available; skipped the plot")
