"""Where should the reflecting panel go?

Walks the panel along the BS-user axis and tabulates the two path-loss
models: the cascaded user->panel->BS power gain and the (free-space) direct
user->BS gain.  The cascaded loss is worst mid-span and best near either
endpoint, which is why the deployment sweeps put the panel near the BS.
"""

import numpy as np

from ris_scma import Geometry, cascaded_path_loss, direct_path_loss

DISTANCE = 40.0          # BS to users, m
PERPENDICULAR = 1.5      # panel offset from the axis, m
FREQ = 2.4e9

offsets = np.linspace(1.0, 39.0, 39)
losses = []
for d0 in offsets:
    geom = Geometry(DISTANCE, PERPENDICULAR, float(d0), FREQ)
    losses.append(cascaded_path_loss(geom))
losses = np.asarray(losses)

geom_ref = Geometry(DISTANCE, PERPENDICULAR, 2.0, FREQ)
direct = direct_path_loss(geom_ref)

print(f"wavelength           : {geom_ref.wavelength:.4f} m")
print(f"direct gain at d=40 m: {10 * np.log10(direct):.1f} dB")
print()
print("offset d0 [m]   cascaded gain [dB]   vs direct [dB]")
for d0 in (1.0, 2.0, 5.0, 10.0, 20.0, 30.0, 35.0, 38.0, 39.0):
    g = cascaded_path_loss(Geometry(DISTANCE, PERPENDICULAR, d0, FREQ))
    print(f"{d0:10.1f}   {10 * np.log10(g):15.1f}   {10 * np.log10(g / direct):13.1f}")

worst = offsets[int(np.argmin(losses))]
print(f"\nworst placement: d0 = {worst:.0f} m (mid-span), "
      f"{10 * np.log10(losses.max() / losses.min()):.1f} dB swing across the axis")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.plot(offsets, 10 * np.log10(losses), label="cascaded (per element product)")
    ax.axhline(10 * np.log10(direct), color="gray", ls="--", label="direct (free space)")
    ax.set_xlabel("panel offset from BS, $d_0$ [m]")
    ax.set_ylabel("power gain [dB]")
    ax.legend()
    fig.tight_layout()
    fig.savefig("demo01_path_loss.png", dpi=150)
    print("saved demo01_path_loss.png")
except ImportError:
    print("matplotlib not available; skipped the plot")
