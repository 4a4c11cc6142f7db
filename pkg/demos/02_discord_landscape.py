# Where is the optimal measurement?
# =================================
#
# Discord minimizes Rob's conditional entropy over projective measurements on
# Alice's qubit.  The azimuth phi drops out, leaving a one-dimensional search
# over the polar angle theta.  This script tabulates D_theta over (t, theta)
# and marks the per-t minimum.
import math
import sys

import numpy as np

from unruh_discord import AccelParam, MeasurementDirection, TruncationPolicy, build_rho_ar, conditional_entropy
from unruh_discord.discord import discord_theta_profile

policy = TruncationPolicy.adaptive(1e-10)
ts = np.linspace(0.0, 0.95, 21)
thetas = np.linspace(0.0, math.pi, 33)
surface = np.array([discord_theta_profile(AccelParam(float(t)), thetas, policy) for t in ts])

print(" t      argmin theta/pi   min D_theta   D_theta(0)")
for t, row in zip(ts, surface):
    k = int(np.argmin(row))
    flat = np.ptp(row) < 1e-12
    where = "flat" if flat else f"{thetas[k] / math.pi:.4f}"
    print(f"{t:5.3f}   {where:>14}   {row.min():.8f}   {row[0]:.8f}")

# phi really does not matter: vary it at fixed theta.
rho = build_rho_ar(AccelParam(0.5), policy)
vals = [conditional_entropy(rho, MeasurementDirection(1.0, ph)) for ph in np.linspace(0, 6.0, 7)]
print("spread over phi at t=0.5, theta=1:", np.ptp(vals))

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    sys.exit(0)

T, TH = np.meshgrid(ts, thetas, indexing="ij")
fig = plt.figure(figsize=(6, 4.5))
ax = fig.add_subplot(projection="3d")
ax.plot_surface(TH, T, surface, cmap="viridis", alpha=0.8)
ax.scatter(np.full(ts.size, math.pi / 2), ts, surface.min(axis=1), color="k", s=8)
ax.set_xlabel("theta")
ax.set_ylabel("t")
ax.set_zlabel("D_theta")
fig.savefig("discord_landscape.png", dpi=120, bbox_inches="tight")
print("wrote discord_landscape.png")
