"""
Eigenvalue branches and the spread minimum
==========================================

Sweep the photon-magnon coupling G_ma with the traveling field matched to
it, follow the three eigenvalue branches, then refine the spread minimum.
"""

import numpy as np

from ptmagnomech import NormalizedParams, locate_ep, sweep_spectrum

# baseline: kappa = 0.08, G_mb = 0.09, Gamma = 1, theta = pi/2
params = NormalizedParams()
grid = np.linspace(0.0, 2.0, 400)
spec = sweep_spectrum(params, "g_ma", grid)

# every fiftieth point, branches side by side
for j in range(0, len(grid), 50):
    row = "  ".join(f"{z.real:+.4f}{z.imag:+.4f}j" for z in spec.branch_values[:, j])
    print(f"G_ma = {grid[j]:.3f}   {row}   spread {spec.spread[j]:.4f}")

# the coupling enters as (G_ma - Gamma), so the spread is symmetric about 1
i = int(np.argmin(spec.spread))
print(f"\ngrid minimum near G_ma = {grid[i]:.4f}")

report = locate_ep(params, "g_ma", (0.5, 1.5))
print(f"refined minimum at G_ma = {report.location:.6f}, spread {report.spread_at_min:.4f}")
print("coalescence order:", report.order if report.found else "none within tolerance")

# a larger traveling field pushes the minimum out to G_ma = Gamma
wide = locate_ep(params.replace(gamma_nh=2.0), "g_ma", (0.0, 3.0))
print(f"with Gamma = 2 the minimum moves to G_ma = {wide.location:.4f}")

# how close are Re(lambda) at theta = pi/2 and Im(lambda) at theta = pi?
# there is no identity behind this, so just tabulate both
half = sweep_spectrum(params, "g_ma", grid).branch_values
flip = sweep_spectrum(params.replace(theta=np.pi), "g_ma", grid).branch_values
print("\n G_ma   sorted Re (theta=pi/2)         sorted Im (theta=pi)")
for j in range(0, len(grid), 80):
    re = np.sort(half[:, j].real)
    im = np.sort(flip[:, j].imag)
    print(f"{grid[j]:5.2f}   " + " ".join(f"{v:+.4f}" for v in re) + "     " + " ".join(f"{v:+.4f}" for v in im))
