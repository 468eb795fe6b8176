"""
Stability over the coupling plane
=================================

Scan G_ma and G_mb, compare the root-sign verdict of the 6x6 drift matrix
with the Routh tabulation, and count where the parameter S is positive.
"""

import numpy as np

from ptmagnomech import NormalizedParams, analyze
from ptmagnomech.stability import routh_agrees

params = NormalizedParams(gamma_nh=1.0)
g_ma = np.linspace(0, 2, 21)
g_mb = np.linspace(0, 2, 21)

stable = np.zeros((len(g_ma), len(g_mb)), dtype=bool)
s_positive = np.zeros_like(stable)
agree = 0
for i, a in enumerate(g_ma):
    for j, b in enumerate(g_mb):
        rep = analyze(params.replace(g_ma=a, g_mb_eff=b))
        stable[i, j] = rep.stable_by_roots
        s_positive[i, j] = rep.s_value is not None and rep.s_value.real > 0
        agree += bool(routh_agrees(rep))

print(f"stable points: {stable.sum()} of {stable.size}")
print(f"S > 0 points:  {s_positive.sum()} of {stable.size}")
print(f"Routh and root signs agree at {agree} points")

# coarse picture: rows are G_ma, columns G_mb, '#' marks stable
for i in range(0, len(g_ma), 2):
    print(f"{g_ma[i]:4.1f} " + "".join("#" if s else "." for s in stable[i]))

# a single point in detail
rep = analyze(params.replace(g_ma=1.0, g_mb_eff=0.02))
print("\nG_ma = 1, G_mb = 0.02")
print("  max Re root:", f"{rep.max_real_part:.3e}")
print("  conditions: ", rep.conditions.as_tuple())
print("  S =", rep.s_value)
