"""
Drive calibration for the magnomechanical coupling
==================================================

The effective coupling G_mb = g_mb |<m>| follows from the mean-field
steady state.  Find the drive that gives G_mb = 0.09, then show how the
steady state bends into a multistable region at larger drive.
"""

import warnings

import numpy as np

from ptmagnomech import NormalizedParams, calibrate_drive, solve_steady_state

params = NormalizedParams()
g_bare = 0.01

eta = calibrate_drive(params, g_bare, 0.09)
state = solve_steady_state(params.replace(eta=eta), g_bare)[0]
print(f"eta = {eta:.6f} gives G_mb = {state.g_mb_eff_out:.9f}")
print(f"  <a> = {state.a_mean:.4f}, <m> = {state.m_mean:.4f}, <b> = {state.b_mean:.4f}")
print(f"  residual of the steady-state equations: {state.residual:.1e}")

# a weakly damped, resonant magnon gives an S-shaped response
soft = NormalizedParams(g_ma=0.0, gamma_nh=0.0, delta_m=0.0, kappa_m=0.05)
print("\n  eta      branches   magnon numbers")
for e in np.linspace(0.002, 0.014, 7):
    branches = solve_steady_state(soft, 0.3, eta=e)
    print(f"  {e:.4f}   {len(branches)}          " + ", ".join(f"{b.u:.4f}" for b in branches))

# asking for a coupling beyond the fold triggers a warning
with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    eta, info = calibrate_drive(soft, 0.3, 0.12, full_output=True)
print(f"\ntarget 0.12: eta = {eta:.5f}, achieved {info['g_mb_eff']:.4f}, multistable = {info['multistable']}")
for w in caught:
    print("  warning:", w.message)
