"""
From laboratory units to the dimensionless model
================================================

Build the YIG-sphere parameter set in SI units, convert it, and look at
the resulting spectrum.
"""

from ptmagnomech import build_h_eff, eigenvalues
from ptmagnomech.params import yig_physical_params, physical_to_normalized

# mode masses are not part of the quoted set; 1e-12 kg is an assumption
phys = yig_physical_params(traveling_amplitude=1e3)
norm = physical_to_normalized(phys, mode_mass_magnon=1e-12, mode_mass_phonon=1e-12)

for key, value in norm.as_dict().items():
    print(f"{key:>22} = {value}")

print("\neigenvalues of H_eff (units of Delta_a):")
for z in eigenvalues(build_h_eff(norm)):
    print(f"  {z.real:+.6e} {z.imag:+.6e}j")

# the zero-point formulas give far weaker couplings than the quoted
# experimental values, which the conversion keeps for reference only
unit = abs(phys.omega_a - phys.omega_0)
print(f"\nquoted G_ma / |Delta_a| = {phys.g_ma_phys / unit:.3e}, converted {norm.g_ma:.3e}")
print(f"quoted G_mb / |Delta_a| = {phys.g_mb_phys / unit:.3e}, converted {norm.g_mb_eff:.3e}")
