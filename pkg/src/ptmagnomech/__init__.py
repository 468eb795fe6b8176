"""Non-Hermitian cavity magnomechanics: spectra, exceptional points and stability."""
from .params import NormalizedParams, ParameterError, PhysicalParams, physical_to_normalized, validate
from .polyroots import ComplexPoly, PolyRoots, char_poly, solve_cubic_closed_form, solve_iterative
from .spectrum import EpReport, Spectrum, build_h_eff, eigenvalues, locate_ep, sweep_spectrum, track_branches
from .stability import analyze, build_drift, parametric_conditions, routh_array, stability_from_roots, stability_parameter
from .steadystate import SteadyState, calibrate_drive, solve_steady_state
from .sweep import Axis, SweepRecord, SweepSpec, read_records, run_sweep, write_records

__version__ = "0.1.0"

__all__ = [
    "Axis", "ComplexPoly", "EpReport", "NormalizedParams", "ParameterError", "PhysicalParams",
    "PolyRoots", "Spectrum", "SteadyState", "SweepRecord", "SweepSpec", "analyze", "build_drift",
    "build_h_eff", "calibrate_drive", "char_poly", "eigenvalues", "locate_ep", "parametric_conditions",
    "physical_to_normalized", "read_records", "routh_array", "run_sweep", "solve_cubic_closed_form",
    "solve_iterative", "solve_steady_state", "stability_from_roots", "stability_parameter",
    "sweep_spectrum", "track_branches", "validate", "write_records",
]
