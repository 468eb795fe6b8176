"""Effective-Hamiltonian spectra, branch tracking and exceptional points."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .params import SWEEPABLE_FIELDS, NormalizedParams, ParameterError, validate
from .polyroots import char_poly, solve_cubic_closed_form

DEFAULT_TOL_REL = 1e-4
_PERMUTATIONS = tuple(itertools.permutations(range(3)))
_INVPHI = (math.sqrt(5) - 1) / 2


def photon_magnon_coupling(params: NormalizedParams) -> complex:
    """G_ma + i Gamma e^{i theta}, the off-diagonal photon-magnon entry."""
    return params.g_ma + 1j * params.gamma_nh * _unit_phase(params.theta)


def _unit_phase(theta: float) -> complex:
    # exact at multiples of pi/2 so that matched couplings cancel to zero
    quarter = theta / (math.pi / 2)
    k = round(quarter)
    if abs(quarter - k) < 1e-15 * max(1.0, abs(quarter)):
        return (1, 1j, -1, -1j)[k % 4]
    return complex(math.cos(theta), math.sin(theta))


def build_h_eff(params: NormalizedParams) -> np.ndarray:
    """3x3 effective Hamiltonian in the (photon, magnon, phonon) basis."""
    s = params.dissipation_sign
    g = photon_magnon_coupling(params)
    return np.array(
        [
            [params.delta_a + s * 1j * params.kappa_a, g, 0],
            [g, params.delta_m + s * 1j * params.kappa_m, params.g_mb_eff],
            [0, params.g_mb_eff, params.delta_b + s * 1j * params.gamma_b],
        ],
        dtype=complex,
    )


def eigenvalues(h) -> np.ndarray:
    """Eigenvalues of a 3x3 matrix from its characteristic cubic.

    A mode with no coupling to the other two is split off first, so that a
    decoupled diagonal entry comes back exactly.
    """
    h = np.asarray(h, dtype=complex)
    for k in range(3):
        others = [j for j in range(3) if j != k]
        if all(h[k, j] == 0 and h[j, k] == 0 for j in others):
            rest = _eig2(h[np.ix_(others, others)])
            out = [None] * 3
            out[k] = h[k, k]
            out[others[0]], out[others[1]] = rest
            return np.array(out, dtype=complex)
    return solve_cubic_closed_form(char_poly(h)).roots


def _eig2(b) -> tuple:
    a, d = b[0, 0], b[1, 1]
    off = b[0, 1] * b[1, 0]
    if off == 0:
        return a, d
    mean = (a + d) / 2
    root = np.sqrt(((a - d) / 2) ** 2 + off)
    return mean - root, mean + root


def spread(values) -> float:
    """Largest pairwise distance among the eigenvalues."""
    return max(abs(x - y) for x, y in itertools.combinations(values, 2))


def track_branches(prev, nxt) -> tuple:
    """Permutation ``sigma`` of ``nxt`` minimizing sum |nxt[sigma[k]] - prev[k]|.

    Ties are broken by the lexicographically smallest permutation.
    """
    best, best_cost = None, math.inf
    for perm in _PERMUTATIONS:
        cost = sum(abs(nxt[perm[k]] - prev[k]) for k in range(3))
        if cost < best_cost:
            best, best_cost = perm, cost
    return best


def _canonical_order(values) -> np.ndarray:
    return np.array(sorted(values, key=lambda z: (z.real, z.imag)), dtype=complex)


@dataclass
class Spectrum:
    axis: np.ndarray
    branch_values: np.ndarray  # shape (3, len(axis))
    spread: np.ndarray

    def branch(self, k: int) -> np.ndarray:
        return self.branch_values[k]


def check_axis(axis_name: str) -> None:
    if axis_name not in SWEEPABLE_FIELDS:
        raise ParameterError(f"invalid axis {axis_name!r}; choose from {SWEEPABLE_FIELDS}")


def eigenvalues_at(params: NormalizedParams, axis_name: str | None = None, value: float | None = None):
    if axis_name is not None:
        params = params.replace(**{axis_name: value})
    return eigenvalues(build_h_eff(validate(params)))


def track_sequence(raw) -> np.ndarray:
    """Branch-track a sequence of root triples; returns shape (3, N)."""
    out = np.empty((3, len(raw)), dtype=complex)
    prev = _canonical_order(raw[0])
    out[:, 0] = prev
    for j in range(1, len(raw)):
        cur = raw[j]
        perm = track_branches(prev, cur)
        prev = np.array([cur[perm[k]] for k in range(3)])
        out[:, j] = prev
    return out


def sweep_spectrum(params: NormalizedParams, axis_name: str, grid) -> Spectrum:
    """Branch-tracked eigenvalues of H_eff along one parameter axis."""
    check_axis(axis_name)
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or len(grid) < 2 or np.any(np.diff(grid) <= 0):
        raise ValueError("grid must be strictly increasing with at least two points")
    raw = [eigenvalues_at(params, axis_name, x) for x in grid]
    branches = track_sequence(raw)
    spreads = np.array([spread(branches[:, j]) for j in range(len(grid))])
    return Spectrum(grid, branches, spreads)


@dataclass
class EpReport:
    """Result of an exceptional-point search.

    ``order`` is None when no eigenvalue pair is within tolerance at the
    minimizer ("none found"); ``location`` is reported regardless.
    """

    location: float
    order: int | None
    spread_at_min: float
    tolerance_used: float
    eigenvalues: tuple = ()

    @property
    def found(self) -> bool:
        return self.order is not None

    def as_dict(self) -> dict:
        return {
            "location": self.location,
            "order": self.order,
            "found": self.found,
            "spread_at_min": self.spread_at_min,
            "tolerance_used": self.tolerance_used,
            "eigenvalues": [[z.real, z.imag] for z in self.eigenvalues],
        }


def golden_section_minimize(f, lo: float, hi: float, xtol: float, max_iter: int = 200):
    """Golden-section search on [lo, hi] down to an interval of width ``xtol``."""
    x1 = hi - _INVPHI * (hi - lo)
    x2 = lo + _INVPHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if hi - lo <= xtol:
            break
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INVPHI * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INVPHI * (hi - lo)
            f2 = f(x2)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def classify_coalescence(values, tolerance: float) -> int | None:
    close = sum(abs(x - y) < tolerance for x, y in itertools.combinations(values, 2))
    if close == 3:
        return 3
    if close == 1:
        return 2
    return None


def locate_coalescence(eigen_fn, bracket, tol_rel: float = DEFAULT_TOL_REL, n_scan: int = 200) -> EpReport:
    """Minimize the eigenvalue spread of ``eigen_fn(x)`` over ``bracket``.

    A coarse scan picks the best grid cell, golden-section search refines it
    to width ``tol_rel * (hi - lo)``, and the minimizer is classified by
    pairwise distances against ``tol_rel * max|lambda|``.
    """
    lo, hi = map(float, bracket)
    if not lo < hi:
        raise ValueError("bracket must satisfy lo < hi")
    if not tol_rel > 0:
        raise ValueError("tol_rel must be positive")
    xs = np.linspace(lo, hi, n_scan)
    spreads = [spread(eigen_fn(x)) for x in xs]
    i = int(np.argmin(spreads))
    a, b = xs[max(i - 1, 0)], xs[min(i + 1, n_scan - 1)]
    x, s = golden_section_minimize(lambda t: spread(eigen_fn(t)), a, b, tol_rel * (hi - lo))
    if spreads[i] < s:
        x, s = xs[i], spreads[i]
    values = tuple(complex(z) for z in eigen_fn(x))
    tolerance = tol_rel * max(abs(z) for z in values)
    return EpReport(float(x), classify_coalescence(values, tolerance), float(s), tolerance, values)


def locate_ep(params: NormalizedParams, axis_name: str, bracket, tol_rel: float = DEFAULT_TOL_REL) -> EpReport:
    check_axis(axis_name)
    params = validate(params)
    return locate_coalescence(lambda x: eigenvalues_at(params, axis_name, x), bracket, tol_rel)
