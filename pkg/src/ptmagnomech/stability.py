"""Linear stability of the quadrature fluctuations.

The 6x6 drift matrix acts on (X, Y, x, y, q, p).  Stability is judged three
ways: the signs of the characteristic-polynomial roots, a Routh tabulation of
the same polynomial, and the closed-form parametric conditions with the
derived stability parameter S.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .params import NormalizedParams, validate
from .polyroots import ComplexPoly, char_poly, solve_iterative
from .spectrum import _unit_phase

MARGINAL = "marginal"
INAPPLICABLE = "inapplicable"
MARGINAL_BAND = 1e-8


class SingularStabilityParameter(ZeroDivisionError):
    pass


def drift_coupling(params: NormalizedParams) -> complex:
    """G_ma - i Gamma e^{i theta}; real at theta = pi/2 and 3 pi/2."""
    return params.g_ma - 1j * params.gamma_nh * _unit_phase(params.theta)


@dataclass
class DriftMatrix:
    entries: np.ndarray
    coupling_entry: complex
    effective_detuning: complex

    @property
    def imag_norm(self) -> float:
        return float(np.max(np.abs(self.entries.imag)))

    def char_poly(self) -> ComplexPoly:
        return char_poly(self.entries)


def build_drift(params: NormalizedParams, delta_m_eff: complex | None = None) -> DriftMatrix:
    """Drift matrix in quadrature order (X, Y, x, y, q, p).

    ``delta_m_eff`` defaults to ``params.delta_m`` (no static phonon shift).
    With ``drift_sign_convention = "canonical"`` the photon block becomes
    the usual rotation [[-k, D], [-D, -k]].
    """
    params = validate(params)
    g = drift_coupling(params)
    dm = params.delta_m if delta_m_eff is None else delta_m_eff
    ka, km, gb = params.kappa_a, params.kappa_m, params.gamma_b
    da, G, wb = params.delta_a, params.g_mb_eff, params.omega_b_ratio
    lower_da = -da if params.drift_sign_convention == "canonical" else da
    A = np.array(
        [
            [-ka, da, 0, g, 0, 0],
            [lower_da, -ka, -g, 0, 0, 0],
            [0, g, -km, dm, 0, 0],
            [-g, 0, -dm, -km, -G, 0],
            [0, 0, 0, 0, 0, wb],
            [0, 0, -G, 0, -wb, -gb],
        ],
        dtype=complex,
    )
    return DriftMatrix(A, complex(g), complex(dm))


def routh_array(p) -> bool | str:
    """Routh test for all roots in the open left half-plane.

    Returns True/False, ``"inapplicable"`` for complex coefficients, or
    ``"marginal"`` when a vanishing pivot makes the verdict depend on the
    sign of the epsilon substitute.  An all-zero row (roots symmetric about
    the origin) is never asymptotically stable, so it returns False.
    """
    p = p if isinstance(p, ComplexPoly) else ComplexPoly(p)
    if not p.is_real(1e-12):
        return INAPPLICABLE
    # highest degree first, positive leading coefficient
    coeffs = [c.real for c in reversed(p.coefficients)]
    if coeffs[0] < 0:
        coeffs = [-c for c in coeffs]
    scale = max(abs(c) for c in coeffs)
    verdicts = {_routh_first_column_positive(coeffs, 1e-30 * scale, sign) for sign in (1, -1)}
    if len(verdicts) > 1:
        return MARGINAL
    return verdicts.pop()


def _routh_first_column_positive(coeffs, eps, eps_sign) -> bool:
    n = len(coeffs) - 1
    width = n // 2 + 1
    row0 = coeffs[0::2] + [0.0] * (width - len(coeffs[0::2]))
    row1 = coeffs[1::2] + [0.0] * (width - len(coeffs[1::2]))
    first = [row0[0]]
    zero_cut = 1e-13 * max(abs(c) for c in coeffs)
    for k in range(n):
        if all(abs(x) <= zero_cut for x in row1):
            return False
        if abs(row1[0]) <= zero_cut:
            row1 = [eps_sign * eps] + row1[1:]
        first.append(row1[0])
        new = [
            (row1[0] * row0[j + 1] - row0[0] * row1[j + 1]) / row1[0] for j in range(width - 1)
        ] + [0.0]
        row0, row1 = row1, new
        zero_cut = 1e-13 * max([abs(x) for x in row0 + row1] + [1e-300])
    return all(x > 0 for x in first)


@dataclass
class ParametricConditions:
    """The four closed-form stability conditions.

    ``strong`` is condition (i) judged on the real part of A + B; it is None
    (inapplicable) when the imaginary residual is not negligible.
    """

    strong: bool | None
    damping: bool
    magnon_detuning: bool
    cavity_detuning: bool
    imag_residual: float
    value: complex

    def as_tuple(self) -> tuple:
        return (self.strong, self.damping, self.magnon_detuning, self.cavity_detuning)

    @property
    def all_hold(self) -> bool:
        return all(c is True for c in self.as_tuple())


def _s_parts(params: NormalizedParams, delta_m_eff):
    g2 = drift_coupling(params) ** 2
    dm = params.delta_m if delta_m_eff is None else delta_m_eff
    ka, km = params.kappa_a, params.kappa_m
    da, G, wb = params.delta_a, params.g_mb_eff, params.omega_b_ratio
    numerator = g2 * (2 * ka * km * wb + da * (G**2 - 2 * wb * dm) + g2 * wb)
    denominator = (ka**2 + da**2) * (-(G**2) * dm + wb * (km**2 + dm**2))
    return complex(numerator), complex(denominator)


def parametric_conditions(params: NormalizedParams, delta_m_eff=None) -> ParametricConditions:
    params = validate(params)
    num, den = _s_parts(params, delta_m_eff)
    total = num + den
    scale = max(abs(num), abs(den), 1.0)
    strong = None if abs(total.imag) > 1e-8 * scale else bool(total.real > 0)
    dm = params.delta_m if delta_m_eff is None else delta_m_eff
    return ParametricConditions(
        strong=strong,
        damping=params.kappa_a + params.kappa_m > params.gamma_b / 2,
        magnon_detuning=complex(dm).real > 0,
        cavity_detuning=params.delta_a > 0,
        imag_residual=abs(total.imag),
        value=total,
    )


def stability_parameter(params: NormalizedParams, delta_m_eff=None, *, return_parts: bool = False):
    """S = 1 + A / B from the Routh-Hurwitz conditions.

    ``A`` collects the photon-magnon coupling terms and
    ``B = (kappa_a^2 + Delta_a^2)(-G_mb^2 Delta_m + omega_b (kappa_m^2 + Delta_m^2))``.
    """
    params = validate(params)
    num, den = _s_parts(params, delta_m_eff)
    if den == 0:
        raise SingularStabilityParameter("stability parameter denominator B vanishes")
    s = 1 + num / den
    return (s, num, den) if return_parts else s


@dataclass
class StabilityReport:
    roots: np.ndarray
    max_real_part: float
    stable_by_roots: bool
    marginal: bool
    routh_verdict: bool | str
    conditions: ParametricConditions | None = None
    s_value: complex | None = None
    s_imag_residual: float | None = None
    converged: bool = True
    notes: list = field(default_factory=list)

    def as_dict(self) -> dict:
        out = {
            "roots": [[z.real, z.imag] for z in self.roots],
            "max_real_part": self.max_real_part,
            "stable_by_roots": self.stable_by_roots,
            "marginal": self.marginal,
            "routh_verdict": self.routh_verdict,
            "converged": self.converged,
        }
        if self.conditions is not None:
            out["conditions"] = list(self.conditions.as_tuple())
            out["condition_i_imag_residual"] = self.conditions.imag_residual
        if self.s_value is not None:
            out["S"] = [self.s_value.real, self.s_value.imag]
            out["S_imag_residual"] = self.s_imag_residual
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def stability_from_roots(drift: DriftMatrix) -> StabilityReport:
    """Root-sign verdict (unstable iff some root has Re > 0) plus the Routh verdict."""
    poly = drift.char_poly()
    found = solve_iterative(poly)
    max_re = float(max(z.real for z in found.roots))
    return StabilityReport(
        roots=found.roots,
        max_real_part=max_re,
        stable_by_roots=max_re < 0,
        marginal=abs(max_re) < MARGINAL_BAND,
        routh_verdict=routh_array(poly),
        converged=found.converged,
    )


def analyze(params: NormalizedParams, delta_m_eff=None) -> StabilityReport:
    """Full report: roots, Routh, parametric conditions and S."""
    params = validate(params)
    report = stability_from_roots(build_drift(params, delta_m_eff))
    report.conditions = parametric_conditions(params, delta_m_eff)
    try:
        s, num, den = stability_parameter(params, delta_m_eff, return_parts=True)
    except SingularStabilityParameter as exc:
        report.notes.append(str(exc))
    else:
        report.s_value = s
        report.s_imag_residual = abs(s.imag)
    return report


def routh_agrees(report: StabilityReport) -> bool | None:
    """None when the comparison does not apply (complex or marginal case)."""
    if report.marginal or not isinstance(report.routh_verdict, bool):
        return None
    return report.routh_verdict == report.stable_by_roots
