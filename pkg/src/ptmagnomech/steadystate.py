"""Mean-field steady states and the effective magnon-phonon coupling.

Eliminating <a> and the phonon displacement reduces the three mean-field
equations to a real cubic in the magnon number ``u = |<m>|^2``::

    |alpha + beta u|^2 u = |eta|^2

with ``alpha = i Delta_m + kappa_m - c^2 / (i Delta_a + kappa_a)``,
``c = i G_ma + Gamma e^{i theta}`` and ``beta = g (b_s + b_s^*) / u``.
Every nonnegative real root is one steady-state branch.
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .params import NormalizedParams, validate

_EPS = float(np.finfo(float).eps)
_TINY = float(np.finfo(float).tiny)


class SteadyStateError(ArithmeticError):
    """No physical steady state (or a singular photon denominator)."""


@dataclass(frozen=True)
class SteadyState:
    a_mean: complex
    m_mean: complex
    b_mean: complex
    u: float
    g_mb_eff_out: float
    residual: float

    @property
    def phonon_shift(self) -> float:
        """g_mb (b_s + b_s^*) / g_mb, i.e. the real displacement b_s + b_s^*."""
        return 2.0 * self.b_mean.real

    def as_dict(self) -> dict:
        return {
            "a_mean": [self.a_mean.real, self.a_mean.imag],
            "m_mean": [self.m_mean.real, self.m_mean.imag],
            "b_mean": [self.b_mean.real, self.b_mean.imag],
            "u": self.u,
            "g_mb_eff_out": self.g_mb_eff_out,
            "residual": self.residual,
        }


def _coefficients(params: NormalizedParams, g_mb_bare: float):
    c = 1j * params.g_ma + params.gamma_nh * cmath.exp(1j * params.theta)
    d_a = 1j * params.delta_a + params.kappa_a
    if d_a == 0:
        raise SteadyStateError("photon denominator i*Delta_a + kappa_a vanishes")
    alpha = 1j * params.delta_m + params.kappa_m - c * c / d_a
    d_b = params.delta_b**2 + params.gamma_b**2
    if d_b == 0:
        raise SteadyStateError("phonon denominator i*Delta_b + gamma_b vanishes")
    # b_s + b_s^* = shift * u
    shift = -2.0 * g_mb_bare * params.delta_b / d_b
    beta = g_mb_bare * shift
    if params.steady_phonon_term == "with_i":
        beta = 1j * beta
    return c, d_a, alpha, complex(beta)


def magnon_cubic(params: NormalizedParams, g_mb_bare: float, eta=None) -> list:
    """Coefficients (lowest first) of |alpha + beta u|^2 u - |eta|^2."""
    _, _, alpha, beta = _coefficients(params, g_mb_bare)
    eta = params.eta if eta is None else eta
    return [
        -abs(eta) ** 2,
        abs(alpha) ** 2,
        2.0 * (alpha * beta.conjugate()).real,
        abs(beta) ** 2,
    ]


def equation_residual(params: NormalizedParams, g_mb_bare: float, a, m, b, eta=None) -> float:
    """Largest violation of the three printed steady-state equations."""
    eta = params.eta if eta is None else eta
    c = 1j * params.g_ma + params.gamma_nh * cmath.exp(1j * params.theta)
    d_a = 1j * params.delta_a + params.kappa_a
    phonon = g_mb_bare * 2.0 * b.real
    if params.steady_phonon_term == "with_i":
        phonon = 1j * phonon
    den_m = 1j * params.delta_m + params.kappa_m + phonon
    r_a = a + c / d_a * m
    r_m = m * den_m - (eta - c * a)
    r_b = b + 1j * g_mb_bare * abs(m) * abs(m) / (1j * params.delta_b + params.gamma_b)
    return max(abs(r_a), abs(r_m), abs(r_b))


def _magnon_number_roots(alpha: complex, beta: complex, eta2: float) -> list:
    """Nonnegative roots of ``f(u) = |alpha + beta u|^2 u - eta2``.

    ``f`` is evaluated in factored form, so tiny ``beta`` neither underflows
    nor cancels.  It is negative at u = 0 and monotone between its critical
    points, so each sign change on a monotone piece brackets one root.
    """
    if eta2 == 0:
        return [0.0]

    def f(u):
        d = abs(alpha + beta * u)
        return d * d * u - eta2  # overflows to inf rather than raising

    w = alpha / beta if beta != 0 else math.inf
    if not cmath.isfinite(w):
        if alpha == 0:
            return []
        ratio = math.sqrt(eta2) / abs(alpha)
        return [ratio * ratio] if math.isfinite(ratio * ratio) else []
    # critical points of |u + w|^2 u, written as u = |w| t with
    # 3 t^2 + 4 rho t + 1 = 0 and rho = Re(w) / |w| (no squares of |w|)
    r = abs(w)
    rho = w.real / r if r > 0 else 0.0
    disc = 16.0 * rho * rho - 12.0
    crit = []
    if disc >= 0:
        q = -0.5 * (4.0 * rho + math.copysign(math.sqrt(disc), rho))
        crit = sorted(r * t for t in (q / 3.0, 1.0 / q) if t > 0)
    edges = [0.0] + crit
    # start from the smaller of the linear-term and cubic-term root scales
    eta = math.sqrt(eta2)
    guesses = [math.exp(min(p * math.log(eta / abs(z)), 690.0)) for z, p in ((alpha, 2.0), (beta, 2.0 / 3.0)) if z != 0]
    top = 2.0 * max(edges[-1], min(guesses), _TINY)
    while f(top) <= 0:
        top *= 2.0
        if not math.isfinite(top):
            return []
    edges.append(top)
    roots = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        flo, fhi = f(lo), f(hi)
        if flo == 0:
            roots.append(lo)
        elif flo * fhi < 0:
            lo, hi = _narrow(f, lo, hi, flo)
            roots.append(brentq(f, lo, hi, xtol=_TINY, rtol=4 * _EPS, maxiter=500))
    merged = []
    for u in sorted(roots):
        if not merged or abs(u - merged[-1]) > 1e-12 * u:
            merged.append(u)
    return merged


def _narrow(f, lo, hi, flo):
    """Geometric bisection until the bracket spans at most a factor of 4."""
    while hi > 4.0 * max(lo, _TINY):
        mid = math.sqrt(max(lo, _TINY)) * math.sqrt(hi)
        if not lo < mid < hi:
            break
        if (f(mid) < 0) == (flo < 0):
            lo = mid
        else:
            hi = mid
    return lo, hi


def solve_steady_state(params: NormalizedParams, g_mb_bare: float, *, eta=None) -> list:
    """All steady-state branches, ordered by increasing magnon number.

    ``eta`` overrides ``params.eta`` and may be complex; a drive phase only
    rotates <a> and <m>.  The first element is the low-excitation branch.
    """
    params = validate(params)
    if g_mb_bare < 0:
        raise ValueError("g_mb_bare must be nonnegative")
    eta = params.eta if eta is None else eta
    c, d_a, alpha, beta = _coefficients(params, g_mb_bare)
    if eta == 0:
        zero = SteadyState(0j, 0j, 0j, 0.0, 0.0, 0.0)
        return [zero]
    roots = _magnon_number_roots(alpha, beta, abs(eta) ** 2)
    if not roots:
        raise SteadyStateError(f"no nonnegative real magnon number (alpha={alpha}, beta={beta})")
    branches = []
    for u in roots:
        d = alpha + beta * u
        if d == 0:
            continue
        m = eta / d
        u_m = abs(m) * abs(m)
        if abs(u_m - u) > 1e-6 * u:
            # alpha + beta u cancelled below double precision near a double root
            warnings.warn(f"dropped numerically unresolvable branch at u = {u:.3e}", RuntimeWarning, stacklevel=2)
            continue
        a = -c / d_a * m
        b = -1j * g_mb_bare * u_m / (1j * params.delta_b + params.gamma_b)
        res = equation_residual(params, g_mb_bare, a, m, b, eta)
        branches.append(SteadyState(a, m, b, u_m, g_mb_bare * abs(m), res))
    if not branches:
        raise SteadyStateError("magnon denominator vanishes on every branch")
    return branches


def effective_magnon_detuning(params: NormalizedParams, g_mb_bare: float, state: SteadyState) -> complex:
    """Delta_m shifted by the static phonon displacement."""
    shift = g_mb_bare * state.phonon_shift
    if params.steady_phonon_term == "with_i":
        shift = 1j * shift
    return params.delta_m + shift


def calibrate_drive(
    params: NormalizedParams,
    g_mb_bare: float,
    target_g_mb_eff: float,
    rtol: float = 1e-8,
    *,
    full_output: bool = False,
):
    """Drive strength eta giving ``g_mb_bare * |<m>| = target`` on the lowest branch.

    Brackets by doubling eta, then bisects.  If the low branch jumps across
    the target (bistability), the smallest such eta is returned and a
    ``RuntimeWarning`` is issued.  With ``full_output`` the return value is
    ``(eta, info)`` where ``info`` holds the achieved coupling, branch count
    and a ``multistable`` flag.
    """
    if target_g_mb_eff < 0:
        raise ValueError("target must be nonnegative")
    params = validate(params)
    if target_g_mb_eff == 0:
        info = {"g_mb_eff": 0.0, "branches": 1, "multistable": False, "iterations": 0}
        return (0.0, info) if full_output else 0.0
    if g_mb_bare <= 0:
        raise ValueError("a nonzero target needs g_mb_bare > 0")

    def coupling(eta):
        return solve_steady_state(params, g_mb_bare, eta=eta)[0].g_mb_eff_out

    lo, hi = 0.0, 1.0
    iterations = 0
    while coupling(hi) < target_g_mb_eff:
        lo, hi = hi, 2.0 * hi
        iterations += 1
        if hi > 1e300:
            raise SteadyStateError("could not bracket the target coupling")
    while hi - lo > 0.25 * rtol * hi:
        mid = 0.5 * (lo + hi)
        if coupling(mid) < target_g_mb_eff:
            lo = mid
        else:
            hi = mid
        iterations += 1
    eta = hi if abs(coupling(hi) - target_g_mb_eff) <= abs(coupling(lo) - target_g_mb_eff) else lo
    branches = solve_steady_state(params, g_mb_bare, eta=eta)
    achieved = branches[0].g_mb_eff_out
    multistable = len(branches) > 1 or not math.isclose(achieved, target_g_mb_eff, rel_tol=1e-6)
    if multistable:
        warnings.warn(
            f"multistable steady state near eta={eta:.6g} ({len(branches)} branches, "
            f"achieved G_mb={achieved:.6g})",
            RuntimeWarning,
            stacklevel=2,
        )
    info = {"g_mb_eff": achieved, "branches": len(branches), "multistable": multistable, "iterations": iterations}
    return (eta, info) if full_output else eta
