"""Small dense polynomial kernels.

Coefficients are stored lowest degree first throughout.  The kernels are
written with scalar complex arithmetic because every polynomial here has
degree <= 6, where numpy's per-call overhead would dominate.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass

import numpy as np

_EPS = np.finfo(float).eps


class ConvergenceError(RuntimeError):
    """Iterative root finder failed; ``roots`` holds the best iterate."""

    def __init__(self, message, roots):
        super().__init__(message)
        self.roots = roots


@dataclass(frozen=True)
class ComplexPoly:
    coefficients: tuple

    def __init__(self, coefficients):
        coeffs = tuple(complex(c) for c in coefficients)
        if len(coeffs) < 2:
            raise ValueError("polynomial degree must be >= 1")
        if coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def scale(self) -> float:
        return max(abs(c) for c in self.coefficients)

    def __call__(self, z):
        return horner(self.coefficients, z)

    def monic(self) -> "ComplexPoly":
        lead = self.coefficients[-1]
        return ComplexPoly([c / lead for c in self.coefficients])

    def is_real(self, rtol: float = 1e-12) -> bool:
        return all(abs(c.imag) <= rtol * self.scale for c in self.coefficients)

    @classmethod
    def from_roots(cls, roots) -> "ComplexPoly":
        coeffs = [1.0 + 0j]
        for r in roots:
            # multiply by (z - r), lowest degree first
            coeffs = [-r * coeffs[0]] + [
                coeffs[k - 1] - r * coeffs[k] for k in range(1, len(coeffs))
            ] + [coeffs[-1]]
        return cls(coeffs)


@dataclass(frozen=True)
class PolyRoots:
    roots: np.ndarray
    residual: float
    converged: bool = True
    iterations: int = 0

    def __iter__(self):
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)


def horner(coeffs, z):
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def relative_residual(poly: ComplexPoly, roots) -> float:
    """max_k |p(z_k)| / (max|c| * max(1, |z_k|)^n)"""
    n, scale = poly.degree, poly.scale
    return max(abs(poly(z)) / (scale * max(1.0, abs(z)) ** n) for z in roots)


def _as_poly(p) -> ComplexPoly:
    return p if isinstance(p, ComplexPoly) else ComplexPoly(p)


def solve_cubic_closed_form(p) -> PolyRoots:
    """Cardano's formula for a cubic with complex coefficients.

    The auxiliary cube root is taken from the larger-magnitude branch of the
    inner square root, which keeps it away from cancellation when the
    discriminant is driven towards zero.
    """
    p = _as_poly(p)
    if p.degree != 3:
        raise ValueError(f"expected a cubic, got degree {p.degree}")
    c0, c1, c2, _ = p.monic().coefficients
    # lambda^3 + a lambda^2 + b lambda + c
    a, b, c = c2, c1, c0
    d0 = a * a - 3 * b
    d1 = 2 * a**3 - 9 * a * b + 27 * c
    root = cmath.sqrt(d1 * d1 - 4 * d0**3)
    w = d1 + root if abs(d1 + root) >= abs(d1 - root) else d1 - root
    big = max(1.0, abs(a), abs(b), abs(c))
    if abs(w) <= 1e-30 * big**3:
        # d0 = d1 = 0 up to rounding: triple root
        roots = [-a / 3] * 3
    else:
        C = _cbrt(w / 2)
        xi = complex(-0.5, math.sqrt(3) / 2)
        roots = []
        for k in range(3):
            ck = C * xi**k
            roots.append(-(a + ck + d0 / ck) / 3)
    roots = [_polish(p.coefficients, z) for z in roots]
    return PolyRoots(np.array(roots, dtype=complex), relative_residual(p, roots))


def _cbrt(z: complex) -> complex:
    if z == 0:
        return 0j
    r, phi = cmath.polar(z)
    return cmath.rect(r ** (1.0 / 3.0), phi / 3.0)


def _polish(coeffs, z, steps=2):
    """A couple of Newton steps, kept only when they reduce |p(z)|."""
    fz = abs(horner(coeffs, z))
    deriv = [k * coeffs[k] for k in range(1, len(coeffs))]
    for _ in range(steps):
        d = horner(deriv, z)
        if d == 0:
            break
        trial = z - horner(coeffs, z) / d
        ft = abs(horner(coeffs, trial))
        if not ft < fz:
            break
        z, fz = trial, ft
    return z


def _cauchy_radius(monic_coeffs) -> float:
    """Upper bound on root moduli (Fujiwara)."""
    n = len(monic_coeffs) - 1
    terms = [abs(monic_coeffs[n - k]) ** (1.0 / k) for k in range(1, n + 1)]
    terms[-1] = (abs(monic_coeffs[0]) / 2) ** (1.0 / n)
    return 2.0 * max(terms) if max(terms) > 0 else 1.0


def solve_iterative(p, tol: float = 1e-13, max_iter: int = 500, *, raise_on_failure: bool = True) -> PolyRoots:
    """Aberth-Ehrlich simultaneous iteration.

    Seeds are roots of unity scaled to the Fujiwara bound (with a fixed
    angular offset), so results are deterministic.  Iteration stops when the
    largest correction drops below ``tol * scale`` or every root's residual is
    at the rounding-error level of Horner evaluation; the latter is what
    terminates clusters of multiple roots.
    """
    p = _as_poly(p)
    monic = p.monic().coefficients
    n = p.degree
    if n == 1:
        z = -monic[0]
        return PolyRoots(np.array([z]), relative_residual(p, [z]), True, 0)
    # work in y = z / s so that the roots are of order one; repeated division
    # keeps the intermediate powers of s in range
    s = max(abs(monic[k]) ** (1.0 / (n - k)) for k in range(n)) or 1.0
    monic = list(monic)
    for k in range(n):
        for _ in range(n - k):
            monic[k] /= s
    deriv = [k * monic[k] for k in range(1, n + 1)]
    abs_coeffs = [abs(c) for c in monic]
    center = -monic[n - 1] / n
    radius = _cauchy_radius(monic)
    z = [center + radius * cmath.exp(1j * (2 * math.pi * k / n + 0.4)) for k in range(n)]
    scale = max(1.0, radius)
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        max_step = 0.0
        settled = True
        for i in range(n):
            zi = z[i]
            f = horner(monic, zi)
            # rounding-error bound of Horner at |zi|
            bound = 4 * n * _EPS * horner(abs_coeffs, abs(zi)).real
            if abs(f) <= bound:
                continue
            settled = False
            ratio = f / horner(deriv, zi)
            repulsion = sum(1.0 / (zi - z[j]) for j in range(n) if j != i and zi != z[j])
            denom = 1.0 - ratio * repulsion
            step = ratio / denom if denom != 0 else ratio
            z[i] = zi - step
            max_step = max(max_step, abs(step))
        if settled or max_step < tol * scale:
            converged = True
            break
    z = [s * y for y in z]
    result = PolyRoots(np.array(z, dtype=complex), relative_residual(p, z), converged, it)
    if not converged and raise_on_failure:
        raise ConvergenceError(
            f"Aberth iteration did not converge in {max_iter} steps (residual {result.residual:.3g})",
            result,
        )
    return result


def char_poly(M) -> ComplexPoly:
    """det(lambda I - M) by the Faddeev-LeVerrier recursion (monic)."""
    A = np.asarray(M, dtype=complex)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("matrix must be square")
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[n] = 1.0
    Mk = np.zeros_like(A)
    eye = np.eye(n)
    for k in range(1, n + 1):
        Mk = A @ Mk + coeffs[n - k + 1] * eye
        coeffs[n - k] = -np.trace(A @ Mk) / k
    return ComplexPoly(coeffs)


def match_multisets(a, b):
    """Optimal pairing of two equal-size root multisets by brute force.

    Returns ``(perm, cost)`` where ``b[perm[k]]`` is matched to ``a[k]`` and
    ``cost`` is the largest matched distance.  The sum of distances is
    minimized; ties go to the lexicographically smallest permutation.
    """
    a, b = list(a), list(b)
    if len(a) != len(b):
        raise ValueError("multisets differ in size")
    best, best_sum = None, math.inf
    for perm in itertools.permutations(range(len(b))):
        s = sum(abs(b[perm[k]] - a[k]) for k in range(len(a)))
        if s < best_sum:
            best, best_sum = perm, s
    return best, max(abs(b[best[k]] - a[k]) for k in range(len(a)))


def multiset_distance(a, b) -> float:
    return match_multisets(a, b)[1]
