import cmath
import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings

from ptmagnomech import sweep
from ptmagnomech.params import NormalizedParams, ParameterError
from ptmagnomech.polyroots import char_poly, multiset_distance, solve_iterative
from ptmagnomech.spectrum import (
    build_h_eff,
    eigenvalues,
    locate_coalescence,
    locate_ep,
    spread,
    sweep_spectrum,
    track_branches,
)

from conftest import DATA, params_strategy, random_params

FIG2 = NormalizedParams()


def test_decoupled_hamiltonian_is_diagonal():
    p = NormalizedParams(g_ma=0, gamma_nh=0, g_mb_eff=0, delta_m=0.7, delta_b=1.3)
    h = build_h_eff(p)
    assert np.array_equal(h, np.diag([1 + 0.08j, 0.7 + 0.08j, 1.3 + 0.001j]))


def test_matched_traveling_field_cancels_photon_magnon_entry():
    h = build_h_eff(NormalizedParams(g_ma=0.7, gamma_nh=0.7, theta=math.pi / 2))
    assert h[0, 1] == 0 and h[1, 0] == 0


def test_printed_layout():
    p = NormalizedParams(g_ma=0.3, gamma_nh=0.5, theta=0.4, g_mb_eff=0.2, delta_m=0.9, delta_b=1.1)
    g = 0.3 + 1j * 0.5 * cmath.exp(0.4j)
    expected = np.array([[1 + 0.08j, g, 0], [g, 0.9 + 0.08j, 0.2], [0, 0.2, 1.1 + 0.001j]])
    assert np.allclose(build_h_eff(p), expected, rtol=0, atol=1e-15)


@given(params_strategy)
def test_complex_symmetric_and_no_photon_phonon_entry(p):
    h = build_h_eff(p)
    assert np.array_equal(h, h.T)
    assert h[0, 2] == 0 and h[2, 0] == 0


def test_dissipation_sign_flag():
    h = build_h_eff(NormalizedParams(dissipation_sign=-1))
    assert h[0, 0] == 1 - 0.08j and h[2, 2] == 1 - 0.001j


def test_diagonal_eigenvalues_exact():
    h = np.diag([1 + 0.1j, 2 - 1j, -0.5])
    assert sorted(eigenvalues(h), key=lambda z: z.real) == sorted(np.diag(h), key=lambda z: z.real)


def test_photon_decoupling_block():
    p = NormalizedParams(g_ma=0.6, gamma_nh=0.6, theta=math.pi / 2, g_mb_eff=0.3, delta_m=0.8, delta_b=1.2)
    ev = list(eigenvalues(build_h_eff(p)))
    assert 1 + 0.08j in ev
    ev.remove(1 + 0.08j)
    a, d, g = 0.8 + 0.08j, 1.2 + 0.001j, 0.3
    root = cmath.sqrt(((a - d) / 2) ** 2 + g * g)
    assert multiset_distance(ev, [(a + d) / 2 + root, (a + d) / 2 - root]) < 1e-14


def test_random_matches_iterative(rng):
    for _ in range(100):
        h = build_h_eff(random_params(rng))
        assert multiset_distance(eigenvalues(h), solve_iterative(char_poly(h)).roots) < 1e-9


@settings(max_examples=200)
@given(params_strategy)
def test_trace_identity(p):
    ev = eigenvalues(build_h_eff(p))
    trace = 1 + p.delta_m + p.delta_b + 1j * (p.kappa_a + p.kappa_m + p.gamma_b)
    assert abs(sum(ev) - trace) <= 1e-10 * max(1, abs(trace), *np.abs(ev))


def test_track_identity_and_reversal():
    prev = [1 + 0j, 2 + 0j, 3 + 0j]
    assert track_branches(prev, prev) == (0, 1, 2)
    assert track_branches(prev, prev[::-1]) == (2, 1, 0)


def test_track_near_coalescent_triple(rng):
    base = 1 + 0.5j
    prev = [base + 1e-8 * complex(*rng.normal(size=2)) for _ in range(3)]
    nxt = [base + 1e-8 * complex(*rng.normal(size=2)) for _ in range(3)]
    perm = track_branches(prev, nxt)
    cost = sum(abs(nxt[perm[k]] - prev[k]) for k in range(3))
    brute = min(sum(abs(nxt[q[k]] - prev[k]) for k in range(3)) for q in itertools.permutations(range(3)))
    assert cost == brute and cost < 1e-7


def test_track_tie_breaks_to_smallest_permutation():
    assert track_branches([0j, 0j, 0j], [1j, 1j, 1j]) == (0, 1, 2)


def test_sweep_flat_branches_when_uncoupled():
    p = NormalizedParams(g_ma=0, gamma_nh=0, g_mb_eff=0, delta_m=0.5, delta_b=2.0)
    s = sweep_spectrum(p, "kappa_a", [0.1, 0.2])
    # first point is ordered by real part: magnon, photon, phonon
    assert np.array_equal(s.branch_values[0], [0.5 + 0.08j] * 2)
    assert np.array_equal(s.branch_values[1], [1 + 0.1j, 1 + 0.2j])
    assert np.array_equal(s.branch_values[2], [2 + 0.001j] * 2)


def test_sweep_rejects_bad_input():
    with pytest.raises(ParameterError):
        sweep_spectrum(FIG2, "delta_a", [0, 1])
    with pytest.raises(ParameterError):
        sweep_spectrum(FIG2, "nonsense", [0, 1])
    with pytest.raises(ValueError):
        sweep_spectrum(FIG2, "g_ma", [1, 0])


def test_sweep_branches_are_permutations_of_roots():
    grid = np.linspace(0, 2, 50)
    s = sweep_spectrum(FIG2, "g_ma", grid)
    for j, x in enumerate(grid):
        raw = eigenvalues(build_h_eff(FIG2.replace(g_ma=x)))
        assert sorted(s.branch_values[:, j], key=lambda z: (z.real, z.imag)) == sorted(raw, key=lambda z: (z.real, z.imag))


def test_trace_identity_along_sweep():
    s = sweep_spectrum(FIG2, "g_ma", np.linspace(0, 2, 101))
    trace = 3 + 1j * (0.08 + 0.08 + 0.001)
    assert np.max(np.abs(s.branch_values.sum(axis=0) - trace)) < 1e-10 * 3


def test_refinement_preserves_assignment_away_from_coalescence():
    coarse = sweep_spectrum(FIG2, "g_ma", np.linspace(0, 2, 201))
    fine = sweep_spectrum(FIG2, "g_ma", np.linspace(0, 2, 401))
    tol = 1e-4 * np.max(np.abs(coarse.branch_values))
    for j in range(201):
        a, b = coarse.branch_values[:, j], fine.branch_values[:, 2 * j]
        if coarse.spread[j] >= 10 * tol:
            pairs = [abs(a[k] - b[k]) for k in range(3)]
            assert max(pairs) < 1e-12 or min(abs(x - y) for x, y in itertools.combinations(a, 2)) < 10 * tol


def test_fig2a_regression():
    """Frozen Fig. 2(a) spectrum, both dissipation signs."""
    for name, sign in (("fig2a_g_ma.csv", 1), ("fig2a_g_ma_minus_sign.csv", -1)):
        frozen = sweep.read_records(DATA / name)
        grid = np.array([r.axis_values[0] for r in frozen])
        s = sweep_spectrum(FIG2.replace(dissipation_sign=sign), "g_ma", grid)
        for j, r in enumerate(frozen):
            assert np.allclose(s.branch_values[:, j], r.eigenvalues, rtol=0, atol=1e-12)
            assert s.spread[j] == pytest.approx(r.spread, abs=1e-12)


def test_minus_sign_is_conjugate_at_quarter_turn():
    grid = np.linspace(0, 2, 40)
    plus = sweep_spectrum(FIG2, "g_ma", grid).branch_values
    minus = sweep_spectrum(FIG2.replace(dissipation_sign=-1), "g_ma", grid).branch_values
    assert multiset_distance(plus[:, 7], minus[:, 7].conj()) < 1e-13


def test_fig2a_spread_has_interior_minimum():
    grid = np.linspace(0, 2, 400)
    s = sweep_spectrum(FIG2, "g_ma", grid)
    i = int(np.argmin(s.spread))
    assert 0 < i < len(grid) - 1
    assert 0.5 < grid[i] < 1.5


def test_figS1_three_quarter_turn_real_parts_distinct():
    s = sweep_spectrum(FIG2.replace(theta=3 * math.pi / 2), "g_ma", np.linspace(0, 2, 400))
    re = s.branch_values.real
    for a, b in itertools.combinations(range(3), 2):
        assert np.min(np.abs(re[a] - re[b])) > 1e-4 * np.max(np.abs(s.branch_values))


def test_locate_none_when_decoupled():
    p = NormalizedParams(g_ma=0, gamma_nh=0, g_mb_eff=0, delta_m=2.0, delta_b=3.0)
    report = locate_ep(p, "kappa_a", (0.0, 1.0))
    assert not report.found and report.order is None


def test_locate_constructed_second_order():
    report = locate_coalescence(lambda t: np.array([t, -t, 1.0 + 0j]), (-1.0, 0.7), 1e-6)
    assert report.order == 2
    assert abs(report.location) < 1e-5


def test_locate_constructed_third_order():
    report = locate_coalescence(lambda t: np.array([1 + t, 1 - t, 1 + 2j * t]), (-0.5, 0.9), 1e-6)
    assert report.order == 3 and abs(report.location) < 1e-5


def test_locate_fig2_regression(fixtures):
    fx = fixtures["fig2_ep"]
    report = locate_ep(FIG2, "g_ma", (0.5, 1.5), 1e-4)
    assert report.location == pytest.approx(fx["location"], abs=1e-4)
    assert report.order == fx["order"]
    assert report.spread_at_min == pytest.approx(fx["spread_at_min"], rel=1e-6)


def test_locate_validates_inputs():
    with pytest.raises(ValueError):
        locate_ep(FIG2, "g_ma", (1.0, 0.5))
    with pytest.raises(ValueError):
        locate_ep(FIG2, "g_ma", (0.5, 1.0), tol_rel=0)


def test_spread_is_max_pairwise_distance():
    assert spread([0, 1, 3j]) == pytest.approx(abs(1 - 3j))
