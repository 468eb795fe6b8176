"""Built-in sweep presets for each figure panel, plus gnuplot script emission.

Traveling-field strengths are given as ratios Gamma/omega_b and converted
with ``gamma_nh = ratio * omega_b_ratio``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .params import NormalizedParams
from .sweep import Axis, SweepSpec

PI = math.pi
BASE = NormalizedParams()
G_AXIS = ("g_ma", 0.0, 2.0, 400)


@dataclass(frozen=True)
class Preset:
    id: str
    description: str
    spec: SweepSpec
    plot: str  # which columns the plot script shows: "re", "im", "S", "stable"

    @property
    def stem(self) -> str:
        return f"{self.id}_" + "_".join(a.name for a in self.spec.axes)


def _params(theta, gamma_ratio=1.0, **kw) -> NormalizedParams:
    base = BASE.replace(**kw)
    return base.replace(theta=theta, gamma_nh=gamma_ratio * base.omega_b_ratio)


def _build() -> dict:
    eig = frozenset({"eigenvalues", "spread"})
    stab = frozenset({"S", "stability"})
    table = {}

    def add(pid, desc, params, axes, outputs, plot):
        table[pid] = Preset(pid, desc, SweepSpec(params, tuple(Axis(*a) for a in axes), outputs), plot)

    for pid, theta, name in (("fig2a", PI / 2, "pi/2"), ("fig2b", PI, "pi")):
        add(pid, f"eigenvalues vs G_ma, Gamma/omega_b = 1, theta = {name}", _params(theta), [G_AXIS], eig | {"ep"}, "re")

    # solid/dashed curves are the two rows of a 2-point Gamma axis
    gamma_pair = ("gamma_nh", 1.0, 2.0, 2)
    for pid, theta, part in (("fig3a", PI / 2, "re"), ("fig3b", PI / 2, "im"), ("fig3c", PI, "re"), ("fig3d", PI, "im")):
        add(pid, f"eigenvalues vs G_ma for Gamma/omega_b in (1, 2), theta = {theta / PI:g} pi", _params(theta), [gamma_pair, ("g_ma", 0.0, 3.0, 400)], eig | {"ep"}, part)
    for pid, theta in (("fig3e", PI / 2), ("fig3f", PI)):
        add(pid, f"Im eigenvalues over Gamma/omega_b x G_ma, theta = {theta / PI:g} pi", _params(theta), [("gamma_nh", 0.0, 2.0, 101), ("g_ma", 0.0, 2.0, 101)], eig, "im")

    g_grid = [("g_ma", 0.0, 2.0, 100), ("g_mb_eff", 0.0, 2.0, 100)]
    add("fig4a", "S over G_ma x G_mb, Gamma/omega_b = 1", _params(PI / 2, 1.0), g_grid, stab, "S")
    add("fig4b", "eigenvalues over G_ma x G_mb, Gamma/omega_b = 1", _params(PI / 2, 1.0), g_grid, eig, "im")
    add("fig4c", "S over G_ma x G_mb, Gamma/omega_b = 2", _params(PI / 2, 2.0), g_grid, stab, "S")
    add("fig4d", "eigenvalues over G_ma x G_mb, Gamma/omega_b = 2", _params(PI / 2, 2.0), g_grid, eig, "im")
    k_grid = [("kappa_a", 0.0, 1.0, 100), ("kappa_m", 0.0, 1.0, 100)]
    add("fig4e", "S over kappa_a x kappa_m at G_ma = Gamma/omega_b = 1", _params(PI / 2, 1.0, g_ma=1.0), k_grid, stab, "S")
    add("fig4f", "S over kappa_a x kappa_m at G_ma = 1, Gamma/omega_b = 2", _params(PI / 2, 2.0, g_ma=1.0), k_grid, stab, "S")

    angles = (0.0, PI / 2, PI, 3 * PI / 2)
    for i, theta in enumerate(angles):
        for j, part in enumerate(("re", "im")):
            pid = "figS1" + "abcdefgh"[2 * i + j]
            add(pid, f"{'Re' if part == 're' else 'Im'} eigenvalues vs G_ma, theta = {theta / PI:g} pi", _params(theta), [G_AXIS], eig, part)

    gm_grid = [("g_ma", 0.0, 2.0, 101), ("g_mb_eff", 0.0, 2.0, 101)]
    for pid, theta, part in (("figS2a", PI / 2, "re"), ("figS2b", PI / 2, "im"), ("figS2c", PI, "re"), ("figS2d", PI, "im")):
        add(pid, f"{'Re' if part == 're' else 'Im'} eigenvalues over G_ma x G_mb/Delta_b, theta = {theta / PI:g} pi", _params(theta), gm_grid, eig, part)
    return table


PRESETS = _build()


def get_preset(pid: str) -> Preset:
    try:
        return PRESETS[pid]
    except KeyError:
        raise KeyError(f"unknown figure id {pid!r}; choose from {', '.join(PRESETS)}") from None


def plot_script(preset: Preset, csv_name: str) -> str:
    """gnuplot commands reading the named CSV columns."""
    axes = preset.spec.axes
    lines = [
        f"# {preset.id}: {preset.description}",
        "set datafile separator ','",
        "set key autotitle columnhead",
        f"set xlabel '{axes[0].name}'",
    ]
    if preset.plot in ("re", "im"):
        cols = [f"{preset.plot}{k}" for k in (1, 2, 3)]
        label = "Re[lambda]" if preset.plot == "re" else "Im[lambda]"
    elif preset.plot == "S":
        cols, label = ["s_re"], "Re S"
    else:
        cols, label = ["stable"], "stable"
    if len(axes) == 1:
        lines.append(f"set ylabel '{label}'")
        command = "plot " + ", ".join(f"'{csv_name}' using 'axis1':'{c}' with lines" for c in cols)
    else:
        lines += [f"set ylabel '{axes[1].name}'", f"set zlabel '{label}'"]
        command = "splot " + ", ".join(f"'{csv_name}' using 'axis1':'axis2':'{c}' with points pointsize 0.3" for c in cols)
    return "\n".join(lines + [command]) + "\n"
