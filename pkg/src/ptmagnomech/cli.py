"""Command-line front end.

    ptmagnomech figure fig2a --out results/
    ptmagnomech spectrum --g_ma 0 --gamma_nh 0
    ptmagnomech ep-locate --preset fig2a --bracket 0.5 1.5
    ptmagnomech sweep --axis g_ma 0 2 100 --outputs eigenvalues,spread

Exit codes: 0 success, 1 invalid input, 2 more than half of the grid points
failed.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
import warnings
from pathlib import Path

from . import presets, spectrum, stability, steadystate, sweep
from .params import NormalizedParams, ParameterError, coerce_value, load_config, validate

OUTDIR_ENV = "PTMAGNOMECH_OUTDIR"
FIELDS = [f.name for f in dataclasses.fields(NormalizedParams)]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _epilog() -> str:
    figs = ", ".join(presets.PRESETS)
    return (
        f"figure ids: {figs}\n"
        f"parameter overrides (--KEY VALUE): {', '.join(FIELDS)}\n"
        f"output directory: --out, else ${OUTDIR_ENV}, else the working directory"
    )


def _common(p: argparse.ArgumentParser, with_preset: bool = True) -> None:
    p.add_argument("--config", help="flat 'key = value' parameter file")
    if with_preset:
        p.add_argument("--preset", help="start from a figure preset's base parameters")
    p.add_argument("--out", help="output file (directory for 'figure')")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--threads", type=int, default=1)
    group = p.add_argument_group("parameter overrides")
    for name in FIELDS:
        group.add_argument(f"--{name}", dest=f"set_{name}", metavar="VALUE")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="ptmagnomech",
        description="Spectra, exceptional points and stability of the non-Hermitian magnomechanical model.",
        epilog=_epilog(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", metavar="{spectrum,ep-locate,steady-state,stability,sweep,figure}", parser_class=_Parser)

    p = sub.add_parser("spectrum", help="eigenvalues of H_eff at one point or along an axis", epilog=_epilog(), formatter_class=argparse.RawDescriptionHelpFormatter)
    _common(p)
    p.add_argument("--axis", nargs=4, metavar=("NAME", "LO", "HI", "N"))

    p = sub.add_parser("ep-locate", help="locate the spread minimum and classify the EP", epilog=_epilog(), formatter_class=argparse.RawDescriptionHelpFormatter)
    _common(p)
    p.add_argument("--axis-name", default="g_ma")
    p.add_argument("--bracket", nargs=2, type=float, required=True, metavar=("LO", "HI"))
    p.add_argument("--tol-rel", type=float, default=spectrum.DEFAULT_TOL_REL)

    p = sub.add_parser("steady-state", help="mean-field steady states", epilog=_epilog(), formatter_class=argparse.RawDescriptionHelpFormatter)
    _common(p)
    p.add_argument("--g-mb-bare", type=float, required=True)
    p.add_argument("--target", type=float, help="calibrate eta so that g_mb_bare |<m>| hits this value")

    p = sub.add_parser("stability", help="drift-matrix roots, Routh verdict, conditions and S", epilog=_epilog(), formatter_class=argparse.RawDescriptionHelpFormatter)
    _common(p)

    p = sub.add_parser("sweep", help="free-form 1-D or 2-D sweep", epilog=_epilog(), formatter_class=argparse.RawDescriptionHelpFormatter)
    _common(p)
    p.add_argument("--axis", nargs=4, action="append", required=True, metavar=("NAME", "LO", "HI", "N"))
    p.add_argument("--outputs", default="eigenvalues,spread", help=f"comma list from {sorted(sweep.OUTPUTS)}")
    p.add_argument("--g-mb-bare", type=float)

    p = sub.add_parser("figure", help="regenerate one figure panel as data + gnuplot script", epilog=_epilog(), formatter_class=argparse.RawDescriptionHelpFormatter)
    _common(p, with_preset=False)
    p.add_argument("figure_id", metavar="ID")
    p.add_argument("--no-plot-script", action="store_true")
    return parser


def _params(args, base: NormalizedParams | None = None) -> NormalizedParams:
    if base is None:
        preset = getattr(args, "preset", None)
        base = presets.get_preset(preset).spec.base if preset else NormalizedParams()
    params = load_config(args.config, base) if args.config else base
    overrides = {}
    for name in FIELDS:
        raw = getattr(args, f"set_{name}")
        if raw is not None:
            overrides[name] = coerce_value(name, raw)
    return validate(params.replace(**overrides))


def _axis(raw) -> sweep.Axis:
    name, lo, hi, n = raw
    return sweep.Axis(name, float(lo), float(hi), int(n))


def _emit(text: str, out) -> None:
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _serialize(result: sweep.SweepResult, fmt: str) -> str:
    if fmt == "csv":
        return sweep.records_to_csv(result.records)
    return sweep.records_to_json(result.records, result.spec, result.ep)


def _finish(result: sweep.SweepResult) -> int:
    if result.error_rate > 0.5:
        print(f"error: {result.error_rate:.0%} of grid points failed", file=sys.stderr)
        return 2
    return 0


def _cmd_spectrum(args) -> int:
    params = _params(args)
    if args.axis:
        spec = sweep.SweepSpec(params, (_axis(args.axis),), {"eigenvalues", "spread"})
        result = sweep.run_sweep(spec, args.threads)
        _emit(_serialize(result, args.format), args.out)
        return _finish(result)
    ev = spectrum.eigenvalues(spectrum.build_h_eff(params))
    if args.format == "json":
        text = json.dumps([[z.real, z.imag] for z in ev]) + "\n"
    else:
        text = "re,im\n" + "".join(f"{z.real:.17g},{z.imag:.17g}\n" for z in ev)
    _emit(text, args.out)
    return 0


def _cmd_ep(args) -> int:
    params = _params(args)
    report = spectrum.locate_ep(params, args.axis_name, args.bracket, args.tol_rel)
    _emit(json.dumps(report.as_dict(), indent=1) + "\n", args.out)
    return 0


def _cmd_steady(args) -> int:
    params = _params(args)
    doc = {}
    if args.target is not None:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            eta, info = steadystate.calibrate_drive(params, args.g_mb_bare, args.target, full_output=True)
        params = params.replace(eta=eta)
        doc["calibration"] = {"eta": eta, **info}
    doc["eta"] = params.eta
    doc["branches"] = [b.as_dict() for b in steadystate.solve_steady_state(params, args.g_mb_bare)]
    _emit(json.dumps(doc, indent=1) + "\n", args.out)
    return 0


def _cmd_stability(args) -> int:
    report = stability.analyze(_params(args))
    _emit(json.dumps(report.as_dict(), indent=1) + "\n", args.out)
    return 0


def _cmd_sweep(args) -> int:
    outputs = frozenset(s.strip() for s in args.outputs.split(",") if s.strip())
    spec = sweep.SweepSpec(_params(args), tuple(_axis(a) for a in args.axis), outputs, args.g_mb_bare)
    result = sweep.run_sweep(spec, args.threads)
    _emit(_serialize(result, args.format), args.out)
    return _finish(result)


def figure_spec(figure_id: str, params: NormalizedParams | None = None) -> sweep.SweepSpec:
    preset = presets.get_preset(figure_id)
    if params is None:
        return preset.spec
    return dataclasses.replace(preset.spec, base=params)


def _cmd_figure(args) -> int:
    preset = presets.get_preset(args.figure_id)
    spec = figure_spec(args.figure_id, _params(args, preset.spec.base))
    result = sweep.run_sweep(spec, args.threads)
    outdir = Path(args.out or os.environ.get(OUTDIR_ENV) or ".")
    data = sweep.write_records(result, args.format, outdir / f"{preset.stem}.{args.format}")
    written = [data]
    if not args.no_plot_script and args.format == "csv":
        script = outdir / f"{preset.stem}.gp"
        with open(script, "w", newline="\n") as fh:
            fh.write(presets.plot_script(preset, data.name))
        written.append(script)
    for path in written:
        print(path)
    return _finish(result)


COMMANDS = {
    "spectrum": _cmd_spectrum,
    "ep-locate": _cmd_ep,
    "steady-state": _cmd_steady,
    "stability": _cmd_stability,
    "sweep": _cmd_sweep,
    "figure": _cmd_figure,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help(sys.stderr)
            return 1
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ParameterError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
