"""1-D and 2-D parameter sweeps with CSV/JSON serialization.

Grid points are evaluated independently (optionally in worker processes);
branch tracking and serialization run afterwards in grid order, so the
output does not depend on the number of workers.
"""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import spectrum as spec_mod
from .params import NormalizedParams, validate
from .spectrum import DEFAULT_TOL_REL
from .stability import build_drift, parametric_conditions, stability_from_roots, stability_parameter
from .steadystate import effective_magnon_detuning, solve_steady_state

OUTPUTS = frozenset({"eigenvalues", "spread", "ep", "S", "stability", "steady_state"})

CSV_TAIL = ["re1", "im1", "re2", "im2", "re3", "im3", "spread", "s_re", "s_im", "stable", "c1", "c2", "c3", "c4", "error"]


@dataclass(frozen=True)
class Axis:
    name: str
    lo: float
    hi: float
    n: int

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.n)


@dataclass(frozen=True)
class SweepSpec:
    base: NormalizedParams
    axes: tuple
    outputs: frozenset = frozenset({"eigenvalues", "spread"})
    g_mb_bare: float | None = None
    tol_rel: float = DEFAULT_TOL_REL

    def __post_init__(self):
        object.__setattr__(self, "axes", tuple(a if isinstance(a, Axis) else Axis(*a) for a in self.axes))
        object.__setattr__(self, "outputs", frozenset(self.outputs))

    def as_dict(self) -> dict:
        return {
            "base": self.base.as_dict(),
            "axes": [[a.name, a.lo, a.hi, a.n] for a in self.axes],
            "outputs": sorted(self.outputs),
            "g_mb_bare": self.g_mb_bare,
            "tol_rel": self.tol_rel,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SweepSpec":
        return cls(NormalizedParams(**d["base"]), tuple(Axis(*a) for a in d["axes"]), frozenset(d["outputs"]), d.get("g_mb_bare"), d.get("tol_rel", DEFAULT_TOL_REL))


def validate_spec(spec: SweepSpec) -> SweepSpec:
    base = validate(spec.base)
    if not 1 <= len(spec.axes) <= 2:
        raise ValueError("a sweep has one or two axes")
    names = [a.name for a in spec.axes]
    if len(set(names)) != len(names):
        raise ValueError(f"axis names must be distinct: {names}")
    for a in spec.axes:
        spec_mod.check_axis(a.name)
        if a.n < 2:
            raise ValueError(f"axis {a.name}: need at least 2 points")
        if not a.lo < a.hi:
            raise ValueError(f"axis {a.name}: need lo < hi")
    unknown = spec.outputs - OUTPUTS
    if unknown or not spec.outputs:
        raise ValueError(f"unknown or empty outputs: {sorted(unknown)}; choose from {sorted(OUTPUTS)}")
    if "steady_state" in spec.outputs and spec.g_mb_bare is None:
        raise ValueError("steady_state output needs g_mb_bare")
    return SweepSpec(base, spec.axes, spec.outputs, spec.g_mb_bare, spec.tol_rel)


@dataclass
class SweepRecord:
    axis_values: tuple
    eigenvalues: tuple | None = None
    spread: float | None = None
    s_value: complex | None = None
    stable: bool | None = None
    conditions: tuple | None = None
    error: str | None = None
    steady: dict | None = field(default=None, compare=False)

    def as_dict(self) -> dict:
        return {
            "axis_values": list(self.axis_values),
            "eigenvalues": None if self.eigenvalues is None else [[z.real, z.imag] for z in self.eigenvalues],
            "spread": self.spread,
            "s": None if self.s_value is None else [self.s_value.real, self.s_value.imag],
            "stable": self.stable,
            "conditions": None if self.conditions is None else list(self.conditions),
            "error": self.error,
            "steady": self.steady,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SweepRecord":
        return cls(
            axis_values=tuple(d["axis_values"]),
            eigenvalues=None if d["eigenvalues"] is None else tuple(complex(re, im) for re, im in d["eigenvalues"]),
            spread=d["spread"],
            s_value=None if d["s"] is None else complex(*d["s"]),
            stable=d["stable"],
            conditions=None if d["conditions"] is None else tuple(d["conditions"]),
            error=d["error"],
            steady=d.get("steady"),
        )


@dataclass
class SweepResult:
    """Records in grid order plus optional per-row EP reports."""

    spec: SweepSpec
    records: list
    ep: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.records)

    def __len__(self):
        return len(self.records)

    def __getitem__(self, i):
        return self.records[i]

    @property
    def error_rate(self) -> float:
        return sum(r.error is not None for r in self.records) / len(self.records)


def grid_points(spec: SweepSpec) -> list:
    """Row-major grid: the last axis varies fastest."""
    grids = [a.values() for a in spec.axes]
    if len(grids) == 1:
        return [(float(x),) for x in grids[0]]
    return [(float(x), float(y)) for x in grids[0] for y in grids[1]]


def evaluate_point(spec: SweepSpec, values: tuple) -> SweepRecord:
    """Evaluate one grid point; failures are captured, never raised."""
    record = SweepRecord(axis_values=tuple(values))
    try:
        params = validate(spec.base.replace(**{a.name: v for a, v in zip(spec.axes, values)}))
        delta_m_eff = None
        if "steady_state" in spec.outputs:
            state = solve_steady_state(params, spec.g_mb_bare)[0]
            params = params.replace(g_mb_eff=state.g_mb_eff_out)
            delta_m_eff = effective_magnon_detuning(params, spec.g_mb_bare, state)
            record.steady = state.as_dict()
        if spec.outputs & {"eigenvalues", "spread", "ep"}:
            ev = spec_mod.eigenvalues(spec_mod.build_h_eff(params))
            record.eigenvalues = tuple(complex(z) for z in ev)
        if spec.outputs & {"S", "stability"}:
            record.conditions = parametric_conditions(params, delta_m_eff).as_tuple()
        if "S" in spec.outputs:
            record.s_value = complex(stability_parameter(params, delta_m_eff))
        if "stability" in spec.outputs:
            report = stability_from_roots(build_drift(params, delta_m_eff))
            record.stable = bool(report.stable_by_roots)
    except Exception as exc:  # per-point failures are data, not aborts
        record.error = f"{type(exc).__name__}: {exc}"
    return record


def _evaluate_chunk(spec, chunk):
    return [evaluate_point(spec, v) for v in chunk]


def _track_rows(spec: SweepSpec, records: list) -> None:
    """Branch-track eigenvalues along the fastest axis, row by row."""
    row = spec.axes[-1].n
    for start in range(0, len(records), row):
        segment = records[start : start + row]
        prev = None
        for rec in segment:
            if rec.eigenvalues is None:
                prev = None
                continue
            if prev is None:
                cur = tuple(sorted(rec.eigenvalues, key=lambda z: (z.real, z.imag)))
            else:
                perm = spec_mod.track_branches(prev, rec.eigenvalues)
                cur = tuple(rec.eigenvalues[k] for k in perm)
            rec.eigenvalues = cur
            prev = cur
            if "spread" in spec.outputs or "ep" in spec.outputs:
                rec.spread = spec_mod.spread(cur)
        if "eigenvalues" not in spec.outputs:
            for rec in segment:
                rec.eigenvalues = None


def _locate_rows(spec: SweepSpec) -> list:
    fast = spec.axes[-1]
    reports = []
    outer = [()] if len(spec.axes) == 1 else [(float(v),) for v in spec.axes[0].values()]
    for o in outer:
        params = spec.base.replace(**{spec.axes[0].name: o[0]}) if o else spec.base
        try:
            rep = spec_mod.locate_ep(params, fast.name, (fast.lo, fast.hi), spec.tol_rel).as_dict()
        except Exception as exc:
            rep = {"error": f"{type(exc).__name__}: {exc}"}
        if o:
            rep = {spec.axes[0].name: o[0], **rep}
        reports.append(rep)
    return reports


def run_sweep(spec: SweepSpec, threads: int = 1) -> SweepResult:
    spec = validate_spec(spec)
    points = grid_points(spec)
    if threads > 1 and len(points) > 1:
        size = max(1, math.ceil(len(points) / (4 * threads)))
        chunks = [points[i : i + size] for i in range(0, len(points), size)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            records = [r for part in pool.map(_evaluate_chunk, [spec] * len(chunks), chunks) for r in part]
    else:
        records = [evaluate_point(spec, v) for v in points]
    _track_rows(spec, records)
    ep = _locate_rows(spec) if "ep" in spec.outputs else []
    return SweepResult(spec, records, ep)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _num(x) -> str:
    return "" if x is None else format(x, ".17g")


def _flag(b) -> str:
    return "" if b is None else ("1" if b else "0")


def csv_header(n_axes: int) -> list:
    return ["axis1", "axis2"][:n_axes] + CSV_TAIL


def records_to_csv(records, n_axes: int | None = None) -> str:
    records = list(records)
    if not records:
        raise ValueError("no records to write")
    n_axes = n_axes or len(records[0].axis_values)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(csv_header(n_axes))
    for r in records:
        ev = r.eigenvalues or (None, None, None)
        cond = r.conditions or (None,) * 4
        row = [_num(v) for v in r.axis_values]
        for z in ev:
            row += ["", ""] if z is None else [_num(z.real), _num(z.imag)]
        row.append(_num(r.spread))
        row += ["", ""] if r.s_value is None else [_num(r.s_value.real), _num(r.s_value.imag)]
        row.append(_flag(r.stable))
        row += [_flag(c) for c in cond]
        row.append(r.error or "")
        writer.writerow(row)
    return buf.getvalue()


def records_to_json(records, spec: SweepSpec | None = None, ep=None) -> str:
    doc = {
        "spec": None if spec is None else spec.as_dict(),
        "records": [r.as_dict() for r in records],
    }
    if ep:
        doc["ep"] = ep
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def write_records(records, fmt: str, destination, spec: SweepSpec | None = None) -> Path:
    """Write records as ``csv`` or ``json``; returns the destination path."""
    ep = None
    if isinstance(records, SweepResult):
        spec = spec or records.spec
        ep = records.ep
        records = records.records
    records = list(records)
    if not records:
        raise ValueError("no records to write")
    if fmt == "csv":
        text = records_to_csv(records)
    elif fmt == "json":
        text = records_to_json(records, spec, ep)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    path = Path(destination)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(text)
    return path


def _parse_flag(s):
    return None if s == "" else s == "1"


def _parse_num(s):
    return None if s == "" else float(s)


def parse_csv(text: str) -> list:
    rows = list(csv.reader(io.StringIO(text)))
    header, rows = rows[0], rows[1:]
    n_axes = len(header) - len(CSV_TAIL)
    out = []
    for row in rows:
        d = dict(zip(header, row))
        axis_values = tuple(float(row[i]) for i in range(n_axes))
        if d["re1"] == "":
            ev = None
        else:
            ev = tuple(complex(float(d[f"re{k}"]), float(d[f"im{k}"])) for k in (1, 2, 3))
        s = None if d["s_re"] == "" else complex(float(d["s_re"]), float(d["s_im"]))
        cond = tuple(_parse_flag(d[f"c{k}"]) for k in (1, 2, 3, 4))
        out.append(
            SweepRecord(
                axis_values=axis_values,
                eigenvalues=ev,
                spread=_parse_num(d["spread"]),
                s_value=s,
                stable=_parse_flag(d["stable"]),
                conditions=None if all(c is None for c in cond) else cond,
                error=d["error"] or None,
            )
        )
    return out


def read_records(path) -> list:
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        return [SweepRecord.from_dict(d) for d in json.loads(text)["records"]]
    return parse_csv(text)
