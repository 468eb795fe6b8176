"""Physical and dimensionless parameter sets for the cavity magnomechanical model.

Everything downstream works with :class:`NormalizedParams`, where every rate
is measured in units of the cavity detuning ``delta_a``.  :class:`PhysicalParams`
together with :func:`physical_to_normalized` is a convenience path from SI
quantities.
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from pathlib import Path

HBAR = 1.054571817e-34  # J s
TWO_PI = 2.0 * math.pi

# Model-variant switches carried alongside the numeric parameters.
FLAG_CHOICES = {
    "dissipation_sign": (1, -1),
    "steady_phonon_term": ("as_printed", "with_i"),
    "drift_sign_convention": ("as_printed", "canonical"),
}


class ParameterError(ValueError):
    """Raised when a parameter set violates one of its invariants."""


@dataclass(frozen=True)
class NormalizedParams:
    """Dimensionless parameters, all rates in units of ``delta_a``.

    The defaults are the baseline used for the eigenvalue figures:
    kappa_a = kappa_m = 0.08, G_mb = 0.09, gamma_b = 1e-3, theta = pi/2 and a
    traveling field matched to the magnon-photon coupling (G_ma = Gamma = 1).
    """

    delta_a: float = 1.0
    delta_m: float = 1.0
    delta_b: float = 1.0
    kappa_a: float = 0.08
    kappa_m: float = 0.08
    gamma_b: float = 0.001
    g_ma: float = 1.0
    g_mb_eff: float = 0.09
    gamma_nh: float = 1.0
    theta: float = math.pi / 2
    omega_b_ratio: float = 1.0
    eta: float = 0.0
    dissipation_sign: int = 1
    steady_phonon_term: str = "as_printed"
    drift_sign_convention: str = "as_printed"

    def replace(self, **changes) -> "NormalizedParams":
        return dataclasses.replace(self, **changes)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


NUMERIC_FIELDS = tuple(
    f.name for f in dataclasses.fields(NormalizedParams) if f.name not in FLAG_CHOICES
)
#: fields a sweep axis may vary (delta_a is the fixed unit)
SWEEPABLE_FIELDS = tuple(name for name in NUMERIC_FIELDS if name != "delta_a")

_NONNEGATIVE = {
    "kappa_a": "negative decay",
    "kappa_m": "negative decay",
    "gamma_b": "negative decay",
    "g_ma": "negative coupling",
    "g_mb_eff": "negative coupling",
    "gamma_nh": "negative traveling-field strength",
    "eta": "negative drive",
}


def validate(params: NormalizedParams) -> NormalizedParams:
    """Check the invariants of ``params`` and return it with theta reduced mod 2*pi.

    Raises :class:`ParameterError` naming the first violated invariant.
    """
    for name in NUMERIC_FIELDS:
        value = getattr(params, name)
        if not math.isfinite(value):
            raise ParameterError(f"non-finite value: {name}={value!r}")
    if params.delta_a != 1.0:
        raise ParameterError(f"delta_a must be exactly 1 (got {params.delta_a!r})")
    for name, message in _NONNEGATIVE.items():
        if getattr(params, name) < 0:
            raise ParameterError(f"{message}: {name}={getattr(params, name)!r}")
    if params.omega_b_ratio <= 0:
        raise ParameterError(f"non-positive phonon frequency: omega_b_ratio={params.omega_b_ratio!r}")
    for name, choices in FLAG_CHOICES.items():
        if getattr(params, name) not in choices:
            raise ParameterError(f"{name} must be one of {choices} (got {getattr(params, name)!r})")
    theta = math.fmod(params.theta, TWO_PI)
    if theta < 0:
        theta += TWO_PI
    if theta >= TWO_PI:  # fmod of a tiny negative number can round up to 2*pi
        theta = 0.0
    if theta == params.theta:
        return params
    return params.replace(theta=theta)


@dataclass(frozen=True)
class PhysicalParams:
    """SI-unit parameters.  Frequencies and rates are angular (rad/s)."""

    omega_a: float
    omega_m: float
    omega_b: float
    omega_0: float
    kappa_a: float
    kappa_m: float
    gamma_b: float
    cavity_length: float
    drive_power: float
    traveling_amplitude: float = 0.0
    theta: float = math.pi / 2
    # Quoted experimental couplings; kept for reference, the conversion
    # recomputes G_ma and G_b from the zero-point-motion formulas.
    g_ma_phys: float | None = None
    g_mb_phys: float | None = None


def validate_physical(p: PhysicalParams) -> PhysicalParams:
    for name in ("omega_a", "omega_m", "omega_b", "omega_0", "kappa_a", "kappa_m", "gamma_b"):
        value = getattr(p, name)
        if not (value > 0 and math.isfinite(value)):
            raise ParameterError(f"{name} must be strictly positive (got {value!r})")
    if not p.cavity_length > 0:
        raise ParameterError(f"cavity_length must be positive (got {p.cavity_length!r})")
    if p.drive_power < 0:
        raise ParameterError(f"negative drive power: {p.drive_power!r}")
    if p.traveling_amplitude < 0:
        raise ParameterError(f"negative traveling amplitude: {p.traveling_amplitude!r}")
    theta = p.theta % TWO_PI
    return p if theta == p.theta else dataclasses.replace(p, theta=theta)


def zero_point_motion(mass: float, omega: float) -> float:
    """sqrt(hbar / (2 m omega))"""
    return math.sqrt(HBAR / (2.0 * mass * omega))


def normalize_rates(
    delta_a: float,
    delta_m: float,
    delta_b: float,
    kappa_a: float,
    kappa_m: float,
    gamma_b: float,
    g_ma: float,
    g_mb: float,
    gamma_nh: float,
    omega_b: float,
    eta: float,
    theta: float,
) -> NormalizedParams:
    """Express dimensional rates in units of ``delta_a``.

    Detunings are divided by ``delta_a`` (so the unit is exactly 1); the
    nonnegative quantities are divided by ``|delta_a|`` so that their signs
    survive a red-detuned cavity.
    """
    if delta_a == 0:
        raise ParameterError("delta_a = 0: the normalization unit vanishes")
    unit = abs(delta_a)
    return NormalizedParams(
        delta_a=1.0,
        delta_m=delta_m / delta_a,
        delta_b=delta_b / delta_a,
        kappa_a=kappa_a / unit,
        kappa_m=kappa_m / unit,
        gamma_b=gamma_b / unit,
        g_ma=g_ma / unit,
        g_mb_eff=g_mb / unit,
        gamma_nh=gamma_nh / unit,
        theta=theta,
        omega_b_ratio=omega_b / unit,
        eta=eta / unit,
    )


def physical_to_normalized(
    p: PhysicalParams, mode_mass_magnon: float, mode_mass_phonon: float
) -> NormalizedParams:
    """Convert SI parameters to the dimensionless set.

    Couplings come from the zero-point motions ``x = sqrt(hbar / 2 m omega)``:
    ``G_ma = sqrt(2) (omega_a / L) x_m`` and ``G_b = sqrt(2) (omega_a / L) x_b``.
    The traveling-field strength is ``alpha sqrt(hbar / (omega_m m_m))`` and
    the drive ``sqrt(P kappa_m / (hbar omega_0))``.
    """
    p = validate_physical(p)
    if not (mode_mass_magnon > 0 and mode_mass_phonon > 0):
        raise ParameterError("mode masses must be positive")
    x_m = zero_point_motion(mode_mass_magnon, p.omega_m)
    x_b = zero_point_motion(mode_mass_phonon, p.omega_b)
    g_ma = math.sqrt(2.0) * (p.omega_a / p.cavity_length) * x_m
    g_b = math.sqrt(2.0) * (p.omega_a / p.cavity_length) * x_b
    gamma_nh = p.traveling_amplitude * math.sqrt(HBAR / (p.omega_m * mode_mass_magnon))
    eta = math.sqrt(p.drive_power * p.kappa_m / (HBAR * p.omega_0))
    return normalize_rates(
        delta_a=p.omega_a - p.omega_0,
        delta_m=p.omega_m - p.omega_0,
        delta_b=p.omega_b - p.omega_0,
        kappa_a=p.kappa_a,
        kappa_m=p.kappa_m,
        gamma_b=p.gamma_b,
        g_ma=g_ma,
        g_mb=g_b,
        gamma_nh=gamma_nh,
        omega_b=p.omega_b,
        eta=eta,
        theta=p.theta,
    )


def yig_physical_params(**overrides) -> PhysicalParams:
    """The quoted YIG-sphere parameter set.

    The cavity linewidth is not quoted; ``kappa_a`` defaults to the magnon
    linewidth.  ``drive_power`` is 0.0164 mW.
    """
    values = dict(
        omega_a=TWO_PI * 10e9,
        omega_m=TWO_PI * 10e9,
        omega_b=TWO_PI * 40e9,
        omega_0=3.8 * TWO_PI * 1e14,
        kappa_a=TWO_PI * 1.5e6,
        kappa_m=TWO_PI * 1.5e6,
        gamma_b=TWO_PI * 1.5e6 / 1000,
        cavity_length=12.5e-4,
        drive_power=0.0164e-3,
        traveling_amplitude=0.0,
        theta=math.pi / 2,
        g_ma_phys=4.3 * TWO_PI * 1e9,
        g_mb_phys=TWO_PI * 2e6,
    )
    values.update(overrides)
    return PhysicalParams(**values)


# ---------------------------------------------------------------------------
# flat ``key = value`` config files
# ---------------------------------------------------------------------------

def coerce_value(key: str, raw: str):
    """Parse a config/override string for the field ``key``."""
    if key not in {f.name for f in dataclasses.fields(NormalizedParams)}:
        raise ParameterError(f"unknown parameter: {key!r}")
    raw = raw.strip()
    if key == "dissipation_sign":
        try:
            return int(float(raw))
        except ValueError:
            raise ParameterError(f"{key}: expected +1 or -1, got {raw!r}") from None
    if key in FLAG_CHOICES:
        return raw.strip("'\"")
    try:
        return float(raw)
    except ValueError:
        raise ParameterError(f"{key}: expected a number, got {raw!r}") from None


def parse_config(text: str) -> dict:
    """Parse flat ``key = value`` lines.  ``#`` starts a comment."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterError(f"line {lineno}: expected 'key = value'")
        key, raw = (s.strip() for s in line.split("=", 1))
        values[key] = coerce_value(key, raw)
    return values


def load_config(path, base: NormalizedParams | None = None) -> NormalizedParams:
    values = parse_config(Path(path).read_text())
    return validate((base or NormalizedParams()).replace(**values))


def dump_config(params: NormalizedParams) -> str:
    lines = []
    for key, value in params.as_dict().items():
        lines.append(f"{key} = {value!r}" if isinstance(value, float) else f"{key} = {value}")
    return "\n".join(lines) + "\n"
