"""Run configuration: INI-style files with strict key checking.

Every knob has a default, so an empty file (or no file at all) describes the
reference setup.  Unknown sections or keys are rejected rather than ignored;
a typo that silently reverts a parameter to its default would be worse than
an error.  Values keep their parsed Python types, and ``emit_config`` writes
a file that parses back to an equal configuration.
"""

import configparser
import math
from dataclasses import dataclass

from .dispersion import Dispersion
from .errors import ConfigError
from .materials import load_material
from .pdc import FilterGeometryConfig, PumpConfig

_POSITIVE = ("must be > 0", lambda v: v > 0)
_NON_NEGATIVE = ("must be >= 0", lambda v: v >= 0)
_POSITIVE_FINITE = ("must be > 0 and finite",
                    lambda v: v > 0 and math.isfinite(v))
_ANY = ("", lambda v: True)

# section -> key -> (type tag, default, (constraint text, predicate))
_SCHEMA = {
    "crystal": {
        "material": ("str", "bbo", _ANY),
        "length_mm": ("float", 5.0, _POSITIVE_FINITE),
        "pump_wavelength_nm": ("float", 532.0, _POSITIVE_FINITE),
        "cut_angle_deg": ("angle", "auto", _ANY),
    },
    "pump": {
        "tau_p_fs": ("float", 200.0, _POSITIVE_FINITE),
        "waist_mm": ("float", math.inf, _POSITIVE),
        "amplitude": ("float", 1.0, _POSITIVE_FINITE),
    },
    "filter": {
        "q_c_q0": ("float", 6.0, _POSITIVE_FINITE),
        "delta_q_q0": ("float", 4.0, _POSITIVE_FINITE),
        "omega_c_omega0": ("float", 15.0, _POSITIVE_FINITE),
        "focal_length_mm": ("float", 50.0, _POSITIVE_FINITE),
        "gdd_fs2": ("float", 5233.0, ("must be finite", math.isfinite)),
        "t_test_fs": ("float", 0.0, ("must be finite", math.isfinite)),
        "t_ref_fs": ("float", 0.0, ("must be finite", math.isfinite)),
    },
    "grid": {
        "spectral_points": ("int", 2048, ("must be >= 16", lambda v: v >= 16)),
        "x1_points": ("int", 101, ("must be >= 1", lambda v: v >= 1)),
        "x1_margin": ("float", 0.1, _NON_NEGATIVE),
        "phimap_q_points": ("int", 241, ("must be >= 2", lambda v: v >= 2)),
        "phimap_omega_points": ("int", 601, ("must be >= 2", lambda v: v >= 2)),
    },
    "gauss": {
        "sigma_s": ("float", 1.61, _POSITIVE_FINITE),
    },
    "output": {
        "matrix": ("bool", False, _ANY),
    },
}

_TRUE_WORDS = {"1", "true", "yes", "on"}
_FALSE_WORDS = {"0", "false", "no", "off"}


def _convert(section: str, key: str, raw):
    """Parse one raw string according to the schema; validate the result."""
    kind, _, (constraint, ok) = _SCHEMA[section][key]
    if isinstance(raw, str):
        text = raw.strip()
        try:
            if kind == "int":
                value = int(text)
            elif kind == "float":
                value = float(text)
            elif kind == "bool":
                low = text.lower()
                if low in _TRUE_WORDS:
                    value = True
                elif low in _FALSE_WORDS:
                    value = False
                else:
                    raise ValueError(f"not a boolean: {text!r}")
            elif kind == "angle":
                value = text if text.lower() == "auto" else float(text)
            else:
                value = text
        except ValueError as exc:
            raise ConfigError(f"{section}.{key}: {exc}") from None
    else:
        value = raw
        if kind == "int" and not isinstance(value, int):
            raise ConfigError(f"{section}.{key} must be an integer, got {value!r}")
        if kind == "float":
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"{section}.{key} must be a number, got {value!r}")
            value = float(value)
        if kind == "bool" and not isinstance(value, bool):
            raise ConfigError(f"{section}.{key} must be a boolean, got {value!r}")
        if kind == "angle":
            if isinstance(value, bool) or not isinstance(value, (int, float, str)):
                raise ConfigError(f"{section}.{key} must be 'auto' or a number, got {value!r}")
            if isinstance(value, str) and value.lower() != "auto":
                raise ConfigError(f"{section}.{key} must be 'auto' or a number, got {value!r}")
            if isinstance(value, (int, float)):
                value = float(value)
        if kind == "str" and not isinstance(value, str):
            raise ConfigError(f"{section}.{key} must be a string, got {value!r}")
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        if not ok(value):
            raise ConfigError(f"{section}.{key} = {value}: {constraint}")
    if kind == "angle" and isinstance(value, float):
        if not (0.0 < value < 90.0):
            raise ConfigError(
                f"crystal.cut_angle_deg = {value}: must be 'auto' or an angle "
                "strictly between 0 and 90 degrees")
    return value


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved configuration values, keyed section.name."""

    values: tuple  # sorted ((section, key, value), ...) for hashable equality

    def get(self, section: str, key: str):
        for s, k, v in self.values:
            if s == section and k == key:
                return v
        raise KeyError(f"{section}.{key}")

    def as_dict(self) -> dict:
        out: dict = {}
        for s, k, v in self.values:
            out.setdefault(s, {})[k] = v
        return out


def _make_config(mapping: dict) -> RunConfig:
    items = []
    for section in _SCHEMA:
        for key in _SCHEMA[section]:
            items.append((section, key, mapping[section][key]))
    return RunConfig(values=tuple(items))


def default_config() -> RunConfig:
    filled = {s: {k: spec[1] for k, spec in keys.items()}
              for s, keys in _SCHEMA.items()}
    return _make_config(filled)


def parse_config_text(text: str) -> RunConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"),
                                       interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config syntax: {exc}") from None
    filled = {s: {k: spec[1] for k, spec in keys.items()}
              for s, keys in _SCHEMA.items()}
    for section in parser.sections():
        if section not in _SCHEMA:
            known = ", ".join(sorted(_SCHEMA))
            raise ConfigError(
                f"unknown config section [{section}] (known sections: {known})")
        for key, raw in parser.items(section):
            if key not in _SCHEMA[section]:
                known = ", ".join(sorted(_SCHEMA[section]))
                raise ConfigError(
                    f"unknown config key {section}.{key} "
                    f"(known keys in [{section}]: {known})")
            filled[section][key] = _convert(section, key, raw)
    return _make_config(filled)


def parse_config(path) -> RunConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config_text(fh.read())


def emit_config(cfg: RunConfig) -> str:
    """Serialize so that parse_config_text(emit_config(cfg)) == cfg."""
    lines = []
    data = cfg.as_dict()
    for section in _SCHEMA:
        lines.append(f"[{section}]")
        for key in _SCHEMA[section]:
            value = data[section][key]
            if isinstance(value, bool):
                text = "true" if value else "false"
            elif isinstance(value, float):
                text = repr(value)
            else:
                text = str(value)
            lines.append(f"{key} = {text}")
        lines.append("")
    return "\n".join(lines)


def with_value(cfg: RunConfig, dotted_key: str, value) -> RunConfig:
    """Copy of ``cfg`` with one ``section.key`` replaced and revalidated."""
    if "." not in dotted_key:
        raise ConfigError(f"expected section.key, got {dotted_key!r}")
    section, key = dotted_key.split(".", 1)
    if section not in _SCHEMA or key not in _SCHEMA[section]:
        raise ConfigError(f"unknown config key {dotted_key}")
    converted = _convert(section, key, value)
    filled = cfg.as_dict()
    filled[section][key] = converted
    return _make_config(filled)


@dataclass
class ResolvedSetup:
    """Physics objects and grid arguments built from one RunConfig."""

    disp: Dispersion
    pump: PumpConfig
    filt: FilterGeometryConfig
    grid_kwargs: dict
    phimap_points: tuple
    sigma_s: float
    echo: dict


def resolve(cfg: RunConfig) -> ResolvedSetup:
    """Instantiate the physics layer for a configuration.

    Raises ConfigError for parameter combinations the pipeline rejects and
    DomainError when the material itself cannot support the setup.
    """
    d = cfg.as_dict()
    material = load_material(d["crystal"]["material"])
    cut = d["crystal"]["cut_angle_deg"]
    cut_rad = None if isinstance(cut, str) else math.radians(cut)
    disp = Dispersion(
        material,
        length_um=d["crystal"]["length_mm"] * 1e3,
        pump_wavelength_um=d["crystal"]["pump_wavelength_nm"] * 1e-3,
        cut_angle_rad=cut_rad,
    )
    q0, omega0 = disp.characteristic_scales()
    pump = PumpConfig(
        tau_p_fs=d["pump"]["tau_p_fs"],
        waist_um=d["pump"]["waist_mm"] * 1e3,
        amplitude=d["pump"]["amplitude"],
    )
    filt = FilterGeometryConfig(
        q_c=d["filter"]["q_c_q0"] * q0,
        delta_q=d["filter"]["delta_q_q0"] * q0,
        omega_c=d["filter"]["omega_c_omega0"] * omega0,
        focal_length_um=d["filter"]["focal_length_mm"] * 1e3,
        gdd_fs2=d["filter"]["gdd_fs2"],
        t_test_fs=d["filter"]["t_test_fs"],
        t_ref_fs=d["filter"]["t_ref_fs"],
    )
    grid_kwargs = {
        "spectral_points": d["grid"]["spectral_points"],
        "x1_points": d["grid"]["x1_points"],
        "x1_margin": d["grid"]["x1_margin"],
    }
    summ = disp.summary()
    echo = {}
    for section, keys in d.items():
        for key, value in keys.items():
            echo[f"{section}.{key}"] = value
    echo.update({
        "derived.theta_pm_deg": math.degrees(disp.theta_pm),
        "derived.q0_rad_mm": q0 * 1e3,
        "derived.omega0_rad_ps": omega0 * 1e3,
        "derived.k0_rad_um": summ.k0,
        "derived.x_image_scale_um": filt.focal_length_um * q0 / summ.k0,
        "derived.signal_wavelength_um": 2.0 * d["crystal"]["pump_wavelength_nm"] * 1e-3,
    })
    return ResolvedSetup(
        disp=disp,
        pump=pump,
        filt=filt,
        grid_kwargs=grid_kwargs,
        phimap_points=(d["grid"]["phimap_q_points"],
                       d["grid"]["phimap_omega_points"]),
        sigma_s=d["gauss"]["sigma_s"],
        echo=echo,
    )
