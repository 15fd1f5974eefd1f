"""Sellmeier material tables.

A material table is a plain-text key=value file carrying one coefficient set
per polarization (ordinary and extraordinary-principal), the validated
wavelength range, and a source note.  The bundled ``bbo.dat`` ships the
beta-barium-borate coefficients; users may point the config at their own file.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

import numpy as np

from .errors import ConfigError, DomainError


@dataclass(frozen=True)
class SellmeierCoefficients:
    """Coefficients of n^2(lambda) = b1 + b2/(lambda^2 - b3) - b4*lambda^2, lambda in um."""

    b1: float
    b2: float
    b3: float
    b4: float

    def n_squared(self, lambda_um):
        lam2 = np.square(lambda_um)
        return self.b1 + self.b2 / (lam2 - self.b3) - self.b4 * lam2


@dataclass(frozen=True)
class MaterialTable:
    name: str
    lambda_min_um: float
    lambda_max_um: float
    ordinary: SellmeierCoefficients
    extraordinary: SellmeierCoefficients
    source: str = ""

    def validate_wavelength(self, lambda_um) -> None:
        lam = np.asarray(lambda_um, dtype=float)
        if np.any(lam < self.lambda_min_um) or np.any(lam > self.lambda_max_um):
            bad = lam if lam.ndim == 0 else lam[(lam < self.lambda_min_um) | (lam > self.lambda_max_um)][0]
            raise DomainError(
                f"wavelength {float(bad):.6g} um outside the validated range "
                f"[{self.lambda_min_um:g}, {self.lambda_max_um:g}] um for material {self.name}"
            )

    def coefficients(self, polarization: str) -> SellmeierCoefficients:
        if polarization == "ordinary":
            return self.ordinary
        if polarization == "extraordinary":
            return self.extraordinary
        raise ConfigError(f"unknown polarization {polarization!r}")


def _check_table(table: MaterialTable) -> MaterialTable:
    # invariant checks over the validated range: no pole crossing, n^2 > 1
    lam = np.linspace(table.lambda_min_um, table.lambda_max_um, 257)
    for pol in ("ordinary", "extraordinary"):
        coef = table.coefficients(pol)
        if np.any(lam**2 <= coef.b3):
            raise ConfigError(
                f"material {table.name}: {pol} pole lambda^2 <= b3 inside the validated range"
            )
        if np.any(coef.n_squared(lam) <= 1.0):
            raise ConfigError(
                f"material {table.name}: {pol} n^2 <= 1 inside the validated range"
            )
    if not 0 < table.lambda_min_um < table.lambda_max_um:
        raise ConfigError(f"material {table.name}: bad wavelength range")
    return table


def parse_material_text(text: str, name_hint: str = "custom") -> MaterialTable:
    """Parse the key=value material format; '#' starts a comment."""
    values: dict[str, str] = {}
    comments: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            comments.append(line.lstrip("# "))
            continue
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"material table line {lineno}: expected key = value, got {raw!r}")
        key, _, val = line.partition("=")
        values[key.strip()] = val.strip()

    def fget(key: str) -> float:
        if key not in values:
            raise ConfigError(f"material table: missing key {key}")
        try:
            return float(values[key])
        except ValueError:
            raise ConfigError(f"material table: key {key} has non-numeric value {values[key]!r}") from None

    def coefs(prefix: str) -> SellmeierCoefficients:
        return SellmeierCoefficients(
            b1=fget(f"{prefix}.b1"),
            b2=fget(f"{prefix}.b2"),
            b3=fget(f"{prefix}.b3"),
            b4=fget(f"{prefix}.b4"),
        )

    known = {"material", "lambda_min_um", "lambda_max_um"} | {
        f"{p}.b{i}" for p in ("ordinary", "extraordinary") for i in (1, 2, 3, 4)
    }
    unknown = set(values) - known
    if unknown:
        raise ConfigError(f"material table: unknown key {sorted(unknown)[0]}")

    table = MaterialTable(
        name=values.get("material", name_hint),
        lambda_min_um=fget("lambda_min_um"),
        lambda_max_um=fget("lambda_max_um"),
        ordinary=coefs("ordinary"),
        extraordinary=coefs("extraordinary"),
        source=" / ".join(c for c in comments if c),
    )
    return _check_table(table)


def load_material(name_or_path: str = "bbo") -> MaterialTable:
    """Load a bundled material by name, or a user table by file path."""
    if name_or_path.lower() == "bbo":
        text = resources.files("t2x.data").joinpath("bbo.dat").read_text(encoding="utf-8")
        return parse_material_text(text, name_hint="BBO")
    try:
        with open(name_or_path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except FileNotFoundError:
        raise ConfigError(f"material table not found: {name_or_path}") from None
    return parse_material_text(text, name_hint=name_or_path)
