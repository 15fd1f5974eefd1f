"""Canonical internal units and the conversions used at the config boundary.

Everything inside the library runs in micrometers, femtoseconds, rad/um and
rad/fs.  Config files accept the field-friendly units (mm, nm, fs, fs^2) and
are converted exactly once, on resolve.
"""

import math

# vacuum speed of light, um/fs
C_UM_PER_FS = 0.299792458

TWO_PI = 2.0 * math.pi

# FWHM of exp(-t^2 / (2 sigma^2)) is GAUSSIAN_FWHM_FACTOR * sigma
GAUSSIAN_FWHM_FACTOR = 2.0 * math.sqrt(2.0 * math.log(2.0))


def um_from_mm(x: float) -> float:
    return x * 1.0e3


def mm_from_um(x: float) -> float:
    return x * 1.0e-3


def um_from_nm(x: float) -> float:
    return x * 1.0e-3


def nm_from_um(x: float) -> float:
    return x * 1.0e3


def omega_from_vacuum_wavelength(lambda_um: float) -> float:
    """Angular frequency (rad/fs) of a vacuum wavelength (um)."""
    return TWO_PI * C_UM_PER_FS / lambda_um


def vacuum_wavelength_from_omega(omega_rad_fs: float) -> float:
    """Vacuum wavelength (um) of an angular frequency (rad/fs)."""
    return TWO_PI * C_UM_PER_FS / omega_rad_fs
