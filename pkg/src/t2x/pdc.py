"""Biphoton amplitude construction.

The downconverted pair amplitude factorizes into a pump spectral envelope and
the crystal's phase-matching response

    J(q1, O1, q2, O2) = E_p(q1+q2, O1+O2) * exp(-i D L / 2) * sinc(D L / 2)

with D the exact longitudinal mismatch (dispersion module).  Hard rectangular
mirror/frequency filters select the two detection arms, and an optional
output-face propagation phase produces the amplitude at the crystal exit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dispersion import Dispersion
from .errors import ConfigError
from .units import TWO_PI

# below this |x| the direct sin(x)/x loses accuracy to cancellation
SINC_SERIES_THRESHOLD = 1.0e-4

_JSAA_STAGES = ("raw", "filtered", "propagated")


@dataclass(frozen=True)
class PumpConfig:
    """Fourier-limited Gaussian pump pulse.

    tau_p_fs is the intensity FWHM; the spectral half-width at 1/e of the
    field envelope is Omega_p = sqrt(2 ln 2) / tau_p.  An infinite waist is a
    first-class state and means a plane-wave pump.
    """

    tau_p_fs: float
    waist_um: float = math.inf
    amplitude: float = 1.0

    def __post_init__(self):
        if not self.tau_p_fs > 0.0:
            raise ConfigError(f"pump.tau_p_fs = {self.tau_p_fs:g} violates: must be > 0")
        if not self.waist_um > 0.0:
            raise ConfigError(f"pump.waist_mm = {self.waist_um / 1e3:g} violates: must be > 0")
        if not math.isfinite(self.amplitude):
            raise ConfigError("pump.amplitude violates: must be finite")

    @property
    def omega_p(self) -> float:
        return math.sqrt(2.0 * math.log(2.0)) / self.tau_p_fs

    @property
    def q_p(self) -> float:
        return 0.0 if math.isinf(self.waist_um) else 1.0 / self.waist_um

    @property
    def plane_wave(self) -> bool:
        return math.isinf(self.waist_um)


@dataclass(frozen=True)
class FilterGeometryConfig:
    """Mirror band, frequency filter, imaging lens and test-arm response.

    q_c, delta_q in rad/um; omega_c in rad/fs; the reference arm passes the
    closed rectangle |q - q_c| <= delta_q, 0 <= O <= 2 omega_c and the test
    arm its point reflection.  gdd_fs2 is the test-arm group delay dispersion;
    t_test_fs / t_ref_fs are the arm delays.
    """

    q_c: float
    delta_q: float
    omega_c: float
    focal_length_um: float
    gdd_fs2: float
    t_test_fs: float = 0.0
    t_ref_fs: float = 0.0

    def __post_init__(self):
        if not self.delta_q > 0.0:
            raise ConfigError(f"filter.delta_q_q0 = {self.delta_q:g} rad/um violates: must be > 0")
        if not self.q_c > self.delta_q:
            raise ConfigError(
                f"filter.q_c_q0 = {self.q_c:g} rad/um violates: must exceed delta_q "
                "(mirror band excludes q <= 0)"
            )
        if not self.omega_c > 0.0:
            raise ConfigError(f"filter.omega_c_omega0 = {self.omega_c:g} rad/fs violates: must be > 0")
        if not self.focal_length_um > 0.0:
            raise ConfigError(f"filter.focal_length_mm = {self.focal_length_um / 1e3:g} violates: must be > 0")


def pump_envelope(pump: PumpConfig, q_rad_um, detuning_rad_fs):
    """Gaussian pump spectral amplitude A0 exp(-q^2/4q_p^2 - O^2/4O_p^2).

    With an infinite waist the transverse factor is identically 1: the
    plane-wave delta has been factored out of the pair amplitude and the
    residual q-dependence is flat.
    """
    om = np.asarray(detuning_rad_fs, dtype=float)
    out = pump.amplitude * np.exp(-(om / (2.0 * pump.omega_p)) ** 2)
    if not pump.plane_wave:
        q = np.asarray(q_rad_um, dtype=float)
        out = out * np.exp(-(q / (2.0 * pump.q_p)) ** 2)
    return out


def delta_mismatch(disp: Dispersion, q1, o1, q2, o2):
    """Exact longitudinal mismatch, rad/um (no quadratic expansion)."""
    return disp.mismatch(q1, o1, q2, o2)


def delta_mismatch_ppqda(disp: Dispersion, q1, o1, q2, o2):
    """Quadratic central-region approximation of the mismatch.

    Second-order expansion of every longitudinal wavevector in transverse
    wavevector and detuning, including the pump's own paraxial term.
    Diagnostic only; the pipeline integrates the exact form.  On the
    antidiagonal (q, O, -q, -O) this reduces to k0'' O^2 - q^2/k0, i.e.
    (O/omega0)^2 - (q/q0)^2 after multiplying by the crystal length.
    """
    k0, k0p, k0pp = disp.signal_derivatives()
    kp0 = float(disp.k_pump(0.0))
    _, kpp, kppp = disp.pump_derivatives()
    o1 = np.asarray(o1, dtype=float)
    o2 = np.asarray(o2, dtype=float)
    q1 = np.asarray(q1, dtype=float)
    q2 = np.asarray(q2, dtype=float)
    eps = o1 + o2
    qp = q1 + q2
    return (
        (2.0 * k0 - kp0)
        + (k0p - kpp) * eps
        + 0.5 * k0pp * (o1 * o1 + o2 * o2)
        - 0.5 * kppp * eps * eps
        - (q1 * q1 + q2 * q2) / (2.0 * k0)
        + qp * qp / (2.0 * kp0)
    )


def sinc_stable(x):
    """sin(x)/x with the series branch 1 - x^2/6 + x^4/120 for |x| < 1e-4."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < SINC_SERIES_THRESHOLD
    # silence 0/0; the small branch overwrites those entries
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(small, 1.0 - x * x / 6.0 + x**4 / 120.0, np.sin(x) / np.where(small, 1.0, x))
    if out.ndim == 0:
        return float(out)
    return out


def phase_matching_function(disp: Dispersion, q1, o1, q2, o2):
    """exp(-i D L/2) sinc(D L/2) with the exact mismatch D."""
    x = 0.5 * delta_mismatch(disp, q1, o1, q2, o2) * disp.length_um
    return np.exp(-1j * x) * sinc_stable(x)


def filter_transmission(filt: FilterGeometryConfig, q_rad_um, detuning_rad_fs):
    """Reference-arm passband: closed rectangle in (q, O).

    1 inside |q - q_c| <= delta_q and 0 <= O <= 2 omega_c (edges included),
    else 0.  The test arm is the point reflection: evaluate at (-q, -O).
    """
    q = np.asarray(q_rad_um, dtype=float)
    om = np.asarray(detuning_rad_fs, dtype=float)
    inside = (np.abs(q - filt.q_c) <= filt.delta_q) & (np.abs(om - filt.omega_c) <= filt.omega_c)
    out = inside.astype(float)
    if out.ndim == 0:
        return float(out)
    return out


def jsaa(disp: Dispersion, pump: PumpConfig, filt: FilterGeometryConfig,
         q1, o1, q2, o2, stage: str = "raw"):
    """Pair amplitude at one of three stages.

    raw        : E_p(q1+q2, O1+O2) * Phi(q1, O1, q2, O2)
    filtered   : raw times the two arm passbands F(q1, O1) F(-q2, -O2)
    propagated : filtered times the output-face phases e^{i(k_sz1 + k_sz2) L}
    """
    if stage not in _JSAA_STAGES:
        raise ConfigError(f"unknown jsaa stage {stage!r}; expected one of {_JSAA_STAGES}")
    q1a = np.asarray(q1, dtype=float)
    q2a = np.asarray(q2, dtype=float)
    o1a = np.asarray(o1, dtype=float)
    o2a = np.asarray(o2, dtype=float)
    out = pump_envelope(pump, q1a + q2a, o1a + o2a) * phase_matching_function(disp, q1a, o1a, q2a, o2a)
    if stage == "raw":
        return out
    out = out * filter_transmission(filt, q1a, o1a) * filter_transmission(filt, -q2a, -o2a)
    if stage == "filtered":
        return out
    kz1 = disp.wavevector_z("signal", q1a, o1a)
    kz2 = disp.wavevector_z("signal", q2a, o2a)
    return out * np.exp(1j * (kz1 + kz2) * disp.length_um)


@dataclass
class ComplexField2D:
    """Axis-labelled complex map with a config echo in metadata."""

    q_axis: np.ndarray        # rad/um
    omega_axis: np.ndarray    # rad/fs
    values: np.ndarray        # complex, shape (len(q_axis), len(omega_axis))
    metadata: dict = field(default_factory=dict)


def phi_degenerate_map(disp: Dispersion, q_axis=None, omega_axis=None,
                       n_q: int = 241, n_omega: int = 601,
                       filt: FilterGeometryConfig | None = None) -> ComplexField2D:
    """Grid of Phi(q, O, -q, -O) over the degenerate antidiagonal.

    Default axes span |q| <= 12 q0 and |O| <= 30 omega0.  Points whose
    sideband wavelengths leave the validated Sellmeier range, or that would be
    evanescent, are NaN-masked rather than raised: the map is a survey
    artifact and the masked fraction is recorded in metadata.  When a filter
    config is passed, the two passband rectangles are echoed in metadata for
    overlay plotting.
    """
    q0, omega0 = disp.characteristic_scales()
    if q_axis is None:
        q_axis = np.linspace(-12.0 * q0, 12.0 * q0, n_q)
    else:
        q_axis = np.asarray(q_axis, dtype=float)
    if omega_axis is None:
        omega_axis = np.linspace(-30.0 * omega0, 30.0 * omega0, n_omega)
    else:
        omega_axis = np.asarray(omega_axis, dtype=float)

    cap = disp.validity_detuning_cap()
    valid = np.abs(omega_axis) <= cap
    values = np.full((q_axis.size, omega_axis.size), np.nan + 1j * np.nan, dtype=complex)

    om = omega_axis[valid]
    ks_plus = np.asarray(disp.k_signal(om))     # photon at +O
    ks_minus = np.asarray(disp.k_signal(-om))   # partner at -O
    kp0 = float(disp.k_pump(0.0))               # pump stays at band center on the antidiagonal
    q_col = q_axis[:, None]
    arg1 = ks_plus[None, :] ** 2 - q_col**2
    arg2 = ks_minus[None, :] ** 2 - q_col**2
    evan = (arg1 <= 0.0) | (arg2 <= 0.0)
    with np.errstate(invalid="ignore"):
        delta = np.sqrt(np.where(evan, np.nan, arg1)) + np.sqrt(np.where(evan, np.nan, arg2)) - kp0
    x = 0.5 * delta * disp.length_um
    with np.errstate(invalid="ignore", divide="ignore"):
        small = np.abs(x) < SINC_SERIES_THRESHOLD
        sinc = np.where(small, 1.0 - x * x / 6.0 + x**4 / 120.0,
                        np.sin(x) / np.where(small, 1.0, x))
        block = np.exp(-1j * x) * sinc
    values[:, valid] = block

    masked = int(np.isnan(values.real).sum())
    meta = {
        "q0_rad_per_um": q0,
        "omega0_rad_per_fs": omega0,
        "cut_angle_rad": disp.theta_pm,
        "crystal_length_um": disp.length_um,
        "pump_wavelength_um": disp.pump_wavelength_um,
        "validity_detuning_cap_rad_fs": cap,
        "masked_points": masked,
        "masked_fraction": masked / values.size,
    }
    if filt is not None:
        meta["reference_band_q_rad_um"] = (filt.q_c - filt.delta_q, filt.q_c + filt.delta_q)
        meta["reference_band_omega_rad_fs"] = (0.0, 2.0 * filt.omega_c)
        meta["test_band_q_rad_um"] = (-filt.q_c - filt.delta_q, -filt.q_c + filt.delta_q)
        meta["test_band_omega_rad_fs"] = (-2.0 * filt.omega_c, 0.0)
    return ComplexField2D(q_axis=q_axis, omega_axis=omega_axis, values=values, metadata=meta)
