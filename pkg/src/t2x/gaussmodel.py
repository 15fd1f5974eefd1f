"""Analytic Gaussian benchmark for the correlation map.

Replacing the exact phase-matching response and the sharp filter edges with
Gaussians makes the pair correlation integrable in closed form.  The result
is a tilted Gaussian ridge in the (x1, t2) plane whose slope, width, and
position can be compared against the numerically synthesized map.  All model
parameters are expressed in the natural transverse and spectral scales of the
crystal, q0 = sqrt(k0 / L) and Omega0 = sqrt(1 / (k0'' L)).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DomainError
from .units import GAUSSIAN_FWHM_FACTOR

# Gaussian stand-in width for the phase-matching response, in units of the
# natural spectral scale.  Chosen so the Gaussian and the exact response
# enclose the same spectral power over the filtered band.
DEFAULT_RESPONSE_WIDTH = 1.61

# analytic model is trusted when the filter band is much wider than both the
# response width and the pump bandwidth
VALIDITY_RATIO = 10.0

CONTOUR_LEVEL = 0.27
CONTOUR_POINTS = 64


@dataclass(frozen=True)
class GaussianModelParams:
    """Dimensionless widths of the Gaussian correlation model.

    ``mu_c`` and ``sigma_mu`` place the transverse acceptance band (center
    and width of the mirrored filter, scaled by sqrt(2)); ``sigma_nu`` is the
    spectral width the phase matching allows around the matched frequency at
    band center; ``sigma_p`` is the pump bandwidth; ``D`` is the stretcher
    dispersion; ``Sigma_tau`` the resulting temporal spread.
    """

    mu_c: float
    sigma_mu: float
    sigma_nu: float
    sigma_p: float
    sigma_s: float
    D: float
    Sigma_tau: float
    validity: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class AnalyticGeometry:
    """Scales that map detector coordinates onto the model's variables."""

    k0: float
    focal_length_um: float
    q0: float
    omega0: float
    t_test_fs: float

    @property
    def x_image_scale_um(self) -> float:
        return self.focal_length_um * self.q0 / self.k0


def sigma_tau_combined(sigma_nu: float, sigma_p: float, D: float) -> float:
    """Total temporal spread of the chirped pair correlation.

    Combines the inverse spectral widths with the dispersion-induced
    stretching; symmetric under exchanging sigma_nu with sigma_p / 2.
    """
    if sigma_nu <= 0 or sigma_p <= 0:
        raise ConfigError("spectral widths must be positive")
    base = 0.25 * (1.0 / (4.0 * sigma_nu ** 2) + 1.0 / sigma_p ** 2)
    stretch = 1.0 + 4.0 * D * D * sigma_nu ** 2 * sigma_p ** 2
    return math.sqrt(base * stretch)


def gaussian_params(disp, pump, filt,
                    sigma_s: float = DEFAULT_RESPONSE_WIDTH) -> GaussianModelParams:
    """Model parameters for a crystal / pump / filter configuration."""
    if sigma_s <= 0 or not math.isfinite(sigma_s):
        raise ConfigError(f"gauss.sigma_s must be a positive finite number, got {sigma_s}")
    q0, omega0 = disp.characteristic_scales()
    mu_c = math.sqrt(2.0) * filt.q_c / q0
    sigma_mu = math.sqrt(2.0) * filt.delta_q / q0
    sigma_nu = sigma_s / (math.sqrt(2.0) * mu_c)
    sigma_p = pump.omega_p / omega0
    dimensionless_d = filt.gdd_fs2 * omega0 * omega0
    sig_tau = sigma_tau_combined(sigma_nu, sigma_p, dimensionless_d)
    for name, val in (("mu_c", mu_c), ("sigma_mu", sigma_mu),
                      ("sigma_nu", sigma_nu), ("sigma_p", sigma_p),
                      ("Sigma_tau", sig_tau)):
        if not (val > 0 and math.isfinite(val)):
            raise ConfigError(f"model parameter {name} = {val} is not positive finite")
    ratio_nu = sigma_mu / sigma_nu
    ratio_p = sigma_mu / sigma_p
    validity = {
        "band_to_response_ratio": ratio_nu,
        "band_to_pump_ratio": ratio_p,
        "narrowband_ok": bool(ratio_nu > VALIDITY_RATIO and ratio_p > VALIDITY_RATIO),
    }
    return GaussianModelParams(
        mu_c=mu_c, sigma_mu=sigma_mu, sigma_nu=sigma_nu, sigma_p=sigma_p,
        sigma_s=sigma_s, D=dimensionless_d, Sigma_tau=sig_tau,
        validity=validity)


def analytic_geometry(disp, filt) -> AnalyticGeometry:
    summ = disp.summary()
    return AnalyticGeometry(
        k0=summ.k0,
        focal_length_um=filt.focal_length_um,
        q0=summ.q0,
        omega0=summ.omega0,
        t_test_fs=filt.t_test_fs,
    )


def analytic_C(x1_um, t2_fs, params: GaussianModelParams,
               geom: AnalyticGeometry):
    """Closed-form correlation value; peaks at exactly 1.

    ``x1_um`` and ``t2_fs`` broadcast against each other.
    """
    xbar = np.asarray(x1_um, dtype=float) / geom.x_image_scale_um
    tau = (np.asarray(t2_fs, dtype=float) - geom.t_test_fs) * geom.omega0
    center = params.mu_c / math.sqrt(2.0)
    u = params.D * xbar + tau
    expo = (-(u * u) / (2.0 * params.Sigma_tau ** 2)
            - 2.0 * (xbar - center) ** 2 / params.sigma_mu ** 2)
    return np.exp(expo)


def analytic_map(x1_axis, t2_axis, params: GaussianModelParams,
                 geom: AnalyticGeometry) -> np.ndarray:
    """Model correlation sampled on a full (x1, t2) grid."""
    x1 = np.asarray(x1_axis, dtype=float)
    t2 = np.asarray(t2_axis, dtype=float)
    return analytic_C(x1[:, None], t2[None, :], params, geom)


def analytic_slope_fs_per_um(params: GaussianModelParams,
                             geom: AnalyticGeometry) -> float:
    """Signed ridge slope dt2/dx1 of the model (negative for positive D)."""
    return -params.D / (geom.omega0 * geom.x_image_scale_um)


def analytic_peak_position(params: GaussianModelParams,
                           geom: AnalyticGeometry):
    """(x1, t2) of the model's global maximum."""
    center = params.mu_c / math.sqrt(2.0)
    x1 = center * geom.x_image_scale_um
    t2 = geom.t_test_fs - params.D * center / geom.omega0
    return x1, t2


def resolution_time(params: GaussianModelParams, omega0_rad_fs: float) -> dict:
    """Temporal resolution of the time-to-space mapping.

    Returns the model resolution 2 Sigma_tau / Omega0, the large-dispersion
    pump-limited value 1 / (sigma_p Omega0), and their ratio.
    """
    res = 2.0 * params.Sigma_tau / omega0_rad_fs
    pump_limit = 1.0 / (params.sigma_p * omega0_rad_fs)
    return {
        "resolution_fs": res,
        "pump_limit_fs": pump_limit,
        "ratio": res / pump_limit,
    }


def _sample_bilinear(x_axis, t_axis, values, xq, tq):
    """Bilinear map samples at scattered points; zero outside the grid."""
    xq = np.asarray(xq, dtype=float)
    tq = np.asarray(tq, dtype=float)
    out = np.zeros(np.broadcast(xq, tq).shape)
    inside = ((xq >= x_axis[0]) & (xq <= x_axis[-1])
              & (tq >= t_axis[0]) & (tq <= t_axis[-1]))
    if not inside.any():
        return out
    xi = np.clip(np.searchsorted(x_axis, xq) - 1, 0, x_axis.size - 2)
    ti = np.clip(np.searchsorted(t_axis, tq) - 1, 0, t_axis.size - 2)
    wx = (xq - x_axis[xi]) / (x_axis[xi + 1] - x_axis[xi])
    wt = (tq - t_axis[ti]) / (t_axis[ti + 1] - t_axis[ti])
    vals = (values[xi, ti] * (1 - wx) * (1 - wt)
            + values[xi + 1, ti] * wx * (1 - wt)
            + values[xi, ti + 1] * (1 - wx) * wt
            + values[xi + 1, ti + 1] * wx * wt)
    out[inside] = vals[inside]
    return out


def compare(cmap, params: GaussianModelParams, geom: AnalyticGeometry) -> dict:
    """Quantitative numeric-vs-model report.

    Both maps are peak normalized, so only shapes are compared: mean absolute
    deviation where the model is above 0.05, ridge slope ratio, per-column
    width ratios, peak placement read two ways (along the ridge at the
    model's peak column, and between the two global maxima), and the mean
    numeric value along the model's iso-0.27 contour.
    """
    from .correlate import extract_metrics  # deferred: correlate imports this module

    ana = analytic_map(cmap.x1_axis, cmap.t2_axis, params, geom)
    region = ana > 0.05
    if not region.any():
        raise DomainError(
            "the analytic model is nowhere above 0.05 on the numerical grid; "
            "the two maps do not overlap")
    mad = float(np.mean(np.abs(cmap.values[region] - ana[region])))

    metrics = extract_metrics(cmap)
    slope_num = metrics["ridge_fit"]["slope_fs_per_um"]
    slope_ana = analytic_slope_fs_per_um(params, geom)
    slope_ratio = slope_num / slope_ana if slope_ana != 0 else float("nan")

    fwhm_ana = GAUSSIAN_FWHM_FACTOR * params.Sigma_tau / geom.omega0
    prof = metrics["fwhm_profile"]
    good = prof["retained"] & np.isfinite(prof["fwhm_fs"])
    ratios = prof["fwhm_fs"][good] / fwhm_ana
    if ratios.size:
        ratio_stats = (float(ratios.mean()), float(ratios.min()), float(ratios.max()))
    else:
        ratio_stats = (float("nan"),) * 3

    # peak placement, reading 1: time offset along the ridge at the model's
    # peak column (transverse quantization cancels because the model is
    # evaluated at the same column position)
    x1_pk, t2_pk = analytic_peak_position(params, geom)
    finite_peaks = prof["retained"] & np.isfinite(prof["t_peak_fs"])
    if finite_peaks.any():
        cols = np.nonzero(finite_peaks)[0]
        ci = cols[np.argmin(np.abs(cmap.x1_axis[cols] - x1_pk))]
        xbar_col = cmap.x1_axis[ci] / geom.x_image_scale_um
        t2_model_col = geom.t_test_fs - params.D * xbar_col / geom.omega0
        offset_ridge_fs = float(prof["t_peak_fs"][ci] - t2_model_col)
        offset_ridge_um = offset_ridge_fs / slope_ana
    else:
        offset_ridge_fs = offset_ridge_um = float("nan")

    # reading 2: distance between the global maxima
    offset_global_fs = float(metrics["peak"]["t2_fs"] - t2_pk)
    offset_global_um = float(metrics["peak"]["x1_um"] - x1_pk)

    # mean numeric value along the model's iso-contour at CONTOUR_LEVEL
    radius = math.sqrt(-math.log(CONTOUR_LEVEL))
    phi = 2.0 * math.pi * np.arange(CONTOUR_POINTS) / CONTOUR_POINTS
    center = params.mu_c / math.sqrt(2.0)
    xbar_c = center + (params.sigma_mu / math.sqrt(2.0)) * radius * np.sin(phi)
    u_c = math.sqrt(2.0) * params.Sigma_tau * radius * np.cos(phi)
    tau_c = u_c - params.D * xbar_c
    x1_c = xbar_c * geom.x_image_scale_um
    t2_c = geom.t_test_fs + tau_c / geom.omega0
    contour_vals = _sample_bilinear(cmap.x1_axis, cmap.t2_axis, cmap.values,
                                    x1_c, t2_c)
    contour_mean = float(contour_vals.mean())

    return {
        "mad": mad,
        "mad_region_fraction": float(region.mean()),
        "slope_num_fs_per_um": float(slope_num),
        "slope_ana_fs_per_um": float(slope_ana),
        "slope_ratio": float(slope_ratio),
        "fwhm_ana_fs": float(fwhm_ana),
        "fwhm_ratio_mean": ratio_stats[0],
        "fwhm_ratio_min": ratio_stats[1],
        "fwhm_ratio_max": ratio_stats[2],
        "peak_offset_ridge_fs": offset_ridge_fs,
        "peak_offset_ridge_um": offset_ridge_um,
        "peak_offset_global_fs": offset_global_fs,
        "peak_offset_global_um": offset_global_um,
        "analytic_peak_x1_um": float(x1_pk),
        "analytic_peak_t2_fs": float(t2_pk),
        "numeric_peak_x1_um": float(metrics["peak"]["x1_um"]),
        "numeric_peak_t2_fs": float(metrics["peak"]["t2_fs"]),
        "contour_level": CONTOUR_LEVEL,
        "contour_mean": contour_mean,
        "contour_points": CONTOUR_POINTS,
        "band_to_response_ratio": params.validity["band_to_response_ratio"],
        "band_to_pump_ratio": params.validity["band_to_pump_ratio"],
        "narrowband_ok": params.validity["narrowband_ok"],
    }
