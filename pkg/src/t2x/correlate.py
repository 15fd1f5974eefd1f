"""Temporal-spatial cross-correlation of the photon pair.

The detected coincidence rate C(x1, t2) couples the reference photon's
transverse position behind the output lens (x1 maps to transverse wavevector
q = k0 x1 / f) to the test photon's arrival time after its dispersive
stretcher.  Everything is computed on a commensurate frequency lattice: both
photon detunings live on multiples of one step h, so the pump argument
(the detuning sum) lands on the same lattice and the time synthesis becomes a
single FFT per transverse position.

Two synthesis paths produce each column:

* fast   - FFT over the test-photon detuning of the weighted pair amplitude,
           then a quadrature sum of squared magnitudes over the reference
           detuning.
* oracle - build the difference-frequency autocorrelation spectrum first
           (see q_spectrum) and evaluate the inverse transform explicitly.

Both are exact quadratures of the same integrand, so they agree to rounding;
the oracle path exists to cross-check the FFT bookkeeping.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import core
from .errors import ConfigError, DomainError
from .gaussmodel import gaussian_params
from .pdc import FilterGeometryConfig, PumpConfig, pump_envelope
from .units import GAUSSIAN_FWHM_FACTOR, TWO_PI

# rows per kernel call; keeps the FFT workspace ~tens of MB at default grids
BLOCK_ROWS = 512
# pump envelope values below this fraction of its peak are treated as zero
PUMP_TAIL_CUT = 1e-14
# the detection-time window must cover the temporal response generously
MIN_WINDOW_SPANS = 6.0
# brute-force synthesis is a spot check, not a map builder
BRUTE_FORCE_MAX_SAMPLES = 16


@dataclass
class SpectralGrid:
    """Precomputed lattice tables shared by every synthesis path.

    Axis attributes:

    * ``omega1_axis``      reference-photon detunings, [0, cap], M+1 points
    * ``omega2_axis``      test-photon detunings, [-cap, 0], M+1 points
    * ``omega_plus_axis``  detuning sums on the half-step lattice, 2M+1 points
    * ``omega_minus_axis`` detuning differences (FFT axis), 2M points
    * ``x1_axis``          detection-plane positions in um
    * ``t2_axis``          exported detection times in fs (central half of the
                           FFT window, centered on the expected arrival time)
    """

    omega1_axis: np.ndarray
    omega2_axis: np.ndarray
    omega_plus_axis: np.ndarray
    omega_minus_axis: np.ndarray
    x1_axis: np.ndarray
    t2_axis: np.ndarray
    metadata: dict = field(repr=False, default_factory=dict)

    # lattice geometry
    spectral_step: float = field(repr=False, default=0.0)
    lattice_points: int = field(repr=False, default=0)
    time_points: int = field(repr=False, default=0)
    time_step: float = field(repr=False, default=0.0)
    export_start: int = field(repr=False, default=0)
    export_points: int = field(repr=False, default=0)
    time_center: float = field(repr=False, default=0.0)

    # physics tables (filled by build_grid)
    ks1: np.ndarray = field(repr=False, default=None)
    ks2: np.ndarray = field(repr=False, default=None)
    kp_tab: np.ndarray = field(repr=False, default=None)
    pump_tab: np.ndarray = field(repr=False, default=None)
    w1f: np.ndarray = field(repr=False, default=None)
    c2_base: np.ndarray = field(repr=False, default=None)
    c2_fast: np.ndarray = field(repr=False, default=None)
    row_support_stop: int = field(repr=False, default=0)
    pump_halfwidth: int = field(repr=False, default=0)
    q_columns: np.ndarray = field(repr=False, default=None)
    column_active: np.ndarray = field(repr=False, default=None)

    # scalar handles used downstream
    crystal_length_um: float = field(repr=False, default=0.0)
    k0: float = field(repr=False, default=0.0)
    q0: float = field(repr=False, default=0.0)
    omega0: float = field(repr=False, default=0.0)
    x_image_scale_um: float = field(repr=False, default=0.0)
    t_test_fs: float = field(repr=False, default=0.0)
    focal_length_um: float = field(repr=False, default=0.0)
    q_center: float = field(repr=False, default=0.0)
    q_halfwidth: float = field(repr=False, default=0.0)

    _disp: object = field(repr=False, default=None)
    _oracle_basis: np.ndarray = field(repr=False, default=None)

    def oracle_basis(self):
        """Lazy inverse-transform matrix exp(-i (t2 - t_test) w_minus)."""
        if self._oracle_basis is None:
            rel = self.t2_axis - self.t_test_fs
            self._oracle_basis = np.exp(
                -1j * rel[:, None] * self.omega_minus_axis[None, :])
        return self._oracle_basis


@dataclass
class CorrelationMap:
    """Peak-normalized correlation values on the (x1, t2) grid."""

    x1_axis: np.ndarray
    t2_axis: np.ndarray
    values: np.ndarray
    metadata: dict = field(repr=False, default_factory=dict)


def build_grid(disp, pump: PumpConfig, filt: FilterGeometryConfig,
               spectral_points: int = 2048, x1_points: int = 101,
               x1_margin: float = 0.1, grid_scale: float = 1.0) -> SpectralGrid:
    """Lay out the commensurate frequency lattice and precompute all tables.

    ``spectral_points`` is the number of lattice steps per photon axis; the
    FFT window holds twice that many samples and the exported detection-time
    axis keeps the central half.  ``grid_scale`` multiplies the per-axis
    count, for convergence studies.
    """
    if not pump.plane_wave:
        raise ConfigError(
            "the correlation pipeline requires a plane-wave pump "
            "(pump.waist_mm = inf); finite waists are only supported by the "
            "joint-amplitude evaluators")
    if grid_scale <= 0 or not math.isfinite(grid_scale):
        raise ConfigError(f"grid scale must be a positive finite number, got {grid_scale}")
    m = int(round(spectral_points * grid_scale))
    if m < 16:
        raise ConfigError(
            f"spectral_points * grid_scale = {m} is too coarse (minimum 16)")
    if x1_points < 1:
        raise ConfigError(f"x1_points must be >= 1, got {x1_points}")
    if x1_margin < 0:
        raise ConfigError(f"x1_margin must be >= 0, got {x1_margin}")

    q0, omega0 = disp.characteristic_scales()
    cap = disp.validity_detuning_cap()
    h = cap / m
    omega1 = np.arange(m + 1) * h
    omega2 = (np.arange(m + 1) - m) * h
    # detuning sums eps = omega1_i + omega2_j = (i + j - m) h land on one
    # integer lattice [-cap, cap]; the half-sum axis is eps / 2
    eps_axis = (np.arange(2 * m + 1) - m) * h

    nt = 2 * m
    dt = TWO_PI / (nt * h)
    nt_out = m
    k_start = nt // 2 - nt_out // 2

    # detection-time origin: ridge slope coefficient and walk-off anchor
    _, k0p, k0pp = disp.signal_derivatives()
    _, kpp, _ = disp.pump_derivatives()
    length = disp.length_um
    coeff = filt.gdd_fs2 - 0.5 * k0pp * length
    anchor = 0.5 * length * (kpp - k0p)
    t_center = -coeff * (filt.q_c / q0) * omega0 + anchor

    grid = SpectralGrid(
        omega1_axis=omega1,
        omega2_axis=omega2,
        omega_plus_axis=0.5 * eps_axis,
        omega_minus_axis=(np.arange(nt) - m) * h,
        x1_axis=None,
        t2_axis=None,
    )
    grid.spectral_step = h
    grid.lattice_points = m
    grid.time_points = nt
    grid.time_step = dt
    grid.export_start = k_start
    grid.export_points = nt_out
    grid.time_center = t_center
    grid.crystal_length_um = length
    grid.k0 = disp.summary().k0
    grid.q0 = q0
    grid.omega0 = omega0
    grid.t_test_fs = filt.t_test_fs
    grid.focal_length_um = filt.focal_length_um
    grid.q_center = filt.q_c
    grid.q_halfwidth = filt.delta_q
    grid._disp = disp

    offsets = (np.arange(nt) - nt // 2) * dt
    grid.t2_axis = (t_center + filt.t_test_fs
                    + offsets[k_start:k_start + nt_out])

    # guard: FFT window must cover the temporal response, otherwise the
    # periodic synthesis wraps the ridge onto itself
    params = gaussian_params(disp, pump, filt)
    expected_span = GAUSSIAN_FWHM_FACTOR * params.Sigma_tau / omega0
    window = TWO_PI / h
    if window < MIN_WINDOW_SPANS * expected_span:
        raise ConfigError(
            f"detection-time window {window:.6g} fs is narrower than "
            f"{MIN_WINDOW_SPANS:g} x the expected temporal response span "
            f"{expected_span:.6g} fs; increase grid.spectral_points or reduce "
            "filter.gdd_fs2")

    # image-plane axis: the filtered band maps to x1 in [q_lo, q_hi] f / k0,
    # padded by the margin fraction of each edge value
    xunit = filt.focal_length_um * q0 / grid.k0
    grid.x_image_scale_um = xunit
    xbar_lo = (filt.q_c - filt.delta_q) / q0 * (1.0 - x1_margin)
    xbar_hi = (filt.q_c + filt.delta_q) / q0 * (1.0 + x1_margin)
    if x1_points == 1:
        grid.x1_axis = np.array([0.5 * (xbar_lo + xbar_hi) * xunit])
    else:
        grid.x1_axis = np.linspace(xbar_lo * xunit, xbar_hi * xunit, x1_points)

    # physics tables on the lattice
    grid.ks1 = disp.k_signal(omega1)
    grid.ks2 = disp.k_signal(omega2)
    grid.kp_tab = disp.k_pump(eps_axis)
    grid.pump_tab = pump_envelope(pump, 0.0, eps_axis)

    # reference-arm quadrature weights with the frequency filter folded in
    w1 = np.full(m + 1, h)
    w1[0] *= 0.5
    w1[-1] *= 0.5
    mask1 = omega1 <= 2.0 * filt.omega_c
    grid.w1f = w1 * mask1
    nz1 = np.nonzero(mask1)[0]
    grid.row_support_stop = int(nz1[-1]) + 1 if nz1.size else 0

    # test-arm column factors: weights, filter, stretcher phase, time shift
    w2 = np.full(m + 1, h)
    w2[0] *= 0.5
    w2[-1] *= 0.5
    mask2 = omega2 >= -2.0 * filt.omega_c
    chirp = np.exp(0.5j * filt.gdd_fs2 * omega2 * omega2)
    grid.c2_base = (w2 * mask2) * chirp
    t0_rel = t_center + offsets[0]
    shift = np.exp(-1j * np.arange(m + 1) * h * t0_rel)
    grid.c2_fast = grid.c2_base * shift

    # pump support halfwidth in lattice steps (for the compiled kernel strip)
    above = np.nonzero(grid.pump_tab > pump.amplitude * PUMP_TAIL_CUT)[0]
    if above.size:
        grid.pump_halfwidth = int(np.max(np.abs(above - m))) + 1
    else:
        grid.pump_halfwidth = 1

    grid.q_columns = grid.k0 * grid.x1_axis / filt.focal_length_um
    grid.column_active = np.abs(grid.q_columns - filt.q_c) <= filt.delta_q

    grid.metadata = {
        "lattice_points": m,
        "spectral_step_rad_fs": h,
        "detuning_cap_rad_fs": cap,
        "time_points": nt,
        "time_step_fs": dt,
        "export_points": nt_out,
        "time_center_fs": t_center,
        "ridge_slope_coefficient_fs2": coeff,
        "walkoff_anchor_fs": anchor,
        "pump_strip_halfwidth": grid.pump_halfwidth,
        "x_image_scale_um": xunit,
        "x1_points": x1_points,
        "x1_margin": x1_margin,
        "grid_scale": grid_scale,
        "mirror_band_xbar_lo": (filt.q_c - filt.delta_q) / q0,
        "mirror_band_xbar_hi": (filt.q_c + filt.delta_q) / q0,
        "q0_rad_um": q0,
        "omega0_rad_fs": omega0,
        "k0_rad_um": grid.k0,
        "crystal_length_um": length,
        "focal_length_um": filt.focal_length_um,
        "gdd_fs2": filt.gdd_fs2,
        "t_test_fs": filt.t_test_fs,
        "t_ref_fs": filt.t_ref_fs,
        "q_c_rad_um": filt.q_c,
        "delta_q_rad_um": filt.delta_q,
        "omega_c_rad_fs": filt.omega_c,
        "pump_tau_fs": pump.tau_p_fs,
        "pump_bandwidth_rad_fs": pump.omega_p,
        "material": disp.material.name,
        "phase_model": ("joint amplitude at the output face; free propagation "
                        "to the detectors sets the time origin and is not "
                        "re-applied as a spectral phase"),
    }
    return grid


def _column_kz(grid: SpectralGrid, q: float):
    """Transverse-resolved longitudinal wavevectors for one column."""
    ks1sq = grid.ks1 * grid.ks1 - q * q
    ks2sq = grid.ks2 * grid.ks2 - q * q
    if np.any(ks1sq <= 0.0) or np.any(ks2sq <= 0.0):
        raise DomainError(
            f"evanescent photon mode at q = {q:.6g} rad/um; the transverse "
            "filter admits a wavevector beyond the propagating range")
    return np.sqrt(ks1sq), np.sqrt(ks2sq)


def _column_fast(grid: SpectralGrid, q: float) -> np.ndarray:
    """One detection-plane column via FFT over the test detuning."""
    kz1, kz2 = _column_kz(grid, q)
    nt = grid.time_points
    acc = np.zeros(nt)
    stop = grid.row_support_stop
    for r0 in range(0, stop, BLOCK_ROWS):
        r1 = min(r0 + BLOCK_ROWS, stop)
        g = core.build_g(kz1[r0:r1], kz2, grid.kp_tab, grid.pump_tab, r0,
                         grid.crystal_length_um, grid.c2_fast,
                         grid.lattice_points, grid.pump_halfwidth)
        amp = np.fft.fft(g, n=nt, axis=1)
        acc += grid.w1f[r0:r1] @ (amp.real * amp.real + amp.imag * amp.imag)
    return acc[grid.export_start:grid.export_start + grid.export_points]


def _q_autocorrelation(grid: SpectralGrid, q: float) -> np.ndarray:
    """Difference-frequency spectrum Q(x1, w_minus) for one column.

    Returns the spectrum on ``omega_minus_axis`` (even count, step h).  Built
    from the weighted amplitude G by the lag sum
    Q(n h) = sum_i w1_i sum_j G[i, j] conj(G[i, j - n]), then mirrored onto
    negative lags by Hermitian symmetry.  The one lattice lag beyond the FFT
    axis (+M) aliases onto the -M bin and is folded there; the pump envelope
    underflows long before that lag, so the fold contributes nothing at
    default settings.
    """
    kz1, kz2 = _column_kz(grid, q)
    m = grid.lattice_points
    n2 = m + 1
    q_half = np.zeros(n2, dtype=np.complex128)
    stop = grid.row_support_stop
    for r0 in range(0, stop, BLOCK_ROWS):
        r1 = min(r0 + BLOCK_ROWS, stop)
        g = core.build_g(kz1[r0:r1], kz2, grid.kp_tab, grid.pump_tab, r0,
                         grid.crystal_length_um, grid.c2_base,
                         grid.lattice_points, grid.pump_halfwidth)
        gw = grid.w1f[r0:r1, None] * g
        for lag in range(n2):
            if lag == 0:
                q_half[0] += np.vdot(g, gw)
            else:
                q_half[lag] += np.sum(gw[:, lag:] * np.conj(g[:, :n2 - lag]))
    out = np.zeros(grid.time_points, dtype=np.complex128)
    out[m] = q_half[0].real  # zero lag is real by construction
    out[m + 1:] = q_half[1:m]
    out[1:m] = np.conj(q_half[1:m][::-1])
    out[0] = 2.0 * q_half[m].real  # +M and -M alias onto one bin
    return out


def q_spectrum(x1: float, grid: SpectralGrid) -> np.ndarray:
    """Difference-frequency autocorrelation spectrum at one x1 position.

    The returned array lives on ``grid.omega_minus_axis``.  The correlation
    column at this position is its inverse transform evaluated at
    t2 - t_test.  Positions outside the filtered band return zeros.
    """
    q = grid.k0 * float(x1) / grid.focal_length_um
    if abs(q - grid.q_center) > grid.q_halfwidth:
        return np.zeros(grid.time_points, dtype=np.complex128)
    return _q_autocorrelation(grid, q)


def _column_oracle(grid: SpectralGrid, q: float):
    spec = _q_autocorrelation(grid, q)
    col = grid.oracle_basis() @ spec
    residue = float(np.max(np.abs(col.imag))) if col.size else 0.0
    return col.real.copy(), residue


def correlation_map(grid: SpectralGrid, path: str = "fast",
                    workers: int = 1) -> CorrelationMap:
    """Compute the full peak-normalized correlation map.

    ``path`` selects the synthesis route ('fast' FFT or 'oracle' explicit
    transform).  ``workers`` parallelizes over columns; the output is
    identical for any worker count because each column is assembled
    independently and written to its own slot.
    """
    if path not in ("fast", "oracle"):
        raise ConfigError(f"unknown synthesis path {path!r} (expected 'fast' or 'oracle')")
    if workers < 1:
        raise ConfigError(f"workers must be >= 1, got {workers}")

    nx = grid.x1_axis.size
    values = np.zeros((nx, grid.export_points))
    residues = np.zeros(nx)

    def fill(ci):
        if not grid.column_active[ci]:
            return ci, np.zeros(grid.export_points), 0.0
        qv = grid.q_columns[ci]
        if path == "fast":
            return ci, _column_fast(grid, qv), 0.0
        col, res = _column_oracle(grid, qv)
        return ci, col, res

    if workers == 1:
        results = map(fill, range(nx))
    else:
        pool = ThreadPoolExecutor(max_workers=workers)
        try:
            results = list(pool.map(fill, range(nx)))
        finally:
            pool.shutdown(wait=True)
    for ci, col, res in results:
        values[ci] = col
        residues[ci] = res

    raw_peak = float(values.max()) if values.size else 0.0
    no_signal = not (raw_peak > 0.0)
    if not no_signal:
        values = values / raw_peak

    metadata = dict(grid.metadata)
    metadata.update({
        "synthesis_path": path,
        "kernel_backend": core.backend_name(),
        "workers": workers,
        "normalization_peak_raw": raw_peak,
        "no_signal": no_signal,
    })
    if path == "oracle":
        metadata["imag_residue_rel"] = (
            float(residues.max()) / raw_peak if raw_peak > 0 else 0.0)
    return CorrelationMap(
        x1_axis=grid.x1_axis.copy(),
        t2_axis=grid.t2_axis.copy(),
        values=values,
        metadata=metadata,
    )


def brute_force_C(x1: float, t2_samples_fs, grid: SpectralGrid,
                  normalization_peak: float = None) -> np.ndarray:
    """Direct-quadrature correlation values at a few sample times.

    Deliberately slow and deliberately simple: quadrature of the weighted
    amplitude, explicit lag sums, explicit complex exponentials.  Limited to
     16 sample times so nobody builds maps with it.  Values are raw unless
    ``normalization_peak`` (a map's recorded raw peak) is given.
    """
    samples = np.atleast_1d(np.asarray(t2_samples_fs, dtype=float))
    if samples.size > BRUTE_FORCE_MAX_SAMPLES:
        raise ConfigError(
            f"brute-force synthesis accepts at most {BRUTE_FORCE_MAX_SAMPLES} "
            f"sample times, got {samples.size}")
    spec = q_spectrum(x1, grid)
    rel = samples - grid.t_test_fs
    phases = np.exp(-1j * rel[:, None] * grid.omega_minus_axis[None, :])
    vals = (phases @ spec).real
    if normalization_peak is not None:
        if normalization_peak <= 0:
            raise ConfigError("normalization peak must be positive")
        vals = vals / normalization_peak
    return vals


def extract_metrics(cmap: CorrelationMap) -> dict:
    """Ridge-line fit and temporal-width profile of a correlation map.

    Column peaks are refined by quadratic interpolation through the three
    samples around the maximum.  Widths are full widths at half the refined
    peak with linear interpolation at the crossings.  Columns whose peak
    falls below 1e-3 of the map maximum are excluded from the profile, and
    the ridge line is fit over the central 60% of the mirrored filter band.
    """
    values = cmap.values
    t2 = cmap.t2_axis
    x1 = cmap.x1_axis
    if values.size == 0 or not (values.max() > 0):
        raise DomainError("correlation map has no signal; nothing to measure")
    dt = t2[1] - t2[0]
    global_peak = float(values.max())
    floor = 1e-3 * global_peak

    nx = x1.size
    t_peak = np.full(nx, np.nan)
    peak_val = np.full(nx, np.nan)
    fwhm = np.full(nx, np.nan)
    retained = np.zeros(nx, dtype=bool)

    for ci in range(nx):
        s = values[ci]
        ipk = int(np.argmax(s))
        if not (s[ipk] >= floor):
            continue
        retained[ci] = True
        if 0 < ipk < s.size - 1:
            y0, y1, y2 = s[ipk - 1], s[ipk], s[ipk + 1]
            denom = y0 - 2.0 * y1 + y2
            if denom < 0:
                delta = 0.5 * (y0 - y2) / denom
                t_peak[ci] = t2[ipk] + delta * dt
                peak_val[ci] = y1 - 0.25 * (y0 - y2) * delta
            else:
                t_peak[ci] = t2[ipk]
                peak_val[ci] = y1
        else:
            t_peak[ci] = t2[ipk]
            peak_val[ci] = s[ipk]
        half = 0.5 * peak_val[ci]
        lo = np.nan
        for k in range(ipk, 0, -1):
            if s[k - 1] < half <= s[k]:
                lo = t2[k - 1] + dt * (half - s[k - 1]) / (s[k] - s[k - 1])
                break
        hi = np.nan
        for k in range(ipk, s.size - 1):
            if s[k + 1] < half <= s[k]:
                hi = t2[k] + dt * (s[k] - half) / (s[k] - s[k + 1])
                break
        if np.isfinite(lo) and np.isfinite(hi):
            fwhm[ci] = hi - lo

    # ridge fit over the central 60% of the mirrored band
    xunit = cmap.metadata.get("x_image_scale_um")
    band_lo = cmap.metadata.get("mirror_band_xbar_lo")
    band_hi = cmap.metadata.get("mirror_band_xbar_hi")
    if xunit is None or band_lo is None or band_hi is None:
        raise ConfigError("correlation map metadata is missing the image-scale keys")
    span = band_hi - band_lo
    fit_lo = band_lo + 0.2 * span
    fit_hi = band_hi - 0.2 * span
    xbar = x1 / xunit
    in_fit = retained & (xbar >= fit_lo) & (xbar <= fit_hi) & np.isfinite(t_peak)

    if int(in_fit.sum()) >= 2:
        xs = x1[in_fit]
        ys = t_peak[in_fit]
        slope, intercept = np.polyfit(xs, ys, 1)
        pred = slope * xs + intercept
        ss_res = float(np.sum((ys - pred) ** 2))
        ss_tot = float(np.sum((ys - ys.mean()) ** 2))
        r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    else:
        slope = intercept = r2 = float("nan")

    ig = np.unravel_index(int(np.argmax(values)), values.shape)
    peak_entry = {
        "x1_um": float(x1[ig[0]]),
        "t2_fs": float(t_peak[ig[0]]) if np.isfinite(t_peak[ig[0]]) else float(t2[ig[1]]),
        "value": global_peak,
    }

    fin = fwhm[retained & np.isfinite(fwhm)]
    return {
        "ridge_fit": {
            "slope_fs_per_um": float(slope),
            "intercept_fs": float(intercept),
            "r_squared": float(r2),
            "n_points": int(in_fit.sum()),
            "x1_fit_lo_um": float(fit_lo * xunit),
            "x1_fit_hi_um": float(fit_hi * xunit),
        },
        "fwhm_profile": {
            "x1_um": x1.copy(),
            "t_peak_fs": t_peak,
            "peak_value": peak_val,
            "fwhm_fs": fwhm,
            "retained": retained,
            "fwhm_min_fs": float(fin.min()) if fin.size else float("nan"),
            "fwhm_median_fs": float(np.median(fin)) if fin.size else float("nan"),
            "fwhm_max_fs": float(fin.max()) if fin.size else float("nan"),
        },
        "excluded_x1_um": [float(v) for v in x1[~retained]],
        "peak": peak_entry,
    }


def ghost_image(cmap: CorrelationMap, transmittance) -> np.ndarray:
    """Time-to-space image: project the map through a temporal object.

    ``transmittance`` is the object's intensity transmission sampled on
    ``cmap.t2_axis`` (values in [0, 1]).  Returns the peak-normalized image
    on ``cmap.x1_axis``; an all-zero projection comes back as zeros.
    """
    tr = np.asarray(transmittance, dtype=float)
    if tr.shape != cmap.t2_axis.shape:
        raise ConfigError(
            f"object transmittance has {tr.shape} samples; expected one per "
            f"detection time ({cmap.t2_axis.shape})")
    if not np.all(np.isfinite(tr)):
        raise ConfigError("object transmittance contains non-finite values")
    if np.any(tr < 0.0) or np.any(tr > 1.0):
        raise ConfigError("object transmittance must lie in [0, 1]")
    dt = cmap.t2_axis[1] - cmap.t2_axis[0]
    image = np.trapezoid(cmap.values * tr[None, :], dx=dt, axis=1)
    peak = float(image.max()) if image.size else 0.0
    if peak > 0:
        image = image / peak
    return image
