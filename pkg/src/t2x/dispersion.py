"""Uniaxial-crystal optics for collinear degenerate downconversion.

The subharmonic (signal/idler) propagates as the ordinary wave at center
frequency omega_s; the pump propagates as the extraordinary wave at the fixed
cut angle theta_pm and center frequency omega_p = 2 omega_s.  The cut angle is
solved from the collinear matching condition n_e(theta, lambda_p) =
n_o(2 lambda_p), and all wave-vector math below is exact in the Sellmeier
indices (no quadratic expansion).

Internal units: um, fs, rad/um, rad/fs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError
from .materials import MaterialTable, SellmeierCoefficients
from .units import C_UM_PER_FS, TWO_PI

# finite-difference guard rail for the analytic derivatives
_FD_STEP_RAD_FS = 1.0e-3


@dataclass(frozen=True)
class DispersionSummary:
    """Signal-wave derivatives at band center plus the two characteristic scales.

    q0 = sqrt(k0 / L) and omega0 = sqrt(1 / (k0'' L)); both exact by
    construction, see characteristic_scales().
    """

    k0: float                 # rad/um
    k0_prime: float           # fs/um
    k0_double_prime: float    # fs^2/um
    q0: float                 # rad/um
    omega0: float             # rad/fs


def _index_with_derivs(coef: SellmeierCoefficients, lam: float):
    """n, dn/dlam, d2n/dlam2 of one Sellmeier set at a scalar wavelength."""
    den = lam * lam - coef.b3
    n2 = coef.b1 + coef.b2 / den - coef.b4 * lam * lam
    n = math.sqrt(n2)
    # d(n^2)/dlam and d2(n^2)/dlam2
    s1 = -2.0 * lam * (coef.b2 / den**2 + coef.b4)
    s2 = 2.0 * coef.b2 * (3.0 * lam * lam + coef.b3) / den**3 - 2.0 * coef.b4
    d1 = s1 / (2.0 * n)
    d2 = (s2 - 2.0 * d1 * d1) / (2.0 * n)
    return n, d1, d2


def phase_matching_angle(material: MaterialTable, pump_wavelength_um: float) -> float:
    """Cut angle (rad) solving n_e(theta, lambda_p) = n_o(2 lambda_p).

    Bisection to 1e-12 rad on (0, pi/2).  Raises DomainError when the
    extraordinary index cannot reach the ordinary target anywhere on the
    bracket (not phase-matchable).
    """
    lam_p = pump_wavelength_um
    material.validate_wavelength(lam_p)
    material.validate_wavelength(2.0 * lam_p)
    n_target = math.sqrt(float(material.ordinary.n_squared(2.0 * lam_p)))
    no_p = math.sqrt(float(material.ordinary.n_squared(lam_p)))
    ne_p = math.sqrt(float(material.extraordinary.n_squared(lam_p)))

    def g(theta: float) -> float:
        c, s = math.cos(theta), math.sin(theta)
        n_eff = 1.0 / math.sqrt(c * c / (no_p * no_p) + s * s / (ne_p * ne_p))
        return n_eff - n_target

    lo, hi = 1.0e-9, math.pi / 2.0 - 1.0e-9
    glo, ghi = g(lo), g(hi)
    if glo == 0.0:
        return lo
    if ghi == 0.0:
        return hi
    if glo * ghi > 0.0:
        raise DomainError(
            f"not phase-matchable: n_e(theta) never equals n_o({2.0 * lam_p:g} um) "
            f"for pump {lam_p:g} um"
        )
    while hi - lo > 1.0e-12:
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if gm == 0.0:
            return mid
        if glo * gm < 0.0:
            hi = mid
        else:
            lo, glo = mid, gm
    return 0.5 * (lo + hi)


class Dispersion:
    """Wave-vector model bound to one crystal configuration.

    Parameters
    ----------
    material : MaterialTable
    length_um : crystal length L
    pump_wavelength_um : pump vacuum wavelength; the subharmonic center is twice it
    cut_angle_rad : optional user-supplied cut angle; solved internally when None
    """

    def __init__(self, material: MaterialTable, length_um: float,
                 pump_wavelength_um: float, cut_angle_rad: float | None = None):
        if not length_um > 0.0:
            raise ConfigError(f"crystal length {length_um:g} um violates: must be > 0")
        self.material = material
        self.length_um = float(length_um)
        self.pump_wavelength_um = float(pump_wavelength_um)
        self.signal_wavelength_um = 2.0 * self.pump_wavelength_um
        material.validate_wavelength(self.pump_wavelength_um)
        material.validate_wavelength(self.signal_wavelength_um)
        self.omega_pump = TWO_PI * C_UM_PER_FS / self.pump_wavelength_um    # rad/fs
        self.omega_signal = 0.5 * self.omega_pump
        if cut_angle_rad is None:
            self.theta_pm = phase_matching_angle(material, self.pump_wavelength_um)
        else:
            if not 0.0 < cut_angle_rad < math.pi / 2.0:
                raise ConfigError(
                    f"cut angle {cut_angle_rad:g} rad violates: must be in (0, pi/2)"
                )
            self.theta_pm = float(cut_angle_rad)
        self._sin2 = math.sin(self.theta_pm) ** 2
        self._cos2 = math.cos(self.theta_pm) ** 2

    # -- refractive indices ------------------------------------------------

    def n_ordinary(self, lambda_um):
        self.material.validate_wavelength(lambda_um)
        return np.sqrt(self.material.ordinary.n_squared(lambda_um))

    def n_extraordinary_principal(self, lambda_um):
        self.material.validate_wavelength(lambda_um)
        return np.sqrt(self.material.extraordinary.n_squared(lambda_um))

    def n_extraordinary_at_angle(self, lambda_um, theta_rad):
        """Index-ellipse value 1/n^2 = cos^2/n_o^2 + sin^2/n_e^2."""
        self.material.validate_wavelength(lambda_um)
        no2 = self.material.ordinary.n_squared(lambda_um)
        ne2 = self.material.extraordinary.n_squared(lambda_um)
        c2 = math.cos(theta_rad) ** 2
        s2 = math.sin(theta_rad) ** 2
        return 1.0 / np.sqrt(c2 / no2 + s2 / ne2)

    def refractive_index(self, polarization: str, lambda_um, theta_rad: float | None = None):
        """Dispatch by polarization name; theta required only for 'extraordinary-at-angle'."""
        if polarization == "ordinary":
            return self.n_ordinary(lambda_um)
        if polarization == "extraordinary":
            return self.n_extraordinary_principal(lambda_um)
        if polarization == "extraordinary-at-angle":
            if theta_rad is None:
                raise ConfigError("extraordinary-at-angle requires a theta argument")
            return self.n_extraordinary_at_angle(lambda_um, theta_rad)
        raise ConfigError(f"unknown polarization {polarization!r}")

    # -- scalar wave numbers vs detuning ------------------------------------

    def k_signal(self, detuning_rad_fs):
        """Ordinary-wave k (rad/um) at omega_signal + detuning."""
        omega = self.omega_signal + np.asarray(detuning_rad_fs, dtype=float)
        if np.any(omega <= 0.0):
            raise DomainError("non-positive optical frequency on the signal branch")
        lam = TWO_PI * C_UM_PER_FS / omega
        return self.n_ordinary(lam) * omega / C_UM_PER_FS

    def k_pump(self, detuning_rad_fs):
        """Extraordinary-wave k (rad/um) at the cut angle, omega_pump + detuning.

        The transverse dependence of the extraordinary index is ignored: every
        quantity computed here evaluates the pump at zero transverse
        wave vector, so only the fixed-angle index enters.
        """
        omega = self.omega_pump + np.asarray(detuning_rad_fs, dtype=float)
        if np.any(omega <= 0.0):
            raise DomainError("non-positive optical frequency on the pump branch")
        lam = TWO_PI * C_UM_PER_FS / omega
        return self.n_extraordinary_at_angle(lam, self.theta_pm) * omega / C_UM_PER_FS

    def wavevector_z(self, field: str, q_rad_um, detuning_rad_fs):
        """Longitudinal component sqrt(k^2 - q^2); DomainError on evanescent input."""
        if field == "signal":
            k = self.k_signal(detuning_rad_fs)
        elif field == "pump":
            k = self.k_pump(detuning_rad_fs)
        else:
            raise ConfigError(f"unknown field {field!r}")
        q = np.asarray(q_rad_um, dtype=float)
        arg = k * k - q * q
        if np.any(arg < 0.0):
            raise DomainError(
                f"evanescent input: |q| exceeds k on the {field} branch"
            )
        return np.sqrt(arg)

    # -- exact phase mismatch ------------------------------------------------

    def mismatch(self, q1, detuning1, q2, detuning2):
        """Exact collinear-geometry mismatch
        k_sz(q1, O1) + k_sz(q2, O2) - k_pz(q1+q2, O1+O2), rad/um."""
        kz1 = self.wavevector_z("signal", q1, detuning1)
        kz2 = self.wavevector_z("signal", q2, detuning2)
        q1a = np.asarray(q1, dtype=float)
        q2a = np.asarray(q2, dtype=float)
        o1 = np.asarray(detuning1, dtype=float)
        o2 = np.asarray(detuning2, dtype=float)
        kpz = self.wavevector_z("pump", q1a + q2a, o1 + o2)
        return kz1 + kz2 - kpz

    # -- analytic frequency derivatives --------------------------------------

    def _k_derivs(self, which: str, omega: float):
        """(k, dk/domega, d2k/domega2) of one branch at an absolute frequency."""
        lam = TWO_PI * C_UM_PER_FS / omega
        if which == "signal":
            n, dn_dlam, d2n_dlam2 = _index_with_derivs(self.material.ordinary, lam)
        elif which == "pump":
            # effective extraordinary index at the cut angle:
            # n_eff = w^{-1/2}, w = cos^2/n_o^2 + sin^2/n_e^2
            no, no1, no2 = _index_with_derivs(self.material.ordinary, lam)
            ne, ne1, ne2 = _index_with_derivs(self.material.extraordinary, lam)
            u, u1 = 1.0 / no**2, -2.0 * no1 / no**3
            u2 = -2.0 * no2 / no**3 + 6.0 * no1 * no1 / no**4
            v, v1 = 1.0 / ne**2, -2.0 * ne1 / ne**3
            v2 = -2.0 * ne2 / ne**3 + 6.0 * ne1 * ne1 / ne**4
            w = self._cos2 * u + self._sin2 * v
            w1 = self._cos2 * u1 + self._sin2 * v1
            w2 = self._cos2 * u2 + self._sin2 * v2
            n = w**-0.5
            dn_dlam = -0.5 * w1 * w**-1.5
            d2n_dlam2 = 0.75 * w1 * w1 * w**-2.5 - 0.5 * w2 * w**-1.5
        else:
            raise ConfigError(f"unknown branch {which!r}")
        # chain rule through lam(omega) = 2 pi c / omega
        dn_dw = dn_dlam * (-lam / omega)
        d2n_dw2 = d2n_dlam2 * (lam / omega) ** 2 + dn_dlam * (2.0 * lam / omega**2)
        k = n * omega / C_UM_PER_FS
        k1 = (n + omega * dn_dw) / C_UM_PER_FS
        k2 = (2.0 * dn_dw + omega * d2n_dw2) / C_UM_PER_FS
        return k, k1, k2

    def signal_derivatives(self):
        """(k0, k0', k0'') of the ordinary wave at band center."""
        return self._k_derivs("signal", self.omega_signal)

    def pump_derivatives(self):
        """(k_p, k_p', k_p'') of the angled extraordinary wave at 2x band center."""
        return self._k_derivs("pump", self.omega_pump)

    def derivative_crosscheck(self, which: str = "signal") -> tuple[float, float]:
        """Relative deviation of the analytic k', k'' from a 5-point stencil.

        Step 1e-3 rad/fs.  The analytic path is exact for the Sellmeier form;
        the stencil guards against algebra mistakes.
        """
        omega0 = self.omega_signal if which == "signal" else self.omega_pump
        kfun = self.k_signal if which == "signal" else self.k_pump
        h = _FD_STEP_RAD_FS
        samples = np.array([float(kfun((i - 2) * h)) for i in range(5)])
        fd1 = (samples[0] - 8 * samples[1] + 8 * samples[3] - samples[4]) / (12 * h)
        fd2 = (-samples[0] + 16 * samples[1] - 30 * samples[2] + 16 * samples[3] - samples[4]) / (12 * h * h)
        _, a1, a2 = self._k_derivs(which, omega0)
        return abs(fd1 - a1) / abs(a1), abs(fd2 - a2) / abs(a2)

    # -- characteristic scales ----------------------------------------------

    def characteristic_scales(self) -> tuple[float, float]:
        """(q0, omega0) = (sqrt(k0/L), sqrt(1/(k0'' L)))."""
        k0, _, k2 = self.signal_derivatives()
        return math.sqrt(k0 / self.length_um), math.sqrt(1.0 / (k2 * self.length_um))

    def summary(self) -> DispersionSummary:
        k0, k1, k2 = self.signal_derivatives()
        q0, omega0 = self.characteristic_scales()
        return DispersionSummary(k0=k0, k0_prime=k1, k0_double_prime=k2, q0=q0, omega0=omega0)

    # -- band geometry helpers ------------------------------------------------

    def validity_detuning_cap(self) -> float:
        """Largest |detuning| keeping both subharmonic sidebands inside the
        validated Sellmeier window.  The long-wavelength edge binds first for
        a band centered at twice the pump wavelength."""
        om_lo = TWO_PI * C_UM_PER_FS / self.material.lambda_max_um
        om_hi = TWO_PI * C_UM_PER_FS / self.material.lambda_min_um
        return min(self.omega_signal - om_lo, om_hi - self.omega_signal)

    def matched_frequency(self, q_rad_um: float) -> float:
        """Exact detuning where mismatch(q, O, -q, -O) vanishes, O >= 0.

        Bisection on [0, validity cap].  DomainError when the root sits beyond
        the validated Sellmeier range (happens at large |q|).
        """
        q = abs(float(q_rad_um))
        if q == 0.0:
            return 0.0
        cap = self.validity_detuning_cap() * (1.0 - 1.0e-12)

        def f(om: float) -> float:
            return float(self.mismatch(q, om, -q, -om))

        lo, hi = 0.0, cap
        flo, fhi = f(lo), f(hi)
        if flo == 0.0:
            return lo
        if flo * fhi > 0.0:
            raise DomainError(
                f"matched frequency for q = {q:g} rad/um lies outside the "
                f"validated Sellmeier range (detuning cap {cap:.6g} rad/fs)"
            )
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            fm = f(mid)
            if fm == 0.0:
                return mid
            if flo * fm < 0.0:
                hi = mid
            else:
                lo, flo = mid, fm
            if hi - lo < 1.0e-14:
                break
        return 0.5 * (lo + hi)

    def matched_line_wavelengths(self, q_rad_um: float) -> tuple[float, float]:
        """(reference, test) vacuum wavelengths (um) that the degenerate matched
        line O = q * omega0/q0 assigns to a transverse wave number q."""
        q0, omega0 = self.characteristic_scales()
        det = abs(float(q_rad_um)) * omega0 / q0
        lam_ref = TWO_PI * C_UM_PER_FS / (self.omega_signal + det)
        lam_test = TWO_PI * C_UM_PER_FS / (self.omega_signal - det)
        return lam_ref, lam_test
