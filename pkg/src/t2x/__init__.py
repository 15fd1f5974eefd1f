"""t2x: temporal-spatial correlation of frequency-degenerate photon pairs.

A type-I downconversion source pumped by a pulsed beam emits photon pairs
whose transverse emission angle and frequency are locked together by phase
matching.  Detecting one photon's position behind a lens and the other's
arrival time after a dispersive stretcher yields a correlation map C(x1, t2)
whose tilted ridge converts time structure into transverse structure.  This
package computes that map exactly on a frequency lattice, provides an
analytic Gaussian benchmark, and projects temporal objects into images.
"""

from .config import (RunConfig, default_config, emit_config, parse_config,
                     parse_config_text, resolve, with_value)
from .correlate import (CorrelationMap, SpectralGrid, brute_force_C,
                        build_grid, correlation_map, extract_metrics,
                        ghost_image, q_spectrum)
from .dispersion import Dispersion, DispersionSummary, phase_matching_angle
from .errors import ConfigError, DomainError, T2xError
from .gaussmodel import (AnalyticGeometry, GaussianModelParams, analytic_C,
                         analytic_geometry, analytic_map, compare,
                         gaussian_params, resolution_time,
                         sigma_tau_combined)
from .materials import MaterialTable, SellmeierCoefficients, load_material
from .pdc import (ComplexField2D, FilterGeometryConfig, PumpConfig,
                  filter_transmission, jsaa, phase_matching_function,
                  phi_degenerate_map, pump_envelope, sinc_stable)

__version__ = "0.1.0"

__all__ = [
    "AnalyticGeometry",
    "ComplexField2D",
    "ConfigError",
    "CorrelationMap",
    "Dispersion",
    "DispersionSummary",
    "DomainError",
    "FilterGeometryConfig",
    "GaussianModelParams",
    "MaterialTable",
    "PumpConfig",
    "RunConfig",
    "SellmeierCoefficients",
    "SpectralGrid",
    "T2xError",
    "analytic_C",
    "analytic_geometry",
    "analytic_map",
    "brute_force_C",
    "build_grid",
    "compare",
    "correlation_map",
    "default_config",
    "emit_config",
    "extract_metrics",
    "filter_transmission",
    "gaussian_params",
    "ghost_image",
    "jsaa",
    "load_material",
    "parse_config",
    "parse_config_text",
    "phase_matching_angle",
    "phase_matching_function",
    "phi_degenerate_map",
    "pump_envelope",
    "q_spectrum",
    "resolution_time",
    "sinc_stable",
    "sigma_tau_combined",
    "with_value",
    "__version__",
]
