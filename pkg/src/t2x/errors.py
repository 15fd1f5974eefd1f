"""Exception taxonomy shared by the library and the CLI exit-code contract."""


class T2xError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(T2xError):
    """Invalid configuration: bad key, bad value, or an inconsistent grid request."""


class DomainError(T2xError):
    """Numerical domain violation: wavelength outside the validated Sellmeier
    range, evanescent transverse input, or a root leaving the solvable bracket."""
