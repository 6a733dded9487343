"""Exception types shared across the package."""


class SpindynError(Exception):
    """Base class for all physics and validation errors raised here."""


class NonHermitian(SpindynError):
    """A matrix that must be Hermitian is not, beyond tolerance."""


class NonReal(SpindynError):
    """A quantity that must be real carries an imaginary residue."""


class MasslessState(SpindynError):
    """Operation requires a massive state but the invariant mass is ~0."""


class NotAtRest(SpindynError):
    """Operation requires a rest-frame state but spatial momentum remains."""


class NotTimelike(SpindynError):
    """A four-vector that must be timelike and future-pointing is not."""


class DegenerateFit(SpindynError):
    """A fit was requested on data with no signal to fit."""


class ConfigError(SpindynError):
    """A scenario configuration is malformed; message names the field."""
