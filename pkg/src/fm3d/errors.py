"""Shared exception types."""


class ShapeError(ValueError):
    """Input has the wrong shape, length, or resolution."""


class NumericError(RuntimeError):
    """A computation produced or was fed non-finite values."""


class VersionError(RuntimeError):
    """Checkpoint or file format is incompatible with this code."""


class PairingError(RuntimeError):
    """Dataset cannot supply same-identity sample pairs."""
