"""Shared exception types."""


class SpellkitError(Exception):
    """Base class for all errors raised by this package."""


class DataFormatError(SpellkitError):
    """Malformed input data (bad encoding, bad record, bad config line)."""


class AlignmentError(SpellkitError):
    """Two sequences that must line up positionally do not."""


class ConfigError(SpellkitError):
    """Invalid configuration value."""
