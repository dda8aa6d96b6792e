"""Exception types shared across the package.

Every error raised by the library proper derives from StreamSieveError, so
callers can catch one base class at API boundaries.  All of them also derive
from ValueError: each one signals a value that cannot be honoured.
"""


class StreamSieveError(ValueError):
    """Base class for all streamsieve errors."""


class ConfigurationError(StreamSieveError):
    """Invalid static configuration: site count, item width, or hybrid layout."""


class CapacityError(StreamSieveError):
    """Ingest would push a bounded algorithm past its supported stream length."""


class DomainError(StreamSieveError):
    """A value does not fit the surface's configured item width."""


class HexFormatError(StreamSieveError):
    """A hex dump cannot be parsed back into buffer slots."""


class ReplayLimitError(StreamSieveError):
    """A replay-based reconstruction exceeds the practicality cap."""


class SequenceError(StreamSieveError):
    """Stream indices fed to a compressing buffer are not dense and ascending."""


class VectorFormatError(StreamSieveError):
    """A conformance vector file is structurally malformed."""
