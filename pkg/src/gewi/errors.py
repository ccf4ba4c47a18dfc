"""Exception hierarchy shared by all modules."""


class GewiError(Exception):
    """Base class for every error raised by this package."""


class InvalidQubitError(GewiError, LookupError):
    """A qubit handle was used after measurement or never existed."""


class GroupSizeError(GewiError):
    """An entanglement group grew beyond the configured bound."""


class FramingError(GewiError):
    """A frame could not be encoded or decoded consistently."""


class FlagCollisionError(FramingError, ValueError):
    """A payload contains the flag byte while stuffing is disabled."""


class BufferFullError(GewiError):
    """A push onto an entanglement buffer already at capacity."""


class BufferEmptyError(GewiError, IndexError):
    """A pop from an empty entanglement buffer."""


class BufferDesyncError(GewiError):
    """Sender and receiver buffers disagree at a frame boundary."""


class DeliveryError(GewiError):
    """Bytes delivered to the upper layer differ from the bytes injected."""


class MetricError(GewiError, ZeroDivisionError):
    """A throughput metric is undefined for the given counters."""
