"""Shared exception types."""


class GapforgeError(Exception):
    """Base class for all package errors."""


class ResourceLimitError(GapforgeError):
    """A computation would exceed a configured memory/size budget."""


class PrecisionExhaustedError(GapforgeError):
    """A certified comparison stayed ambiguous at the precision cap."""


class ConfigError(GapforgeError):
    """Invalid campaign configuration or CLI arguments."""


class CheckpointCorruptionError(GapforgeError):
    """Checkpoint file is unreadable or fails digest validation."""
