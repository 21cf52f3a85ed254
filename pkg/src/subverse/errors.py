"""Exception types shared across the package."""


class SubverseError(Exception):
    """Base class for errors raised by subverse."""


class NumericsError(SubverseError):
    """A non-finite value appeared where finite arithmetic was required."""


class CheckpointError(SubverseError):
    """Base class for checkpoint file problems."""


class CheckpointVersionError(CheckpointError):
    """Unknown magic bytes or unsupported format version."""


class CheckpointTruncatedError(CheckpointError):
    """File ended before the declared structure was complete."""


class CheckpointChecksumError(CheckpointError):
    """Stored CRC-32 does not match the file contents."""
