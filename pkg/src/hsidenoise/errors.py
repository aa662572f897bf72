"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Operands have incompatible or unexpected dimensions."""


class CubeFormatError(ValueError):
    """A cube file is malformed; the message names the offending field."""


class NumericError(RuntimeError):
    """A numeric computation produced non-finite or unusable values."""


class MetricError(ValueError):
    """A quality metric is undefined for the given inputs."""
