"""Exception hierarchy for geoinv."""


class GeoinvError(Exception):
    """Base class for every error raised by this package."""


class InvalidDimension(GeoinvError, ValueError):
    pass


class DegenerateCloud(GeoinvError, ValueError):
    pass


class DimensionMismatch(GeoinvError, ValueError):
    pass


class BasisMismatch(GeoinvError, ValueError):
    pass


class ShapeMismatch(GeoinvError, ValueError):
    pass


class InsufficientOrder(GeoinvError, ValueError):
    pass


class IncompatibleClass(GeoinvError, ValueError):
    pass


class MalformedFile(GeoinvError, ValueError):
    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        if where:
            message = f"{', '.join(where)}: {message}"
        super().__init__(message)


class UnsupportedVersion(MalformedFile):
    pass
