"""Exception hierarchy shared by every module of the package."""


class SoftgripError(Exception):
    """Base class for all errors raised by softgrip."""


class ConfigError(SoftgripError, ValueError):
    """Invalid run configuration.

    ``field`` names the offending configuration key when one is known.
    """

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class ProfileParseError(SoftgripError, ValueError):
    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line


class ShapeError(SoftgripError, ValueError):
    pass


class DomainError(SoftgripError, ValueError):
    pass


class HaltedError(SoftgripError, RuntimeError):
    """A move was requested on an absorbing (perfectly fitted) state."""


class CapacityError(SoftgripError, RuntimeError):
    """A combinatorial guard was exceeded.

    ``size`` carries the offending size (frontier length, object count ...).
    """

    def __init__(self, message, size=None):
        super().__init__(message)
        self.size = size


class StructureError(SoftgripError, ValueError):
    """Malformed finite category data (dangling ids, ill-typed maps)."""


class CategoryParseError(SoftgripError, ValueError):
    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line
