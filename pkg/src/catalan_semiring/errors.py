"""Exception hierarchy shared by all modules."""


class CatalanError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(CatalanError, ValueError):
    """Operands have incompatible sizes."""


class DomainError(CatalanError, ValueError):
    """An argument lies outside the domain of a map.

    ``predicate`` names the failed membership test (e.g. ``"order-preserving"``).
    """

    def __init__(self, message, predicate=None):
        super().__init__(message)
        self.predicate = predicate


class ParseError(CatalanError, ValueError):
    """Malformed textual input."""


class ResourceLimitError(CatalanError, RuntimeError):
    """A request would exceed a configured enumeration or search budget."""

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required
