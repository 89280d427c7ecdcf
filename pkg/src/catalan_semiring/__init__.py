"""Catalan monoids and semirings, Boolean triangular matrices, and exhaustive
checks of their faithful representations."""
from .errors import CatalanError, DimensionError, DomainError, ParseError, ResourceLimitError

__version__ = "0.1.0"
